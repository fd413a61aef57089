#include "taxvec/stats.hpp"

#include <algorithm>
#include <map>
#include <ostream>

namespace taxvec {

std::vector<FrequencyRow> frequency_table(const CorpusGraph& graph) {
    std::vector<FrequencyRow> table;
    table.reserve(graph.nodes.size());
    for (const std::string& id : graph.nodes) {
        auto total = graph.total_counts.find(id);
        auto freq = graph.doc_freq.find(id);
        table.push_back({id, total == graph.total_counts.end() ? 0 : total->second,
                         freq == graph.doc_freq.end() ? 0 : freq->second});
    }
    std::sort(table.begin(), table.end(), [](const FrequencyRow& a, const FrequencyRow& b) {
        return a.total_count != b.total_count ? a.total_count > b.total_count : a.id < b.id;
    });
    return table;
}

std::vector<Component> components(const CorpusGraph& graph) {
    // Union-find over node ids.
    std::map<std::string, std::string> parent;
    for (const std::string& id : graph.nodes) parent[id] = id;
    auto find = [&parent](std::string id) {
        while (parent[id] != id) {
            parent[id] = parent[parent[id]];
            id = parent[id];
        }
        return id;
    };
    for (const auto& [child, par] : graph.edges) {
        parent[find(child)] = find(par);
    }

    std::map<std::string, std::vector<std::string>> groups;
    for (const std::string& id : graph.nodes) groups[find(id)].push_back(id);

    std::vector<Component> comps;
    comps.reserve(groups.size());
    for (auto& [root, members] : groups) {
        std::sort(members.begin(), members.end());
        comps.push_back({members.size(), std::move(members)});
    }
    std::sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) {
        return a.size != b.size ? a.size > b.size : a.members.front() < b.members.front();
    });
    return comps;
}

void write_frequency_tsv(const std::vector<FrequencyRow>& table, std::ostream& out) {
    out << "term_id\ttotal_count\tdoc_freq\n";
    for (const FrequencyRow& row : table) {
        out << row.id << '\t' << row.total_count << '\t' << row.doc_freq << '\n';
    }
}

void write_components_tsv(const std::vector<Component>& comps, std::ostream& out) {
    out << "component_index\tsize\tmembers\n";
    for (std::size_t i = 0; i < comps.size(); ++i) {
        out << i << '\t' << comps[i].size << '\t';
        for (std::size_t m = 0; m < comps[i].members.size(); ++m) {
            if (m) out << ',';
            out << comps[i].members[m];
        }
        out << '\n';
    }
}

}  // namespace taxvec
