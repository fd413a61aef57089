#include "taxvec/taxonomy.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <istream>
#include <sstream>

#include <openssl/evp.h>

#include "taxvec/error.hpp"

namespace taxvec {

namespace {

std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("sha256 digest failed");
    }
    static const char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::string lowercase(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

bool valid_pos(char p) { return p == 'n' || p == 'v' || p == 'a' || p == 'r'; }

void check_acyclic(const std::unordered_map<std::string, Synset>& synsets) {
    // Kahn's algorithm over child->parent edges.
    std::unordered_map<std::string, int> out_degree;
    std::unordered_map<std::string, std::vector<const std::string*>> parents_of;
    out_degree.reserve(synsets.size());
    for (const auto& [id, syn] : synsets) {
        out_degree[id] = static_cast<int>(syn.hypernyms.size());
        for (const std::string& parent : syn.hypernyms) {
            parents_of[parent].push_back(&id);
        }
    }
    std::deque<std::string> ready;
    for (const auto& [id, deg] : out_degree) {
        if (deg == 0) ready.push_back(id);
    }
    std::size_t processed = 0;
    while (!ready.empty()) {
        std::string id = std::move(ready.front());
        ready.pop_front();
        ++processed;
        auto it = parents_of.find(id);
        if (it == parents_of.end()) continue;
        for (const std::string* child : it->second) {
            if (--out_degree[*child] == 0) ready.push_back(*child);
        }
    }
    if (processed != synsets.size()) {
        for (const auto& [id, deg] : out_degree) {
            if (deg > 0) {
                throw Error("taxonomy: hypernym cycle detected involving \"" + id + "\"");
            }
        }
    }
}

}  // namespace

const Synset* Taxonomy::find(const std::string& id) const {
    auto it = synsets_.find(id);
    return it == synsets_.end() ? nullptr : &it->second;
}

const Synset& Taxonomy::at(const std::string& id) const {
    const Synset* syn = find(id);
    if (!syn) throw Error("taxonomy: unknown synset id \"" + id + "\"");
    return *syn;
}

const std::vector<std::string>& Taxonomy::senses(const std::string& lemma, char pos) const {
    static const std::vector<std::string> empty;
    auto it = lemma_index_.find({lemma, pos});
    return it == lemma_index_.end() ? empty : it->second;
}

std::vector<std::string> Taxonomy::ids() const {
    std::vector<std::string> out;
    out.reserve(synsets_.size());
    for (const auto& [id, syn] : synsets_) out.push_back(id);
    std::sort(out.begin(), out.end());
    return out;
}

Taxonomy parse_portable_taxonomy(std::istream& in) {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string bytes = buffer.str();

    Taxonomy tax;
    tax.fingerprint_ = sha256_hex(bytes);

    std::istringstream lines(bytes);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(lines, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;

        std::vector<std::string> fields = split(line, '\t');
        if (fields.size() != 6) {
            throw Error("taxonomy: line " + std::to_string(line_no) + ": expected 6 tab-separated fields, got " +
                        std::to_string(fields.size()));
        }

        Synset syn;
        syn.id = fields[0];
        if (syn.id.empty()) {
            throw Error("taxonomy: line " + std::to_string(line_no) + ": empty synset id");
        }
        if (fields[1].size() != 1 || !valid_pos(fields[1][0])) {
            throw Error("taxonomy: line " + std::to_string(line_no) + ": pos must be one of n, v, a, r (got \"" +
                        fields[1] + "\")");
        }
        syn.pos = fields[1][0];
        for (const std::string& lemma : split(fields[2], ',')) {
            if (!lemma.empty()) syn.lemmas.push_back(lowercase(lemma));
        }
        if (syn.lemmas.empty()) {
            throw Error("taxonomy: line " + std::to_string(line_no) + ": record has no lemmas");
        }
        syn.gloss = fields[3];
        for (const std::string& example : split(fields[4], '|')) {
            if (!example.empty()) syn.examples.push_back(example);
        }
        if (!fields[5].empty()) {
            for (const std::string& parent : split(fields[5], ',')) {
                if (!parent.empty()) syn.hypernyms.push_back(parent);
            }
        }

        if (tax.synsets_.count(syn.id)) {
            throw Error("taxonomy: line " + std::to_string(line_no) + ": duplicate synset id \"" + syn.id + "\"");
        }
        for (const std::string& lemma : syn.lemmas) {
            tax.lemma_index_[{lemma, syn.pos}].push_back(syn.id);
        }
        if (syn.hypernyms.empty()) tax.roots_.insert(syn.id);
        tax.synsets_.emplace(syn.id, std::move(syn));
    }

    for (const auto& [id, syn] : tax.synsets_) {
        for (const std::string& parent : syn.hypernyms) {
            if (!tax.synsets_.count(parent)) {
                throw Error("taxonomy: synset \"" + id + "\" references missing hypernym \"" + parent + "\"");
            }
        }
    }
    check_acyclic(tax.synsets_);
    return tax;
}

Taxonomy load_portable_taxonomy(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("taxonomy: cannot open \"" + path.string() + "\"");
    return parse_portable_taxonomy(in);
}

std::vector<std::pair<std::string, int>> hypernym_closure_with_distance(const Taxonomy& taxonomy,
                                                                        const std::string& id) {
    const Synset& start = taxonomy.at(id);

    std::vector<std::pair<std::string, int>> out;
    std::set<std::string> visited{start.id};
    out.emplace_back(start.id, 0);

    std::vector<std::string> frontier{start.id};
    int distance = 0;
    while (!frontier.empty()) {
        ++distance;
        std::set<std::string> next;
        for (const std::string& node : frontier) {
            for (const std::string& parent : taxonomy.at(node).hypernyms) {
                if (!visited.count(parent)) next.insert(parent);
            }
        }
        frontier.assign(next.begin(), next.end());  // set iteration is lexicographic
        for (const std::string& node : frontier) {
            visited.insert(node);
            out.emplace_back(node, distance);
        }
    }
    return out;
}

std::vector<std::string> hypernym_closure(const Taxonomy& taxonomy, const std::string& id) {
    std::vector<std::string> out;
    for (auto& [node, distance] : hypernym_closure_with_distance(taxonomy, id)) {
        out.push_back(node);
    }
    return out;
}

}  // namespace taxvec
