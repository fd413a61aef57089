#include "taxvec/selection.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <set>

#include "taxvec/error.hpp"

namespace taxvec {

namespace {

RankedTerms rank_terms(std::vector<ScoredTerm> scored, std::size_t d) {
    std::sort(scored.begin(), scored.end(), [](const ScoredTerm& a, const ScoredTerm& b) {
        return a.score != b.score ? a.score > b.score : a.id < b.id;
    });
    if (scored.size() > d) scored.resize(d);
    return scored;
}

struct IndexedGraph {
    std::vector<std::string> nodes;                 // sorted ids
    std::map<std::string, std::size_t> index;
    std::vector<std::vector<std::size_t>> undirected;  // deduplicated neighbors
    std::vector<std::vector<std::size_t>> out;         // child -> parent
};

IndexedGraph index_graph(const CorpusGraph& graph) {
    IndexedGraph g;
    g.nodes.assign(graph.nodes.begin(), graph.nodes.end());
    for (std::size_t i = 0; i < g.nodes.size(); ++i) g.index[g.nodes[i]] = i;
    g.undirected.resize(g.nodes.size());
    g.out.resize(g.nodes.size());
    for (const auto& [child, parent] : graph.edges) {
        std::size_t c = g.index.at(child);
        std::size_t p = g.index.at(parent);
        g.out[c].push_back(p);
        if (c == p) continue;  // self-loops add nothing to centrality
        g.undirected[c].push_back(p);
        g.undirected[p].push_back(c);
    }
    for (auto& adj : g.undirected) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    }
    for (auto& adj : g.out) {
        std::sort(adj.begin(), adj.end());
        adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
    }
    return g;
}

}  // namespace

Heuristic parse_heuristic(const std::string& name) {
    if (name == "rarest") return Heuristic::rarest;
    if (name == "betweenness") return Heuristic::betweenness;
    if (name == "closeness") return Heuristic::closeness;
    if (name == "mutual_info") return Heuristic::mutual_info;
    if (name == "pagerank") return Heuristic::pagerank;
    throw Error("unknown heuristic \"" + name +
                "\" (expected rarest, betweenness, closeness, mutual_info, or pagerank)");
}

std::string heuristic_name(Heuristic h) {
    switch (h) {
        case Heuristic::rarest: return "rarest";
        case Heuristic::betweenness: return "betweenness";
        case Heuristic::closeness: return "closeness";
        case Heuristic::mutual_info: return "mutual_info";
        case Heuristic::pagerank: return "pagerank";
    }
    return "?";
}

RankedTerms select_rarest(const CorpusGraph& graph, std::size_t d) {
    std::vector<ScoredTerm> scored;
    scored.reserve(graph.nodes.size());
    for (const std::string& id : graph.nodes) {
        auto it = graph.total_counts.find(id);
        std::size_t total = it == graph.total_counts.end() ? 0 : it->second;
        scored.push_back({id, -static_cast<double>(total)});
    }
    return rank_terms(std::move(scored), d);
}

RankedTerms select_betweenness(const CorpusGraph& graph, std::size_t d) {
    IndexedGraph g = index_graph(graph);
    const std::size_t n = g.nodes.size();
    std::vector<double> bc(n, 0.0);

    // Brandes over each source; sigma counts shortest paths, delta the
    // accumulated pair dependencies.
    std::vector<long long> dist(n);
    std::vector<double> sigma(n), delta(n);
    std::vector<std::vector<std::size_t>> preds(n);
    std::vector<std::size_t> order;
    order.reserve(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::fill(sigma.begin(), sigma.end(), 0.0);
        std::fill(delta.begin(), delta.end(), 0.0);
        for (auto& p : preds) p.clear();
        order.clear();

        dist[s] = 0;
        sigma[s] = 1.0;
        std::deque<std::size_t> queue{s};
        while (!queue.empty()) {
            std::size_t v = queue.front();
            queue.pop_front();
            order.push_back(v);
            for (std::size_t w : g.undirected[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if (dist[w] == dist[v] + 1) {
                    sigma[w] += sigma[v];
                    preds[w].push_back(v);
                }
            }
        }
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            std::size_t w = *it;
            for (std::size_t v : preds[w]) {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if (w != s) bc[w] += delta[w];
        }
    }

    std::vector<ScoredTerm> scored;
    scored.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        scored.push_back({g.nodes[i], bc[i] / 2.0});  // each unordered pair was visited twice
    }
    return rank_terms(std::move(scored), d);
}

RankedTerms select_closeness(const CorpusGraph& graph, std::size_t d) {
    IndexedGraph g = index_graph(graph);
    const std::size_t n = g.nodes.size();
    std::vector<ScoredTerm> scored;
    scored.reserve(n);
    std::vector<long long> dist(n);
    for (std::size_t s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[s] = 0;
        std::deque<std::size_t> queue{s};
        std::size_t reachable = 1;
        double sum = 0.0;
        while (!queue.empty()) {
            std::size_t v = queue.front();
            queue.pop_front();
            for (std::size_t w : g.undirected[v]) {
                if (dist[w] < 0) {
                    dist[w] = dist[v] + 1;
                    sum += static_cast<double>(dist[w]);
                    ++reachable;
                    queue.push_back(w);
                }
            }
        }
        double score = 0.0;
        if (reachable > 1 && n > 1) {
            double r1 = static_cast<double>(reachable - 1);
            score = (r1 / sum) * (r1 / static_cast<double>(n - 1));
        }
        scored.push_back({g.nodes[s], score});
    }
    return rank_terms(std::move(scored), d);
}

RankedTerms select_mutual_info(const FeatureMatrix& matrix, const std::vector<std::string>& labels,
                               std::size_t d) {
    if (labels.size() != matrix.n_rows) {
        throw Error("expected " + std::to_string(matrix.n_rows) + " labels, got " +
                    std::to_string(labels.size()));
    }
    std::set<std::string> classes(labels.begin(), labels.end());
    if (classes.size() < 2) {
        throw Error("mutual information needs at least 2 distinct classes, got " +
                    std::to_string(classes.size()));
    }

    // Rows where the binarized feature is 1, per column.
    std::vector<std::set<std::size_t>> ones(matrix.columns.size());
    for (const MatrixEntry& e : matrix.entries) {
        if (e.value >= 0.5) ones[e.col].insert(e.row);
    }

    const double total = static_cast<double>(matrix.n_rows);
    auto mi_cell = [total](std::size_t joint, std::size_t px, std::size_t py) {
        if (joint == 0) return 0.0;
        double p = static_cast<double>(joint) / total;
        return p * std::log2(static_cast<double>(joint) * total /
                             (static_cast<double>(px) * static_cast<double>(py)));
    };

    std::vector<ScoredTerm> scored;
    scored.reserve(matrix.columns.size());
    for (std::size_t col = 0; col < matrix.columns.size(); ++col) {
        const std::set<std::size_t>& one_rows = ones[col];
        std::size_t n1 = one_rows.size();
        std::size_t n0 = matrix.n_rows - n1;
        double score = 0.0;
        for (const std::string& cls : classes) {
            std::size_t m1 = 0, n11 = 0;
            for (std::size_t row = 0; row < matrix.n_rows; ++row) {
                if (labels[row] == cls) {
                    ++m1;
                    if (one_rows.count(row)) ++n11;
                }
            }
            std::size_t m0 = matrix.n_rows - m1;
            std::size_t n10 = n1 - n11;  // feature 1, class 0
            std::size_t n01 = m1 - n11;  // feature 0, class 1
            std::size_t n00 = n0 - n01;
            score += mi_cell(n11, n1, m1) + mi_cell(n10, n1, m0) + mi_cell(n01, n0, m1) +
                     mi_cell(n00, n0, m0);
        }
        scored.push_back({matrix.columns[col], score});
    }
    return rank_terms(std::move(scored), d);
}

RankedTerms select_pagerank(const CorpusGraph& graph, std::size_t d, const SelectionConfig& config) {
    if (graph.seed_terms.empty()) throw Error("pagerank selection needs a nonempty seed set");
    IndexedGraph g = index_graph(graph);
    const std::size_t n = g.nodes.size();

    std::vector<double> restart(n, 0.0);
    for (const std::string& seed : graph.seed_terms) {
        auto it = g.index.find(seed);
        if (it == g.index.end()) throw Error("seed term \"" + seed + "\" is not a graph node");
        restart[it->second] = 1.0 / static_cast<double>(graph.seed_terms.size());
    }

    const double alpha = config.ppr_alpha;
    std::vector<double> x = restart;
    std::vector<double> next(n);
    for (std::size_t iter = 0; iter < config.ppr_max_iter; ++iter) {
        std::fill(next.begin(), next.end(), 0.0);
        double dangling = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            if (g.out[v].empty()) {
                dangling += x[v];
                continue;
            }
            double share = x[v] / static_cast<double>(g.out[v].size());
            for (std::size_t w : g.out[v]) next[w] += share;
        }
        double change = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            next[v] = alpha * (next[v] + dangling * restart[v]) + (1.0 - alpha) * restart[v];
            change += std::abs(next[v] - x[v]);
        }
        x.swap(next);
        if (change < config.ppr_tol) break;
    }

    std::vector<ScoredTerm> scored;
    scored.reserve(n);
    for (std::size_t i = 0; i < n; ++i) scored.push_back({g.nodes[i], x[i]});
    return rank_terms(std::move(scored), d);
}

RankedTerms select_terms(const CorpusGraph& graph, const FeatureMatrix& full_matrix,
                         const std::vector<std::string>& labels, const SelectionConfig& config) {
    switch (config.heuristic) {
        case Heuristic::rarest: return select_rarest(graph, config.d);
        case Heuristic::betweenness: return select_betweenness(graph, config.d);
        case Heuristic::closeness: return select_closeness(graph, config.d);
        case Heuristic::mutual_info: return select_mutual_info(full_matrix, labels, config.d);
        case Heuristic::pagerank: return select_pagerank(graph, config.d, config);
    }
    throw Error("unhandled heuristic");
}

}  // namespace taxvec
