#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "taxvec/corpus.hpp"
#include "taxvec/matrix.hpp"

namespace taxvec {

enum class Heuristic { rarest, betweenness, closeness, mutual_info, pagerank };

Heuristic parse_heuristic(const std::string& name);
std::string heuristic_name(Heuristic h);

struct SelectionConfig {
    Heuristic heuristic = Heuristic::rarest;
    std::size_t d = 1;
    double ppr_alpha = 0.85;      // walk probability; restart with 1 - alpha
    double ppr_tol = 1e-9;        // L1 convergence threshold
    std::size_t ppr_max_iter = 1000;
};

struct ScoredTerm {
    std::string id;
    double score = 0.0;
};

// Descending score, ties by ascending id, truncated to d elements.
using RankedTerms = std::vector<ScoredTerm>;

// Terms with the smallest corpus totals; score is the negated total so the
// shared descending order yields ascending counts.
RankedTerms select_rarest(const CorpusGraph& graph, std::size_t d);

// Brandes betweenness over unordered node pairs on the undirected view of
// the graph; pairs in different components contribute nothing.
RankedTerms select_betweenness(const CorpusGraph& graph, std::size_t d);

// Component-aware closeness: ((r-1) / sum of distances) * ((r-1) / (n-1))
// where r is the size of the node's component. Isolated nodes score 0.
RankedTerms select_closeness(const CorpusGraph& graph, std::size_t d);

// Binarizes entries at 0.5, then scores each column by the sum over classes
// of its mutual information (base 2) with the class's one-hot vector.
// Requires at least two distinct labels.
RankedTerms select_mutual_info(const FeatureMatrix& matrix, const std::vector<std::string>& labels,
                               std::size_t d);

// Stationary distribution of a walk along child-to-parent edges that
// restarts uniformly over graph.seed_terms; dangling mass re-enters through
// the restart vector, so the scores always sum to 1.
RankedTerms select_pagerank(const CorpusGraph& graph, std::size_t d, const SelectionConfig& config);

// Dispatches on config.heuristic. full_matrix and labels are consulted only
// for mutual_info; its columns must be graph nodes.
RankedTerms select_terms(const CorpusGraph& graph, const FeatureMatrix& full_matrix,
                         const std::vector<std::string>& labels, const SelectionConfig& config);

}  // namespace taxvec
