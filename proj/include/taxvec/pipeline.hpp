#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "taxvec/corpus.hpp"
#include "taxvec/matrix.hpp"
#include "taxvec/selection.hpp"
#include "taxvec/wsd.hpp"

namespace taxvec {

struct PipelineConfig {
    WsdConfig wsd;
    double k = 0.5;  // double-normalization constant
    SelectionConfig selection;
    std::optional<std::size_t> depth_cutoff;
    std::size_t workers = 1;  // runtime only, never persisted
};

struct ModelTerm {
    std::string id;
    std::size_t n_t = 1;  // training document frequency, in [1, n_docs_train]
    double score = 0.0;   // selection score
};

// Everything transform needs: the selected terms with their frozen document
// frequencies, the configuration that produced them, and a fingerprint of
// the taxonomy so a different one is rejected. Stopwords and worker count
// are runtime concerns and are not persisted.
struct FittedModel {
    std::string version = "1";
    PipelineConfig config;
    std::size_t n_docs_train = 0;
    std::vector<ModelTerm> terms;  // selection order; length <= config.selection.d
    std::string taxonomy_fingerprint;
};

struct FitResult {
    FittedModel model;
    FeatureMatrix matrix;  // columns exactly model.terms, in order
    CorpusGraph graph;     // kept for statistics and inspection
};

// Maps documents to the taxonomy, merges, weights, selects. labels may be
// empty unless the heuristic is mutual_info. A corpus in which nothing maps
// to the taxonomy yields a 0-term model and an all-empty matrix.
FitResult fit(const std::vector<std::string>& documents, const std::vector<std::string>& labels,
              const Taxonomy& taxonomy, const PipelineConfig& config);

// Projects new documents into the model's frozen feature space: same WSD and
// closure procedure, idf from the stored n_t and n_docs_train. Terms outside
// the model are dropped. The taxonomy fingerprint must match.
FeatureMatrix transform(const FittedModel& model, const std::vector<std::string>& documents,
                        const Taxonomy& taxonomy, std::size_t workers = 1);

// Versioned JSON. load_model re-validates every model invariant and rejects
// other versions and malformed input.
void save_model(const FittedModel& model, std::ostream& out);
FittedModel load_model(std::istream& in);

}  // namespace taxvec
