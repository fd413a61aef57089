#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "taxvec/corpus.hpp"
#include "taxvec/matrix.hpp"

namespace taxvec {

// Double-normalized term frequency times inverse document frequency:
// (k + (1-k) * f_td / f_max) * ln(n_docs / n_t). Natural log. Preconditions
// (1 <= f_td <= f_max, 1 <= n_t <= n_docs, 0 <= k <= 1) are asserted.
double tfidf_value(std::size_t f_td, std::size_t f_max, std::size_t n_docs, std::size_t n_t, double k);

// Where a term lands in the matrix and its training document frequency.
struct ColumnStats {
    std::size_t index = 0;
    std::size_t n_t = 1;
};
using ColumnIndex = std::map<std::string, ColumnStats>;

// Appends one document row. f_max is taken over the document's FULL term
// map, not only the indexed columns; terms outside the index are skipped and
// zero values omitted. Fit and transform both assemble rows through here so
// their outputs agree bit for bit.
void append_row(FeatureMatrix& matrix, std::size_t row, const DocTermCounts& counts,
                const ColumnIndex& columns, std::size_t n_docs, double k);

// Builds the matrix over the given column order, one row per element of
// docs. Every column id must be a corpus-graph node.
FeatureMatrix build_matrix(const CorpusGraph& graph, const std::vector<DocTermCounts>& docs,
                           const std::vector<std::string>& columns, double k);

}  // namespace taxvec
