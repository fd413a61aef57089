#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace taxvec {

struct MatrixEntry {
    std::size_t row = 0;
    std::size_t col = 0;
    double value = 0.0;
};

// Sparse document-by-term matrix. Zeros are omitted: every stored value is
// strictly positive, each (row, col) appears at most once, and entries are
// ordered by row then column.
struct FeatureMatrix {
    std::size_t n_rows = 0;
    std::vector<std::string> columns;  // unique ids, one per column
    std::vector<MatrixEntry> entries;
};

// Matrix Market coordinate format ("%%MatrixMarket matrix coordinate real
// general"), 1-based indices. Values use shortest round-trip formatting so
// equal matrices serialize to identical bytes.
void write_matrix_market(const FeatureMatrix& matrix, std::ostream& out);

// Sidecar JSON: {"columns": [ids in order], "rows": [doc ids in order]}.
void write_matrix_sidecar(const FeatureMatrix& matrix, std::ostream& out);

// Reads both parts back, validating the header, dimensions, index ranges,
// positivity, and duplicate coordinates. Entry order is normalized.
FeatureMatrix read_matrix(std::istream& market, std::istream& sidecar);

// Horizontal concatenation of per-document feature blocks: external columns
// first, semantic columns appended, ids prefixed "ext:" / "sem:" to keep the
// namespaces disjoint. A side with no columns leaves the other unchanged
// (no prefixing). Row counts must agree.
FeatureMatrix concat(const FeatureMatrix& semantic, const FeatureMatrix& external);

}  // namespace taxvec
