#include "taxvec/weighting.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "taxvec/error.hpp"

namespace taxvec {

double tfidf_value(std::size_t f_td, std::size_t f_max, std::size_t n_docs, std::size_t n_t, double k) {
    assert(f_td >= 1 && f_td <= f_max);
    assert(n_t >= 1 && n_t <= n_docs);
    assert(k >= 0.0 && k <= 1.0);
    double tf = k + (1.0 - k) * static_cast<double>(f_td) / static_cast<double>(f_max);
    double idf = std::log(static_cast<double>(n_docs) / static_cast<double>(n_t));
    return tf * idf;
}

void append_row(FeatureMatrix& matrix, std::size_t row, const DocTermCounts& counts,
                const ColumnIndex& columns, std::size_t n_docs, double k) {
    if (counts.counts.empty()) return;
    std::size_t f_max = 0;
    for (const auto& [term, count] : counts.counts) f_max = std::max(f_max, count);

    std::vector<MatrixEntry> row_entries;
    for (const auto& [term, count] : counts.counts) {
        auto it = columns.find(term);
        if (it == columns.end()) continue;
        double value = tfidf_value(count, f_max, n_docs, it->second.n_t, k);
        if (value > 0.0) row_entries.push_back({row, it->second.index, value});
    }
    std::sort(row_entries.begin(), row_entries.end(),
              [](const MatrixEntry& a, const MatrixEntry& b) { return a.col < b.col; });
    matrix.entries.insert(matrix.entries.end(), row_entries.begin(), row_entries.end());
}

FeatureMatrix build_matrix(const CorpusGraph& graph, const std::vector<DocTermCounts>& docs,
                           const std::vector<std::string>& columns, double k) {
    ColumnIndex index;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        auto freq = graph.doc_freq.find(columns[i]);
        if (freq == graph.doc_freq.end()) {
            throw Error("column \"" + columns[i] + "\" is not a corpus-graph node");
        }
        if (!index.emplace(columns[i], ColumnStats{i, freq->second}).second) {
            throw Error("duplicate column \"" + columns[i] + "\"");
        }
    }

    FeatureMatrix matrix;
    matrix.n_rows = docs.size();
    matrix.columns = columns;
    for (std::size_t row = 0; row < docs.size(); ++row) {
        append_row(matrix, row, docs[row], index, graph.n_docs, k);
    }
    return matrix;
}

}  // namespace taxvec
