#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "taxvec/corpus.hpp"

namespace taxvec {

struct FrequencyRow {
    std::string id;
    std::size_t total_count = 0;
    std::size_t doc_freq = 0;
};

// One row per graph node, descending total_count, ties by ascending id.
std::vector<FrequencyRow> frequency_table(const CorpusGraph& graph);

struct Component {
    std::size_t size = 0;
    std::vector<std::string> members;  // sorted lexicographically
};

// Undirected connected components, descending size; equal sizes ordered by
// their first member.
std::vector<Component> components(const CorpusGraph& graph);

// TSV with header term_id, total_count, doc_freq.
void write_frequency_tsv(const std::vector<FrequencyRow>& table, std::ostream& out);

// TSV with header component_index, size, members (comma-separated).
void write_components_tsv(const std::vector<Component>& comps, std::ostream& out);

}  // namespace taxvec
