#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "taxvec/taxonomy.hpp"
#include "taxvec/wsd.hpp"

namespace taxvec {

struct DocTermCounts {
    std::size_t doc_id = 0;
    // term id -> number of occurrences that map to the term or any of its
    // descendants; every stored count is at least 1.
    std::map<std::string, std::size_t> counts;
};

// One document's slice of the taxonomy: the union of the hypernym closures of
// its disambiguated senses, with per-term occurrence counts.
struct DocumentTaxonomy {
    std::set<std::string> nodes;
    std::set<std::pair<std::string, std::string>> edges;  // (child, parent)
    DocTermCounts counts;
    std::set<std::string> seeds;  // sense ids straight from disambiguation
};

struct CorpusGraph {
    std::set<std::string> nodes;
    std::set<std::pair<std::string, std::string>> edges;  // (child, parent)
    std::map<std::string, std::size_t> total_counts;
    std::map<std::string, std::size_t> doc_freq;
    std::set<std::string> seed_terms;
    std::size_t n_docs = 0;
};

// Disambiguates each content token and expands it to its hypernym closure.
// One occurrence adds at most 1 to each ancestor even when the taxonomy
// offers several paths to it. With depth_cutoff, ancestors more than that
// many hops above the disambiguated sense are excluded (0 keeps the sense
// alone). Edges are the hypernym links induced on the final node set.
DocumentTaxonomy build_document_taxonomy(const std::vector<Token>& tokens, const Taxonomy& taxonomy,
                                         const WsdConfig& config,
                                         std::optional<std::size_t> depth_cutoff = std::nullopt,
                                         std::size_t doc_id = 0);

// Aggregates per-document results. doc_ids must be exactly 0..n_docs-1; the
// result is independent of input order.
CorpusGraph merge(const std::vector<DocumentTaxonomy>& docs, std::size_t n_docs);

// Tokenizes and maps all documents, fanning out across the given number of
// worker threads. Results are indexed by document, so the output is identical
// for any worker count.
std::vector<DocumentTaxonomy> map_documents(const std::vector<std::string>& documents,
                                            const Taxonomy& taxonomy, const WsdConfig& config,
                                            std::optional<std::size_t> depth_cutoff, std::size_t workers);

struct CorpusFile {
    std::vector<std::string> texts;
    std::vector<std::string> labels;  // empty unless read with labeled = true
};

// One document per line. With labeled, column 1 is the class label and the
// rest of the line the text; otherwise the whole line is text.
CorpusFile read_corpus_tsv(std::istream& in, bool labeled);

// Splits text into paragraphs at blank lines; a paragraph's lines are joined
// with single spaces. Whitespace-only lines count as blank.
std::vector<std::string> split_paragraphs(std::istream& in);

}  // namespace taxvec
