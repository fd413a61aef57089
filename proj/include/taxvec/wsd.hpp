#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "taxvec/taxonomy.hpp"

namespace taxvec {

// One document token. Stopwords stay in the stream (they occupy positions,
// which the disambiguation window is measured in) but are flagged non-content.
struct Token {
    std::string surface;
    std::string normalized;
    std::size_t position = 0;
    bool content = true;
};

// Built-in English stopword list; data/stopwords_en.txt ships the same words.
const std::set<std::string>& default_stopwords();

// Reads one word per line, UTF-8, lowercased; blank lines ignored.
std::set<std::string> load_stopwords(const std::filesystem::path& path);

struct WsdConfig {
    std::size_t window = 3;  // context tokens on each side, at least 1
    bool clean_social = false;
    std::set<std::string> stopwords = default_stopwords();
};

// Tokens are maximal runs of alphabetic characters plus internal hyphens and
// apostrophes, lowercased. With clean_social, whitespace chunks that look like
// URLs, @mentions, or #hashtags are dropped before positions are assigned.
std::vector<Token> tokenize(const std::string& text, const WsdConfig& config);

// Gloss-overlap disambiguation of tokens[i]. Candidate senses are the lemma's
// entries across all four parts of speech; the winner maximizes the count of
// distinct non-stopword context words (within the window, token i excluded)
// that appear in the sense's gloss, examples, or lemmas. Ties go to the
// earlier sense in its lemma's sense order, then the lexicographically
// smaller id. Returns nothing if the word has no senses in the taxonomy.
std::optional<std::string> lesk_disambiguate(const std::vector<Token>& tokens, std::size_t i,
                                             const Taxonomy& taxonomy, const WsdConfig& config);

}  // namespace taxvec
