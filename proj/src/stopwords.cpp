#include "taxvec/wsd.hpp"

#include <cctype>
#include <fstream>

#include "taxvec/error.hpp"

namespace taxvec {

namespace {

// Keep in sync with data/stopwords_en.txt (a test compares the two).
const char* const kStopwords[] = {
    "a",          "about",      "above",     "after",   "again",    "against", "all",
    "am",         "an",         "and",       "any",     "are",      "as",      "at",
    "be",         "because",    "been",      "before",  "being",    "below",   "between",
    "both",       "but",        "by",        "can",     "cannot",   "could",   "did",
    "do",         "does",       "doing",     "down",    "during",   "each",    "few",
    "for",        "from",       "further",   "had",     "has",      "have",    "having",
    "he",         "her",        "here",      "hers",    "herself",  "him",     "himself",
    "his",        "how",        "i",         "if",      "in",       "into",    "is",
    "it",         "its",        "itself",    "just",    "me",       "more",    "most",
    "my",         "myself",     "no",        "nor",     "not",      "now",     "of",
    "off",        "on",         "once",      "only",    "or",       "other",   "ought",
    "our",        "ours",       "ourselves", "out",     "over",     "own",     "same",
    "shall",      "she",        "should",    "so",      "some",     "such",    "than",
    "that",       "the",        "their",     "theirs",  "them",     "themselves",
    "then",       "there",      "these",     "they",    "this",     "those",   "through",
    "to",         "too",        "under",     "until",   "up",       "very",    "was",
    "we",         "were",       "what",      "when",    "where",    "which",   "while",
    "who",        "whom",       "why",       "will",    "with",     "would",   "you",
    "your",       "yours",      "yourself",  "yourselves",
};

}  // namespace

const std::set<std::string>& default_stopwords() {
    static const std::set<std::string> words(std::begin(kStopwords), std::end(kStopwords));
    return words;
}

std::set<std::string> load_stopwords(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open stopword file \"" + path.string() + "\"");
    std::set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t a = line.find_first_not_of(" \t");
        if (a == std::string::npos) continue;
        std::size_t b = line.find_last_not_of(" \t");
        std::string word = line.substr(a, b - a + 1);
        for (char& c : word) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        words.insert(word);
    }
    return words;
}

}  // namespace taxvec
