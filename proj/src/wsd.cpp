#include "taxvec/wsd.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "taxvec/error.hpp"

namespace taxvec {

namespace {

// Bytes >= 0x80 are UTF-8 continuation or lead bytes of non-ASCII letters;
// treating them as alphabetic keeps multi-byte words in one piece.
bool is_word_char(unsigned char c) {
    return std::isalpha(c) != 0 || c >= 0x80;
}

bool starts_with(const std::string& s, const char* prefix) {
    return s.rfind(prefix, 0) == 0;
}

bool is_social_chunk(const std::string& chunk) {
    return starts_with(chunk, "http://") || starts_with(chunk, "https://") ||
           starts_with(chunk, "www.") || starts_with(chunk, "@") || starts_with(chunk, "#");
}

// Appends the lowercased word tokens of text to out. A hyphen or apostrophe
// joins a token only when flanked by word characters on both sides.
void scan_words(const std::string& text, std::vector<std::string>* out) {
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        if (!is_word_char(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < n) {
            unsigned char c = static_cast<unsigned char>(text[i]);
            if (is_word_char(c)) {
                ++i;
            } else if ((c == '-' || c == '\'') && i + 1 < n &&
                       is_word_char(static_cast<unsigned char>(text[i + 1]))) {
                ++i;
            } else {
                break;
            }
        }
        std::string word = text.substr(start, i - start);
        for (char& c : word) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        out->push_back(std::move(word));
    }
}

std::set<std::string> bag_words(const std::string& text, const std::set<std::string>& stopwords) {
    std::vector<std::string> words;
    scan_words(text, &words);
    std::set<std::string> bag;
    for (std::string& w : words) {
        if (!stopwords.count(w)) bag.insert(std::move(w));
    }
    return bag;
}

}  // namespace

std::vector<Token> tokenize(const std::string& text, const WsdConfig& config) {
    std::string cleaned;
    const std::string* source = &text;
    if (config.clean_social) {
        std::istringstream chunks(text);
        std::string chunk;
        while (chunks >> chunk) {
            if (is_social_chunk(chunk)) continue;
            if (!cleaned.empty()) cleaned += ' ';
            cleaned += chunk;
        }
        source = &cleaned;
    }

    std::vector<Token> tokens;
    std::size_t i = 0;
    const std::string& s = *source;
    while (i < s.size()) {
        if (!is_word_char(static_cast<unsigned char>(s[i]))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < s.size()) {
            unsigned char c = static_cast<unsigned char>(s[i]);
            if (is_word_char(c)) {
                ++i;
            } else if ((c == '-' || c == '\'') && i + 1 < s.size() &&
                       is_word_char(static_cast<unsigned char>(s[i + 1]))) {
                ++i;
            } else {
                break;
            }
        }
        Token tok;
        tok.surface = s.substr(start, i - start);
        tok.normalized = tok.surface;
        for (char& c : tok.normalized) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        tok.position = tokens.size();
        tok.content = config.stopwords.count(tok.normalized) == 0;
        tokens.push_back(std::move(tok));
    }
    return tokens;
}

std::optional<std::string> lesk_disambiguate(const std::vector<Token>& tokens, std::size_t i,
                                             const Taxonomy& taxonomy, const WsdConfig& config) {
    if (i >= tokens.size()) {
        throw Error("disambiguation position " + std::to_string(i) + " out of range (" +
                    std::to_string(tokens.size()) + " tokens)");
    }

    const std::string& word = tokens[i].normalized;
    struct Candidate {
        const std::string* id;
        std::size_t sense_rank;  // position within its own (lemma, pos) sense list
    };
    std::vector<Candidate> candidates;
    for (char pos : {'n', 'v', 'a', 'r'}) {
        const std::vector<std::string>& senses = taxonomy.senses(word, pos);
        for (std::size_t rank = 0; rank < senses.size(); ++rank) {
            candidates.push_back({&senses[rank], rank});
        }
    }
    if (candidates.empty()) return std::nullopt;

    std::set<std::string> context;
    std::size_t lo = i >= config.window ? i - config.window : 0;
    std::size_t hi = std::min(tokens.size() - 1, i + config.window);
    for (std::size_t j = lo; j <= hi; ++j) {
        if (j != i && tokens[j].content) context.insert(tokens[j].normalized);
    }

    const Candidate* best = nullptr;
    std::size_t best_overlap = 0;
    for (const Candidate& cand : candidates) {
        const Synset& sense = taxonomy.at(*cand.id);
        std::string sense_text = sense.gloss;
        for (const std::string& ex : sense.examples) {
            sense_text += ' ';
            sense_text += ex;
        }
        for (const std::string& lemma : sense.lemmas) {
            sense_text += ' ';
            sense_text += lemma;
        }
        std::set<std::string> sense_bag = bag_words(sense_text, config.stopwords);

        std::size_t overlap = 0;
        for (const std::string& w : context) {
            if (sense_bag.count(w)) ++overlap;
        }
        if (!best || overlap > best_overlap ||
            (overlap == best_overlap &&
             (cand.sense_rank < best->sense_rank ||
              (cand.sense_rank == best->sense_rank && *cand.id < *best->id)))) {
            best = &cand;
            best_overlap = overlap;
        }
    }
    return *best->id;
}

}  // namespace taxvec
