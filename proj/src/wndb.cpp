#include "taxvec/wndb.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "taxvec/error.hpp"

namespace taxvec {

namespace {

struct RawSynset {
    std::string offset;
    char pos = 'n';  // satellites already folded to 'a'
    std::vector<std::string> lemmas;
    std::string gloss;
    std::vector<std::string> examples;
    std::vector<std::pair<char, std::string>> hypernym_refs;  // (pos, offset)
    std::string id;  // assigned after index files are read
};

// (pos, offset) -> synset. Offsets are only unique within one data file.
using SynsetTable = std::map<std::pair<char, std::string>, RawSynset>;

struct IndexEntry {
    std::string lemma;
    char pos;
    std::vector<std::string> offsets;  // sense order
};

std::string lowercase(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream iss(s);
    std::string tok;
    while (iss >> tok) out.push_back(tok);
    return out;
}

bool all_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(),
                                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

[[noreturn]] void fail(const std::filesystem::path& file, std::size_t byte_offset, const std::string& what) {
    throw Error("wndb: " + file.string() + ": byte offset " + std::to_string(byte_offset) + ": " + what);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("wndb: cannot open \"" + path.string() + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Strips the syntactic marker suffix adjectives may carry, e.g. "galore(ip)".
std::string strip_marker(const std::string& word) {
    std::size_t paren = word.find('(');
    return paren == std::string::npos ? word : word.substr(0, paren);
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

void sanitize(std::string& s, char forbidden) {
    for (char& c : s) {
        if (c == forbidden || c == '\t' || c == '\n') c = ' ';
    }
}

// WordNet packs the definition and quoted example sentences into one gloss
// string, separated by semicolons. Pieces that start with a double quote are
// examples; the rest joined back together form the definition.
void split_gloss(const std::string& raw, std::string& definition, std::vector<std::string>& examples) {
    std::vector<std::string> def_parts;
    std::size_t start = 0;
    while (start <= raw.size()) {
        std::size_t pos = raw.find(';', start);
        std::string piece = trim(pos == std::string::npos ? raw.substr(start) : raw.substr(start, pos - start));
        if (!piece.empty()) {
            if (piece.front() == '"') {
                piece.erase(piece.begin());
                if (!piece.empty() && piece.back() == '"') piece.pop_back();
                if (!piece.empty()) examples.push_back(piece);
            } else {
                def_parts.push_back(piece);
            }
        }
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    definition.clear();
    for (std::size_t i = 0; i < def_parts.size(); ++i) {
        if (i) definition += "; ";
        definition += def_parts[i];
    }
}

void parse_data_file(const std::filesystem::path& path, SynsetTable& table) {
    const std::string bytes = read_file(path);
    std::size_t line_start = 0;
    while (line_start < bytes.size()) {
        std::size_t line_end = bytes.find('\n', line_start);
        if (line_end == std::string::npos) line_end = bytes.size();
        std::string line = bytes.substr(line_start, line_end - line_start);
        const std::size_t offset_here = line_start;
        line_start = line_end + 1;

        if (line.empty() || line[0] == ' ') continue;  // license header
        if (!line.empty() && line.back() == '\r') line.pop_back();

        std::string head = line;
        std::string raw_gloss;
        std::size_t bar = line.find('|');
        if (bar != std::string::npos) {
            head = line.substr(0, bar);
            raw_gloss = trim(line.substr(bar + 1));
        }

        std::vector<std::string> f = split_ws(head);
        if (f.size() < 6) fail(path, offset_here, "truncated synset record");
        if (!all_digits(f[0]) || f[0].size() != 8) fail(path, offset_here, "bad synset offset \"" + f[0] + "\"");

        RawSynset syn;
        syn.offset = f[0];
        char ss_type = f[2].size() == 1 ? f[2][0] : '?';
        if (ss_type != 'n' && ss_type != 'v' && ss_type != 'a' && ss_type != 's' && ss_type != 'r') {
            fail(path, offset_here, "bad ss_type \"" + f[2] + "\"");
        }
        syn.pos = ss_type == 's' ? 'a' : ss_type;

        std::size_t w_cnt = 0;
        try {
            w_cnt = std::stoul(f[3], nullptr, 16);
        } catch (const std::exception&) {
            fail(path, offset_here, "bad word count \"" + f[3] + "\"");
        }
        if (w_cnt == 0 || f.size() < 4 + 2 * w_cnt + 1) fail(path, offset_here, "word list out of bounds");
        for (std::size_t i = 0; i < w_cnt; ++i) {
            syn.lemmas.push_back(lowercase(strip_marker(f[4 + 2 * i])));
        }

        std::size_t idx = 4 + 2 * w_cnt;
        std::size_t p_cnt = 0;
        if (!all_digits(f[idx])) fail(path, offset_here, "bad pointer count \"" + f[idx] + "\"");
        p_cnt = std::stoul(f[idx]);
        ++idx;
        if (f.size() < idx + 4 * p_cnt) fail(path, offset_here, "pointer list out of bounds");
        for (std::size_t i = 0; i < p_cnt; ++i, idx += 4) {
            const std::string& symbol = f[idx];
            const std::string& target_offset = f[idx + 1];
            const std::string& target_pos = f[idx + 2];
            if (symbol == "@" || symbol == "@i") {
                if (!all_digits(target_offset) || target_pos.size() != 1) {
                    fail(path, offset_here, "bad hypernym pointer");
                }
                char p = target_pos[0] == 's' ? 'a' : target_pos[0];
                syn.hypernym_refs.emplace_back(p, target_offset);
            }
        }
        // Verb frames, if any, follow the pointers; nothing there is needed.

        split_gloss(raw_gloss, syn.gloss, syn.examples);
        sanitize(syn.gloss, '\t');
        for (std::string& ex : syn.examples) sanitize(ex, '|');

        table[{syn.pos, syn.offset}] = std::move(syn);
    }
}

void parse_index_file(const std::filesystem::path& path, char file_pos, std::vector<IndexEntry>& entries) {
    const std::string bytes = read_file(path);
    std::size_t line_start = 0;
    while (line_start < bytes.size()) {
        std::size_t line_end = bytes.find('\n', line_start);
        if (line_end == std::string::npos) line_end = bytes.size();
        std::string line = bytes.substr(line_start, line_end - line_start);
        const std::size_t offset_here = line_start;
        line_start = line_end + 1;

        if (line.empty() || line[0] == ' ') continue;

        std::vector<std::string> f = split_ws(line);
        if (f.size() < 6) fail(path, offset_here, "truncated index record");

        IndexEntry entry;
        entry.lemma = lowercase(f[0]);
        entry.pos = f[1].size() == 1 ? f[1][0] : file_pos;

        if (!all_digits(f[2]) || !all_digits(f[3])) fail(path, offset_here, "bad index counts");
        std::size_t synset_cnt = std::stoul(f[2]);
        std::size_t p_cnt = std::stoul(f[3]);
        std::size_t first_offset = 4 + p_cnt + 2;  // skip ptr symbols, sense_cnt, tagsense_cnt
        if (f.size() < first_offset + synset_cnt) fail(path, offset_here, "offset list out of bounds");
        for (std::size_t i = 0; i < synset_cnt; ++i) {
            if (!all_digits(f[first_offset + i])) fail(path, offset_here, "bad synset offset in index");
            entry.offsets.push_back(f[first_offset + i]);
        }
        entries.push_back(std::move(entry));
    }
}

std::string two_digit_sense(std::size_t sense) {
    std::string s = std::to_string(sense);
    return s.size() < 2 ? "0" + s : s;
}

// WordNet 3.0 ships one reciprocal hypernym pair (restrain/inhibit in
// data.verb), and the portable parser rejects cycles. Any pointer that would
// make a synset its own ancestor is dropped; pointers seen earlier in
// (pos, offset)-then-file order win, so the result is deterministic.
void drop_cycle_refs(SynsetTable& table) {
    std::map<std::pair<char, std::string>, std::size_t> number;
    std::size_t n = 0;
    for (const auto& [key, syn] : table) number.emplace(key, n++);

    std::vector<std::vector<std::size_t>> parents(n);
    std::vector<std::size_t> seen(n, 0);
    std::size_t epoch = 0;

    auto reaches = [&](std::size_t from, std::size_t goal) {
        ++epoch;
        std::vector<std::size_t> stack{from};
        seen[from] = epoch;
        while (!stack.empty()) {
            std::size_t at = stack.back();
            stack.pop_back();
            if (at == goal) return true;
            for (std::size_t up : parents[at]) {
                if (seen[up] != epoch) {
                    seen[up] = epoch;
                    stack.push_back(up);
                }
            }
        }
        return false;
    };

    std::size_t child = 0;
    for (auto& [key, syn] : table) {
        auto& refs = syn.hypernym_refs;
        refs.erase(std::remove_if(refs.begin(), refs.end(),
                                  [&](const std::pair<char, std::string>& ref) {
                                      auto it = number.find(ref);
                                      if (it == number.end()) return false;  // dangling; reported at emission
                                      if (reaches(it->second, child)) return true;
                                      parents[child].push_back(it->second);
                                      return false;
                                  }),
                   refs.end());
        ++child;
    }
}

}  // namespace

void convert_wndb(const std::filesystem::path& database_dir, std::ostream& out) {
    static const std::pair<const char*, char> kFiles[] = {
        {"noun", 'n'}, {"verb", 'v'}, {"adj", 'a'}, {"adv", 'r'}};

    SynsetTable table;
    std::vector<IndexEntry> index_entries;
    for (auto& [name, pos] : kFiles) {
        parse_data_file(database_dir / (std::string("data.") + name), table);
        parse_index_file(database_dir / (std::string("index.") + name), pos, index_entries);
    }
    drop_cycle_refs(table);

    // Sense order per (lemma, pos) comes from the index files.
    std::map<std::pair<std::string, char>, std::vector<std::string>> index_order;
    for (const IndexEntry& entry : index_entries) {
        index_order[{entry.lemma, entry.pos}] = entry.offsets;
    }

    // Assign ids: position of the synset in its first lemma's index entry.
    std::set<std::string> used_ids;
    for (auto& [key, syn] : table) {  // (pos, offset) order keeps the fallback deterministic
        const std::string& first_lemma = syn.lemmas.front();
        std::size_t sense = 0;
        auto it = index_order.find({first_lemma, syn.pos});
        if (it != index_order.end()) {
            auto pos_it = std::find(it->second.begin(), it->second.end(), syn.offset);
            if (pos_it != it->second.end()) sense = 1 + (pos_it - it->second.begin());
        }
        std::string id;
        if (sense > 0) {
            id = first_lemma + "." + syn.pos + "." + two_digit_sense(sense);
        }
        if (id.empty() || used_ids.count(id)) {
            std::size_t k = it != index_order.end() ? it->second.size() + 1 : 1;
            do {
                id = first_lemma + "." + syn.pos + "." + two_digit_sense(k++);
            } while (used_ids.count(id));
        }
        used_ids.insert(id);
        syn.id = id;
    }

    auto emit = [&out, &table](const RawSynset& syn) {
        out << syn.id << '\t' << syn.pos << '\t';
        for (std::size_t i = 0; i < syn.lemmas.size(); ++i) {
            if (i) out << ',';
            out << syn.lemmas[i];
        }
        out << '\t' << syn.gloss << '\t';
        for (std::size_t i = 0; i < syn.examples.size(); ++i) {
            if (i) out << '|';
            out << syn.examples[i];
        }
        out << '\t';
        bool first = true;
        for (const auto& ref : syn.hypernym_refs) {
            auto target = table.find(ref);
            if (target == table.end()) {
                throw Error("wndb: synset " + syn.id + " has a hypernym pointer to missing synset " +
                            std::string(1, ref.first) + " " + ref.second);
            }
            if (!first) out << ',';
            first = false;
            out << target->second.id;
        }
        out << '\n';
    };

    // A lemma's sense list in the parsed taxonomy follows record order, so the
    // stream must present each lemma's senses in index order. A synset shared
    // with an alphabetically earlier lemma would otherwise jump ahead of the
    // sharing lemma's more frequent senses. Every ordered sense pair of every
    // index entry is a candidate constraint; candidates are considered most
    // significant first (lower ranks, then pos and lemma) and kept unless
    // they contradict constraints already kept. Index files do disagree (two
    // lemmas can list the same two synsets in opposite orders), so the losing
    // pair of a contradiction is dropped; everything kept is acyclic and the
    // emission below follows (pos, offset) order within it.
    std::map<std::pair<char, std::string>, std::size_t> slot;
    std::vector<const RawSynset*> record;
    record.reserve(table.size());
    for (const auto& [key, syn] : table) {
        slot.emplace(key, record.size());
        record.push_back(&syn);
    }

    struct SensePair {
        std::size_t earlier_rank;
        std::size_t later_rank;
        char pos;
        const std::string* lemma;
        std::size_t from;
        std::size_t to;
    };
    std::vector<SensePair> candidates;
    for (const auto& [key, offsets] : index_order) {
        std::vector<std::size_t> slots;
        slots.reserve(offsets.size());
        for (const std::string& offset : offsets) {
            auto it = slot.find({key.second, offset});
            if (it == slot.end()) {
                throw Error("wndb: index entry \"" + key.first + "\" references missing synset " +
                            std::string(1, key.second) + " " + offset);
            }
            slots.push_back(it->second);
        }
        for (std::size_t i = 0; i < slots.size(); ++i) {
            for (std::size_t j = i + 1; j < slots.size(); ++j) {
                if (slots[i] != slots[j]) {
                    candidates.push_back({i, j, key.second, &key.first, slots[i], slots[j]});
                }
            }
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const SensePair& a, const SensePair& b) {
        if (a.earlier_rank != b.earlier_rank) return a.earlier_rank < b.earlier_rank;
        if (a.later_rank != b.later_rank) return a.later_rank < b.later_rank;
        if (a.pos != b.pos) return a.pos < b.pos;
        if (*a.lemma != *b.lemma) return *a.lemma < *b.lemma;
        return std::tie(a.from, a.to) < std::tie(b.from, b.to);
    });

    std::vector<std::vector<std::size_t>> successors(record.size());
    std::vector<std::size_t> blockers(record.size(), 0);
    std::set<std::pair<std::size_t, std::size_t>> kept;
    std::vector<unsigned> seen(record.size(), 0);
    unsigned epoch = 0;
    std::vector<std::size_t> stack;
    for (const SensePair& cand : candidates) {
        if (kept.count({cand.from, cand.to})) continue;
        // Contradiction test: the later sense must not already precede the
        // earlier one through kept constraints.
        ++epoch;
        stack.assign(1, cand.to);
        bool contradicts = false;
        while (!stack.empty() && !contradicts) {
            std::size_t at = stack.back();
            stack.pop_back();
            if (seen[at] == epoch) continue;
            seen[at] = epoch;
            if (at == cand.from) {
                contradicts = true;
                break;
            }
            stack.insert(stack.end(), successors[at].begin(), successors[at].end());
        }
        if (contradicts) continue;
        successors[cand.from].push_back(cand.to);
        ++blockers[cand.to];
        kept.emplace(cand.from, cand.to);
    }

    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t i = 0; i < record.size(); ++i) {
        if (blockers[i] == 0) ready.push(i);
    }
    for (std::size_t emitted = 0; emitted < record.size(); ++emitted) {
        if (ready.empty()) throw Error("wndb: internal error, sense order constraints stalled");
        std::size_t i = ready.top();
        ready.pop();
        emit(*record[i]);
        for (std::size_t s : successors[i]) {
            if (--blockers[s] == 0) ready.push(s);
        }
    }
}

}  // namespace taxvec
