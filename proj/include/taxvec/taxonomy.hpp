#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace taxvec {

// One taxonomy node. `id` has the form "<lemma>.<pos>.<sense>", e.g.
// "astatine.n.01". `hypernyms` lists the ids of the direct parents;
// a node may have several (the hypernym relation is a DAG, not a tree).
struct Synset {
    std::string id;
    char pos = 'n';  // one of n, v, a, r
    std::vector<std::string> lemmas;
    std::string gloss;
    std::vector<std::string> examples;
    std::vector<std::string> hypernyms;
};

// Immutable synset store with a (lemma, pos) -> senses index.
// Construction validates that every hypernym reference resolves and that
// the hypernym relation is acyclic. Safe for concurrent reads.
class Taxonomy {
public:
    Taxonomy() = default;

    std::size_t size() const { return synsets_.size(); }
    bool contains(const std::string& id) const { return synsets_.count(id) != 0; }

    // Returns nullptr when the id is unknown.
    const Synset* find(const std::string& id) const;

    // Throws Error when the id is unknown.
    const Synset& at(const std::string& id) const;

    // Sense ids for a (lemma, pos) pair, most-frequent sense first.
    // Returns an empty list for unknown pairs.
    const std::vector<std::string>& senses(const std::string& lemma, char pos) const;

    // Synsets with no hypernyms.
    const std::set<std::string>& roots() const { return roots_; }

    // Ids of all stored synsets, lexicographically sorted.
    std::vector<std::string> ids() const;

    // Lowercase hex SHA-256 of the portable-format bytes this taxonomy
    // was parsed from.
    const std::string& fingerprint() const { return fingerprint_; }

private:
    friend Taxonomy parse_portable_taxonomy(std::istream&);

    std::unordered_map<std::string, Synset> synsets_;
    std::map<std::pair<std::string, char>, std::vector<std::string>> lemma_index_;
    std::set<std::string> roots_;
    std::string fingerprint_;
};

// Parses the portable tab-separated taxonomy format. One record per line:
// id, pos, comma-separated lemmas, gloss, "|"-separated examples,
// comma-separated hypernym ids. Lines starting with '#' are comments.
// Throws Error on malformed lines (with line number), duplicate ids,
// dangling hypernym references and cycles.
Taxonomy parse_portable_taxonomy(std::istream& in);

// Reads and parses a portable taxonomy file.
Taxonomy load_portable_taxonomy(const std::filesystem::path& path);

// All ancestors of `id` (following every hypernym parent transitively),
// plus `id` itself. Order: breadth-first from `id`, each distance level
// sorted lexicographically. Throws Error for unknown ids.
std::vector<std::string> hypernym_closure(const Taxonomy& taxonomy, const std::string& id);

// Same closure annotated with the minimum edge distance above `id`
// (0 for `id` itself, 1 for its direct hypernyms, ...).
std::vector<std::pair<std::string, int>> hypernym_closure_with_distance(
    const Taxonomy& taxonomy, const std::string& id);

}  // namespace taxvec
