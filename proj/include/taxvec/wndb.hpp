#pragma once

#include <filesystem>
#include <iosfwd>

namespace taxvec {

// Converts a WordNet 3.x plain-text database directory (data.{noun,verb,
// adj,adv} + index.{noun,verb,adj,adv}) to the portable taxonomy format.
// Hypernym (@) and instance-hypernym (@i) pointers become hypernym edges;
// adjective satellites are folded into pos 'a'. Synset ids are synthesized
// as "<first lemma>.<pos>.<sense number>" where the sense number is the
// synset's position in the index entry of its first lemma.
// Throws Error on unreadable files and malformed data lines (reported with
// their byte offset).
void convert_wndb(const std::filesystem::path& database_dir, std::ostream& out);

}  // namespace taxvec
