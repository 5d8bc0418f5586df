#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "loopforge/loop_table.hpp"
#include "loopforge/permutation.hpp"

namespace loopforge {

// Cayley-table text format:
//
//   # comment
//   3
//   0 1 2
//   1 2 0
//   2 0 1
//   identity 0      (optional; auto-detected otherwise)
//
// `source` names the input in error messages ("file:line: ...").
LoopTable parse_table(std::string_view text, const std::string& source = "<input>");
LoopTable read_table_file(const std::filesystem::path& path);

// Emits the format above, always including the identity line.
std::string format_table(const LoopTable& g);

// Reads tables separated by blank lines or comments from a stream of blocks
// in the format above (the enumerate/witness output).
std::vector<LoopTable> parse_table_stream(std::string_view text,
                                          const std::string& source = "<input>");

// Permutation file: one non-comment line of n space-separated images.
Permutation parse_permutation(std::string_view text,
                              const std::string& source = "<input>");
Permutation read_permutation_file(const std::filesystem::path& path);
std::string format_permutation(const Permutation& p);

// Triple file: three non-comment permutation lines, A then B then C.
MappingTriple parse_triple(std::string_view text,
                           const std::string& source = "<input>");
MappingTriple read_triple_file(const std::filesystem::path& path);
std::string format_triple(const MappingTriple& t);

}  // namespace loopforge
