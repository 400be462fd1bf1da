// text_util.hpp -- label normalization, symbol sanitizing, line diffing

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zebra {

// Lowercases and strips whitespace and underscores. "Kermit_Place" and
// "kermit place" normalize to the same string.
std::string normalize_label(std::string_view s);

// Maps "first".."tenth" (case-insensitive) or a decimal numeral to its
// integer value. Returns nullopt for anything else.
std::optional<int> ordinal_value(std::string_view label);

// Replaces characters outside [A-Za-z0-9] with '_' so the result is a legal
// SMT-LIB simple symbol. Does not handle collisions; see SymbolTable.
std::string sanitize_symbol(std::string_view s);

// Sanitizes symbols and appends numeric suffixes on collision.
class SymbolTable {
 public:
  std::string intern(std::string_view raw);

 private:
  std::vector<std::string> used_;
};

std::vector<std::string> split_lines(std::string_view text);

std::string trim(std::string_view s);

// Similarity ratio 2*LCS/(|a|+|b|) over lines, in [0,1]. Two empty inputs
// compare as 1.
double line_similarity(const std::vector<std::string>& a,
                       const std::vector<std::string>& b);
double line_similarity(std::string_view a, std::string_view b);

// Line-level diff: entries prefixed "- " (only in a) and "+ " (only in b),
// in order. Common lines are omitted.
std::vector<std::string> line_diff(const std::vector<std::string>& a,
                                   const std::vector<std::string>& b);

}  // namespace zebra
