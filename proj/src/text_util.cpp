// text_util.cpp

#include "zebra/text_util.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace zebra {

std::string normalize_label(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) {
    if (std::isspace(c) || c == '_') continue;
    out.push_back(static_cast<char>(std::tolower(c)));
  }
  return out;
}

std::optional<int> ordinal_value(std::string_view label) {
  static constexpr std::array<std::string_view, 10> kWords = {
      "first", "second", "third",   "fourth", "fifth",
      "sixth", "seventh", "eighth", "ninth",  "tenth"};
  std::string n = normalize_label(label);
  if (!n.empty() && std::all_of(n.begin(), n.end(), [](unsigned char c) {
        return std::isdigit(c);
      })) {
    if (n.size() > 9) return std::nullopt;
    return std::stoi(n);
  }
  for (std::size_t i = 0; i < kWords.size(); ++i) {
    if (n == kWords[i]) return static_cast<int>(i) + 1;
  }
  return std::nullopt;
}

std::string sanitize_symbol(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (unsigned char c : s) {
    out.push_back(std::isalnum(c) ? static_cast<char>(c) : '_');
  }
  if (out.empty()) out = "_";
  return out;
}

std::string SymbolTable::intern(std::string_view raw) {
  std::string base = sanitize_symbol(raw);
  std::string candidate = base;
  int suffix = 2;
  while (std::find(used_.begin(), used_.end(), candidate) != used_.end()) {
    candidate = base + "_" + std::to_string(suffix++);
  }
  used_.push_back(candidate);
  return candidate;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < text.size()) lines.emplace_back(text.substr(start));
      break;
    }
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    start = nl + 1;
  }
  return lines;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

namespace {

// LCS table over lines; inputs here are small (scripts, transcripts).
std::vector<std::vector<int>> lcs_table(const std::vector<std::string>& a,
                                        const std::vector<std::string>& b) {
  std::vector<std::vector<int>> t(a.size() + 1,
                                  std::vector<int>(b.size() + 1, 0));
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      t[i][j] = a[i - 1] == b[j - 1] ? t[i - 1][j - 1] + 1
                                     : std::max(t[i - 1][j], t[i][j - 1]);
    }
  }
  return t;
}

}  // namespace

double line_similarity(const std::vector<std::string>& a,
                       const std::vector<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  auto t = lcs_table(a, b);
  return 2.0 * t[a.size()][b.size()] /
         static_cast<double>(a.size() + b.size());
}

double line_similarity(std::string_view a, std::string_view b) {
  return line_similarity(split_lines(a), split_lines(b));
}

std::vector<std::string> line_diff(const std::vector<std::string>& a,
                                   const std::vector<std::string>& b) {
  auto t = lcs_table(a, b);
  std::vector<std::string> out;
  std::size_t i = a.size(), j = b.size();
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && a[i - 1] == b[j - 1]) {
      --i;
      --j;
    } else if (j > 0 && (i == 0 || t[i][j - 1] >= t[i - 1][j])) {
      out.push_back("+ " + b[--j]);
    } else {
      out.push_back("- " + a[--i]);
    }
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace zebra
