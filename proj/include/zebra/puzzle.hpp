// puzzle.hpp -- logic grid puzzles, structured clues, and answer keys

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace zebra {

enum class CategoryKind { Nominal, Ordinal };

struct Category {
  std::string name;
  CategoryKind kind = CategoryKind::Nominal;
  std::vector<std::string> values;  // ordered; ordinal values are positions
};

enum class ClueKind { Is, IsNot, Offset, Neighbor, EitherOr, Before };

// One structured clue. `a`/`b` are value labels (any category, or an anchor
// entity). `c` is used by EitherOr only. `category` names the ordinal
// category for positional clues; `k` is the Offset distance.
struct StructuredClue {
  ClueKind kind = ClueKind::Is;
  std::string a;
  std::string b;
  std::string c;
  std::string category;
  int k = 0;
};

struct SolutionKey {
  std::string anchor_category;
  // anchor value -> (category name -> value label), for every non-anchor
  // category.
  std::map<std::string, std::map<std::string, std::string>> rows;
};

struct Puzzle {
  std::string id;
  std::string source;
  std::string difficulty = "unknown";
  std::vector<Category> categories;
  std::vector<std::string> clues;
  std::vector<StructuredClue> structured_clues;
  bool has_structured_clues = false;
  SolutionKey solution;

  std::size_t grid_size() const;  // N, the shared category cardinality
  const Category& anchor() const;
  const Category* find_category(const std::string& name) const;

  // Locates a value label (normalized match) across all categories.
  // Returns {category index, value index} or nullopt.
  std::optional<std::pair<std::size_t, std::size_t>> find_value(
      const std::string& label) const;
};

struct ValidationIssue {
  std::string check;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> failures;
  std::size_t assignment_count = 0;  // N * (#categories - 1) when valid
  bool ok() const { return failures.empty(); }
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Checks the structural invariants of one puzzle: category shape, value
// distinctness, clue references, and that the answer key is a complete
// bijection per category.
ValidationReport validate_key(const Puzzle& puzzle);

// Loads and validates a puzzle dataset (JSON array, one document per
// puzzle). Throws ParseError on malformed input and ValidationError naming
// the puzzle and field on invariant violations.
std::vector<Puzzle> load_dataset(const std::string& path);

std::vector<Puzzle> parse_dataset(const std::string& json_text);
std::string serialize_dataset(const std::vector<Puzzle>& puzzles);

}  // namespace zebra
