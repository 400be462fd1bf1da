// encoder.hpp -- deterministic structured-clue to SMT-LIB compiler

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "zebra/grader.hpp"
#include "zebra/puzzle.hpp"
#include "zebra/smt.hpp"

namespace zebra {

class EncodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Compiles a puzzle's structured clues into an SMT-LIB script: one Int
// constant per (anchor entity x non-anchor category), domain disjunctions,
// per-category distinct assertions, one assertion per clue, lookup-table
// comments for nominal categories, and a trailing (check-sat)(get-model).
// Output is byte-deterministic for a given puzzle.
// Throws EncodeError when structured clues are missing or reference
// unknown values.
SmtScript encode(const Puzzle& puzzle);

struct DecodeIssue {
  std::string name;   // define-fun constant name
  std::string kind;   // "unmapped-code" or "unknown-name"
  std::string detail;
};

struct DecodeResult {
  std::vector<Assignment> assignments;
  std::vector<DecodeIssue> issues;
};

// Maps sat-model define-funs named <Entity>_<Category> back to assignments.
// Nominal Int codes go through the script's lookup table; ordinal values
// stay as positions. Problem entries are reported and skipped.
DecodeResult decode_model(const SolverOutcome& outcome, const Puzzle& puzzle,
                          const std::string& script_text);

enum class Uniqueness { Unique, NotUnique };

// Re-solves the encoded puzzle with the model's equalities negated; unsat
// means the model was the only solution.
Uniqueness check_uniqueness(const Puzzle& puzzle,
                            const SolverOutcome& outcome,
                            const SolverConfig& cfg);

}  // namespace zebra
