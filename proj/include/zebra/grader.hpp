// grader.hpp -- deterministic autograding against the answer key

#pragma once

#include <string>
#include <vector>

#include "zebra/puzzle.hpp"
#include "zebra/smt.hpp"

namespace zebra {

// One decoded cell: anchor entity x non-anchor category -> value label or
// ordinal position rendered as text.
struct Assignment {
  std::string entity;
  std::string category;
  std::string value;
};

enum class Verdict { Correct, Incorrect, Unmapped };

struct GradedAssignment {
  Assignment assignment;
  Verdict verdict = Verdict::Incorrect;
  std::string expected;
};

struct GradeReport {
  std::vector<GradedAssignment> verdicts;
  int correct_matches = 0;
  int total_matches = 0;
  double partial_score = 0.0;  // correct / total
  bool solved_fully = false;
  bool no_model = false;
};

// Grades a solver outcome: decodes the model (using the script's lookup
// comments for nominal codes) and compares every expected cell. Cells the
// model never assigned count as incorrect; total_matches is always
// N * (#categories - 1).
GradeReport grade(const SolverOutcome& outcome, const SmtScript& script,
                  const Puzzle& puzzle);

// Grades pre-decoded assignments directly.
GradeReport grade_assignments(const std::vector<Assignment>& assignments,
                              const Puzzle& puzzle);

struct BatchRow {
  std::string puzzle_id;
  bool converged = false;
  GradeReport report;
};

struct BatchSummary {
  std::vector<BatchRow> rows;
  double avg_partial_score = 0.0;
  int solved_count = 0;
  double solved_pct = 0.0;
};

BatchSummary summarize_batch(const std::vector<BatchRow>& rows);

}  // namespace zebra
