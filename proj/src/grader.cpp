// grader.cpp

#include "zebra/grader.hpp"

#include "zebra/encoder.hpp"
#include "zebra/text_util.hpp"

namespace zebra {

namespace {

// Labels match when they normalize identically or both carry the same
// ordinal value ("2" vs "Second", "118" vs "118").
bool values_equivalent(const std::string& got, const std::string& expected) {
  if (normalize_label(got) == normalize_label(expected)) return true;
  auto a = ordinal_value(got);
  auto b = ordinal_value(expected);
  return a && b && *a == *b;
}

const std::map<std::string, std::string>* key_row(const Puzzle& p,
                                                  const std::string& entity) {
  for (const auto& [anchor_value, row] : p.solution.rows) {
    if (normalize_label(anchor_value) == normalize_label(entity)) return &row;
  }
  return nullptr;
}

const std::string* key_value(const std::map<std::string, std::string>& row,
                             const std::string& category) {
  for (const auto& [cat, value] : row) {
    if (normalize_label(cat) == normalize_label(category)) return &value;
  }
  return nullptr;
}

}  // namespace

GradeReport grade_assignments(const std::vector<Assignment>& assignments,
                              const Puzzle& p) {
  GradeReport report;
  const Category& anchor = p.anchor();
  for (const auto& entity : anchor.values) {
    const auto* row = key_row(p, entity);
    for (const auto& cat : p.categories) {
      if (normalize_label(cat.name) == normalize_label(anchor.name)) continue;
      ++report.total_matches;
      GradedAssignment ga;
      ga.assignment.entity = entity;
      ga.assignment.category = cat.name;
      const std::string* expected =
          row ? key_value(*row, cat.name) : nullptr;
      if (expected) ga.expected = *expected;

      const Assignment* found = nullptr;
      for (const auto& a : assignments) {
        if (normalize_label(a.entity) == normalize_label(entity) &&
            normalize_label(a.category) == normalize_label(cat.name)) {
          found = &a;
          break;
        }
      }
      if (!found) {
        ga.verdict = Verdict::Unmapped;  // missing cells count as incorrect
      } else {
        ga.assignment.value = found->value;
        bool correct = expected && values_equivalent(found->value, *expected);
        ga.verdict = correct ? Verdict::Correct : Verdict::Incorrect;
        if (correct) ++report.correct_matches;
      }
      report.verdicts.push_back(std::move(ga));
    }
  }
  report.partial_score =
      report.total_matches == 0
          ? 0.0
          : static_cast<double>(report.correct_matches) / report.total_matches;
  report.solved_fully = report.total_matches > 0 &&
                        report.correct_matches == report.total_matches;
  return report;
}

GradeReport grade(const SolverOutcome& outcome, const SmtScript& script,
                  const Puzzle& puzzle) {
  if (outcome.model.empty()) {
    GradeReport report = grade_assignments({}, puzzle);
    report.no_model = true;
    return report;
  }
  DecodeResult decoded = decode_model(outcome, puzzle, script.text);
  return grade_assignments(decoded.assignments, puzzle);
}

BatchSummary summarize_batch(const std::vector<BatchRow>& rows) {
  BatchSummary summary;
  summary.rows = rows;
  double total = 0.0;
  for (const auto& row : rows) {
    total += row.report.partial_score;
    if (row.report.solved_fully) ++summary.solved_count;
  }
  if (!rows.empty()) {
    summary.avg_partial_score = total / static_cast<double>(rows.size());
    summary.solved_pct =
        100.0 * summary.solved_count / static_cast<double>(rows.size());
  }
  return summary;
}

}  // namespace zebra
