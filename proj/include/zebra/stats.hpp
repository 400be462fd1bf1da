// stats.hpp -- agreement statistics between two graders

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace zebra {

struct GradePair {
  std::string id;
  double auto_grade = 0.0;   // in [0,1]
  double human_grade = 0.0;  // in [0,1]
};

struct StatsReport {
  double avg_abs_diff = 0.0;
  // Signed mean of 100*(auto-human)/human over pairs with human > 0;
  // positive means the auto grader overestimated. Unset when no such pair.
  std::optional<double> avg_rel_diff_pct;
  double pct_over = 0.0;
  double pct_under = 0.0;
  double pct_exact = 0.0;
  // |both full credit| / |either full credit| * 100; unset on 0/0.
  std::optional<double> joint_full_credit_pct;
  // Pearson correlation of average-ranked grades; unset when either vector
  // has constant rank.
  std::optional<double> spearman;
};

class StatsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws StatsError on an empty set or duplicate ids.
StatsReport compute_stats(const std::vector<GradePair>& pairs);

// Fixed-row text table (7 rows); undefined entries render as "n/a".
std::string render_stats(const StatsReport& report);

// Average ranks (ties get the mean of their rank range), 1-based.
std::vector<double> average_ranks(const std::vector<double>& values);

std::vector<GradePair> load_grade_pairs(const std::string& path);

}  // namespace zebra
