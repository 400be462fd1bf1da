// stats.cpp

#include "zebra/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace zebra {

namespace {

constexpr double kExactTolerance = 1e-9;

}  // namespace

std::vector<double> average_ranks(const std::vector<double>& values) {
  std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    double mean_rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

StatsReport compute_stats(const std::vector<GradePair>& pairs) {
  if (pairs.empty()) throw StatsError("empty grade-pair set");
  std::set<std::string> ids;
  for (const auto& p : pairs) {
    if (!ids.insert(p.id).second) {
      throw StatsError("duplicate problem id '" + p.id + "'");
    }
  }

  StatsReport r;
  const double n = static_cast<double>(pairs.size());
  double abs_sum = 0.0, rel_sum = 0.0;
  int rel_count = 0, over = 0, under = 0, exact = 0;
  int both_full = 0, either_full = 0;
  for (const auto& p : pairs) {
    double d = p.auto_grade - p.human_grade;
    abs_sum += std::abs(d);
    if (p.human_grade > 0.0) {
      rel_sum += 100.0 * d / p.human_grade;
      ++rel_count;
    }
    if (std::abs(d) <= kExactTolerance) {
      ++exact;
    } else if (d > 0) {
      ++over;
    } else {
      ++under;
    }
    bool af = std::abs(p.auto_grade - 1.0) <= kExactTolerance;
    bool hf = std::abs(p.human_grade - 1.0) <= kExactTolerance;
    if (af && hf) ++both_full;
    if (af || hf) ++either_full;
  }
  r.avg_abs_diff = abs_sum / n;
  if (rel_count > 0) r.avg_rel_diff_pct = rel_sum / rel_count;
  r.pct_over = 100.0 * over / n;
  r.pct_under = 100.0 * under / n;
  r.pct_exact = 100.0 * exact / n;
  if (either_full > 0) {
    r.joint_full_credit_pct = 100.0 * both_full / either_full;
  }

  std::vector<double> av, hv;
  av.reserve(pairs.size());
  hv.reserve(pairs.size());
  for (const auto& p : pairs) {
    av.push_back(p.auto_grade);
    hv.push_back(p.human_grade);
  }
  std::vector<double> ar = average_ranks(av), hr = average_ranks(hv);
  double am = std::accumulate(ar.begin(), ar.end(), 0.0) / n;
  double hm = std::accumulate(hr.begin(), hr.end(), 0.0) / n;
  double num = 0.0, da = 0.0, dh = 0.0;
  for (std::size_t i = 0; i < ar.size(); ++i) {
    num += (ar[i] - am) * (hr[i] - hm);
    da += (ar[i] - am) * (ar[i] - am);
    dh += (hr[i] - hm) * (hr[i] - hm);
  }
  if (da > 0.0 && dh > 0.0) {
    r.spearman = num / std::sqrt(da * dh);
  }
  return r;
}

std::string render_stats(const StatsReport& r) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2);
  auto row = [&](const std::string& label, std::optional<double> value,
                 int precision) {
    os << std::left << std::setw(28) << label << std::right;
    if (value) {
      os << std::setprecision(precision) << *value;
    } else {
      os << "n/a";
    }
    os << "\n";
  };
  row("Exact Match (%)", r.pct_exact, 2);
  row("Avg. Abs. Diff", r.avg_abs_diff, 3);
  row("Avg. Rel. Diff (%)", r.avg_rel_diff_pct, 2);
  row("LLM Overestimated (%)", r.pct_over, 2);
  row("LLM Underestimated (%)", r.pct_under, 2);
  row("Joint Full Credit (%)", r.joint_full_credit_pct, 2);
  row("Spearman Correlation", r.spearman, 3);
  return os.str();
}

std::vector<GradePair> load_grade_pairs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StatsError("cannot open grade-pairs file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw StatsError(std::string("malformed grade-pairs file: ") + e.what());
  }
  if (!doc.is_array()) throw StatsError("grade-pairs file must be a JSON array");
  std::vector<GradePair> pairs;
  for (const auto& j : doc) {
    GradePair p;
    p.id = j.at("id").get<std::string>();
    p.auto_grade = j.at("auto").get<double>();
    p.human_grade = j.at("human").get<double>();
    pairs.push_back(std::move(p));
  }
  return pairs;
}

}  // namespace zebra
