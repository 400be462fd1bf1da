// acceptance.cpp -- end-to-end acceptance checks, one pass/fail line each

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "zebra/agents.hpp"
#include "zebra/cli.hpp"
#include "zebra/encoder.hpp"
#include "zebra/grader.hpp"
#include "zebra/puzzle.hpp"
#include "zebra/smt.hpp"
#include "zebra/stats.hpp"

using namespace zebra;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw CheckFailure(what);
}

std::vector<Puzzle> fixtures() {
  return load_dataset(FIXTURES_DIR "/puzzles.json");
}

const Puzzle& by_id(const std::vector<Puzzle>& ps, const std::string& id) {
  for (const auto& p : ps) {
    if (p.id == id) return p;
  }
  throw CheckFailure("fixture puzzle " + id + " missing");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckFailure("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

SolverConfig local_solver() {
  SolverConfig cfg;
  cfg.executable = SMTLITE_PATH;
  return cfg;
}

RunConfig local_run() {
  RunConfig cfg;
  cfg.solver = local_solver();
  return cfg;
}

class SilentClient : public LlmClient {
 public:
  std::string complete(const std::vector<Message>&, double) override {
    return "I cannot produce a script for this puzzle.";
  }
};

// ---------------------------------------------------------------------------

// Criterion 1: the recorded two-turn session replays deterministically:
// a first script with a dozen syntax errors, then a corrected script whose
// model earns full credit.
void criterion_golden_replay() {
  auto start = Clock::now();
  auto ps = fixtures();
  const Puzzle& ostrich = by_id(ps, "ostrich-race");
  ScriptedClient client(ScriptedClient::responses_from_file(
      FIXTURES_DIR "/transcripts/ostrich_golden.json"));
  RunResult result = run_feedback_loop(ostrich, client, local_run());

  require(result.converged, "run did not converge");
  require(result.attempts.size() == 1, "expected a single attempt");
  const AttemptRecord& attempt = result.attempts[0];
  require(attempt.iterations.size() == 2, "expected exactly two actions");
  const auto& first = attempt.iterations[0];
  require(first.evaluation == Evaluation::ErrorsPresent,
          "first action should hit syntax errors");
  require(first.outcome && first.outcome->errors.size() >= 12,
          "first action should report at least 12 errors");
  require(first.outcome->errors[0].line == 15 &&
              first.outcome->errors[0].column == 0,
          "first error should be at line 15 column 0");
  const auto& second = attempt.iterations[1];
  require(second.evaluation == Evaluation::SatNoErrors,
          "second action should be a clean sat");
  require(second.outcome && second.outcome->errors.empty(),
          "second action should be error-free");

  GradeReport report =
      grade(*result.final_outcome, *result.final_script, ostrich);
  require(report.correct_matches == 8 && report.total_matches == 8,
          "final model should grade 8/8");
  require(report.solved_fully && report.partial_score == 1.0,
          "final model should earn full credit");

  auto elapsed = Clock::now() - start;
  require(elapsed < std::chrono::seconds(5), "replay exceeded 5 seconds");
}

// Criterion 2: the worked three-houses sample model grades to exactly 8 of
// 12 matches.
void criterion_sample_grading() {
  auto ps = fixtures();
  const Puzzle& houses = by_id(ps, "three-houses");
  std::string raw = read_file(FIXTURES_DIR "/solver_output/houses_model.txt");
  SolverOutcome out = parse_outcome(raw);
  GradeReport report = grade(out, {raw, ScriptProvenance::Agent, 1}, houses);
  require(report.total_matches == 12, "total should be 12");
  require(report.correct_matches == 8, "correct should be 8");
  require(std::fabs(report.partial_score - 2.0 / 3.0) < 1e-9,
          "partial score should be 2/3");
}

// Criterion 3: the reference encoder round-trips every bundled puzzle to
// full credit, and the clued puzzles pin a unique solution.
void criterion_reference_roundtrip() {
  for (const auto& p : fixtures()) {
    auto start = Clock::now();
    SmtScript script = encode(p);
    SolverOutcome out = run_solver(script, local_solver());
    require(out.status == SolveStatus::Sat, p.id + ": not sat");
    require(out.errors.empty(), p.id + ": encoder script raised errors");
    DecodeResult decoded = decode_model(out, p, script.text);
    require(decoded.issues.empty(), p.id + ": decode issues");
    GradeReport report = grade_assignments(decoded.assignments, p);
    require(report.solved_fully, p.id + ": round-trip not fully solved");
    require(check_uniqueness(p, out, local_solver()) == Uniqueness::Unique,
            p.id + ": solution not unique");
    require(Clock::now() - start < std::chrono::seconds(2),
            p.id + ": round-trip exceeded 2 seconds");
  }
}

// Criterion 4: a client that never yields a script exhausts the whole
// temperature schedule with cold starts and a bounded action budget.
void criterion_schedule_exhaustion() {
  auto ps = fixtures();
  const Puzzle& ostrich = by_id(ps, "ostrich-race");

  ScriptedClient plain({"no script here"});
  RunResult result = run_feedback_loop(ostrich, plain, local_run());
  require(!result.converged, "prose-only run must not converge");
  require(result.attempts.size() == 3, "expected 3 attempts");
  const double expected_tau[] = {0.0, 0.0001, 0.01};
  for (int i = 0; i < 3; ++i) {
    require(result.attempts[i].temperature == expected_tau[i],
            "unexpected temperature schedule");
    require(result.attempts[i].iterations.size() == 4,
            "each attempt should spend 4 actions");
  }
  require(result.total_client_calls == 12, "expected 12 client calls");

  SilentClient silent;
  RunConfig with_decomp = local_run();
  with_decomp.decomposition_enabled = true;
  RunResult decomp = run_feedback_loop(ostrich, silent, with_decomp);
  require(decomp.total_client_calls == 15,
          "decomposition should add one call per attempt");
}

// Criterion 5: the agreement statistics match an independent brute-force
// oracle on randomized grade sets.
void criterion_stats_oracle() {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> g(0.0, 1.0);
  int compared = 0;
  for (int trial = 0; trial < 150; ++trial) {
    int n = 3 + static_cast<int>(rng() % 10);
    std::vector<GradePair> pairs;
    std::vector<double> a, h;
    for (int i = 0; i < n; ++i) {
      a.push_back(std::round(g(rng) * 4) / 4.0);
      h.push_back(std::round(g(rng) * 4) / 4.0);
      pairs.push_back({"p" + std::to_string(i), a.back(), h.back()});
    }
    StatsReport r = compute_stats(pairs);
    require(std::fabs(r.pct_over + r.pct_under + r.pct_exact - 100.0) < 1e-9,
            "over/under/exact must sum to 100");

    // Brute-force rank correlation.
    auto ranks = [](const std::vector<double>& v) {
      std::vector<double> out(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) {
        int less = 0, equal = 0;
        for (double w : v) {
          if (w < v[i]) ++less;
          if (w == v[i]) ++equal;
        }
        out[i] = less + (equal + 1) / 2.0;
      }
      return out;
    };
    auto pearson = [](const std::vector<double>& x,
                      const std::vector<double>& y) -> std::optional<double> {
      double n = static_cast<double>(x.size()), mx = 0, my = 0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
      }
      mx /= n;
      my /= n;
      double sxy = 0, sxx = 0, syy = 0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
      }
      if (sxx == 0 || syy == 0) return std::nullopt;
      return sxy / std::sqrt(sxx * syy);
    };
    auto expected = pearson(ranks(a), ranks(h));
    require(r.spearman.has_value() == expected.has_value(),
            "rank correlation definedness mismatch");
    if (expected) {
      ++compared;
      require(std::fabs(*r.spearman - *expected) < 1e-9,
              "rank correlation deviates from the oracle");

      // Monotone transform of the auto grades must not move it.
      std::vector<GradePair> mapped = pairs;
      for (auto& p : mapped) {
        double x = p.auto_grade;
        p.auto_grade = 2.0 * x * x * x + 0.5 * x - 1.0;
      }
      auto after = compute_stats(mapped).spearman;
      require(after && std::fabs(*after - *r.spearman) < 1e-9,
              "rank correlation not monotone-invariant");
    }
  }
  require(compared >= 100, "fewer than 100 defined-correlation samples");
}

// Criterion 6: scripted batch runs are fully reproducible.
void criterion_reproducibility() {
  fs::path base = fs::temp_directory_path() /
                  ("zebra-accept-" + std::to_string(
                                         Clock::now().time_since_epoch().count()));
  AppConfig cfg;
  cfg.dataset_path = FIXTURES_DIR "/puzzles.json";
  cfg.solver = local_solver();
  cfg.run.solver = cfg.solver;
  cfg.backend = ClientBackend::Scripted;
  cfg.transcript_path = FIXTURES_DIR "/transcripts/ostrich_golden.json";

  std::string outputs[2];
  for (int round = 0; round < 2; ++round) {
    cfg.output_dir = (base / ("run" + std::to_string(round))).string();
    std::ostringstream out, err;
    int code = cmd_batch(cfg.dataset_path, cfg, out, err);
    require(code == kExitSolved, "batch run failed: " + err.str());
    outputs[round] = out.str();
  }
  require(outputs[0] == outputs[1], "batch stdout differs between runs");
  for (const auto& entry : fs::directory_iterator(base / "run0")) {
    std::string name = entry.path().filename().string();
    require(read_file(entry.path().string()) ==
                read_file((base / "run1" / name).string()),
            "artifact " + name + " differs between runs");
  }
  fs::remove_all(base);
}

// Criterion 7: the batch summary carries the fixed five-column layout.
void criterion_summary_shape() {
  fs::path base = fs::temp_directory_path() /
                  ("zebra-summary-" +
                   std::to_string(Clock::now().time_since_epoch().count()));
  AppConfig cfg;
  cfg.dataset_path = FIXTURES_DIR "/puzzles.json";
  cfg.solver = local_solver();
  cfg.run.solver = cfg.solver;
  cfg.backend = ClientBackend::ReferenceEncoder;
  cfg.run.model_name = "reference-encoder";
  cfg.output_dir = base.string();
  std::ostringstream out, err;
  int code = cmd_batch(cfg.dataset_path, cfg, out, err);
  require(code == kExitSolved, "batch run failed: " + err.str());

  std::string summary = read_file((base / "batch_summary.csv").string());
  std::istringstream lines(summary);
  std::string header, row, extra;
  require(static_cast<bool>(std::getline(lines, header)), "summary empty");
  require(header == "Model,T,D,Avg. PS,#Solved", "unexpected summary header");
  require(static_cast<bool>(std::getline(lines, row)), "summary has no row");
  require(!std::getline(lines, extra), "summary has extra rows");
  require(row == "reference-encoder,Var.,No,1.000,3 (100.0%)",
          "unexpected summary row");
  fs::remove_all(base);
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void()> run;
  };
  const Criterion criteria[] = {
      {"golden-replay", criterion_golden_replay},
      {"sample-grading", criterion_sample_grading},
      {"reference-roundtrip", criterion_reference_roundtrip},
      {"schedule-exhaustion", criterion_schedule_exhaustion},
      {"stats-oracle", criterion_stats_oracle},
      {"reproducibility", criterion_reproducibility},
      {"summary-shape", criterion_summary_shape},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    try {
      c.run();
      std::cout << "[pass] " << c.name << "\n";
    } catch (const std::exception& e) {
      ++failures;
      std::cout << "[fail] " << c.name << ": " << e.what() << "\n";
    }
  }
  return failures == 0 ? 0 : 1;
}
