// test_grader.cpp

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "zebra/encoder.hpp"
#include "zebra/grader.hpp"
#include "zebra/puzzle.hpp"

using namespace zebra;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<Puzzle> fixtures() {
  return load_dataset(FIXTURES_DIR "/puzzles.json");
}

const Puzzle& by_id(const std::vector<Puzzle>& ps, const std::string& id) {
  for (const auto& p : ps) {
    if (p.id == id) return p;
  }
  REQUIRE(false);
  return ps.front();
}

GradeReport grade_houses_sample() {
  auto ps = fixtures();
  const Puzzle& houses = by_id(ps, "three-houses");
  std::string raw = read_file(FIXTURES_DIR "/solver_output/houses_model.txt");
  SolverOutcome out = parse_outcome(raw);
  // The sample carries its lookup table in its own comment lines.
  SmtScript script{raw, ScriptProvenance::Agent, 1};
  return grade(out, script, houses);
}

}  // namespace

TEST_CASE("worked sample model grades 8 of 12") {
  GradeReport report = grade_houses_sample();
  CHECK(report.total_matches == 12);
  CHECK(report.correct_matches == 8);
  CHECK(report.partial_score == doctest::Approx(8.0 / 12.0).epsilon(1e-9));
  CHECK_FALSE(report.solved_fully);
  CHECK_FALSE(report.no_model);

  // The verdict pattern: colors and nationalities all correct, one animal
  // and one sport correct.
  int color = 0, nat = 0, animal = 0, sport = 0;
  for (const auto& v : report.verdicts) {
    if (v.verdict != Verdict::Correct) continue;
    if (v.assignment.category == "Color") ++color;
    if (v.assignment.category == "Nationality") ++nat;
    if (v.assignment.category == "Animal") ++animal;
    if (v.assignment.category == "Sport") ++sport;
  }
  CHECK(color == 3);
  CHECK(nat == 3);
  CHECK(animal == 1);
  CHECK(sport == 1);
}

TEST_CASE("recorded ostrich model gets full credit") {
  auto ps = fixtures();
  const Puzzle& ostrich = by_id(ps, "ostrich-race");
  std::string raw = read_file(FIXTURES_DIR "/solver_output/ostrich_errors.txt");
  SolverOutcome out = parse_outcome(raw);
  GradeReport report = grade(out, {"", ScriptProvenance::Agent, 2}, ostrich);
  CHECK(report.correct_matches == 8);
  CHECK(report.total_matches == 8);
  CHECK(report.partial_score == doctest::Approx(1.0));
  CHECK(report.solved_fully);
}

TEST_CASE("empty model scores zero over the full total") {
  auto ps = fixtures();
  const Puzzle& houses = by_id(ps, "three-houses");
  SolverOutcome out;
  out.status = SolveStatus::Sat;
  GradeReport report = grade(out, {"", ScriptProvenance::Agent, 1}, houses);
  CHECK(report.no_model);
  CHECK(report.correct_matches == 0);
  CHECK(report.total_matches == 12);
  CHECK_FALSE(report.solved_fully);
}

TEST_CASE("missing cells count as incorrect against the full total") {
  auto ps = fixtures();
  const Puzzle& lanes = by_id(ps, "lane-pets");
  std::vector<Assignment> partial = {{"Lane 1", "Color", "Crimson"}};
  GradeReport report = grade_assignments(partial, lanes);
  CHECK(report.total_matches == 6);
  CHECK(report.correct_matches == 1);
  int unmapped = 0;
  for (const auto& v : report.verdicts) {
    if (v.verdict == Verdict::Unmapped) ++unmapped;
  }
  CHECK(unmapped == 5);
}

TEST_CASE("grading tolerates case, underscore, and spacing differences") {
  auto ps = fixtures();
  const Puzzle& lanes = by_id(ps, "lane-pets");
  std::vector<Assignment> exact;
  for (const auto& [entity, row] : lanes.solution.rows) {
    for (const auto& [cat, value] : row) exact.push_back({entity, cat, value});
  }
  REQUIRE(grade_assignments(exact, lanes).solved_fully);

  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    auto perturb = [&](std::string s) {
      for (auto& c : s) {
        if (std::isalpha(static_cast<unsigned char>(c)) && rng() % 2) {
          c = static_cast<char>(rng() % 2 ? std::toupper(c) : std::tolower(c));
        }
      }
      if (rng() % 2) {
        for (auto& c : s) {
          if (c == ' ') c = '_';
        }
      }
      if (rng() % 3 == 0) s = " " + s + " ";
      return s;
    };
    std::vector<Assignment> messy;
    for (const auto& a : exact) {
      messy.push_back({perturb(a.entity), perturb(a.category), perturb(a.value)});
    }
    GradeReport report = grade_assignments(messy, lanes);
    CHECK(report.solved_fully);
  }
}

TEST_CASE("ordinal positions and ordinal words grade alike") {
  auto ps = fixtures();
  const Puzzle& ostrich = by_id(ps, "ostrich-race");
  std::vector<Assignment> words = {
      {"Kermit", "Place", "First"},   {"Ophelia", "Place", "second"},
      {"Stretch", "Place", "Third"},  {"Bridget", "Place", "fourth"},
      {"Kermit", "Number", "118"},    {"Ophelia", "Number", "128"},
      {"Stretch", "Number", "126"},   {"Bridget", "Number", "105"}};
  std::vector<Assignment> positions = words;
  positions[0].value = "1";
  positions[1].value = "2";
  positions[2].value = "3";
  positions[3].value = "4";
  CHECK(grade_assignments(words, ostrich).solved_fully);
  CHECK(grade_assignments(positions, ostrich).solved_fully);
}

TEST_CASE("a key built from the decoded model grades itself 1.0") {
  auto ps = fixtures();
  Puzzle lanes = by_id(ps, "lane-pets");
  SolverConfig cfg;
  cfg.executable = SMTLITE_PATH;
  SmtScript script = encode(lanes);
  SolverOutcome out = run_solver(script, cfg);
  DecodeResult decoded = decode_model(out, lanes, script.text);
  Puzzle self = lanes;
  self.solution.rows.clear();
  for (const auto& a : decoded.assignments) {
    self.solution.rows[a.entity][a.category] = a.value;
  }
  CHECK(grade_assignments(decoded.assignments, self).solved_fully);
}

TEST_CASE("batch summaries aggregate partial scores and solve counts") {
  GradeReport full;
  full.correct_matches = 6;
  full.total_matches = 6;
  full.partial_score = 1.0;
  full.solved_fully = true;
  GradeReport half;
  half.correct_matches = 3;
  half.total_matches = 6;
  half.partial_score = 0.5;

  BatchSummary two = summarize_batch({{"a", true, full}, {"b", false, half}});
  CHECK(two.avg_partial_score == doctest::Approx(0.75));
  CHECK(two.solved_count == 1);
  CHECK(two.solved_pct == doctest::Approx(50.0));

  GradeReport none;
  none.total_matches = 6;
  none.no_model = true;
  BatchSummary empty = summarize_batch({{"a", false, none}, {"b", false, none}});
  CHECK(empty.avg_partial_score == doctest::Approx(0.0));
  CHECK(empty.solved_count == 0);
}
