// test_encoder.cpp

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <fstream>
#include <map>
#include <sstream>

#include "doctest.h"
#include "zebra/encoder.hpp"
#include "zebra/grader.hpp"
#include "zebra/puzzle.hpp"

using namespace zebra;

namespace {

SolverConfig local_solver() {
  SolverConfig cfg;
  cfg.executable = SMTLITE_PATH;
  return cfg;
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

Puzzle zero_clue_pair() {
  Puzzle p;
  p.id = "pairs";
  p.categories = {{"Slot", CategoryKind::Ordinal, {"Slot 1", "Slot 2"}},
                  {"Fruit", CategoryKind::Nominal, {"Apple", "Pear"}}};
  p.clues = {"no constraints"};
  p.has_structured_clues = true;  // zero structured clues, but the list exists
  p.solution.anchor_category = "Slot";
  p.solution.rows = {{"Slot 1", {{"Fruit", "Apple"}}},
                     {"Slot 2", {{"Fruit", "Pear"}}}};
  return p;
}

}  // namespace

TEST_CASE("ostrich encoding solves to the published model") {
  auto ps = fixtures();
  const Puzzle& ostrich = by_id(ps, "ostrich-race");
  SmtScript script = encode(ostrich);
  CHECK(script.text.find("(set-logic QF_LIA)") == 0);
  CHECK(script.text.find("(assert (distinct") != std::string::npos);
  SolverOutcome out = run_solver(script, local_solver());
  REQUIRE(out.status == SolveStatus::Sat);
  CHECK(out.errors.empty());
  std::map<std::string, long long> values;
  for (const auto& df : out.model) values[df.name] = df.int_value;
  CHECK(values["Kermit_Place"] == 1);
  CHECK(values["Ophelia_Place"] == 2);
  CHECK(values["Stretch_Place"] == 3);
  CHECK(values["Bridget_Place"] == 4);
  CHECK(values["Kermit_Number"] == 118);
  CHECK(values["Ophelia_Number"] == 128);
  CHECK(values["Stretch_Number"] == 126);
  CHECK(values["Bridget_Number"] == 105);
}

TEST_CASE("zero-clue puzzle is sat but not unique") {
  Puzzle p = zero_clue_pair();
  SmtScript script = encode(p);
  SolverOutcome out = run_solver(script, local_solver());
  REQUIRE(out.status == SolveStatus::Sat);
  REQUIRE_FALSE(out.model.empty());
  CHECK(check_uniqueness(p, out, local_solver()) == Uniqueness::NotUnique);
}

TEST_CASE("every fixture round-trips encode -> solve -> decode -> grade 1.0") {
  for (const auto& p : fixtures()) {
    SmtScript script = encode(p);
    SolverOutcome out = run_solver(script, local_solver());
    REQUIRE(out.status == SolveStatus::Sat);
    CHECK(out.errors.empty());
    DecodeResult decoded = decode_model(out, p, script.text);
    CHECK(decoded.issues.empty());  // encoder codes always decode
    GradeReport report = grade_assignments(decoded.assignments, p);
    CHECK(report.solved_fully);
    CHECK(report.partial_score == doctest::Approx(1.0));
  }
}

TEST_CASE("ostrich and houses fixtures have unique solutions") {
  auto ps = fixtures();
  for (const char* id : {"ostrich-race", "three-houses"}) {
    const Puzzle& p = by_id(ps, id);
    SolverOutcome out = run_solver(encode(p), local_solver());
    REQUIRE(out.status == SolveStatus::Sat);
    CHECK(check_uniqueness(p, out, local_solver()) == Uniqueness::Unique);
  }
}

TEST_CASE("fully pinned puzzle is unique") {
  Puzzle p = zero_clue_pair();
  p.structured_clues = {{ClueKind::Is, "Slot 1", "Apple", "", "", 0},
                        {ClueKind::Is, "Slot 2", "Pear", "", "", 0}};
  SolverOutcome out = run_solver(encode(p), local_solver());
  REQUIRE(out.status == SolveStatus::Sat);
  CHECK(check_uniqueness(p, out, local_solver()) == Uniqueness::Unique);
}

TEST_CASE("decode maps the recorded ostrich model to 8 assignments") {
  auto ps = fixtures();
  const Puzzle& ostrich = by_id(ps, "ostrich-race");
  std::ifstream in(FIXTURES_DIR "/solver_output/ostrich_errors.txt");
  std::ostringstream buf;
  buf << in.rdbuf();
  SolverOutcome out = parse_outcome(buf.str());
  DecodeResult decoded = decode_model(out, ostrich, "");
  REQUIRE(decoded.assignments.size() == 8);
  CHECK(decoded.issues.empty());
  bool place = false, number = false;
  for (const auto& a : decoded.assignments) {
    if (a.entity == "Kermit" && a.category == "Place") {
      place = true;
      CHECK(a.value == "1");
    }
    if (a.entity == "Kermit" && a.category == "Number") {
      number = true;
      CHECK(a.value == "118");
    }
  }
  CHECK(place);
  CHECK(number);
}

TEST_CASE("nominal code without a lookup entry reports unmapped-code") {
  auto ps = fixtures();
  const Puzzle& lanes = by_id(ps, "lane-pets");
  SmtScript script = encode(lanes);
  SolverOutcome out = run_solver(script, local_solver());
  REQUIRE(out.model.size() == 6);
  out.model[0].int_value = 999;  // no lookup entry for 999
  DecodeResult decoded = decode_model(out, lanes, script.text);
  REQUIRE(decoded.issues.size() == 1);
  CHECK(decoded.issues[0].kind == "unmapped-code");
  CHECK(decoded.assignments.size() == 5);
}

TEST_CASE("constant outside the naming scheme reports unknown-name") {
  auto ps = fixtures();
  const Puzzle& lanes = by_id(ps, "lane-pets");
  SolverOutcome out;
  out.status = SolveStatus::Sat;
  out.model.push_back({"Mystery", SmtSort::Int, "", 1, ""});
  DecodeResult decoded = decode_model(out, lanes, "");
  CHECK(decoded.assignments.empty());
  REQUIRE(decoded.issues.size() == 1);
  CHECK(decoded.issues[0].kind == "unknown-name");
}

TEST_CASE("empty model decodes to nothing") {
  auto ps = fixtures();
  SolverOutcome out;
  out.status = SolveStatus::Sat;
  DecodeResult decoded = decode_model(out, by_id(ps, "lane-pets"), "");
  CHECK(decoded.assignments.empty());
  CHECK(decoded.issues.empty());
}

TEST_CASE("encoding is deterministic") {
  for (const auto& p : fixtures()) {
    CHECK(encode(p).text == encode(p).text);
  }
}

TEST_CASE("puzzle without structured clues is rejected") {
  Puzzle p = zero_clue_pair();
  p.has_structured_clues = false;
  CHECK_THROWS_AS(encode(p), EncodeError);
}

TEST_CASE("clue referencing an unknown value is rejected") {
  Puzzle p = zero_clue_pair();
  p.structured_clues = {{ClueKind::Is, "Slot 1", "Banana", "", "", 0}};
  CHECK_THROWS_AS(encode(p), EncodeError);
}
