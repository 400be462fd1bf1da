// cli.cpp

#include "zebra/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "zebra/encoder.hpp"
#include "zebra/grader.hpp"
#include "zebra/stats.hpp"
#include "zebra/text_util.hpp"

namespace zebra {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Offline backend that answers with the reference encoder's script.
class ReferenceClient : public LlmClient {
 public:
  explicit ReferenceClient(const Puzzle& puzzle) {
    reply_ = "```\n" + encode(puzzle).text + "```\n";
  }
  std::string complete(const std::vector<Message>&, double) override {
    return reply_;
  }

 private:
  std::string reply_;
};

const Puzzle* find_puzzle(const std::vector<Puzzle>& puzzles,
                          const std::string& id) {
  for (const auto& p : puzzles) {
    if (normalize_label(p.id) == normalize_label(id)) return &p;
  }
  return nullptr;
}

json grade_to_json(const GradeReport& report, const std::string& scored_from) {
  json j;
  j["correct_matches"] = report.correct_matches;
  j["total_matches"] = report.total_matches;
  j["partial_score"] = report.partial_score;
  j["solved_fully"] = report.solved_fully;
  j["no_model"] = report.no_model;
  j["scored_from"] = scored_from;
  j["verdicts"] = json::array();
  for (const auto& v : report.verdicts) {
    j["verdicts"].push_back(
        {{"entity", v.assignment.entity},
         {"category", v.assignment.category},
         {"value", v.assignment.value},
         {"expected", v.expected},
         {"verdict", v.verdict == Verdict::Correct     ? "correct"
                     : v.verdict == Verdict::Incorrect ? "incorrect"
                                                       : "unmapped"}});
  }
  return j;
}

struct ScoredRun {
  RunResult result;
  GradeReport report;
  std::string scored_from;
};

ScoredRun run_and_grade(const Puzzle& puzzle, const AppConfig& cfg) {
  ScoredRun scored;
  auto client = make_client(cfg, puzzle);
  scored.result = run_feedback_loop(puzzle, *client, cfg.run);
  if (scored.result.final_outcome && scored.result.final_script) {
    scored.report = grade(*scored.result.final_outcome,
                          *scored.result.final_script, puzzle);
    scored.scored_from =
        scored.result.converged ? "final-model" : "last-error-free-model";
  } else {
    scored.report = grade_assignments({}, puzzle);
    scored.report.no_model = true;
    scored.scored_from = "none";
  }
  return scored;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

void write_run_artifacts(const Puzzle& puzzle, const ScoredRun& scored,
                         const AppConfig& cfg) {
  fs::create_directories(cfg.output_dir);
  fs::path dir(cfg.output_dir);
  write_file(dir / (puzzle.id + ".transcript.jsonl"),
             render_transcript(puzzle, scored.result, cfg));
  write_file(dir / (puzzle.id + ".run.json"),
             serialize_run_result(scored.result));
  write_file(dir / (puzzle.id + ".grade.json"),
             grade_to_json(scored.report, scored.scored_from).dump(2) + "\n");
}

std::string temperature_column(const RunConfig& run) {
  bool variable = false;
  for (double t : run.temperature_schedule) {
    if (t != run.temperature_schedule.front()) variable = true;
  }
  if (variable) return "Var.";
  std::ostringstream os;
  os << run.temperature_schedule.front();
  return os.str();
}

}  // namespace

AppConfig load_app_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed config: ") + e.what());
  }
  AppConfig cfg;
  cfg.dataset_path = doc.value("dataset", std::string());
  if (doc.contains("solver")) {
    const auto& s = doc["solver"];
    cfg.solver.executable = s.value("path", std::string());
    cfg.solver.args = s.value("args", std::vector<std::string>());
    cfg.solver.timeout_ms = s.value("timeout_ms", 10000);
  }
  if (doc.contains("client")) {
    const auto& c = doc["client"];
    std::string backend = c.value("backend", std::string("scripted"));
    if (backend == "scripted") {
      cfg.backend = ClientBackend::Scripted;
      cfg.transcript_path = c.value("transcript", std::string());
    } else if (backend == "live") {
      cfg.backend = ClientBackend::Live;
      cfg.base_url = c.value("base_url", std::string());
      cfg.credential_env = c.value("credential_env", std::string());
      cfg.run.model_name = c.value("model", cfg.run.model_name);
    } else if (backend == "reference") {
      cfg.backend = ClientBackend::ReferenceEncoder;
      cfg.run.model_name = "reference-encoder";
    } else {
      throw std::runtime_error("unknown client backend '" + backend + "'");
    }
  }
  if (doc.contains("run")) {
    const auto& r = doc["run"];
    cfg.run.temperature_schedule =
        r.value("temperature_schedule", cfg.run.temperature_schedule);
    cfg.run.max_actions = r.value("max_actions", cfg.run.max_actions);
    cfg.run.decomposition_enabled =
        r.value("decomposition", cfg.run.decomposition_enabled);
    cfg.run.confirmation_enabled =
        r.value("confirmation", cfg.run.confirmation_enabled);
    if (r.contains("model_name")) {
      cfg.run.model_name = r["model_name"].get<std::string>();
    }
  }
  cfg.output_dir = doc.value("output_dir", cfg.output_dir);
  cfg.concurrency = doc.value("concurrency", 1);
  cfg.run.solver = cfg.solver;

  for (std::size_t i = 1; i < cfg.run.temperature_schedule.size(); ++i) {
    if (cfg.run.temperature_schedule[i] <
        cfg.run.temperature_schedule[i - 1]) {
      throw std::runtime_error("temperature schedule must be non-decreasing");
    }
  }
  if (cfg.backend == ClientBackend::Scripted && cfg.transcript_path.empty()) {
    throw std::runtime_error("scripted backend requires a transcript path");
  }
  if (cfg.backend == ClientBackend::Live && cfg.base_url.empty()) {
    throw std::runtime_error("live backend requires a base_url");
  }
  if (cfg.solver.executable.empty()) {
    throw std::runtime_error("solver path is required");
  }
  return cfg;
}

std::unique_ptr<LlmClient> make_client(const AppConfig& cfg,
                                       const Puzzle& puzzle) {
  switch (cfg.backend) {
    case ClientBackend::Scripted:
      return std::make_unique<ScriptedClient>(
          ScriptedClient::responses_from_file(cfg.transcript_path));
    case ClientBackend::Live:
      return std::make_unique<LiveClient>(cfg.base_url, cfg.run.model_name,
                                          cfg.credential_env);
    case ClientBackend::ReferenceEncoder:
      return std::make_unique<ReferenceClient>(puzzle);
  }
  throw std::logic_error("unreachable");
}

std::string render_transcript(const Puzzle& puzzle, const RunResult& result,
                              const AppConfig& cfg) {
  std::ostringstream os;
  int seq = 0;
  auto emit = [&](const std::string& type, json data) {
    json event;
    event["seq"] = seq++;
    event["type"] = type;
    event["data"] = std::move(data);
    os << event.dump() << "\n";
  };

  for (std::size_t i = 0; i < result.attempts.size(); ++i) {
    const AttemptRecord& attempt = result.attempts[i];
    if (!attempt.decomposition_raw.empty()) {
      emit("completion", {{"kind", "decomposition"},
                          {"attempt", i},
                          {"text", attempt.decomposition_raw}});
    }
    AgentState initial = perceive_initial(puzzle, default_solver_prompt(),
                                          attempt.decomposition);
    emit("prompt", {{"attempt", i},
                    {"temperature", attempt.temperature},
                    {"text", initial.messages.front().content}});
    for (const auto& it : attempt.iterations) {
      emit("completion",
           {{"kind", "action"}, {"attempt", i}, {"text", it.response_text}});
      if (it.outcome) {
        emit("solver-outcome", {{"attempt", i},
                                {"action", it.action},
                                {"raw", it.outcome->raw}});
      }
      if (it.decision) {
        emit("decision",
             {{"attempt", i},
              {"action", it.action},
              {"kind", it.decision->kind == DecisionKind::RadicalRefinement
                           ? "radical-refinement"
                           : "iterative-refinement"},
              {"similarity", it.decision->similarity}});
      }
    }
    if (attempt.failed) {
      emit("attempt-failed", {{"attempt", i},
                              {"reason", attempt.failure_reason}});
    }
  }
  emit("run-end", {{"converged", result.converged},
                   {"model", cfg.run.model_name}});
  return os.str();
}

int cmd_solve(const std::string& puzzle_id, const AppConfig& cfg,
              std::ostream& out, std::ostream& err) {
  std::vector<Puzzle> puzzles;
  try {
    puzzles = load_dataset(cfg.dataset_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  const Puzzle* puzzle = find_puzzle(puzzles, puzzle_id);
  if (!puzzle) {
    err << "error: unknown puzzle id '" << puzzle_id << "'\n";
    return kExitConfigError;
  }
  ScoredRun scored;
  try {
    scored = run_and_grade(*puzzle, cfg);
  } catch (const SolverNotFound& e) {
    err << "error: " << e.what() << "\n";
    return kExitSolverMissing;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  write_run_artifacts(*puzzle, scored, cfg);
  out << puzzle->id << ": " << (scored.result.converged ? "converged" : "not converged")
      << ", score " << scored.report.correct_matches << "/"
      << scored.report.total_matches << "\n";
  return scored.report.solved_fully ? kExitSolved : kExitNotSolved;
}

int cmd_batch(const std::string& dataset_path, const AppConfig& cfg,
              std::ostream& out, std::ostream& err) {
  std::vector<Puzzle> puzzles;
  try {
    puzzles = load_dataset(dataset_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  if (puzzles.empty()) {
    err << "error: dataset contains no puzzles\n";
    return kExitConfigError;
  }

  std::vector<ScoredRun> runs(puzzles.size());
  std::vector<std::exception_ptr> failures(puzzles.size());
  int workers = std::max(1, cfg.concurrency);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= puzzles.size()) return;
      try {
        runs[i] = run_and_grade(puzzles[i], cfg);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  for (std::size_t i = 0; i < puzzles.size(); ++i) {
    if (!failures[i]) continue;
    try {
      std::rethrow_exception(failures[i]);
    } catch (const SolverNotFound& e) {
      err << "error: " << e.what() << "\n";
      return kExitSolverMissing;
    } catch (const std::exception& e) {
      err << "error: " << puzzles[i].id << ": " << e.what() << "\n";
      return kExitConfigError;
    }
  }

  std::vector<BatchRow> rows;
  for (std::size_t i = 0; i < puzzles.size(); ++i) {
    write_run_artifacts(puzzles[i], runs[i], cfg);
    rows.push_back({puzzles[i].id, runs[i].result.converged, runs[i].report});
  }
  BatchSummary summary = summarize_batch(rows);

  std::ostringstream detail;
  detail << "puzzle,converged,correct,total,partial_score,solved_fully\n";
  for (const auto& row : summary.rows) {
    detail << row.puzzle_id << "," << (row.converged ? "yes" : "no") << ","
           << row.report.correct_matches << "," << row.report.total_matches
           << "," << std::fixed << std::setprecision(4)
           << row.report.partial_score << ","
           << (row.report.solved_fully ? "yes" : "no") << "\n";
  }

  std::ostringstream table;
  table << "Model,T,D,Avg. PS,#Solved\n";
  table << cfg.run.model_name << "," << temperature_column(cfg.run) << ","
        << (cfg.run.decomposition_enabled ? "Yes" : "No") << "," << std::fixed
        << std::setprecision(3) << summary.avg_partial_score << ","
        << summary.solved_count << " (" << std::setprecision(1)
        << summary.solved_pct << "%)\n";

  fs::create_directories(cfg.output_dir);
  write_file(fs::path(cfg.output_dir) / "batch_detail.csv", detail.str());
  write_file(fs::path(cfg.output_dir) / "batch_summary.csv", table.str());
  out << table.str();
  return kExitSolved;
}

int cmd_stats(const std::string& pairs_path, std::ostream& out,
              std::ostream& err) {
  try {
    std::vector<GradePair> pairs = load_grade_pairs(pairs_path);
    out << render_stats(compute_stats(pairs));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitSolved;
}

int cmd_encode(const std::string& puzzle_id, const AppConfig& cfg,
               std::ostream& out, std::ostream& err) {
  try {
    std::vector<Puzzle> puzzles = load_dataset(cfg.dataset_path);
    const Puzzle* puzzle = find_puzzle(puzzles, puzzle_id);
    if (!puzzle) {
      err << "error: unknown puzzle id '" << puzzle_id << "'\n";
      return kExitConfigError;
    }
    out << encode(*puzzle).text;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitSolved;
}

}  // namespace zebra
