// cli.hpp -- command implementations behind the zebrasolve CLI

#pragma once

#include <iosfwd>
#include <memory>
#include <string>

#include "zebra/agents.hpp"
#include "zebra/puzzle.hpp"

namespace zebra {

enum class ClientBackend { Scripted, Live, ReferenceEncoder };

struct AppConfig {
  std::string dataset_path;
  SolverConfig solver;
  ClientBackend backend = ClientBackend::Scripted;
  std::string transcript_path;  // scripted backend
  std::string base_url;         // live backend
  std::string credential_env;
  RunConfig run;
  std::string output_dir = "out";
  int concurrency = 1;
};

// Exit codes shared by all subcommands.
inline constexpr int kExitSolved = 0;
inline constexpr int kExitNotSolved = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitSolverMissing = 3;

AppConfig load_app_config(const std::string& path);

// Builds the client for one puzzle run (the reference-encoder backend is
// puzzle-specific).
std::unique_ptr<LlmClient> make_client(const AppConfig& cfg,
                                       const Puzzle& puzzle);

// Writes the per-event transcript (JSONL, monotonically increasing seq) for
// a completed run.
std::string render_transcript(const Puzzle& puzzle, const RunResult& result,
                              const AppConfig& cfg);

int cmd_solve(const std::string& puzzle_id, const AppConfig& cfg,
              std::ostream& out, std::ostream& err);
int cmd_batch(const std::string& dataset_path, const AppConfig& cfg,
              std::ostream& out, std::ostream& err);
int cmd_stats(const std::string& pairs_path, std::ostream& out,
              std::ostream& err);
int cmd_encode(const std::string& puzzle_id, const AppConfig& cfg,
               std::ostream& out, std::ostream& err);

}  // namespace zebra
