// zps.cpp -- zebrasolve CLI entry point

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "zebra/cli.hpp"

namespace {

// Loads the config, reporting failures with the config-error exit code.
bool load_config(const std::string& path, zebra::AppConfig& cfg) {
  try {
    cfg = zebra::load_app_config(path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zebrasolve -- logic-grid puzzles via an SMT feedback loop"};
  app.require_subcommand(1);

  std::string puzzle_id, config_path, dataset_path, pairs_path;

  auto* solve = app.add_subcommand("solve", "Run the loop on one puzzle");
  solve->add_option("--puzzle", puzzle_id, "Puzzle id")->required();
  solve->add_option("--config", config_path, "Config file")->required();

  auto* batch = app.add_subcommand("batch", "Run every puzzle in a dataset");
  batch->add_option("--dataset", dataset_path, "Dataset file")->required();
  batch->add_option("--config", config_path, "Config file")->required();

  auto* stats = app.add_subcommand("stats", "Grader-agreement statistics");
  stats->add_option("--pairs", pairs_path, "Grade-pairs file")->required();

  auto* enc = app.add_subcommand("encode", "Print the reference encoding");
  enc->add_option("--puzzle", puzzle_id, "Puzzle id")->required();
  enc->add_option("--config", config_path, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : zebra::kExitConfigError;
  }

  if (stats->parsed()) {
    return zebra::cmd_stats(pairs_path, std::cout, std::cerr);
  }

  zebra::AppConfig cfg;
  if (!load_config(config_path, cfg)) return zebra::kExitConfigError;
  if (solve->parsed()) {
    return zebra::cmd_solve(puzzle_id, cfg, std::cout, std::cerr);
  }
  if (batch->parsed()) {
    return zebra::cmd_batch(dataset_path, cfg, std::cout, std::cerr);
  }
  return zebra::cmd_encode(puzzle_id, cfg, std::cout, std::cerr);
}
