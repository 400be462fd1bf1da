// smt.hpp -- SMT-LIB script extraction, solver subprocess, output parsing

#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace zebra {

enum class ScriptProvenance { Agent, ReferenceEncoder };

struct SmtScript {
  std::string text;
  ScriptProvenance provenance = ScriptProvenance::Agent;
  int iteration = 0;
};

struct SolverError {
  int line = 1;      // 1-based, 0 when the solver reported no position
  int column = 0;    // 0-based, as reported
  std::string message;
};

enum class SmtSort { Int, String, Other };

struct DefineFun {
  std::string name;
  SmtSort sort = SmtSort::Int;
  std::string sort_label;   // set for SmtSort::Other
  long long int_value = 0;  // valid when sort == Int
  std::string string_value; // valid otherwise; quotes stripped
};

enum class SolveStatus { Sat, Unsat, Unknown, NoVerdict };

struct SolverOutcome {
  SolveStatus status = SolveStatus::NoVerdict;
  std::vector<SolverError> errors;
  std::vector<DefineFun> model;
  std::vector<std::string> lookup_comments;  // ';' comment lines of the script
  std::string raw;
};

struct SolverConfig {
  std::string executable;
  std::vector<std::string> args;
  int timeout_ms = 10000;
};

class SolverNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolverTimeout : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Pulls an SMT-LIB script out of agent text: the last fenced code block if
// any exist, otherwise the whole text when it starts with S-expressions
// (leading ';' comment lines allowed). Returns nullopt when neither rule
// matches.
std::optional<std::string> extract_smt_text(const std::string& agent_text);
std::optional<SmtScript> extract_smt(const std::string& agent_text,
                                     int iteration = 0);

// Parses raw solver stdout+stderr: (error "...") lines with optional
// "line L column C:" prefixes, the sat/unsat/unknown verdict token, and
// define-fun model entries. Never throws; unparseable fragments stay in raw.
SolverOutcome parse_outcome(const std::string& raw);

// Renders the structured fields of an outcome back to solver-output text.
std::string emit_outcome(const SolverOutcome& outcome);

// Scans ';' comment lines for "<int> is <Label>" bindings (comma or
// semicolon separated, several per line). Later bindings win.
std::map<long long, std::string> parse_lookup_table(
    const std::string& script_text);

// Runs the configured solver process on the script. `(check-sat)` and
// `(get-model)` are appended when the script lacks a check-sat command.
// Throws SolverNotFound / SolverTimeout.
SolverOutcome run_solver(const SmtScript& script, const SolverConfig& cfg);

// Runs a subprocess with the given stdin, capturing stdout+stderr merged.
// Exposed for the CLI; run_solver is the intended entry point.
std::string run_process(const std::string& executable,
                        const std::vector<std::string>& args,
                        const std::string& input, int timeout_ms);

}  // namespace zebra
