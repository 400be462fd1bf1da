// agents.hpp -- LLM clients, agent state machine, and the feedback loop

#pragma once

#include <atomic>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zebra/puzzle.hpp"
#include "zebra/smt.hpp"

namespace zebra {

enum class AgentKind { Decomposer, Solver, Grader };

struct RolePrompt {
  AgentKind kind = AgentKind::Solver;
  std::string text;
};

RolePrompt default_solver_prompt();
RolePrompt default_decomposer_prompt();

enum class MessageRole { System, User, Assistant };

struct Message {
  MessageRole role = MessageRole::User;
  std::string content;
};

enum class Evaluation { ErrorsPresent, SatNoErrors, UnsatOutcome, NoScript };

struct Feedback {
  SolverOutcome outcome;
  Evaluation evaluation = Evaluation::NoScript;
  std::string rendered;  // text sent back to the agent, truncated at 8 KiB
};

struct AgentState {
  int iteration = 0;  // t: number of agent actions taken
  std::vector<Message> messages;
  std::optional<SmtScript> current_script;
  std::optional<Feedback> last_feedback;
};

enum class DecisionKind { IterativeRefinement, RadicalRefinement, Submit };

struct Decision {
  DecisionKind kind = DecisionKind::IterativeRefinement;
  double similarity = 1.0;  // line-level ratio vs. previous script
  std::string basis;
};

struct RunConfig {
  std::vector<double> temperature_schedule = {0.0, 0.0001, 0.01};
  int max_actions = 4;
  bool decomposition_enabled = false;
  bool confirmation_enabled = false;
  std::string model_name = "scripted";
  SolverConfig solver;
};

// Transport failures are retried once per attempt before the attempt fails.
class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Chat completion contract. Implementations must be callable from
// concurrent feedback loops.
class LlmClient {
 public:
  virtual ~LlmClient() = default;
  virtual std::string complete(const std::vector<Message>& messages,
                               double temperature) = 0;
};

// Deterministic offline client replaying recorded responses in order.
// When the recording runs out, the last response repeats.
class ScriptedClient : public LlmClient {
 public:
  explicit ScriptedClient(std::vector<std::string> responses);

  // Accepts either a JSON array of response strings or a transcript file
  // (JSONL events; completion events are replayed).
  static ScriptedClient from_file(const std::string& path);
  static std::vector<std::string> responses_from_file(const std::string& path);

  std::string complete(const std::vector<Message>& messages,
                       double temperature) override;
  int call_count() const { return calls_.load(); }

 private:
  std::vector<std::string> responses_;
  std::atomic<int> calls_{0};
};

// HTTP chat-completion backend. The bearer token is read from the named
// environment variable at request time.
class LiveClient : public LlmClient {
 public:
  LiveClient(std::string base_url, std::string model,
             std::string credential_env);
  std::string complete(const std::vector<Message>& messages,
                       double temperature) override;

 private:
  std::string base_url_;
  std::string model_;
  std::string credential_env_;
};

struct IterationRecord {
  int action = 0;  // 1-based within the attempt
  std::string response_text;
  std::optional<SmtScript> script;
  std::optional<SolverOutcome> outcome;
  Evaluation evaluation = Evaluation::NoScript;
  std::optional<Decision> decision;
  std::vector<std::string> constraint_delta;  // line diff vs. previous script
};

struct AttemptRecord {
  double temperature = 0.0;
  std::vector<std::string> decomposition;
  std::string decomposition_raw;
  std::vector<IterationRecord> iterations;
  bool failed = false;
  std::string failure_reason;
};

struct RunResult {
  bool converged = false;
  std::vector<AttemptRecord> attempts;
  std::optional<SolverOutcome> final_outcome;
  std::optional<SmtScript> final_script;
  int total_client_calls = 0;
};

// S0: role prompt plus the puzzle rendering (categories, clues, and the
// decomposed clues when present), as a single initial message.
AgentState perceive_initial(const Puzzle& puzzle, const RolePrompt& role,
                            const std::vector<std::string>& decomposition = {});

// One decomposition-agent call; the reply's non-empty lines. The raw reply
// is written to *raw_reply when given (transcripts need it verbatim).
std::vector<std::string> decompose(const Puzzle& puzzle, LlmClient& client,
                                   const RolePrompt& role, double temperature,
                                   std::string* raw_reply = nullptr);

// Classifies the solver outcome and renders the textual feedback.
Feedback evaluate(const SolverOutcome& outcome);
Feedback no_script_feedback();

// Appends rendered feedback to the conversation; t is unchanged (it counts
// agent actions, not feedback).
void refine_state(AgentState& state, const Feedback& feedback);

// Logging classifier: radical refinement when line similarity drops below
// 0.5; first actions default to iterative.
Decision classify_decision(const std::optional<SmtScript>& prev,
                           const SmtScript& next, const Feedback& feedback);

// The full loop: one cold-start attempt per scheduled temperature, up to
// max_actions agent actions each, stopping at the first error-free sat
// model.
RunResult run_feedback_loop(const Puzzle& puzzle, LlmClient& client,
                            const RunConfig& cfg);

std::string serialize_run_result(const RunResult& result);

}  // namespace zebra
