// agents.cpp

#include "zebra/agents.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "httplib.h"
#include "json.hpp"
#include "zebra/text_util.hpp"

namespace zebra {

using nlohmann::json;

namespace {

constexpr std::size_t kFeedbackLimit = 8 * 1024;

std::string truncate_for_context(const std::string& text) {
  if (text.size() <= kFeedbackLimit) return text;
  return text.substr(0, kFeedbackLimit) + "\n[output truncated]";
}

}  // namespace

RolePrompt default_solver_prompt() {
  return {AgentKind::Solver,
          "You translate logic grid puzzles into SMT-LIB2 scripts. Declare "
          "one Int constant per entity and attribute, constrain each to its "
          "domain, assert that attribute values are distinct across "
          "entities, and add one assertion per clue. Reply with a single "
          "SMT-LIB code block. When solver feedback arrives, correct any "
          "reported errors while preserving the logical relations, or "
          "rebuild the script if the constraints themselves are wrong."};
}

RolePrompt default_decomposer_prompt() {
  return {AgentKind::Decomposer,
          "You decompose logic grid puzzles. Identify the key entities, "
          "attributes, and relationships in the clues and restate them as "
          "one simple, self-contained clue per line. Reply with the "
          "decomposed clues only."};
}

AgentState perceive_initial(const Puzzle& puzzle, const RolePrompt& role,
                            const std::vector<std::string>& decomposition) {
  if (puzzle.clues.empty()) {
    throw std::invalid_argument("puzzle " + puzzle.id + " has no clues");
  }
  std::ostringstream os;
  os << role.text << "\n\nPuzzle categories:\n";
  for (const auto& cat : puzzle.categories) {
    os << "- " << cat.name << ": ";
    for (std::size_t i = 0; i < cat.values.size(); ++i) {
      os << (i ? ", " : "") << cat.values[i];
    }
    os << "\n";
  }
  os << "\nClues:\n";
  for (const auto& clue : puzzle.clues) os << "- " << clue << "\n";
  if (!decomposition.empty()) {
    os << "\nDecomposed clues:\n";
    for (const auto& line : decomposition) os << line << "\n";
  }
  AgentState state;
  state.messages.push_back({MessageRole::User, os.str()});
  return state;
}

std::vector<std::string> decompose(const Puzzle& puzzle, LlmClient& client,
                                   const RolePrompt& role, double temperature,
                                   std::string* raw_reply) {
  std::ostringstream os;
  os << role.text << "\n\nClues:\n";
  for (const auto& clue : puzzle.clues) os << "- " << clue << "\n";
  std::string reply =
      client.complete({{MessageRole::User, os.str()}}, temperature);
  if (raw_reply) *raw_reply = reply;
  std::vector<std::string> lines;
  for (const auto& line : split_lines(reply)) {
    std::string t = trim(line);
    if (!t.empty()) lines.push_back(t);
  }
  return lines;
}

Feedback evaluate(const SolverOutcome& outcome) {
  Feedback fb;
  fb.outcome = outcome;
  std::ostringstream os;
  if (outcome.status == SolveStatus::Unsat) {
    fb.evaluation = Evaluation::UnsatOutcome;
    os << "The solver reports unsat: the constraints contradict each "
          "other. Revisit the logical relationships between the variables "
          "and check each clue's translation.\n\nSolver output:\n"
       << outcome.raw;
  } else if (!outcome.errors.empty()) {
    fb.evaluation = Evaluation::ErrorsPresent;
    os << "The solver reported " << outcome.errors.size()
       << " error(s). Correct the syntax errors while preserving the "
          "logical relations.\n\nSolver output:\n"
       << outcome.raw;
  } else if (outcome.status == SolveStatus::Sat && !outcome.model.empty()) {
    fb.evaluation = Evaluation::SatNoErrors;
    os << "The solver found an error-free model:\n" << outcome.raw;
  } else {
    // sat without a model, unknown, or no verdict at all
    fb.evaluation = Evaluation::ErrorsPresent;
    os << "The solver produced no usable model. Emit a complete script "
          "with declarations, assertions, (check-sat) and (get-model).\n\n"
          "Solver output:\n"
       << outcome.raw;
  }
  fb.rendered = truncate_for_context(os.str());
  return fb;
}

Feedback no_script_feedback() {
  Feedback fb;
  fb.evaluation = Evaluation::NoScript;
  fb.rendered =
      "No SMT-LIB script was found in your reply. Respond with a single "
      "fenced code block containing the full script.";
  return fb;
}

void refine_state(AgentState& state, const Feedback& feedback) {
  state.messages.push_back({MessageRole::User, feedback.rendered});
  state.last_feedback = feedback;
}

Decision classify_decision(const std::optional<SmtScript>& prev,
                           const SmtScript& next, const Feedback& feedback) {
  Decision d;
  if (!prev) {
    d.kind = DecisionKind::IterativeRefinement;
    d.similarity = 1.0;
    d.basis = "first script of the attempt";
    return d;
  }
  d.similarity = line_similarity(prev->text, next.text);
  d.kind = d.similarity < 0.5 ? DecisionKind::RadicalRefinement
                              : DecisionKind::IterativeRefinement;
  std::ostringstream os;
  os << "similarity " << d.similarity << " after "
     << (feedback.evaluation == Evaluation::ErrorsPresent ? "syntax errors"
         : feedback.evaluation == Evaluation::UnsatOutcome
             ? "unsat"
             : "feedback");
  d.basis = os.str();
  return d;
}

namespace {

std::string complete_with_retry(LlmClient& client,
                                const std::vector<Message>& messages,
                                double temperature) {
  try {
    return client.complete(messages, temperature);
  } catch (const TransportError&) {
    return client.complete(messages, temperature);  // one immediate retry
  }
}

}  // namespace

RunResult run_feedback_loop(const Puzzle& puzzle, LlmClient& client,
                            const RunConfig& cfg) {
  if (cfg.temperature_schedule.empty()) {
    throw std::invalid_argument("temperature schedule must be non-empty");
  }
  if (cfg.max_actions < 1) {
    throw std::invalid_argument("max_actions must be >= 1");
  }
  RunResult result;
  for (double tau : cfg.temperature_schedule) {
    AttemptRecord attempt;
    attempt.temperature = tau;
    try {
      if (cfg.decomposition_enabled) {
        attempt.decomposition =
            decompose(puzzle, client, default_decomposer_prompt(), tau,
                      &attempt.decomposition_raw);
        ++result.total_client_calls;
      }
      AgentState state = perceive_initial(puzzle, default_solver_prompt(),
                                          attempt.decomposition);
      bool awaiting_confirmation = false;
      while (state.iteration < cfg.max_actions) {
        std::string reply =
            complete_with_retry(client, state.messages, tau);
        ++result.total_client_calls;
        ++state.iteration;
        state.messages.push_back({MessageRole::Assistant, reply});

        IterationRecord record;
        record.action = state.iteration;
        record.response_text = reply;

        if (awaiting_confirmation) {
          // The confirmation turn accepts the pending model regardless of
          // wording; the reply is kept for analysis.
          record.evaluation = Evaluation::SatNoErrors;
          attempt.iterations.push_back(std::move(record));
          result.converged = true;
          break;
        }

        auto script = extract_smt(reply, state.iteration);
        if (!script) {
          Feedback fb = no_script_feedback();
          record.evaluation = Evaluation::NoScript;
          attempt.iterations.push_back(std::move(record));
          refine_state(state, fb);
          continue;
        }

        SolverOutcome outcome = run_solver(*script, cfg.solver);
        Feedback fb = evaluate(outcome);
        record.script = script;
        record.outcome = outcome;
        record.evaluation = fb.evaluation;
        record.decision = classify_decision(state.current_script, *script, fb);
        if (state.current_script) {
          record.constraint_delta =
              line_diff(split_lines(state.current_script->text),
                        split_lines(script->text));
        }
        state.current_script = script;
        attempt.iterations.push_back(std::move(record));

        if (fb.evaluation == Evaluation::SatNoErrors) {
          result.final_outcome = outcome;
          result.final_script = script;
          if (cfg.confirmation_enabled && state.iteration < cfg.max_actions) {
            state.messages.push_back(
                {MessageRole::User,
                 "Confirm that the model's assignments satisfy every clue, "
                 "or provide a corrected script."});
            awaiting_confirmation = true;
            continue;
          }
          result.converged = true;
          break;
        }
        refine_state(state, fb);
      }
      if (awaiting_confirmation && !result.converged) {
        // Action limit hit before the confirmation turn; accept the model.
        result.converged = true;
      }
    } catch (const TransportError& e) {
      attempt.failed = true;
      attempt.failure_reason = e.what();
    } catch (const SolverTimeout& e) {
      attempt.failed = true;
      attempt.failure_reason = e.what();
    }
    result.attempts.push_back(std::move(attempt));
    if (result.converged) break;
  }
  if (!result.converged) {
    // Keep the last error-free sat model seen anywhere, for grading.
    for (auto at = result.attempts.rbegin(); at != result.attempts.rend();
         ++at) {
      for (auto it = at->iterations.rbegin(); it != at->iterations.rend();
           ++it) {
        if (it->outcome && it->outcome->status == SolveStatus::Sat &&
            it->outcome->errors.empty() && !it->outcome->model.empty()) {
          result.final_outcome = it->outcome;
          result.final_script = it->script;
          return result;
        }
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Clients

ScriptedClient::ScriptedClient(std::vector<std::string> responses)
    : responses_(std::move(responses)) {
  if (responses_.empty()) {
    throw std::invalid_argument("scripted client needs at least one response");
  }
}

std::vector<std::string> ScriptedClient::responses_from_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TransportError("cannot open transcript file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();

  std::vector<std::string> responses;
  std::string t = trim(text);
  if (!t.empty() && t[0] == '[') {
    json doc = json::parse(t);
    for (const auto& item : doc) responses.push_back(item.get<std::string>());
  } else {
    // Transcript JSONL: replay the completion events in order.
    for (const auto& line : split_lines(text)) {
      std::string lt = trim(line);
      if (lt.empty()) continue;
      json event = json::parse(lt);
      if (event.value("type", "") == "completion") {
        responses.push_back(event.at("data").at("text").get<std::string>());
      }
    }
  }
  return responses;
}

ScriptedClient ScriptedClient::from_file(const std::string& path) {
  return ScriptedClient(responses_from_file(path));
}

std::string ScriptedClient::complete(const std::vector<Message>&, double) {
  int call = calls_.fetch_add(1);
  std::size_t idx = std::min(static_cast<std::size_t>(call),
                             responses_.size() - 1);
  return responses_[idx];
}

LiveClient::LiveClient(std::string base_url, std::string model,
                       std::string credential_env)
    : base_url_(std::move(base_url)),
      model_(std::move(model)),
      credential_env_(std::move(credential_env)) {}

std::string LiveClient::complete(const std::vector<Message>& messages,
                                 double temperature) {
  json body;
  body["model"] = model_;
  body["temperature"] = temperature;
  body["messages"] = json::array();
  for (const auto& m : messages) {
    const char* role = m.role == MessageRole::System ? "system"
                       : m.role == MessageRole::User ? "user"
                                                     : "assistant";
    body["messages"].push_back({{"role", role}, {"content", m.content}});
  }

  httplib::Client http(base_url_);
  http.set_read_timeout(120, 0);
  httplib::Headers headers;
  if (const char* key = std::getenv(credential_env_.c_str())) {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }
  auto res = http.Post("/v1/chat/completions", headers, body.dump(),
                       "application/json");
  if (!res) {
    throw TransportError("chat completion request failed: " +
                         httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw TransportError("chat completion HTTP " +
                         std::to_string(res->status) + ": " + res->body);
  }
  json reply = json::parse(res->body);
  return reply.at("choices").at(0).at("message").at("content")
      .get<std::string>();
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

json outcome_to_json(const SolverOutcome& o) {
  json j;
  j["status"] = o.status == SolveStatus::Sat     ? "sat"
                : o.status == SolveStatus::Unsat ? "unsat"
                : o.status == SolveStatus::Unknown ? "unknown"
                                                   : "no-verdict";
  j["errors"] = json::array();
  for (const auto& e : o.errors) {
    j["errors"].push_back(
        {{"line", e.line}, {"column", e.column}, {"message", e.message}});
  }
  j["model"] = json::array();
  for (const auto& df : o.model) {
    json m = {{"name", df.name}};
    if (df.sort == SmtSort::Int) {
      m["sort"] = "Int";
      m["value"] = df.int_value;
    } else {
      m["sort"] = df.sort == SmtSort::String ? "String" : df.sort_label;
      m["value"] = df.string_value;
    }
    j["model"].push_back(std::move(m));
  }
  j["raw"] = o.raw;
  return j;
}

const char* evaluation_name(Evaluation e) {
  switch (e) {
    case Evaluation::ErrorsPresent: return "errors-present";
    case Evaluation::SatNoErrors: return "sat-no-errors";
    case Evaluation::UnsatOutcome: return "unsat";
    case Evaluation::NoScript: return "no-script";
  }
  return "?";
}

}  // namespace

std::string serialize_run_result(const RunResult& r) {
  json j;
  j["converged"] = r.converged;
  j["total_client_calls"] = r.total_client_calls;
  j["attempts"] = json::array();
  for (const auto& a : r.attempts) {
    json ja;
    ja["temperature"] = a.temperature;
    ja["decomposition"] = a.decomposition;
    if (!a.decomposition_raw.empty()) {
      ja["decomposition_raw"] = a.decomposition_raw;
    }
    ja["failed"] = a.failed;
    if (a.failed) ja["failure_reason"] = a.failure_reason;
    ja["iterations"] = json::array();
    for (const auto& it : a.iterations) {
      json ji;
      ji["action"] = it.action;
      ji["response_text"] = it.response_text;
      ji["evaluation"] = evaluation_name(it.evaluation);
      if (it.script) ji["script"] = it.script->text;
      if (it.outcome) ji["outcome"] = outcome_to_json(*it.outcome);
      if (it.decision) {
        ji["decision"] = {
            {"kind", it.decision->kind == DecisionKind::RadicalRefinement
                         ? "radical-refinement"
                         : it.decision->kind == DecisionKind::Submit
                               ? "submit"
                               : "iterative-refinement"},
            {"similarity", it.decision->similarity},
            {"basis", it.decision->basis}};
      }
      if (!it.constraint_delta.empty()) {
        ji["constraint_delta"] = it.constraint_delta;
      }
      ja["iterations"].push_back(std::move(ji));
    }
    j["attempts"].push_back(std::move(ja));
  }
  if (r.final_script) j["final_script"] = r.final_script->text;
  if (r.final_outcome) j["final_outcome"] = outcome_to_json(*r.final_outcome);
  return j.dump(2) + "\n";
}

}  // namespace zebra
