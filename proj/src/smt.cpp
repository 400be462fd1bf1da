// smt.cpp

#include "zebra/smt.hpp"

#include <cctype>
#include <cerrno>
#include <csignal>
#include <cstring>
#include <regex>
#include <sstream>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include "zebra/text_util.hpp"

namespace zebra {

std::optional<std::string> extract_smt_text(const std::string& agent_text) {
  // Last fenced block wins.
  std::vector<std::string> lines = split_lines(agent_text);
  std::vector<std::string> blocks;
  std::string current;
  bool in_block = false;
  for (const auto& line : lines) {
    std::string t = trim(line);
    if (t.rfind("```", 0) == 0) {
      if (in_block) {
        blocks.push_back(current);
        current.clear();
      }
      in_block = !in_block;
      continue;
    }
    if (in_block) current += line + "\n";
  }
  if (!blocks.empty()) return blocks.back();

  // Bare script: optional leading comments, then a '(' form.
  for (const auto& line : lines) {
    std::string t = trim(line);
    if (t.empty() || t[0] == ';') continue;
    if (t[0] == '(') return agent_text;
    return std::nullopt;
  }
  return std::nullopt;
}

std::optional<SmtScript> extract_smt(const std::string& agent_text,
                                     int iteration) {
  auto text = extract_smt_text(agent_text);
  if (!text) return std::nullopt;
  return SmtScript{*text, ScriptProvenance::Agent, iteration};
}

namespace {

const std::regex kErrorRe(R"#(\(error\s+"((?:[^"\\]|\\.)*)"\s*\))#");
const std::regex kPosRe(R"(^line (\d+) column (\d+):\s*)");
const std::regex kDefineFunRe(
    R"(\(define-fun\s+([^\s()]+)\s*\(\s*\)\s*([^\s()]+)\s*)");

std::string strip_quotes(std::string s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

}  // namespace

SolverOutcome parse_outcome(const std::string& raw) {
  SolverOutcome out;
  out.raw = raw;

  for (auto it = std::sregex_iterator(raw.begin(), raw.end(), kErrorRe);
       it != std::sregex_iterator(); ++it) {
    std::string body = (*it)[1].str();
    // Normalize internal newlines; z3 wraps long messages.
    for (auto& c : body) {
      if (c == '\n' || c == '\r') c = ' ';
    }
    SolverError err;
    std::smatch pos;
    if (std::regex_search(body, pos, kPosRe)) {
      err.line = std::stoi(pos[1].str());
      err.column = std::stoi(pos[2].str());
      err.message = body.substr(pos[0].length());
    } else {
      err.line = 0;
      err.message = body;
    }
    out.errors.push_back(std::move(err));
  }

  for (const auto& line : split_lines(raw)) {
    std::string t = trim(line);
    if (t == "sat") {
      out.status = SolveStatus::Sat;
      break;
    }
    if (t == "unsat") {
      out.status = SolveStatus::Unsat;
      break;
    }
    if (t == "unknown") {
      out.status = SolveStatus::Unknown;
      break;
    }
  }

  if (out.status == SolveStatus::Sat) {
    for (auto it = std::sregex_iterator(raw.begin(), raw.end(), kDefineFunRe);
         it != std::sregex_iterator(); ++it) {
      DefineFun df;
      df.name = (*it)[1].str();
      std::string sort = (*it)[2].str();
      // Value: the token(s) up to the closing paren of the define-fun.
      std::size_t value_start = it->position(0) + it->length(0);
      std::size_t depth = 1;
      std::size_t i = value_start;
      while (i < raw.size() && depth > 0) {
        if (raw[i] == '(') ++depth;
        if (raw[i] == ')') --depth;
        ++i;
      }
      std::string value = trim(raw.substr(value_start, i - value_start - 1));
      if (sort == "Int") {
        df.sort = SmtSort::Int;
        // Negative values print as (- n).
        std::smatch neg;
        static const std::regex kNegRe(R"(^\(\s*-\s*(\d+)\s*\)$)");
        try {
          if (std::regex_match(value, neg, kNegRe)) {
            df.int_value = -std::stoll(neg[1].str());
          } else {
            df.int_value = std::stoll(value);
          }
        } catch (const std::exception&) {
          continue;  // not an exact Int literal; leave in raw only
        }
      } else if (sort == "String") {
        df.sort = SmtSort::String;
        df.string_value = strip_quotes(value);
      } else {
        df.sort = SmtSort::Other;
        df.sort_label = sort;
        df.string_value = strip_quotes(value);
      }
      out.model.push_back(std::move(df));
    }
    if (out.model.empty() && out.status != SolveStatus::Sat) {
      // unreachable; model only collected under sat
    }
  }
  return out;
}

std::string emit_outcome(const SolverOutcome& outcome) {
  std::ostringstream os;
  for (const auto& e : outcome.errors) {
    os << "(error \"";
    if (e.line > 0) os << "line " << e.line << " column " << e.column << ": ";
    os << e.message << "\")\n";
  }
  switch (outcome.status) {
    case SolveStatus::Sat: os << "sat\n"; break;
    case SolveStatus::Unsat: os << "unsat\n"; break;
    case SolveStatus::Unknown: os << "unknown\n"; break;
    case SolveStatus::NoVerdict: break;
  }
  if (!outcome.model.empty()) {
    os << "(\n";
    for (const auto& df : outcome.model) {
      os << "  (define-fun " << df.name << " () ";
      if (df.sort == SmtSort::Int) {
        os << "Int\n    ";
        if (df.int_value < 0) {
          os << "(- " << -df.int_value << ")";
        } else {
          os << df.int_value;
        }
      } else if (df.sort == SmtSort::String) {
        os << "String\n    \"" << df.string_value << "\"";
      } else {
        os << df.sort_label << "\n    " << df.string_value;
      }
      os << ")\n";
    }
    os << ")\n";
  }
  return os.str();
}

std::map<long long, std::string> parse_lookup_table(
    const std::string& script_text) {
  std::map<long long, std::string> table;
  static const std::regex kBindingRe(R"((\d+)\s+is\s+([^,;]+))");
  for (const auto& line : split_lines(script_text)) {
    std::string t = trim(line);
    if (t.empty() || t[0] != ';') continue;
    for (auto it = std::sregex_iterator(t.begin(), t.end(), kBindingRe);
         it != std::sregex_iterator(); ++it) {
      table[std::stoll((*it)[1].str())] = trim((*it)[2].str());
    }
  }
  return table;
}

std::string run_process(const std::string& executable,
                        const std::vector<std::string>& args,
                        const std::string& input, int timeout_ms) {
  int in_pipe[2], out_pipe[2];
  if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0) {
    throw std::runtime_error("pipe() failed");
  }
  pid_t pid = fork();
  if (pid < 0) throw std::runtime_error("fork() failed");
  if (pid == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    dup2(out_pipe[1], STDERR_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    std::vector<char*> argv;
    argv.push_back(const_cast<char*>(executable.c_str()));
    for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);
    execvp(executable.c_str(), argv.data());
    _exit(errno == ENOENT ? 127 : 126);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);

  // Write stdin (non-blocking to avoid deadlock with a full output pipe),
  // then drain output until EOF or timeout.
  fcntl(in_pipe[1], F_SETFL, O_NONBLOCK);
  fcntl(out_pipe[0], F_SETFL, O_NONBLOCK);
  std::string output;
  std::size_t written = 0;
  bool stdin_open = true;
  auto deadline_ms = timeout_ms;
  const int slice_ms = 20;
  int waited = 0;
  bool timed_out = false;
  signal(SIGPIPE, SIG_IGN);
  while (true) {
    struct pollfd fds[2];
    nfds_t nfds = 0;
    fds[nfds].fd = out_pipe[0];
    fds[nfds].events = POLLIN;
    ++nfds;
    if (stdin_open) {
      fds[nfds].fd = in_pipe[1];
      fds[nfds].events = POLLOUT;
      ++nfds;
    }
    int rc = poll(fds, nfds, slice_ms);
    if (rc < 0 && errno != EINTR) break;
    waited += slice_ms;
    bool eof = false;
    if (fds[0].revents & (POLLIN | POLLHUP)) {
      char buf[4096];
      ssize_t n;
      while ((n = read(out_pipe[0], buf, sizeof buf)) > 0) {
        output.append(buf, static_cast<std::size_t>(n));
      }
      if (n == 0) eof = true;
    }
    if (stdin_open && nfds > 1 && (fds[1].revents & (POLLOUT | POLLERR))) {
      if (written < input.size()) {
        ssize_t n = write(in_pipe[1], input.data() + written,
                          input.size() - written);
        if (n > 0) written += static_cast<std::size_t>(n);
        if (n < 0 && errno != EAGAIN && errno != EINTR) {
          close(in_pipe[1]);
          stdin_open = false;
        }
      }
      if (written >= input.size() && stdin_open) {
        close(in_pipe[1]);
        stdin_open = false;
      }
    }
    if (eof) break;
    if (waited >= deadline_ms) {
      timed_out = true;
      break;
    }
  }
  if (stdin_open) close(in_pipe[1]);
  close(out_pipe[0]);

  int status = 0;
  if (timed_out) {
    kill(pid, SIGKILL);
    waitpid(pid, &status, 0);
    throw SolverTimeout("solver timed out after " +
                        std::to_string(timeout_ms) + " ms");
  }
  waitpid(pid, &status, 0);
  if (WIFEXITED(status) && WEXITSTATUS(status) == 127) {
    throw SolverNotFound("solver executable not found: " + executable);
  }
  return output;
}

SolverOutcome run_solver(const SmtScript& script, const SolverConfig& cfg) {
  if (cfg.timeout_ms <= 0) throw std::invalid_argument("timeout must be > 0");
  std::string text = script.text;
  if (text.find("(check-sat)") == std::string::npos) {
    if (!text.empty() && text.back() != '\n') text += "\n";
    text += "(check-sat)\n(get-model)\n";
  }
  std::string raw =
      run_process(cfg.executable, cfg.args, text, cfg.timeout_ms);
  SolverOutcome out = parse_outcome(raw);
  for (const auto& line : split_lines(script.text)) {
    std::string t = trim(line);
    if (!t.empty() && t[0] == ';') out.lookup_comments.push_back(t);
  }
  return out;
}

}  // namespace zebra
