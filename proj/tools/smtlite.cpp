// smtlite.cpp -- small SMT-LIB2 solver for finite integer-domain scripts
//
// Reads an SMT-LIB2 script on stdin and prints z3-style output: (error
// "line L column C: ...") diagnostics, the sat/unsat/unknown verdict, and a
// define-fun model block. Covers the QF_LIA fragment used for logic grid
// puzzles: Int constants, assert with and/or/not/=>/=/distinct/comparisons
// and linear arithmetic, check-sat, get-model. Parse errors are reported
// and skipped; the remaining commands still execute.

#include <cctype>
#include <cstdint>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Pos {
  int line = 1;
  int column = 0;
};

void report(const Pos& pos, const std::string& message) {
  std::cout << "(error \"line " << pos.line << " column " << pos.column
            << ": " << message << "\")\n";
}

bool is_symbol_char(char c) {
  if (std::isalnum(static_cast<unsigned char>(c))) return true;
  return std::string_view("~!@$%^&*_-+=<>.?/").find(c) !=
         std::string_view::npos;
}

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { LParen, RParen, Symbol, Numeral, String, Keyword, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Pos pos;
};

class Lexer {
 public:
  explicit Lexer(std::string src) : src_(std::move(src)) {}

  Token next() {
    for (;;) {
      skip_space_and_comments();
      if (i_ >= src_.size()) return {Tok::End, "", pos_};
      char c = src_[i_];
      Pos at = pos_;
      if (c == '(') {
        advance();
        return {Tok::LParen, "(", at};
      }
      if (c == ')') {
        advance();
        return {Tok::RParen, ")", at};
      }
      if (c == '"') return lex_string(at);
      if (c == '|') return lex_quoted_symbol(at);
      if (c == ':') {
        advance();
        std::string text = ":";
        while (i_ < src_.size() && is_symbol_char(src_[i_])) {
          text += src_[i_];
          advance();
        }
        return {Tok::Keyword, text, at};
      }
      if (is_symbol_char(c)) {
        std::string text;
        bool numeral = std::isdigit(static_cast<unsigned char>(c));
        while (i_ < src_.size() && is_symbol_char(src_[i_])) {
          if (!std::isdigit(static_cast<unsigned char>(src_[i_]))) {
            numeral = false;
          }
          text += src_[i_];
          advance();
        }
        return {numeral ? Tok::Numeral : Tok::Symbol, text, at};
      }
      report(at, "unexpected character");
      advance();
    }
  }

  // Error recovery: consume the rest of the current line, still reporting
  // characters outside the token alphabet.
  void skip_to_eol() {
    while (i_ < src_.size() && src_[i_] != '\n') {
      char c = src_[i_];
      if (!is_symbol_char(c) && !std::isspace(static_cast<unsigned char>(c)) &&
          c != '(' && c != ')' && c != '"' && c != ';' && c != ':' &&
          c != '|') {
        report(pos_, "unexpected character");
      }
      advance();
    }
  }

  int line_of_last_token() const { return pos_.line; }

 private:
  void advance() {
    if (src_[i_] == '\n') {
      ++pos_.line;
      pos_.column = 0;
    } else {
      ++pos_.column;
    }
    ++i_;
  }

  void skip_space_and_comments() {
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == ';') {
        while (i_ < src_.size() && src_[i_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  Token lex_string(Pos at) {
    std::string text;
    advance();  // opening quote
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (c == '"') {
        advance();
        if (i_ < src_.size() && src_[i_] == '"') {  // "" escapes a quote
          text += '"';
          advance();
          continue;
        }
        return {Tok::String, text, at};
      }
      text += c;
      advance();
    }
    report(at, "unterminated string literal");
    return {Tok::String, text, at};
  }

  Token lex_quoted_symbol(Pos at) {
    std::string text;
    advance();
    while (i_ < src_.size() && src_[i_] != '|') {
      text += src_[i_];
      advance();
    }
    if (i_ < src_.size()) advance();
    return {Tok::Symbol, text, at};
  }

  std::string src_;
  std::size_t i_ = 0;
  Pos pos_;
};

// ---------------------------------------------------------------------------
// S-expressions

struct SNode {
  bool is_list = false;
  Token atom;
  std::vector<SNode> items;
  Pos pos;
};

// Parses one s-expression after the opening '(' has been consumed.
bool parse_list(Lexer& lex, SNode& out) {
  out.is_list = true;
  for (;;) {
    Token t = lex.next();
    if (t.kind == Tok::End) {
      report(t.pos, "unexpected end of file, ')' expected");
      return false;
    }
    if (t.kind == Tok::RParen) return true;
    if (t.kind == Tok::LParen) {
      SNode child;
      child.pos = t.pos;
      if (!parse_list(lex, child)) return false;
      out.items.push_back(std::move(child));
    } else {
      SNode child;
      child.atom = t;
      child.pos = t.pos;
      out.items.push_back(std::move(child));
    }
  }
}

// ---------------------------------------------------------------------------
// Expressions

struct Expr {
  enum class Kind { Num, Var, App } kind = Kind::Num;
  long long num = 0;
  int var = -1;
  std::string op;
  std::vector<Expr> args;
};

struct Val {
  enum class Kind { Unknown, Int, Bool } kind = Kind::Unknown;
  long long i = 0;
  bool b = false;

  static Val unknown() { return {}; }
  static Val of_int(long long v) { return {Kind::Int, v, false}; }
  static Val of_bool(bool v) { return {Kind::Bool, 0, v}; }
};

bool vals_equal(const Val& a, const Val& b) {
  if (a.kind != b.kind) return false;
  return a.kind == Val::Kind::Int ? a.i == b.i : a.b == b.b;
}

class Solver {
 public:
  int declare(const std::string& name, const Pos& pos) {
    if (vars_.count(name)) {
      report(pos, "invalid declaration, constant '" + name +
                      "' already declared");
      return vars_[name];
    }
    int idx = static_cast<int>(order_.size());
    vars_[name] = idx;
    order_.push_back(name);
    return idx;
  }

  std::optional<int> lookup(const std::string& name) const {
    auto it = vars_.find(name);
    if (it == vars_.end()) return std::nullopt;
    return it->second;
  }

  void add_assertion(Expr e) { assertions_.push_back(std::move(e)); }

  std::string check_sat() {
    collect_domains();
    assignment_.assign(order_.size(), std::nullopt);
    nodes_ = 0;
    model_.reset();
    std::vector<long long> model(order_.size(), 0);
    int verdict = search(0, model);
    if (verdict == 1) {
      model_ = model;
      return "sat";
    }
    if (verdict == -1) return "unknown";
    return "unsat";
  }

  void get_model() {
    if (!model_) {
      std::cout << "(error \"model is not available\")\n";
      return;
    }
    std::cout << "(\n";
    for (std::size_t i = 0; i < order_.size(); ++i) {
      std::cout << "  (define-fun " << order_[i] << " () Int\n    ";
      long long v = (*model_)[i];
      if (v < 0) {
        std::cout << "(- " << -v << ")";
      } else {
        std::cout << v;
      }
      std::cout << ")\n";
    }
    std::cout << ")\n";
  }

 private:
  void collect_domains() {
    pool_.clear();
    domains_.assign(order_.size(), {});
    for (const auto& e : assertions_) scan(e);
    std::set<long long> pool_sorted(pool_.begin(), pool_.end());
    for (auto& d : domains_) {
      if (d.empty()) {
        d.assign(pool_sorted.begin(), pool_sorted.end());
      }
    }
  }

  void scan(const Expr& e) {
    if (e.kind != Expr::Kind::App) {
      if (e.kind == Expr::Kind::Num) pool_.push_back(e.num);
      return;
    }
    if (e.op == "=" && e.args.size() == 2) {
      const Expr *v = nullptr, *n = nullptr;
      for (const auto& a : e.args) {
        if (a.kind == Expr::Kind::Var) v = &a;
        if (a.kind == Expr::Kind::Num) n = &a;
      }
      if (v && n) {
        auto& d = domains_[v->var];
        bool present = false;
        for (long long x : d) present = present || x == n->num;
        if (!present) d.push_back(n->num);
      }
    }
    for (const auto& a : e.args) scan(a);
  }

  // Returns 1 sat, 0 unsat, -1 resource limit hit.
  int search(std::size_t depth, std::vector<long long>& model) {
    if (++nodes_ > kNodeLimit) return -1;
    int c = consistent();
    if (c == 0) return 0;
    if (depth == order_.size()) {
      if (c != 1) return 0;  // residual unknown means an unconstrained hole
      for (std::size_t i = 0; i < order_.size(); ++i) {
        model[i] = *assignment_[i];
      }
      return 1;
    }
    if (domains_[depth].empty()) return 0;
    for (long long v : domains_[depth]) {
      assignment_[depth] = v;
      int r = search(depth + 1, model);
      if (r != 0) {
        assignment_[depth] = std::nullopt;
        return r;
      }
    }
    assignment_[depth] = std::nullopt;
    return 0;
  }

  // 1 = all assertions definitely true, 0 = some definitely false,
  // -1 = undetermined.
  int consistent() const {
    int result = 1;
    for (const auto& e : assertions_) {
      Val v = eval(e);
      if (v.kind == Val::Kind::Bool && !v.b) return 0;
      if (v.kind != Val::Kind::Bool) result = -1;
    }
    return result;
  }

  Val eval(const Expr& e) const {
    switch (e.kind) {
      case Expr::Kind::Num:
        return Val::of_int(e.num);
      case Expr::Kind::Var:
        return assignment_[e.var] ? Val::of_int(*assignment_[e.var])
                                  : Val::unknown();
      case Expr::Kind::App:
        break;
    }
    const auto& op = e.op;
    if (op == "and" || op == "or") {
      bool absorbing = op == "or";
      bool any_unknown = false;
      for (const auto& a : e.args) {
        Val v = eval(a);
        if (v.kind == Val::Kind::Bool) {
          if (v.b == absorbing) return Val::of_bool(absorbing);
        } else {
          any_unknown = true;
        }
      }
      return any_unknown ? Val::unknown() : Val::of_bool(!absorbing);
    }
    if (op == "not") {
      if (e.args.size() != 1) return Val::unknown();
      Val v = eval(e.args[0]);
      return v.kind == Val::Kind::Bool ? Val::of_bool(!v.b) : Val::unknown();
    }
    if (op == "=>") {
      // Right-associative chain: a => b => c  ==  a => (b => c).
      Val acc = Val::of_bool(false);
      bool have = false;
      for (auto it = e.args.rbegin(); it != e.args.rend(); ++it) {
        Val v = eval(*it);
        if (!have) {
          acc = v;
          have = true;
          continue;
        }
        if (v.kind == Val::Kind::Bool && !v.b) {
          acc = Val::of_bool(true);
        } else if (v.kind == Val::Kind::Bool && acc.kind == Val::Kind::Bool) {
          acc = Val::of_bool(!v.b || acc.b);
        } else if (acc.kind == Val::Kind::Bool && acc.b) {
          acc = Val::of_bool(true);
        } else {
          acc = Val::unknown();
        }
      }
      return acc;
    }
    if (op == "=" || op == "distinct") {
      std::vector<Val> vals;
      vals.reserve(e.args.size());
      for (const auto& a : e.args) vals.push_back(eval(a));
      bool any_unknown = false;
      for (std::size_t i = 0; i < vals.size(); ++i) {
        for (std::size_t j = i + 1; j < vals.size(); ++j) {
          if (vals[i].kind == Val::Kind::Unknown ||
              vals[j].kind == Val::Kind::Unknown) {
            any_unknown = true;
            continue;
          }
          bool eq = vals_equal(vals[i], vals[j]);
          if (op == "=" && !eq) return Val::of_bool(false);
          if (op == "distinct" && eq) return Val::of_bool(false);
        }
      }
      return any_unknown ? Val::unknown() : Val::of_bool(true);
    }
    if (op == "<" || op == "<=" || op == ">" || op == ">=") {
      for (std::size_t i = 0; i + 1 < e.args.size(); ++i) {
        Val a = eval(e.args[i]);
        Val b = eval(e.args[i + 1]);
        if (a.kind != Val::Kind::Int || b.kind != Val::Kind::Int) {
          return Val::unknown();
        }
        bool ok = op == "<"    ? a.i < b.i
                  : op == "<=" ? a.i <= b.i
                  : op == ">"  ? a.i > b.i
                               : a.i >= b.i;
        if (!ok) return Val::of_bool(false);
      }
      return Val::of_bool(true);
    }
    if (op == "+" || op == "*" || op == "-") {
      long long acc = 0;
      bool first = true;
      for (const auto& a : e.args) {
        Val v = eval(a);
        if (v.kind != Val::Kind::Int) return Val::unknown();
        if (first) {
          acc = op == "-" && e.args.size() == 1 ? -v.i : v.i;
          first = false;
        } else if (op == "+") {
          acc += v.i;
        } else if (op == "*") {
          acc *= v.i;
        } else {
          acc -= v.i;
        }
      }
      return first ? Val::unknown() : Val::of_int(acc);
    }
    if (op == "ite" && e.args.size() == 3) {
      Val c = eval(e.args[0]);
      if (c.kind != Val::Kind::Bool) return Val::unknown();
      return eval(e.args[c.b ? 1 : 2]);
    }
    return Val::unknown();
  }

  static constexpr long long kNodeLimit = 20'000'000;

  std::map<std::string, int> vars_;
  std::vector<std::string> order_;
  std::vector<Expr> assertions_;
  std::vector<std::vector<long long>> domains_;
  std::vector<long long> pool_;
  std::vector<std::optional<long long>> assignment_;
  std::optional<std::vector<long long>> model_;
  long long nodes_ = 0;
};

// ---------------------------------------------------------------------------
// Command interpreter

bool to_expr(const Solver& solver, const SNode& node, Expr& out) {
  if (!node.is_list) {
    const Token& t = node.atom;
    if (t.kind == Tok::Numeral) {
      out.kind = Expr::Kind::Num;
      out.num = std::stoll(t.text);
      return true;
    }
    if (t.kind == Tok::Symbol) {
      if (t.text == "true" || t.text == "false") {
        // Encode booleans through a 0-arg app so eval handles them.
        out.kind = Expr::Kind::App;
        out.op = t.text == "true" ? "and" : "or";  // and() = true, or() = false
        return true;
      }
      auto idx = solver.lookup(t.text);
      if (!idx) {
        report(t.pos, "unknown constant " + t.text);
        return false;
      }
      out.kind = Expr::Kind::Var;
      out.var = *idx;
      return true;
    }
    report(t.pos, "invalid expression");
    return false;
  }
  if (node.items.empty() || node.items[0].is_list ||
      node.items[0].atom.kind != Tok::Symbol) {
    report(node.pos, "invalid expression");
    return false;
  }
  out.kind = Expr::Kind::App;
  out.op = node.items[0].atom.text;
  for (std::size_t i = 1; i < node.items.size(); ++i) {
    Expr arg;
    if (!to_expr(solver, node.items[i], arg)) return false;
    out.args.push_back(std::move(arg));
  }
  return true;
}

void run_command(Solver& solver, const SNode& cmd, bool& done) {
  if (cmd.items.empty() || cmd.items[0].is_list ||
      cmd.items[0].atom.kind != Tok::Symbol) {
    report(cmd.pos, "invalid command");
    return;
  }
  const std::string& name = cmd.items[0].atom.text;
  auto arity_error = [&] {
    report(cmd.pos, "invalid " + name + " command");
  };

  if (name == "set-logic" || name == "set-option" || name == "set-info" ||
      name == "push" || name == "pop") {
    return;  // accepted, no effect at this scale
  }
  if (name == "echo") {
    if (cmd.items.size() == 2 && cmd.items[1].atom.kind == Tok::String) {
      std::cout << cmd.items[1].atom.text << "\n";
    }
    return;
  }
  if (name == "exit") {
    done = true;
    return;
  }
  if (name == "declare-const") {
    if (cmd.items.size() != 3 || cmd.items[1].is_list ||
        cmd.items[2].is_list) {
      arity_error();
      return;
    }
    if (cmd.items[2].atom.text != "Int") {
      report(cmd.items[2].pos,
             "unsupported sort '" + cmd.items[2].atom.text + "'");
      return;
    }
    solver.declare(cmd.items[1].atom.text, cmd.items[1].pos);
    return;
  }
  if (name == "declare-fun") {
    if (cmd.items.size() != 4 || cmd.items[1].is_list ||
        !cmd.items[2].is_list || cmd.items[3].is_list) {
      arity_error();
      return;
    }
    if (!cmd.items[2].items.empty()) {
      report(cmd.pos, "only zero-arity functions are supported");
      return;
    }
    if (cmd.items[3].atom.text != "Int") {
      report(cmd.items[3].pos,
             "unsupported sort '" + cmd.items[3].atom.text + "'");
      return;
    }
    solver.declare(cmd.items[1].atom.text, cmd.items[1].pos);
    return;
  }
  if (name == "assert") {
    if (cmd.items.size() != 2) {
      arity_error();
      return;
    }
    Expr e;
    if (to_expr(solver, cmd.items[1], e)) solver.add_assertion(std::move(e));
    return;
  }
  if (name == "check-sat") {
    std::cout << solver.check_sat() << "\n";
    return;
  }
  if (name == "get-model") {
    solver.get_model();
    return;
  }
  report(cmd.pos, "unknown command '" + name + "'");
}

}  // namespace

int main() {
  std::ostringstream buf;
  buf << std::cin.rdbuf();
  Lexer lex(buf.str());
  Solver solver;
  bool done = false;
  while (!done) {
    Token t = lex.next();
    if (t.kind == Tok::End) break;
    if (t.kind != Tok::LParen) {
      report(t.pos, "invalid command, '(' expected");
      lex.skip_to_eol();
      continue;
    }
    SNode cmd;
    cmd.pos = t.pos;
    if (!parse_list(lex, cmd)) break;
    run_command(solver, cmd, done);
  }
  return 0;
}
