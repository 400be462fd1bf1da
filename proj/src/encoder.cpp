// encoder.cpp

#include "zebra/encoder.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "zebra/text_util.hpp"

namespace zebra {

namespace {

// Value reference: an anchor entity or a (category, value) pair.
struct ValueRef {
  bool is_entity = false;
  std::size_t entity = 0;  // index into anchor values
  std::size_t cat = 0;     // index into categories
  std::size_t val = 0;
};

struct Encoding {
  const Puzzle* puzzle = nullptr;
  std::size_t anchor_index = 0;
  std::vector<std::size_t> cell_categories;  // non-anchor category indices
  // constant name per (entity, non-anchor category index into categories)
  std::map<std::pair<std::size_t, std::size_t>, std::string> const_names;
  // integer code per (category index, value index)
  std::map<std::pair<std::size_t, std::size_t>, long long> codes;
  std::vector<bool> nominal_coded;  // per category: codes need a lookup table

  std::size_t entity_count() const {
    return puzzle->categories[anchor_index].values.size();
  }
  const std::string& entity_name(std::size_t e) const {
    return puzzle->categories[anchor_index].values[e];
  }
  const std::string& cname(std::size_t e, std::size_t c) const {
    return const_names.at({e, c});
  }
  long long code(std::size_t c, std::size_t v) const {
    return codes.at({c, v});
  }
};

bool all_numeral(const Category& cat) {
  return std::all_of(cat.values.begin(), cat.values.end(),
                     [](const std::string& v) {
                       std::string n = normalize_label(v);
                       return !n.empty() &&
                              std::all_of(n.begin(), n.end(), [](unsigned char c) {
                                return std::isdigit(c);
                              });
                     });
}

Encoding build_encoding(const Puzzle& p) {
  Encoding enc;
  enc.puzzle = &p;
  const Category& anchor = p.anchor();
  for (std::size_t ci = 0; ci < p.categories.size(); ++ci) {
    if (&p.categories[ci] == &anchor) {
      enc.anchor_index = ci;
    } else {
      enc.cell_categories.push_back(ci);
    }
  }

  SymbolTable symbols;
  for (std::size_t ci : enc.cell_categories) {
    for (std::size_t e = 0; e < anchor.values.size(); ++e) {
      enc.const_names[{e, ci}] = symbols.intern(
          anchor.values[e] + "_" + p.categories[ci].name);
    }
  }

  // Ordinal categories use positions (or their own numerals); nominal
  // categories get globally unique codes so one lookup table decodes all.
  enc.nominal_coded.assign(p.categories.size(), false);
  long long next_code = 1;
  for (std::size_t ci : enc.cell_categories) {
    const Category& cat = p.categories[ci];
    if (cat.kind == CategoryKind::Ordinal) {
      bool numerals = all_numeral(cat);
      for (std::size_t v = 0; v < cat.values.size(); ++v) {
        enc.codes[{ci, v}] =
            numerals ? std::stoll(normalize_label(cat.values[v]))
                     : static_cast<long long>(v) + 1;
      }
    } else {
      enc.nominal_coded[ci] = true;
      for (std::size_t v = 0; v < cat.values.size(); ++v) {
        enc.codes[{ci, v}] = next_code++;
      }
    }
  }
  return enc;
}

ValueRef resolve(const Encoding& enc, const std::string& label,
                 const char* context) {
  const Puzzle& p = *enc.puzzle;
  auto found = p.find_value(label);
  if (!found) {
    throw EncodeError(std::string("unsupported clue: ") + context +
                      " references unknown value '" + label + "'");
  }
  ValueRef ref;
  if (found->first == enc.anchor_index) {
    ref.is_entity = true;
    ref.entity = found->second;
  } else {
    ref.cat = found->first;
    ref.val = found->second;
  }
  return ref;
}

// Predicate: entity e holds value ref v (v must be non-entity).
std::string holds(const Encoding& enc, std::size_t e, const ValueRef& v) {
  return "(= " + enc.cname(e, v.cat) + " " +
         std::to_string(enc.code(v.cat, v.val)) + ")";
}

// Co-location predicate between two value refs.
std::string colocated(const Encoding& enc, const ValueRef& a,
                      const ValueRef& b) {
  if (a.is_entity && b.is_entity) {
    return a.entity == b.entity ? "true" : "false";
  }
  if (a.is_entity) return holds(enc, a.entity, b);
  if (b.is_entity) return holds(enc, b.entity, a);
  if (a.cat == b.cat) return "false";  // two values of one category
  std::string out = "(or";
  for (std::size_t e = 0; e < enc.entity_count(); ++e) {
    out += "\n    (and " + holds(enc, e, a) + " " + holds(enc, e, b) + ")";
  }
  out += ")";
  return out;
}

// Direct position term for v over ordinal category `o`, when one exists.
std::optional<std::string> position_term(const Encoding& enc,
                                         const ValueRef& v, std::size_t o) {
  if (o == enc.anchor_index) {
    if (v.is_entity) return std::to_string(v.entity + 1);
    return std::nullopt;
  }
  if (v.is_entity) return enc.cname(v.entity, o);
  if (v.cat == o) return std::to_string(enc.code(o, v.val));
  return std::nullopt;
}

std::string relation(ClueKind kind, const std::string& a,
                     const std::string& b, int k) {
  switch (kind) {
    case ClueKind::Offset:
      if (k >= 0) return "(= " + a + " (+ " + b + " " + std::to_string(k) + "))";
      return "(= " + a + " (- " + b + " " + std::to_string(-k) + "))";
    case ClueKind::Neighbor:
      return "(or (= " + a + " (+ " + b + " 1)) (= " + a + " (- " + b +
             " 1)))";
    case ClueKind::Before:
      return "(< " + a + " " + b + ")";
    default:
      throw EncodeError("not a positional clue");
  }
}

bool positions_satisfy(ClueKind kind, int pa, int pb, int k) {
  switch (kind) {
    case ClueKind::Offset: return pa == pb + k;
    case ClueKind::Neighbor: return pa == pb + 1 || pa == pb - 1;
    case ClueKind::Before: return pa < pb;
    default: return false;
  }
}

// Positional clue over the anchor category itself: enumerate position
// pairs, anchoring each value to the entity at that position.
std::string positional_over_anchor(const Encoding& enc, const StructuredClue& c,
                                   const ValueRef& a, const ValueRef& b) {
  int n = static_cast<int>(enc.entity_count());
  std::vector<std::string> branches;
  for (int pa = 1; pa <= n; ++pa) {
    for (int pb = 1; pb <= n; ++pb) {
      if (!positions_satisfy(c.kind, pa, pb, c.k)) continue;
      std::vector<std::string> conj;
      bool dead = false;
      for (const auto& [v, p] : {std::pair{&a, pa}, std::pair{&b, pb}}) {
        if (v->is_entity) {
          if (static_cast<int>(v->entity) + 1 != p) dead = true;
        } else {
          conj.push_back(holds(enc, static_cast<std::size_t>(p - 1), *v));
        }
      }
      if (dead) continue;
      if (conj.empty()) {
        branches.push_back("true");
      } else if (conj.size() == 1) {
        branches.push_back(conj[0]);
      } else {
        branches.push_back("(and " + conj[0] + " " + conj[1] + ")");
      }
    }
  }
  if (branches.empty()) return "false";
  if (branches.size() == 1) return branches[0];
  std::string out = "(or";
  for (const auto& br : branches) out += "\n    " + br;
  out += ")";
  return out;
}

std::string encode_positional(const Encoding& enc, const StructuredClue& c) {
  const Category* ocat = enc.puzzle->find_category(c.category);
  std::size_t o = 0;
  for (std::size_t ci = 0; ci < enc.puzzle->categories.size(); ++ci) {
    if (&enc.puzzle->categories[ci] == ocat) o = ci;
  }
  ValueRef a = resolve(enc, c.a, "positional");
  ValueRef b = resolve(enc, c.b, "positional");

  auto ta = position_term(enc, a, o);
  auto tb = position_term(enc, b, o);
  if (ta && tb) return relation(c.kind, *ta, *tb, c.k);
  if (o == enc.anchor_index) return positional_over_anchor(enc, c, a, b);

  // An indirect side (a value from a third category) is tied to the
  // ordinal constant of whichever entity holds it.
  std::vector<std::string> branches;
  for (std::size_t ea = 0; ea < enc.entity_count(); ++ea) {
    std::string terma = ta ? *ta : enc.cname(ea, o);
    std::string guarda = ta ? "" : holds(enc, ea, a);
    if (ta && ea > 0) break;
    for (std::size_t eb = 0; eb < enc.entity_count(); ++eb) {
      std::string termb = tb ? *tb : enc.cname(eb, o);
      std::string guardb = tb ? "" : holds(enc, eb, b);
      if (tb && eb > 0) break;
      if (!ta && !tb && ea == eb) continue;
      std::string rel = relation(c.kind, terma, termb, c.k);
      std::string conj = "(and";
      if (!guarda.empty()) conj += " " + guarda;
      if (!guardb.empty()) conj += " " + guardb;
      conj += " " + rel + ")";
      branches.push_back(conj);
    }
  }
  if (branches.size() == 1) return branches[0];
  std::string out = "(or";
  for (const auto& br : branches) out += "\n    " + br;
  out += ")";
  return out;
}

std::string encode_clue(const Encoding& enc, const StructuredClue& c) {
  switch (c.kind) {
    case ClueKind::Is:
      return colocated(enc, resolve(enc, c.a, "is"), resolve(enc, c.b, "is"));
    case ClueKind::IsNot:
      return "(not " +
             colocated(enc, resolve(enc, c.a, "is-not"),
                       resolve(enc, c.b, "is-not")) +
             ")";
    case ClueKind::EitherOr: {
      ValueRef pivot = resolve(enc, c.c, "either-or");
      std::string with_a = colocated(enc, pivot, resolve(enc, c.a, "either-or"));
      std::string with_b = colocated(enc, pivot, resolve(enc, c.b, "either-or"));
      return "(or (and " + with_a + " (not " + with_b + ")) (and (not " +
             with_a + ") " + with_b + "))";
    }
    case ClueKind::Offset:
    case ClueKind::Neighbor:
    case ClueKind::Before:
      return encode_positional(enc, c);
  }
  throw EncodeError("unsupported clue kind");
}

std::string describe_clue(const StructuredClue& c) {
  switch (c.kind) {
    case ClueKind::Is: return c.a + " goes with " + c.b;
    case ClueKind::IsNot: return c.a + " does not go with " + c.b;
    case ClueKind::Offset:
      return c.a + " is " + std::to_string(c.k) + " " + c.category +
             " positions from " + c.b;
    case ClueKind::Neighbor:
      return c.a + " is next to " + c.b + " in " + c.category;
    case ClueKind::EitherOr:
      return c.c + " goes with exactly one of " + c.a + " and " + c.b;
    case ClueKind::Before:
      return c.a + " comes before " + c.b + " in " + c.category;
  }
  return "";
}

}  // namespace

SmtScript encode(const Puzzle& p) {
  if (!p.has_structured_clues) {
    throw EncodeError("puzzle " + p.id + " has no structured clues");
  }
  Encoding enc = build_encoding(p);
  const Category& anchor = p.categories[enc.anchor_index];

  std::ostringstream os;
  os << "(set-logic QF_LIA)\n";

  bool any_lookup = false;
  for (std::size_t ci : enc.cell_categories) {
    if (!enc.nominal_coded[ci]) continue;
    if (!any_lookup) os << "\n; lookup table\n";
    any_lookup = true;
    const Category& cat = p.categories[ci];
    os << ";";
    for (std::size_t v = 0; v < cat.values.size(); ++v) {
      os << (v == 0 ? " " : ", ") << enc.code(ci, v) << " is "
         << cat.values[v];
    }
    os << "\n";
  }

  for (std::size_t ci : enc.cell_categories) {
    const Category& cat = p.categories[ci];
    os << "\n; " << cat.name << " of each " << anchor.name << "\n";
    for (std::size_t e = 0; e < enc.entity_count(); ++e) {
      os << "(declare-const " << enc.cname(e, ci) << " Int)\n";
    }
  }

  for (std::size_t ci : enc.cell_categories) {
    const Category& cat = p.categories[ci];
    os << "\n; " << cat.name << " domain\n(assert (and\n";
    for (std::size_t e = 0; e < enc.entity_count(); ++e) {
      os << "  (or";
      for (std::size_t v = 0; v < cat.values.size(); ++v) {
        os << " (= " << enc.cname(e, ci) << " " << enc.code(ci, v) << ")";
      }
      os << ")\n";
    }
    os << "))\n";
    os << "(assert (distinct";
    for (std::size_t e = 0; e < enc.entity_count(); ++e) {
      os << " " << enc.cname(e, ci);
    }
    os << "))\n";
  }

  int clue_no = 0;
  for (const auto& clue : p.structured_clues) {
    ++clue_no;
    os << "\n; clue " << clue_no << ": " << describe_clue(clue) << "\n";
    os << "(assert " << encode_clue(enc, clue) << ")\n";
  }

  os << "\n(check-sat)\n(get-model)\n";
  return SmtScript{os.str(), ScriptProvenance::ReferenceEncoder, 0};
}

namespace {

// True when `abbrev` is a subsequence of `full` sharing the first letter
// ("anml" for "animal", "h1" for "house1").
bool abbreviates(const std::string& abbrev, const std::string& full) {
  if (abbrev.empty() || full.empty() || abbrev[0] != full[0]) return false;
  std::size_t i = 0;
  for (char c : full) {
    if (i < abbrev.size() && abbrev[i] == c) ++i;
  }
  return i == abbrev.size();
}

// 2 = exact normalized match, 1 = abbreviation, 0 = no match.
int label_match(const std::string& raw, const std::string& label) {
  std::string a = normalize_label(raw), b = normalize_label(label);
  if (a == b) return 2;
  if (abbreviates(a, b)) return 1;
  return 0;
}

// Splits a model constant name (underscore-separated, entity part then
// category part) into (entity, category) indices. Agent scripts abbreviate
// freely ("H1_Anml"), so both parts also match as subsequences.
std::optional<std::pair<std::size_t, std::size_t>> match_constant(
    const Puzzle& p, const std::string& name) {
  const Category& anchor = p.anchor();
  std::vector<std::string> tokens;
  std::string tok;
  for (char c : name) {
    if (c == '_') {
      if (!tok.empty()) tokens.push_back(tok);
      tok.clear();
    } else {
      tok += c;
    }
  }
  if (!tok.empty()) tokens.push_back(tok);
  if (tokens.size() < 2) return std::nullopt;

  std::optional<std::pair<std::size_t, std::size_t>> best;
  int best_score = 0;
  for (std::size_t split = 1; split < tokens.size(); ++split) {
    std::string entity_raw, cat_raw;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      (i < split ? entity_raw : cat_raw) += tokens[i];
    }
    for (std::size_t ci = 0; ci < p.categories.size(); ++ci) {
      const Category& cat = p.categories[ci];
      if (normalize_label(cat.name) == normalize_label(anchor.name)) continue;
      int cs = label_match(cat_raw, cat.name);
      if (cs == 0) continue;
      for (std::size_t e = 0; e < anchor.values.size(); ++e) {
        int es = label_match(entity_raw, anchor.values[e]);
        if (es == 0) continue;
        if (cs + es > best_score) {
          best = std::make_pair(e, ci);
          best_score = cs + es;
        }
      }
    }
  }
  return best;
}

}  // namespace

DecodeResult decode_model(const SolverOutcome& outcome, const Puzzle& p,
                          const std::string& script_text) {
  DecodeResult result;
  auto lookup = parse_lookup_table(script_text);
  const Category& anchor = p.anchor();
  for (const auto& df : outcome.model) {
    auto where = match_constant(p, df.name);
    if (!where) {
      result.issues.push_back(
          {df.name, "unknown-name",
           "constant does not match <Entity>_<Category> for this puzzle"});
      continue;
    }
    const auto& [e, ci] = *where;
    const Category& cat = p.categories[ci];
    Assignment a;
    a.entity = anchor.values[e];
    a.category = cat.name;
    if (df.sort != SmtSort::Int) {
      a.value = df.string_value;
    } else if (cat.kind == CategoryKind::Ordinal) {
      // Positions stay numeric, but must denote a real position or one of
      // the category's own numerals.
      bool known = df.int_value >= 1 &&
                   df.int_value <= static_cast<long long>(cat.values.size());
      for (const auto& v : cat.values) {
        auto ov = ordinal_value(v);
        known = known || (ov && *ov == df.int_value);
      }
      if (!known) {
        result.issues.push_back(
            {df.name, "unmapped-code",
             "value " + std::to_string(df.int_value) +
                 " is not a position in " + cat.name});
        continue;
      }
      a.value = std::to_string(df.int_value);
    } else {
      auto it = lookup.find(df.int_value);
      if (it == lookup.end()) {
        result.issues.push_back(
            {df.name, "unmapped-code",
             "code " + std::to_string(df.int_value) + " has no lookup entry"});
        continue;
      }
      a.value = it->second;
    }
    result.assignments.push_back(std::move(a));
  }
  return result;
}

Uniqueness check_uniqueness(const Puzzle& p, const SolverOutcome& outcome,
                            const SolverConfig& cfg) {
  SmtScript base = encode(p);
  std::ostringstream os;
  for (const auto& line : split_lines(base.text)) {
    std::string t = trim(line);
    if (t == "(check-sat)" || t == "(get-model)") continue;
    os << line << "\n";
  }
  os << "\n; exclude the found model\n(assert (not (and";
  for (const auto& df : outcome.model) {
    if (df.sort != SmtSort::Int) continue;
    os << " (= " << df.name << " " << df.int_value << ")";
  }
  os << ")))\n(check-sat)\n";
  SmtScript negated{os.str(), ScriptProvenance::ReferenceEncoder, 0};
  SolverOutcome re = run_solver(negated, cfg);
  return re.status == SolveStatus::Unsat ? Uniqueness::Unique
                                         : Uniqueness::NotUnique;
}

}  // namespace zebra
