// puzzle.cpp

#include "zebra/puzzle.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "zebra/text_util.hpp"

namespace zebra {

using nlohmann::json;

std::size_t Puzzle::grid_size() const {
  return categories.empty() ? 0 : categories.front().values.size();
}

const Category& Puzzle::anchor() const {
  const Category* c = find_category(solution.anchor_category);
  if (!c) throw ValidationError("puzzle " + id + ": anchor category '" +
                                solution.anchor_category + "' not declared");
  return *c;
}

const Category* Puzzle::find_category(const std::string& name) const {
  std::string n = normalize_label(name);
  for (const auto& c : categories) {
    if (normalize_label(c.name) == n) return &c;
  }
  return nullptr;
}

std::optional<std::pair<std::size_t, std::size_t>> Puzzle::find_value(
    const std::string& label) const {
  std::string n = normalize_label(label);
  for (std::size_t ci = 0; ci < categories.size(); ++ci) {
    const auto& vals = categories[ci].values;
    for (std::size_t vi = 0; vi < vals.size(); ++vi) {
      if (normalize_label(vals[vi]) == n) return std::make_pair(ci, vi);
    }
  }
  return std::nullopt;
}

namespace {

const char* clue_kind_name(ClueKind k) {
  switch (k) {
    case ClueKind::Is: return "is";
    case ClueKind::IsNot: return "is-not";
    case ClueKind::Offset: return "offset";
    case ClueKind::Neighbor: return "neighbor";
    case ClueKind::EitherOr: return "either-or";
    case ClueKind::Before: return "before";
  }
  return "?";
}

ClueKind clue_kind_from(const std::string& s) {
  std::string n;
  for (char c : normalize_label(s)) {
    if (c != '-') n += c;
  }
  if (n == "is") return ClueKind::Is;
  if (n == "isnot") return ClueKind::IsNot;
  if (n == "offset") return ClueKind::Offset;
  if (n == "neighbor") return ClueKind::Neighbor;
  if (n == "eitheror") return ClueKind::EitherOr;
  if (n == "before") return ClueKind::Before;
  throw ParseError("unknown structured clue type '" + s + "'");
}

void check_clue(const Puzzle& p, const StructuredClue& c,
                ValidationReport& report) {
  auto require_value = [&](const std::string& label, const char* field) {
    if (label.empty()) {
      report.failures.push_back(
          {"clue-reference", std::string(clue_kind_name(c.kind)) + " clue: " +
                                 field + " is empty"});
      return;
    }
    if (!p.find_value(label)) {
      report.failures.push_back(
          {"clue-reference", std::string(clue_kind_name(c.kind)) +
                                 " clue references unknown value '" + label +
                                 "'"});
    }
  };
  require_value(c.a, "a");
  require_value(c.b, "b");
  if (normalize_label(c.a) == normalize_label(c.b)) {
    report.failures.push_back(
        {"clue-distinct", std::string(clue_kind_name(c.kind)) +
                              " clue: a and b are the same value '" + c.a +
                              "'"});
  }
  if (c.kind == ClueKind::EitherOr) require_value(c.c, "c");
  bool positional = c.kind == ClueKind::Offset ||
                    c.kind == ClueKind::Neighbor ||
                    c.kind == ClueKind::Before;
  if (positional) {
    const Category* cat = p.find_category(c.category);
    if (!cat) {
      report.failures.push_back({"clue-reference",
                                 "positional clue references unknown category '" +
                                     c.category + "'"});
    } else if (cat->kind != CategoryKind::Ordinal) {
      report.failures.push_back(
          {"clue-reference",
           "positional clue over non-ordinal category '" + c.category + "'"});
    }
  }
  if (c.kind == ClueKind::Offset && c.k == 0) {
    report.failures.push_back({"clue-offset", "offset clue with k = 0"});
  }
}

}  // namespace

ValidationReport validate_key(const Puzzle& p) {
  ValidationReport report;
  if (p.categories.size() < 2) {
    report.failures.push_back({"grid-shape", "fewer than 2 categories"});
    return report;
  }
  std::size_t n = p.grid_size();
  if (n < 2) {
    report.failures.push_back({"grid-shape", "fewer than 2 entities"});
  }
  for (const auto& cat : p.categories) {
    if (cat.values.size() != n) {
      report.failures.push_back(
          {"grid-shape", "category " + cat.name + " has " +
                             std::to_string(cat.values.size()) +
                             " values, expected " + std::to_string(n)});
    }
    std::set<std::string> seen;
    for (const auto& v : cat.values) {
      if (v.empty()) {
        report.failures.push_back({"value-labels",
                                   "category " + cat.name + " has an empty value"});
      }
      if (!seen.insert(normalize_label(v)).second) {
        report.failures.push_back(
            {"value-labels",
             "category " + cat.name + " repeats value '" + v + "'"});
      }
    }
  }

  const Category* anchor = p.find_category(p.solution.anchor_category);
  if (!anchor) {
    report.failures.push_back(
        {"anchor", "anchor category '" + p.solution.anchor_category +
                       "' not declared"});
    return report;
  }

  // Every anchor value must have a row, and per non-anchor category the
  // anchor -> value mapping must be a bijection.
  for (const auto& av : anchor->values) {
    bool found = false;
    for (const auto& [row_anchor, row] : p.solution.rows) {
      if (normalize_label(row_anchor) == normalize_label(av)) {
        found = true;
        break;
      }
    }
    if (!found) {
      report.failures.push_back(
          {"key-bijection", "incomplete bijection: no key row for anchor value '" +
                                av + "'"});
    }
  }
  for (const auto& cat : p.categories) {
    if (normalize_label(cat.name) == normalize_label(anchor->name)) continue;
    std::set<std::string> used;
    for (const auto& [row_anchor, row] : p.solution.rows) {
      auto it = row.end();
      for (auto jt = row.begin(); jt != row.end(); ++jt) {
        if (normalize_label(jt->first) == normalize_label(cat.name)) {
          it = jt;
          break;
        }
      }
      if (it == row.end()) {
        report.failures.push_back(
            {"key-bijection", "incomplete bijection: row '" + row_anchor +
                                  "' lacks category " + cat.name});
        continue;
      }
      if (!used.insert(normalize_label(it->second)).second) {
        report.failures.push_back(
            {"key-bijection", "bijection violated: category " + cat.name +
                                  " repeats value '" + it->second + "'"});
      }
    }
  }

  for (const auto& clue : p.structured_clues) check_clue(p, clue, report);

  if (report.ok()) {
    report.assignment_count = n * (p.categories.size() - 1);
  }
  return report;
}

namespace {

Puzzle puzzle_from_json(const json& j) {
  Puzzle p;
  p.id = j.at("id").get<std::string>();
  p.source = j.value("source", std::string());
  p.difficulty = j.value("difficulty", std::string("unknown"));
  for (const auto& jc : j.at("categories")) {
    Category c;
    c.name = jc.at("name").get<std::string>();
    std::string kind = jc.at("kind").get<std::string>();
    if (kind == "nominal") {
      c.kind = CategoryKind::Nominal;
    } else if (kind == "ordinal") {
      c.kind = CategoryKind::Ordinal;
    } else {
      throw ParseError("puzzle " + p.id + ": bad category kind '" + kind + "'");
    }
    c.values = jc.at("values").get<std::vector<std::string>>();
    p.categories.push_back(std::move(c));
  }
  p.clues = j.at("clues").get<std::vector<std::string>>();
  if (j.contains("structured_clues")) {
    p.has_structured_clues = true;
    for (const auto& js : j.at("structured_clues")) {
      StructuredClue c;
      c.kind = clue_kind_from(js.at("type").get<std::string>());
      c.a = js.at("a").get<std::string>();
      c.b = js.at("b").get<std::string>();
      c.c = js.value("c", std::string());
      c.category = js.value("category", std::string());
      c.k = js.value("k", 0);
      p.structured_clues.push_back(std::move(c));
    }
  }
  const auto& sol = j.at("solution");
  p.solution.anchor_category = sol.at("anchor").get<std::string>();
  for (const auto& [anchor_value, row] : sol.at("rows").items()) {
    p.solution.rows[anchor_value] =
        row.get<std::map<std::string, std::string>>();
  }
  return p;
}

json puzzle_to_json(const Puzzle& p) {
  json j;
  j["id"] = p.id;
  j["source"] = p.source;
  j["difficulty"] = p.difficulty;
  j["categories"] = json::array();
  for (const auto& c : p.categories) {
    j["categories"].push_back(
        {{"name", c.name},
         {"kind", c.kind == CategoryKind::Nominal ? "nominal" : "ordinal"},
         {"values", c.values}});
  }
  j["clues"] = p.clues;
  if (p.has_structured_clues) {
    j["structured_clues"] = json::array();
    for (const auto& c : p.structured_clues) {
      json js = {{"type", clue_kind_name(c.kind)}, {"a", c.a}, {"b", c.b}};
      if (!c.c.empty()) js["c"] = c.c;
      if (!c.category.empty()) js["category"] = c.category;
      if (c.k != 0) js["k"] = c.k;
      j["structured_clues"].push_back(std::move(js));
    }
  }
  j["solution"] = {{"anchor", p.solution.anchor_category},
                   {"rows", p.solution.rows}};
  return j;
}

}  // namespace

std::vector<Puzzle> parse_dataset(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed dataset: ") + e.what());
  }
  if (!doc.is_array()) throw ParseError("dataset must be a JSON array");
  std::vector<Puzzle> puzzles;
  for (const auto& j : doc) {
    Puzzle p;
    try {
      p = puzzle_from_json(j);
    } catch (const json::exception& e) {
      throw ParseError(std::string("malformed puzzle record: ") + e.what());
    }
    ValidationReport report = validate_key(p);
    if (!report.ok()) {
      std::ostringstream msg;
      msg << "puzzle " << p.id << " failed validation:";
      for (const auto& f : report.failures) {
        msg << " [" << f.check << "] " << f.detail << ";";
      }
      throw ValidationError(msg.str());
    }
    puzzles.push_back(std::move(p));
  }
  return puzzles;
}

std::string serialize_dataset(const std::vector<Puzzle>& puzzles) {
  json arr = json::array();
  for (const auto& p : puzzles) arr.push_back(puzzle_to_json(p));
  return arr.dump(2) + "\n";
}

std::vector<Puzzle> load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open dataset file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dataset(buf.str());
}

}  // namespace zebra
