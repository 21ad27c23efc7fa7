#include "koszul/problem.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace koszul {

namespace {

using json = nlohmann::json;

// Byte offset of the value at `path` inside already-validated JSON text.
class Locator {
 public:
  explicit Locator(std::string_view text) : text_(text) {}

  std::size_t find(const std::vector<std::string>& path) {
    pos_ = 0;
    for (const std::string& key : path) {
      skip_ws();
      if (pos_ >= text_.size()) return 0;
      if (text_[pos_] == '{') {
        ++pos_;
        while (true) {
          skip_ws();
          if (pos_ >= text_.size() || text_[pos_] == '}') return 0;
          const std::string k = read_string();
          skip_ws();
          ++pos_;  // ':'
          skip_ws();
          if (k == key) break;
          skip_value();
          skip_ws();
          if (pos_ < text_.size() && text_[pos_] == ',') ++pos_;
        }
      } else if (text_[pos_] == '[') {
        ++pos_;
        const long index = std::stol(key);
        for (long i = 0; i < index; ++i) {
          skip_ws();
          skip_value();
          skip_ws();
          if (pos_ < text_.size() && text_[pos_] == ',') ++pos_;
        }
        skip_ws();
      } else {
        return pos_;
      }
    }
    skip_ws();
    return pos_;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  std::string read_string() {
    std::string out;
    ++pos_;
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\') ++pos_;
      if (pos_ < text_.size()) out += text_[pos_++];
    }
    ++pos_;
    return out;
  }
  void skip_value() {
    if (pos_ >= text_.size()) return;
    if (text_[pos_] == '"') {
      read_string();
      return;
    }
    if (text_[pos_] == '{' || text_[pos_] == '[') {
      int depth = 0;
      do {
        const char c = text_[pos_];
        if (c == '"') {
          read_string();
          continue;
        }
        if (c == '{' || c == '[') ++depth;
        if (c == '}' || c == ']') --depth;
        ++pos_;
      } while (depth > 0 && pos_ < text_.size());
      return;
    }
    while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != '}' && text_[pos_] != ']' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::string pointer(const std::vector<std::string>& path) {
  std::string out;
  for (const auto& p : path) out += "/" + p;
  return out.empty() ? "/" : out;
}

class Reader {
 public:
  Reader(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {
    try {
      doc_ = json::parse(text_);
    } catch (const json::parse_error& e) {
      const auto [line, col] = line_column(text_, e.byte == 0 ? 0 : e.byte - 1);
      std::string what = e.what();
      if (const auto cut = what.find("syntax error"); cut != std::string::npos) what = what.substr(cut);
      throw ParseError(source_ + ": " + what, line, col);
    }
  }

  const json& doc() const { return doc_; }

  [[noreturn]] void fail(const std::vector<std::string>& path, const std::string& what, std::size_t inner = 0) const {
    const std::size_t offset = Locator(text_).find(path);
    const auto [line, col] = line_column(text_, offset);
    throw ParseError(source_ + ": " + what + " at " + pointer(path), line, col + inner);
  }

  const json& get(const json& parent, const std::vector<std::string>& path, const std::string& key,
                  json::value_t type, bool required = true) const {
    static const json missing;
    const auto it = parent.find(key);
    if (it == parent.end()) {
      if (required) fail(path, "missing key '" + key + "'");
      return missing;
    }
    auto sub = path;
    sub.push_back(key);
    check_type(*it, sub, type);
    return *it;
  }

  void check_type(const json& v, const std::vector<std::string>& path, json::value_t type) const {
    const bool ok = type == json::value_t::number_integer ? v.is_number_integer() : v.type() == type;
    if (!ok) fail(path, std::string("expected ") + type_name(type) + ", found " + v.type_name());
  }

  int integer(const json& v, const std::vector<std::string>& path) const {
    check_type(v, path, json::value_t::number_integer);
    const auto x = v.get<long long>();
    if (x < -1'000'000'000 || x > 1'000'000'000) fail(path, "integer out of range");
    return static_cast<int>(x);
  }

  Polynomial polynomial(const json& v, const std::vector<std::string>& path,
                        const std::vector<std::string>& names) const {
    check_type(v, path, json::value_t::string);
    try {
      return parse_polynomial(v.get<std::string>(), names);
    } catch (const ParseError& e) {
      fail(path, e.what(), e.column());
    }
  }

 private:
  static const char* type_name(json::value_t t) {
    switch (t) {
      case json::value_t::object: return "an object";
      case json::value_t::array: return "an array";
      case json::value_t::string: return "a string";
      case json::value_t::boolean: return "a boolean";
      default: return "an integer";
    }
  }

  std::string_view text_;
  std::string source_;
  json doc_;
};

using P = std::vector<std::string>;

}  // namespace

Problem parse_problem(std::string_view text, const std::string& source) {
  Reader rd(text, source);
  const json& doc = rd.doc();
  if (!doc.is_object()) rd.fail({}, "a problem document must be a JSON object");
  for (const auto& [key, value] : doc.items())
    if (key != "field" && key != "algebra" && key != "module" && key != "task" && key != "description")
      rd.fail({key}, "unknown section '" + key + "'");

  Problem out;
  out.source = source;
  AlgebraSpec alg;
  const json& field = rd.get(doc, {}, "field", json::value_t::object);
  const int ch = rd.integer(rd.get(field, {"field"}, "characteristic", json::value_t::number_integer),
                            {"field", "characteristic"});
  if (ch < 0) rd.fail({"field", "characteristic"}, "characteristic must be nonnegative");
  alg.field.characteristic = static_cast<std::uint32_t>(ch);
  try {
    alg.field.validate();
  } catch (const ValidationError& e) {
    rd.fail({"field", "characteristic"}, e.what());
  }

  const json& algebra = rd.get(doc, {}, "algebra", json::value_t::object);
  const json& vars = rd.get(algebra, {"algebra"}, "variables", json::value_t::array);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const P path{"algebra", "variables", std::to_string(i)};
    rd.check_type(vars[i], path, json::value_t::object);
    Variable v;
    P np = path;
    np.push_back("name");
    v.name = rd.get(vars[i], path, "name", json::value_t::string).get<std::string>();
    if (vars[i].contains("weight")) {
      P wp = path;
      wp.push_back("weight");
      v.weight = rd.integer(vars[i]["weight"], wp);
      if (v.weight <= 0) rd.fail(wp, "variable weight must be a positive integer");
    }
    for (const auto& prev : alg.variables)
      if (prev.name == v.name) rd.fail(np, "duplicate variable '" + v.name + "'");
    alg.variables.push_back(v);
  }
  try {
    alg.validate();
  } catch (const ValidationError& e) {
    rd.fail({"algebra", "variables"}, e.what());
  }
  const auto names = alg.names();
  if (algebra.contains("relators")) {
    const json& rels = rd.get(algebra, {"algebra"}, "relators", json::value_t::array);
    for (std::size_t i = 0; i < rels.size(); ++i) {
      const P path{"algebra", "relators", std::to_string(i)};
      Polynomial f = rd.polynomial(rels[i], path, names);
      if (!alg.is_homogeneous(f)) rd.fail(path, "relator " + f.to_string(names) + " is not homogeneous");
      if (!f.is_zero() && alg.degree(f)->weight == 0) rd.fail(path, "relator is a nonzero constant");
      alg.relators.push_back(std::move(f));
    }
  }
  for (const auto& [key, value] : algebra.items())
    if (key != "variables" && key != "relators") rd.fail({"algebra", key}, "unknown key '" + key + "'");
  out.algebra = std::make_shared<const AlgebraSpec>(std::move(alg));

  const json& module = rd.get(doc, {}, "module", json::value_t::object);
  if (module.contains("regular_sequence")) {
    const json& seq = rd.get(module, {"module"}, "regular_sequence", json::value_t::array);
    std::vector<Polynomial> elems;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const P path{"module", "regular_sequence", std::to_string(i)};
      Polynomial f = rd.polynomial(seq[i], path, names);
      if (f.is_zero()) rd.fail(path, "sequence element is zero");
      if (!out.algebra->is_homogeneous(f)) rd.fail(path, "sequence element is not homogeneous");
      elems.push_back(std::move(f));
    }
    if (module.contains("check_bound"))
      out.check_bound = rd.integer(module["check_bound"], {"module", "check_bound"});
    for (const auto& [key, value] : module.items())
      if (key != "regular_sequence" && key != "check_bound") rd.fail({"module", key}, "unknown key '" + key + "'");
    out.regular_sequence = elems;
    out.regular_ideal = regular_ideal_module(out.algebra, elems, out.check_bound);
    out.module = std::make_shared<const ModuleSpec>(out.regular_ideal->module);
  } else {
    ModuleSpec m;
    m.algebra = out.algebra;
    const json& gens = rd.get(module, {"module"}, "generators", json::value_t::array);
    std::set<std::string> seen;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const P path{"module", "generators", std::to_string(i)};
      rd.check_type(gens[i], path, json::value_t::object);
      Generator g;
      g.name = rd.get(gens[i], path, "name", json::value_t::string).get<std::string>();
      P dp = path;
      dp.push_back("degree");
      g.degree.weight = rd.integer(rd.get(gens[i], path, "degree", json::value_t::number_integer), dp);
      if (!seen.insert(g.name).second) rd.fail(path, "duplicate generator '" + g.name + "'");
      m.generators.push_back(std::move(g));
    }
    if (module.contains("relations")) {
      const json& rels = rd.get(module, {"module"}, "relations", json::value_t::array);
      for (std::size_t j = 0; j < rels.size(); ++j) {
        const P path{"module", "relations", std::to_string(j)};
        rd.check_type(rels[j], path, json::value_t::array);
        if (rels[j].size() != m.rank())
          rd.fail(path, "relation has " + std::to_string(rels[j].size()) + " entries for " +
                            std::to_string(m.rank()) + " generators");
        std::vector<Polynomial> rel;
        for (std::size_t i = 0; i < rels[j].size(); ++i) {
          P ep = path;
          ep.push_back(std::to_string(i));
          rel.push_back(rd.polynomial(rels[j][i], ep, names));
        }
        m.relations.push_back(std::move(rel));
        try {
          m.validate();
        } catch (const ValidationError& e) {
          rd.fail(path, e.what());
        }
      }
    }
    for (const auto& [key, value] : module.items())
      if (key != "generators" && key != "relations") rd.fail({"module", key}, "unknown key '" + key + "'");
    out.module = std::make_shared<const ModuleSpec>(std::move(m));
  }

  if (doc.contains("task")) {
    const json& task = rd.get(doc, {}, "task", json::value_t::object);
    TaskSpec& t = out.task;
    for (const auto& [key, value] : task.items()) {
      const P path{"task", key};
      if (key == "kind") {
        rd.check_type(value, path, json::value_t::string);
        t.kind = value.get<std::string>();
      } else if (key == "n") {
        t.n = rd.integer(value, path);
      } else if (key == "n_range") {
        rd.check_type(value, path, json::value_t::array);
        if (value.size() != 2) rd.fail(path, "n_range must be [first, last]");
        t.n_range = {rd.integer(value[0], {"task", key, "0"}), rd.integer(value[1], {"task", key, "1"})};
      } else if (key == "degree_bound") {
        t.degree_bound = rd.integer(value, path);
      } else if (key == "p") {
        t.p = rd.integer(value, path);
      } else if (key == "q") {
        t.q = rd.integer(value, path);
      } else if (key != "tables") {
        rd.fail(path, "unknown task key '" + key + "'");
      }
    }
  }
  return out;
}

Problem with_characteristic(const Problem& p, std::uint32_t characteristic) {
  if (p.algebra->field.characteristic == characteristic) return p;
  FieldSpec f{characteristic};
  f.validate();
  Problem out = p;
  AlgebraSpec a = *p.algebra;
  a.field = f;
  out.algebra = std::make_shared<const AlgebraSpec>(std::move(a));
  ModuleSpec m = *p.module;
  m.algebra = out.algebra;
  out.module = std::make_shared<const ModuleSpec>(std::move(m));
  if (out.regular_ideal) {
    out.regular_ideal = regular_ideal_module(out.algebra, p.regular_sequence, p.check_bound);
    out.module = std::make_shared<const ModuleSpec>(out.regular_ideal->module);
  }
  return out;
}

std::optional<std::string> bundled_problem(const std::string& name) {
  for (const auto& [n, text] : bundled_problems())
    if (n == name) return text;
  return std::nullopt;
}

std::pair<std::string, std::string> load_problem_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (in) {
    std::ostringstream ss;
    ss << in.rdbuf();
    return {path, ss.str()};
  }
  std::string name = path;
  if (name.rfind("bundled:", 0) == 0) name = name.substr(8);
  if (name.rfind("examples/", 0) == 0) name = name.substr(9);
  if (name.size() > 5 && name.substr(name.size() - 5) == ".json") name = name.substr(0, name.size() - 5);
  if (auto text = bundled_problem(name)) return {"bundled:" + name, *text};
  throw ParseError("cannot open problem file '" + path + "' and no bundled example has that name");
}

BundleCohomologyTable parse_bundle_table(std::string_view text) {
  Reader rd(text, "<table>");
  const json& doc = rd.doc();
  if (!doc.is_object()) rd.fail({}, "a table document must be a JSON object");
  BundleCohomologyTable t;
  t.r = rd.integer(rd.get(doc, {}, "r", json::value_t::number_integer), {"r"});
  t.n = rd.integer(rd.get(doc, {}, "n", json::value_t::number_integer), {"n"});
  if (t.r < 0) rd.fail({"r"}, "r must be nonnegative");
  if (doc.contains("characteristic_zero"))
    t.characteristic_zero = rd.get(doc, {}, "characteristic_zero", json::value_t::boolean).get<bool>();
  if (doc.contains("smooth_dimension")) t.smooth_dimension = rd.integer(doc["smooth_dimension"], {"smooth_dimension"});
  if (doc.contains("note")) t.note = rd.get(doc, {}, "note", json::value_t::string).get<std::string>();
  const json& entries = rd.get(doc, {}, "entries", json::value_t::array);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const P path{"entries", std::to_string(i)};
    rd.check_type(entries[i], path, json::value_t::object);
    const int q = rd.integer(rd.get(entries[i], path, "q", json::value_t::number_integer), {"entries", path[1], "q"});
    const int j = rd.integer(rd.get(entries[i], path, "j", json::value_t::number_integer), {"entries", path[1], "j"});
    const int dim =
        rd.integer(rd.get(entries[i], path, "dim", json::value_t::number_integer), {"entries", path[1], "dim"});
    if (dim < 0) rd.fail({"entries", path[1], "dim"}, "dimensions must be nonnegative");
    if (!t.h.emplace(std::make_pair(q, j), dim).second) rd.fail(path, "duplicate entry");
  }
  return t;
}

std::string digest(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace koszul
