#include "gerst/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace gerst {

namespace {

std::string pointer(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

const Json& member(const Json& j, const std::string& where, const char* key) {
  if (!j.is_object()) throw ParseError(where.empty() ? "/" : where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + "/" + key, "missing field");
  return *it;
}

std::size_t as_index(const Json& j, const std::string& where, std::size_t bound) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError(where, "expected a non-negative integer");
  const auto v = j.get<std::size_t>();
  if (v >= bound) throw ParseError(where, "index " + std::to_string(v) + " out of range (dim " + std::to_string(bound) + ")");
  return v;
}

int as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where, "expected an integer");
  return j.get<int>();
}

Scalar as_scalar(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Scalar(j.get<long>());
  if (!j.is_string()) throw ParseError(where, "expected a \"num/den\" string");
  try {
    return Scalar::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(where, e.what());
  }
}

const Json& as_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where, "expected an array");
  return j;
}

Json entries_json(const Cochain& c, std::optional<int> t_power) {
  Json entries = Json::array();
  for (const auto& [idx, out] : c.entries)
    for (const auto& [k, v] : out) {
      Json e = Json::array({Json(idx), k, v.str()});
      if (t_power) e.push_back(*t_power);
      entries.push_back(std::move(e));
    }
  return entries;
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(line_column(text, e.byte == 0 ? 0 : e.byte - 1), "malformed JSON");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_json(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.where(), "malformed JSON");
  }
}

Json algebra_to_json(const Algebra& a) {
  Json j;
  j["dim"] = a.dim();
  j["basis"] = a.labels();
  Json unit = Json::array();
  for (const Scalar& s : a.unit()) unit.push_back(s.str());
  j["unit"] = std::move(unit);
  Json table = Json::array();
  for (const auto& e : a.table()) table.push_back(Json::array({e.i, e.j, e.k, e.value.str()}));
  j["table"] = std::move(table);
  if (a.weights()) j["weights"] = *a.weights();
  if (a.weight_cap()) j["weight_cap"] = *a.weight_cap();
  return j;
}

Algebra algebra_from_json(const Json& j) {
  const Json& dim_json = member(j, "", "dim");
  if (!dim_json.is_number_integer() || dim_json.get<long long>() < 1) throw ParseError("/dim", "expected a positive integer");
  const auto dim = dim_json.get<std::size_t>();

  std::vector<std::string> labels;
  const Json& basis = as_array(member(j, "", "basis"), "/basis");
  if (basis.size() != dim) throw ParseError("/basis", "expected " + std::to_string(dim) + " labels");
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!basis[i].is_string()) throw ParseError(pointer("/basis", i), "expected a string");
    labels.push_back(basis[i].get<std::string>());
  }

  const Json& unit_json = as_array(member(j, "", "unit"), "/unit");
  if (unit_json.size() != dim) throw ParseError("/unit", "expected " + std::to_string(dim) + " coordinates");
  Vec unit;
  for (std::size_t i = 0; i < dim; ++i) unit.push_back(as_scalar(unit_json[i], pointer("/unit", i)));

  std::vector<TableEntry> table;
  const Json& table_json = as_array(member(j, "", "table"), "/table");
  for (std::size_t r = 0; r < table_json.size(); ++r) {
    const std::string where = pointer("/table", r);
    const Json& e = as_array(table_json[r], where);
    if (e.size() != 4) throw ParseError(where, "expected [i, j, k, \"num/den\"]");
    table.push_back({as_index(e[0], pointer(where, 0), dim), as_index(e[1], pointer(where, 1), dim),
                     as_index(e[2], pointer(where, 2), dim), as_scalar(e[3], pointer(where, 3))});
  }

  std::optional<std::vector<int>> weights;
  if (auto it = j.find("weights"); it != j.end()) {
    as_array(*it, "/weights");
    if (it->size() != dim) throw ParseError("/weights", "expected " + std::to_string(dim) + " weights");
    weights.emplace();
    for (std::size_t i = 0; i < dim; ++i) weights->push_back(as_int((*it)[i], pointer("/weights", i)));
  }
  std::optional<int> cap;
  if (auto it = j.find("weight_cap"); it != j.end()) cap = as_int(*it, "/weight_cap");
  return Algebra::from_table(std::move(labels), std::move(unit), table, std::move(weights), cap);
}

Json cochain_to_json(const Cochain& c) {
  Json j;
  j["arity"] = c.arity;
  j["entries"] = entries_json(c, std::nullopt);
  if (c.input_cap) j["input_cap"] = *c.input_cap;
  return j;
}

Cochain cochain_from_json(const Algebra& a, const Json& j) {
  const int arity = as_int(member(j, "", "arity"), "/arity");
  if (arity < 0) throw ParseError("/arity", "expected a non-negative arity");
  Cochain c = zero_cochain(a, static_cast<std::size_t>(arity));
  if (auto it = j.find("input_cap"); it != j.end()) c.input_cap = as_int(*it, "/input_cap");
  const Json& entries = as_array(member(j, "", "entries"), "/entries");
  for (std::size_t r = 0; r < entries.size(); ++r) {
    const std::string where = pointer("/entries", r);
    const Json& e = as_array(entries[r], where);
    if (e.size() != 3) throw ParseError(where, "expected [[i1, ..], j, \"num/den\"]");
    const Json& in = as_array(e[0], pointer(where, 0));
    if (in.size() != static_cast<std::size_t>(arity)) throw ParseError(pointer(where, 0), "expected " + std::to_string(arity) + " inputs");
    Index idx;
    for (std::size_t s = 0; s < in.size(); ++s) idx.push_back(as_index(in[s], pointer(pointer(where, 0), s), a.dim()));
    c.add(idx, as_index(e[1], pointer(where, 1), a.dim()), as_scalar(e[2], pointer(where, 2)));
  }
  return c;
}

Json mc_to_json(const MCElement& m) {
  Json j;
  j["arity"] = m.arity;
  j["order"] = m.order;
  Json entries = Json::array();
  for (int k = 0; k < m.order; ++k)
    for (auto& e : entries_json(m[k], k)) entries.push_back(std::move(e));
  j["entries"] = std::move(entries);
  if (!m.terms.empty() && m[0].input_cap) j["input_cap"] = *m[0].input_cap;
  return j;
}

MCElement mc_from_json(const Algebra& a, const Json& j, std::optional<int> order) {
  const int arity = as_int(member(j, "", "arity"), "/arity");
  if (arity < 0) throw ParseError("/arity", "expected a non-negative arity");
  int n = 3;
  if (auto it = j.find("order"); it != j.end()) n = as_int(*it, "/order");
  if (order) n = *order;
  if (n < 1) throw ParseError("/order", "expected a positive truncation order");
  std::optional<int> cap = a.weight_cap();
  if (auto it = j.find("input_cap"); it != j.end()) cap = as_int(*it, "/input_cap");
  MCElement m(n, static_cast<std::size_t>(arity), cap);
  const Json& entries = as_array(member(j, "", "entries"), "/entries");
  for (std::size_t r = 0; r < entries.size(); ++r) {
    const std::string where = pointer("/entries", r);
    const Json& e = as_array(entries[r], where);
    if (e.size() != 4) throw ParseError(where, "expected [[i1, ..], j, \"num/den\", t_power]");
    const int t = as_int(e[3], pointer(where, 3));
    if (t < 0) throw ParseError(pointer(where, 3), "negative t power");
    if (t >= n) continue;  // vanishes mod t^N
    const Json& in = as_array(e[0], pointer(where, 0));
    if (in.size() != static_cast<std::size_t>(arity)) throw ParseError(pointer(where, 0), "expected " + std::to_string(arity) + " inputs");
    Index idx;
    for (std::size_t s = 0; s < in.size(); ++s) idx.push_back(as_index(in[s], pointer(pointer(where, 0), s), a.dim()));
    m[t].add(idx, as_index(e[1], pointer(where, 1), a.dim()), as_scalar(e[2], pointer(where, 2)));
  }
  return m;
}

Json config_to_json(const DeskConfig& c) {
  Json j;
  j["d"] = c.d;
  j["n"] = c.n;
  j["x_weight_cap"] = c.x_weight_cap;
  j["y_weight_cap"] = c.y_weight_cap;
  j["cochain_arity_max"] = c.cochain_arity_max;
  j["field"] = c.field.name();
  j["seed"] = c.seed;
  return j;
}

DeskConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("/", "expected an object");
  DeskConfig c;
  for (const auto& [key, v] : j.items()) {
    const std::string where = "/" + key;
    if (key == "d") {
      c.d = as_int(v, where);
      if (c.d < 1 || c.d > kMaxJetVars) throw ParseError(where, "d must lie in 1.." + std::to_string(kMaxJetVars));
    } else if (key == "n") {
      c.n = as_int(v, where);
      if (c.n < 1 || c.n > 15) throw ParseError(where, "n must lie in 1..15");
    } else if (key == "x_weight_cap") {
      c.x_weight_cap = as_int(v, where);
      if (c.x_weight_cap < 0) throw ParseError(where, "negative cap");
    } else if (key == "y_weight_cap") {
      c.y_weight_cap = as_int(v, where);
      if (c.y_weight_cap < 1) throw ParseError(where, "y cap must be at least 1");
    } else if (key == "cochain_arity_max") {
      const int a = as_int(v, where);
      if (a < 1) throw ParseError(where, "arity bound must be positive");
      c.cochain_arity_max = static_cast<std::size_t>(a);
    } else if (key == "field") {
      if (!v.is_string()) throw ParseError(where, "expected \"Q\" or \"Fp:<p>\"");
      try {
        c.field = Field::parse(v.get<std::string>());
      } catch (const std::exception& e) {
        throw ParseError(where, e.what());
      }
    } else if (key == "seed") {
      if (!v.is_number_unsigned()) throw ParseError(where, "expected a non-negative integer");
      c.seed = v.get<std::uint64_t>();
    } else {
      throw ParseError(where, "unknown configuration key");
    }
  }
  return c;
}

std::size_t RunReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const CheckRecord& r) { return !r.pass; }));
}

Json RunReport::to_json(bool with_times) const {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["command"] = command;
  j["config"] = config;
  if (seed) j["seed"] = *seed;
  std::vector<const CheckRecord*> sorted;
  for (const auto& c : checks) sorted.push_back(&c);
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) { return a->name < b->name; });
  Json list = Json::array();
  for (const CheckRecord* c : sorted) {
    Json r;
    r["name"] = c->name;
    r["status"] = c->pass ? "pass" : "fail";
    if (c->defect) r["defect"] = c->defect->str();
    if (c->dims) r["dims"] = *c->dims;
    if (c->cases) r["cases"] = c->cases;
    if (!c->witness.empty()) r["witness"] = c->witness;
    if (with_times) r["wall_time_s"] = c->wall_seconds;
    list.push_back(std::move(r));
  }
  j["checks"] = std::move(list);
  j["summary"] = {{"checks", checks.size()}, {"failures", failures()}};
  if (!artifacts.empty()) j["artifacts"] = artifacts;
  return j;
}

}  // namespace gerst
