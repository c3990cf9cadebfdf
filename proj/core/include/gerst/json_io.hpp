#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "gerst/algebra.hpp"
#include "gerst/cochain.hpp"
#include "gerst/deformation.hpp"
#include "gerst/jet_poly.hpp"

namespace gerst {

using Json = nlohmann::ordered_json;

/// Malformed input. `where` is a JSON pointer ("/table/3/2") or "line L, column C"
/// for syntax errors; `what()` includes it.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

/// Parses text, reporting syntax errors with line and column.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

/// {"dim", "basis", "unit": ["n/d", ...], "table": [[i, j, k, "n/d"], ...], "weights"?, "weight_cap"?}
Json algebra_to_json(const Algebra& a);
/// Validates indices, the unit axioms and associativity (AlgebraError on failure).
Algebra algebra_from_json(const Json& j);

/// {"arity", "entries": [[[i1, ..], j, "n/d"], ...], "input_cap"?}
Json cochain_to_json(const Cochain& c);
Cochain cochain_from_json(const Algebra& a, const Json& j);

/// Cochain JSON whose entries carry a fourth element, the t power:
/// {"arity": 2, "order": N, "entries": [[[i, j], k, "n/d", t_power], ...]}.
Json mc_to_json(const MCElement& m);
MCElement mc_from_json(const Algebra& a, const Json& j, std::optional<int> order = std::nullopt);

/// Desk-model configuration block.
struct DeskConfig {
  int d = 2;
  int n = 2;
  int x_weight_cap = 2;
  int y_weight_cap = 2;
  std::size_t cochain_arity_max = 2;
  Field field = Field::rationals();
  std::uint64_t seed = 1;
};

Json config_to_json(const DeskConfig& c);
/// Missing keys keep their defaults; unknown keys are rejected.
DeskConfig config_from_json(const Json& j);

/// One verification record. Exactly one of defect / dims is normally set.
struct CheckRecord {
  std::string name;
  bool pass = false;
  std::optional<Scalar> defect;
  std::optional<Json> dims;
  /// Number of instances the identity was evaluated on (0 when not applicable).
  std::size_t cases = 0;
  double wall_seconds = 0;
  std::string witness;
};

inline constexpr int kReportSchemaVersion = 1;

struct RunReport {
  std::string command;
  Json config = Json::object();
  std::optional<std::uint64_t> seed;
  std::vector<CheckRecord> checks;
  Json artifacts = Json::object();

  void add(CheckRecord r) { checks.push_back(std::move(r)); }
  std::size_t failures() const;
  /// Checks are ordered by name. Wall times are included unless `with_times` is false.
  Json to_json(bool with_times = true) const;
};

}  // namespace gerst
