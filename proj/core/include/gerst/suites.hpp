#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gerst/check.hpp"
#include "gerst/comparison.hpp"
#include "gerst/json_io.hpp"

namespace gerst {

class UnknownSuite : public std::invalid_argument {
 public:
  explicit UnknownSuite(const std::string& name) : std::invalid_argument("unknown suite: " + name) {}
};

/// dgla-axioms, commutators, adiota, formula-F, cotrace-morphism, phi-chainmap, jet-poincare, choices.
const std::vector<std::string>& suite_names();

struct SuiteOptions {
  /// Random draws; 0 picks the suite default.
  std::size_t trials = 0;
};

/// Runs a verification suite under cfg.field with draws seeded by cfg.seed.
RunReport run_suite(const std::string& name, const DeskConfig& cfg, const SuiteOptions& opt = {});

/// HH^k dimensions for k <= kmax (weight window for graded algebras), with a
/// normalized-versus-full cross-check when the unit is a basis vector.
RunReport run_hh(const Algebra& a, std::size_t kmax, std::optional<int> window);

/// Deformed product a * b = ab + lambda(a, b): MC residual, associativity mod t^N and
/// the star table. `moyal` adds the x * p - p * x = t check.
RunReport run_deform(const Algebra& a, const MCElement& lambda, bool moyal);

/// Sum of |coefficients| over Q, count of nonzero coefficients over F_p.
Scalar defect_norm(const Cochain& c);
Scalar defect_norm(const TSeries& s);

/// Jet precision used by the suites for a configuration.
JetDims jet_dims(const DeskConfig& cfg);

// Building blocks shared with the acceptance tests.

/// delta^2 = 0, graded antisymmetry, graded Jacobi and the derivation rule on
/// `trials` random triples of arity <= max_arity.
std::vector<IdentityCheck> dgla_axiom_checks(const Algebra& a, std::size_t trials, std::size_t max_arity, Rng& rng);

struct CommutatorOptions {
  /// Every cochain involved has arity <= max_arity.
  std::size_t max_arity = 3;
  int input_window = 2;
  int output_ycap = 2;
  /// Values compared in total degree <= compare_degree (-1: everything).
  int compare_degree = -1;
};

/// The four commutator identities on the spanning generators:
/// [delta, iota_H] = ad H, [ad H, iota_G] = iota_[H,G], [iota_H, iota_G] = 0,
/// [nabla_tot, iota_H] = iota_{nabla_tot H}.
std::vector<IdentityCheck> commutator_checks(const JetDims& dims, const FormSection& h, const FormSection& g,
                                             const Connection& c, const CommutatorOptions& opt);

/// A random choice (sigma, nabla) for the configuration.
ComparisonData random_choice(const JetDims& dims, const DeskConfig& cfg, Rng& rng);

}  // namespace gerst
