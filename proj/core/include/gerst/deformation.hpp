#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gerst/artin.hpp"
#include "gerst/cochain.hpp"

namespace gerst {

/// Cochain-valued element of C (x) k[t]/(t^N): terms[k] is the t^k coefficient.
struct TSeries {
  int order = 3;
  std::size_t arity = 0;
  std::vector<Cochain> terms;

  TSeries() = default;
  TSeries(int order, std::size_t arity, std::optional<int> cap = std::nullopt);

  Cochain& operator[](int k) { return terms.at(static_cast<std::size_t>(k)); }
  const Cochain& operator[](int k) const { return terms.at(static_cast<std::size_t>(k)); }
  bool is_zero() const;
  /// Lowest power with a nonzero term, or order when zero.
  int valuation() const;

  TSeries& operator+=(const TSeries& o);
  TSeries& operator-=(const TSeries& o);
  TSeries& operator*=(const Scalar& s);
  friend TSeries operator+(TSeries a, const TSeries& b) { return a += b; }
  friend TSeries operator-(TSeries a, const TSeries& b) { return a -= b; }
  friend TSeries operator*(const Scalar& s, TSeries a) { return a *= s; }
  friend bool operator==(const TSeries& a, const TSeries& b);
};

/// Arity-2 series without t^0 term.
using MCElement = TSeries;
/// Arity-1 series without t^0 term.
using GaugeElement = TSeries;

MCElement zero_mc(const Algebra& a, int order);
GaugeElement zero_gauge(const Algebra& a, int order);

/// Termwise bracket truncated at t^N.
TSeries series_bracket(const Algebra& a, const TSeries& x, const TSeries& y);
TSeries series_differential(const Algebra& a, const TSeries& x);

/// delta(lambda) + 1/2 [lambda, lambda] per power of t.
TSeries mc_residual(const Algebra& a, const MCElement& lambda);

/// e^X(lambda) = sum ad_X^n(lambda)/n! - sum ad_X^n(delta X)/(n+1)!.
MCElement gauge_act(const Algebra& a, const GaugeElement& x, const MCElement& lambda);

/// a * b = ab + sum_k t^k lambda_k(a, b) on basis pairs.
struct DeformedAlgebra {
  const Algebra* base = nullptr;
  int order = 3;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<SparseVec>> star;  // per power of t

  /// e_i * e_j as a vector of per-power coefficients.
  std::vector<SparseVec> product(std::size_t i, std::size_t j) const;
  std::vector<SparseVec> multiply(const std::vector<SparseVec>& x, const std::vector<SparseVec>& y) const;
};

DeformedAlgebra deform_product(const Algebra& a, const MCElement& lambda);
/// (e_i * e_j) * e_k - e_i * (e_j * e_k) on every defined basis triple, per power of t.
TSeries check_associativity(const DeformedAlgebra& d);

struct GaugeSearch {
  std::optional<GaugeElement> gauge;
  int obstruction_order = 0;
  Cochain obstruction;  // residual at the failing order, reduced modulo coboundaries
};

/// Solves e^X(lambda1) = lambda2 order by order. Unweighted algebras only.
GaugeSearch gauge_equivalent(const Algebra& a, const MCElement& lambda1, const MCElement& lambda2);

/// Poisson bivector P(a, b) = d_x a d_p b - d_p a d_x b on k[x, p] (a two-variable polynomial algebra).
Cochain poisson_cochain(const Algebra& a);
/// P^2(a, b) = d_x^2 a d_p^2 b - 2 d_x d_p a d_x d_p b + d_p^2 a d_x^2 b.
Cochain poisson_square_cochain(const Algebra& a);
/// t/2 P + t^2/8 P^2, truncated at t^order (order <= 3).
MCElement moyal_mc(const Algebra& a, int order = 3);

/// Transports lambda over R to Mat_n(R) by the cotrace. lambda must be normalized.
MCElement mc_transport(const Algebra& r, int n, const MCElement& lambda);

/// Random series with `nonzeros` entries per power (no t^0 term).
TSeries random_series(const Algebra& a, int order, std::size_t arity, std::size_t nonzeros, Rng& rng);

}  // namespace gerst
