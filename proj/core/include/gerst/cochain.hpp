#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "gerst/algebra.hpp"
#include "gerst/random.hpp"

namespace gerst {

using Index = std::vector<std::size_t>;

/// Hochschild cochain A^{(x)n} -> A in coordinates: input basis tuple -> output vector.
///
/// On a weight-capped algebra a cochain is only defined on tuples whose total
/// weight is at most input_cap; entries beyond are dropped, never evaluated.
struct Cochain {
  std::size_t arity = 0;
  std::map<Index, SparseVec> entries;
  std::optional<int> input_cap;

  Cochain() = default;
  explicit Cochain(std::size_t n, std::optional<int> cap = std::nullopt) : arity(n), input_cap(cap) {}

  /// Degree in the shifted complex C[1].
  int degree() const { return static_cast<int>(arity) - 1; }
  bool is_zero() const { return entries.empty(); }
  std::size_t nonzeros() const;
  /// D(tuple) as a sparse vector (empty if absent).
  const SparseVec& at(const Index& tuple) const;
  void add(const Index& tuple, std::size_t out, const Scalar& c);
  void add(const Index& tuple, const SparseVec& v, const Scalar& c = Scalar(1));

  Cochain& operator+=(const Cochain& o);
  Cochain& operator-=(const Cochain& o);
  Cochain& operator*=(const Scalar& s);
  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
  friend Cochain operator*(const Scalar& s, Cochain a) { return a *= s; }
  friend bool operator==(const Cochain& a, const Cochain& b);
};

/// Default cochain of the given arity on a (possibly capped) algebra.
Cochain zero_cochain(const Algebra& a, std::size_t arity);
/// The multiplication mu(e_i, e_j) = e_i e_j.
Cochain multiplication_cochain(const Algebra& a);
/// Arity-0 cochain holding an element.
Cochain element_cochain(const Algebra& a, const Vec& v);
/// Arity-1 cochain with D(e_j) = column j of m.
Cochain endomorphism_cochain(const Algebra& a, const SparseMatrix& m);
/// Evaluates D on arbitrary (dense) arguments by multilinearity.
Vec evaluate(const Algebra& a, const Cochain& d, const std::vector<Vec>& args);

/// Insertion D o E = sum_i (-1)^{(n-1)(i-1)} D(a_1, .., E(a_i, .., a_{i+n-1}), ..), n = arity(E).
Cochain insert(const Algebra& a, const Cochain& d, const Cochain& e);
/// [D, E] = D o E - (-1)^{(m-1)(n-1)} E o D.
Cochain gerstenhaber_bracket(const Algebra& a, const Cochain& d, const Cochain& e);
/// delta D = [mu, D].
Cochain hochschild_differential(const Algebra& a, const Cochain& d);

bool is_normalized(const Algebra& a, const Cochain& d);
/// Drops every entry with a unit argument. Throws AlgebraError when the unit
/// is not a basis direction.
Cochain normalize_projection(const Algebra& a, const Cochain& d);

/// Cotrace C(R) -> C(Mat_n(R)): cotr(D)(E_{a1b1} r_1, ..) = E_{a1b1}...E_{aqbq} D(r_1, ..).
/// Requires a normalized D.
Cochain cotrace(const Algebra& r, int n, const Cochain& d);

/// Random sparse cochain with about `nonzeros` entries.
Cochain random_cochain(const Algebra& a, std::size_t arity, std::size_t nonzeros, Rng& rng);

/// Enumerates every basis tuple of the given arity (total weight bounded by cap when set).
void for_each_tuple(const Algebra& a, std::size_t arity, std::optional<int> cap,
                    const std::function<void(const Index&)>& fn);

}  // namespace gerst
