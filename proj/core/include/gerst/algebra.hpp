#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "gerst/sparse_matrix.hpp"

namespace gerst {

/// Raised when a product would leave the weight-capped window of a graded
/// algebra. Capped algebras never truncate silently.
class WeightOverflow : public std::runtime_error {
 public:
  explicit WeightOverflow(const std::string& what) : std::runtime_error(what) {}
};

class AlgebraError : public std::runtime_error {
 public:
  explicit AlgebraError(const std::string& what) : std::runtime_error(what) {}
};

struct TableEntry {
  std::size_t i, j, k;
  Scalar value;
};

/// Unital associative algebra given by structure constants e_i e_j = sum_k c_ijk e_k.
/// Optionally weight-graded with a cap: products whose weight exceeds the cap
/// raise WeightOverflow.
class Algebra {
 public:
  Algebra() = default;
  /// Validates the unit axioms and associativity on every defined triple.
  static Algebra from_table(std::vector<std::string> labels, Vec unit, const std::vector<TableEntry>& table,
                            std::optional<std::vector<int>> weights = std::nullopt,
                            std::optional<int> weight_cap = std::nullopt, bool validate = true);

  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Vec& unit() const { return unit_; }
  /// Index u with unit() == e_u, when the unit is a basis direction.
  std::optional<std::size_t> unit_index() const { return unit_index_; }

  bool weighted() const { return weights_.has_value(); }
  int weight(std::size_t i) const { return weights_ ? (*weights_)[i] : 0; }
  const std::optional<std::vector<int>>& weights() const { return weights_; }
  std::optional<int> weight_cap() const { return cap_; }
  /// Sum of input weights for a multi-index.
  int tuple_weight(const std::vector<std::size_t>& t) const;

  bool overflows(std::size_t i, std::size_t j) const;
  /// e_i e_j; throws WeightOverflow for products beyond the cap.
  const SparseVec& product(std::size_t i, std::size_t j) const;
  SparseVec multiply(const SparseVec& a, const SparseVec& b) const;
  Vec multiply(const Vec& a, const Vec& b) const;
  Vec commutator(const Vec& a, const Vec& b) const;
  Vec basis_vector(std::size_t i) const;

  /// Sparse structure table in (i, j, k) order, overflow pairs omitted.
  std::vector<TableEntry> table() const;
  friend bool operator==(const Algebra& a, const Algebra& b);

 private:
  std::vector<std::string> labels_;
  Vec unit_;
  std::vector<SparseVec> products_;  // row-major i * dim + j
  std::optional<std::vector<int>> weights_;
  std::optional<int> cap_;
  std::optional<std::size_t> unit_index_;
};

/// Polynomial algebra k[x_1..x_d] on monomials of total degree <= weight_cap,
/// graded by degree. Monomials are ordered by degree, then lexicographically.
Algebra make_polynomial_algebra(int vars, int weight_cap, const std::vector<std::string>& names = {});
/// Exponent vectors of the monomial basis produced by make_polynomial_algebra.
std::vector<std::vector<int>> polynomial_monomials(int vars, int weight_cap);
/// Mat_n(base): basis E_ab (x) e_k indexed (a * n + b) * dim(base) + k.
Algebra make_matrix_algebra(int n, const Algebra& base);
/// k[x]/(x^m) with basis 1, x, ..., x^{m-1}.
Algebra make_truncated_polynomial_algebra(int m);
/// The ground field as a one-dimensional algebra.
Algebra make_ground_field();
/// The same algebra in a basis where the unit is a basis vector: the first
/// basis vector in the unit's support is replaced by the unit.
Algebra unit_adapted(const Algebra& a);

/// Subspace held as a canonical echelon basis.
struct SubspaceBasis {
  std::size_t ambient = 0;
  EchelonBasis echelon;

  std::size_t dim() const { return echelon.dim(); }
  std::vector<Vec> vectors() const;
  /// Dimension per weight, by the weight of each row's pivot coordinate.
  std::vector<std::size_t> graded_dims(const Algebra& a) const;
  bool contains(const Vec& v) const { return echelon.contains(to_sparse(v)); }
  friend bool operator==(const SubspaceBasis& x, const SubspaceBasis& y) { return x.echelon == y.echelon; }
};

SubspaceBasis center(const Algebra& a);
/// Span of z [e_i, e_j] over a basis z of the center.
SubspaceBasis commutator_submodule(const Algebra& a);

struct Decomposition {
  Vec central;
  Vec traceless;
};
/// Splits a into center and commutator parts; throws AlgebraError when
/// center + [A, A] does not span A or the sum is not direct.
Decomposition decompose(const Algebra& a, const Vec& element);

/// Matrix of b -> ab - ba.
SparseMatrix derivation_ad(const Algebra& a, const Vec& element);
/// Matrix of left multiplication b -> ab.
SparseMatrix left_multiplication(const Algebra& a, const Vec& element);
/// Dimension of the space of k-linear derivations of a (finite algebras only).
std::size_t derivation_space_dim(const Algebra& a);
/// Rank of ad restricted to the given subspace.
std::size_t ad_rank_on(const Algebra& a, const SubspaceBasis& s);

}  // namespace gerst
