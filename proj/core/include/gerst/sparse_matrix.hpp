#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "gerst/scalar.hpp"

namespace gerst {

using Vec = std::vector<Scalar>;
using SparseVec = std::map<std::size_t, Scalar>;

Vec zero_vec(std::size_t n);
bool is_zero(const Vec& v);
bool is_zero(const SparseVec& v);
/// a += s * b, dropping cancelled entries.
void axpy(SparseVec& a, const Scalar& s, const SparseVec& b);
void axpy(Vec& a, const Scalar& s, const Vec& b);
SparseVec to_sparse(const Vec& v);
Vec to_dense(const SparseVec& v, std::size_t n);

/// Sparse matrix over the current field. Rows are stored as ordered maps and
/// zero entries are never kept.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);
  static SparseMatrix identity(std::size_t n);
  static SparseMatrix from_dense(const std::vector<Vec>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nonzeros() const;

  Scalar get(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Scalar& v);
  void add(std::size_t r, std::size_t c, const Scalar& v);
  /// Overwrites column c with v (entries beyond rows() are an error).
  void set_column(std::size_t c, const SparseVec& v);
  const SparseVec& row(std::size_t r) const { return data_[r]; }

  Vec apply(const Vec& x) const;
  SparseVec apply(const SparseVec& x) const;
  SparseMatrix transpose() const;
  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b);
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<SparseVec> data_;
};

/// Result of Gauss-Jordan elimination with Markowitz pivoting. Every pivot
/// row has a single nonzero entry among pivot columns.
struct Elimination {
  std::vector<SparseVec> rows;                         // reduced rows (pivot rows first)
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row index in `rows`, column)
  std::size_t cols = 0;
};

Elimination eliminate(const SparseMatrix& m, std::size_t protected_from = static_cast<std::size_t>(-1));

std::size_t rank(const SparseMatrix& m);
/// Basis of the right null space, one vector per free column (free entry 1).
std::vector<SparseVec> kernel_basis(const SparseMatrix& m);
/// Some x with m x = b, free variables set to zero; nullopt if inconsistent.
std::optional<SparseVec> solve(const SparseMatrix& m, const SparseVec& b);
std::optional<Vec> solve(const SparseMatrix& m, const Vec& b);

/// Canonical reduced row-echelon basis of a subspace of k^n. Supports
/// incremental insertion and reduction of vectors modulo the span.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t ambient = 0) : ambient_(ambient) {}

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return rows_.size(); }
  /// Returns true when v was independent of the current span.
  bool insert(SparseVec v);
  /// Canonical representative of v modulo the span.
  SparseVec reduce(SparseVec v) const;
  bool contains(const SparseVec& v) const { return is_zero(reduce(v)); }
  /// Rows in increasing pivot order, each fully reduced with pivot 1.
  std::vector<SparseVec> basis() const;
  std::vector<std::size_t> pivot_columns() const;
  friend bool operator==(const EchelonBasis& a, const EchelonBasis& b);

 private:
  std::size_t ambient_;
  std::map<std::size_t, SparseVec> rows_;  // pivot column -> row (leading entry 1)
};

}  // namespace gerst
