#include "gerst/sparse_matrix.hpp"

#include <set>
#include <stdexcept>

namespace gerst {

Vec zero_vec(std::size_t n) { return Vec(n, Scalar(0)); }

bool is_zero(const Vec& v) {
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

bool is_zero(const SparseVec& v) { return v.empty(); }

void axpy(SparseVec& a, const Scalar& s, const SparseVec& b) {
  if (s.is_zero()) return;
  for (const auto& [k, x] : b) {
    auto [it, fresh] = a.try_emplace(k, s * x);
    if (!fresh) {
      it->second += s * x;
      if (it->second.is_zero()) a.erase(it);
    }
  }
}

void axpy(Vec& a, const Scalar& s, const Vec& b) {
  if (s.is_zero()) return;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (!b[i].is_zero()) a[i] += s * b[i];
}

SparseVec to_sparse(const Vec& v) {
  SparseVec out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out.emplace(i, v[i]);
  return out;
}

Vec to_dense(const SparseVec& v, std::size_t n) {
  Vec out = zero_vec(n);
  for (const auto& [k, x] : v) {
    if (k >= n) throw std::out_of_range("sparse vector index exceeds dimension");
    out[k] = x;
  }
  return out;
}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows) {}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  SparseMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, Scalar(1));
  return m;
}

SparseMatrix SparseMatrix::from_dense(const std::vector<Vec>& rows) {
  SparseMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw std::invalid_argument("ragged dense matrix");
    m.data_[r] = to_sparse(rows[r]);
  }
  return m;
}

std::size_t SparseMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& r : data_) n += r.size();
  return n;
}

Scalar SparseMatrix::get(std::size_t r, std::size_t c) const {
  auto it = data_.at(r).find(c);
  return it == data_[r].end() ? Scalar(0) : it->second;
}

void SparseMatrix::set(std::size_t r, std::size_t c, const Scalar& v) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
  if (v.is_zero())
    data_[r].erase(c);
  else
    data_[r][c] = v;
}

void SparseMatrix::add(std::size_t r, std::size_t c, const Scalar& v) {
  if (r >= rows_ || c >= cols_) throw std::out_of_range("matrix index out of range");
  if (v.is_zero()) return;
  auto [it, fresh] = data_[r].try_emplace(c, v);
  if (!fresh) {
    it->second += v;
    if (it->second.is_zero()) data_[r].erase(it);
  }
}

void SparseMatrix::set_column(std::size_t c, const SparseVec& v) {
  for (const auto& [r, x] : v) set(r, c, x);
}

Vec SparseMatrix::apply(const Vec& x) const {
  if (x.size() != cols_) throw std::invalid_argument("dimension mismatch in apply");
  Vec y = zero_vec(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r])
      if (!x[c].is_zero()) y[r] += v * x[c];
  return y;
}

SparseVec SparseMatrix::apply(const SparseVec& x) const {
  SparseVec y;
  for (std::size_t r = 0; r < rows_; ++r) {
    Scalar acc(0);
    bool any = false;
    for (const auto& [c, v] : data_[r]) {
      auto it = x.find(c);
      if (it != x.end()) {
        acc += v * it->second;
        any = true;
      }
    }
    if (any && !acc.is_zero()) y.emplace(r, acc);
  }
  return y;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, v] : data_[r]) t.data_[c].emplace(r, v);
  return t;
}

SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("dimension mismatch in product");
  SparseMatrix p(a.rows_, b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (const auto& [k, v] : a.data_[r]) axpy(p.data_[r], v, b.data_[k]);
  return p;
}

SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("dimension mismatch");
  SparseMatrix d = a;
  for (std::size_t r = 0; r < a.rows_; ++r) axpy(d.data_[r], Scalar(-1), b.data_[r]);
  return d;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Elimination eliminate(const SparseMatrix& m, std::size_t protected_from) {
  Elimination e;
  e.cols = m.cols();
  std::vector<SparseVec> rows(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rows[r] = m.row(r);

  auto eligible = [&](std::size_t c) { return c < protected_from; };
  auto eligible_count = [&](const SparseVec& v) {
    std::size_t n = 0;
    for (const auto& [c, x] : v)
      if (eligible(c)) ++n;
      else break;
    return n;
  };

  std::vector<std::set<std::size_t>> col_rows(m.cols());
  std::set<std::pair<std::size_t, std::size_t>> active;  // (eligible nnz, row)
  std::vector<std::size_t> count(m.rows(), 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [c, x] : rows[r]) col_rows[c].insert(r);
    count[r] = eligible_count(rows[r]);
    if (count[r] > 0) active.emplace(count[r], r);
  }
  std::vector<bool> is_pivot(m.rows(), false);

  while (!active.empty()) {
    auto [nnz, r] = *active.begin();
    active.erase(active.begin());
    // Markowitz: among the sparsest row's entries pick the sparsest column.
    std::size_t best = static_cast<std::size_t>(-1), best_cost = static_cast<std::size_t>(-1);
    for (const auto& [c, x] : rows[r]) {
      if (!eligible(c)) break;
      std::size_t cost = col_rows[c].size();
      if (cost < best_cost) {
        best_cost = cost;
        best = c;
      }
    }
    const std::size_t pc = best;
    is_pivot[r] = true;
    const Scalar inv = rows[r].at(pc).inverse();
    std::vector<std::size_t> targets(col_rows[pc].begin(), col_rows[pc].end());
    for (std::size_t r2 : targets) {
      if (r2 == r) continue;
      const Scalar factor = -(rows[r2].at(pc) * inv);
      SparseVec& dst = rows[r2];
      for (const auto& [c, x] : rows[r]) {
        auto [it, fresh] = dst.try_emplace(c, factor * x);
        if (fresh) {
          col_rows[c].insert(r2);
        } else {
          it->second += factor * x;
          if (it->second.is_zero()) {
            dst.erase(it);
            col_rows[c].erase(r2);
          }
        }
      }
      if (!is_pivot[r2]) {
        std::size_t n = eligible_count(dst);
        if (n != count[r2]) {
          active.erase({count[r2], r2});
          count[r2] = n;
          if (n > 0) active.emplace(n, r2);
        }
      }
    }
    e.pivots.emplace_back(r, pc);
  }
  e.rows = std::move(rows);
  return e;
}

std::size_t rank(const SparseMatrix& m) { return eliminate(m).pivots.size(); }

std::vector<SparseVec> kernel_basis(const SparseMatrix& m) {
  Elimination e = eliminate(m);
  std::vector<bool> pivot_col(m.cols(), false);
  for (auto [r, c] : e.pivots) pivot_col[c] = true;
  std::vector<SparseVec> basis;
  // Column view of the non-pivot entries of pivot rows.
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> by_free(m.cols());
  for (auto [r, c] : e.pivots) {
    const Scalar inv = e.rows[r].at(c).inverse();
    for (const auto& [f, x] : e.rows[r])
      if (f != c) by_free[f].emplace_back(c, -(x * inv));
  }
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (pivot_col[f]) continue;
    SparseVec v;
    v.emplace(f, Scalar(1));
    for (auto& [c, x] : by_free[f]) v.emplace(c, x);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<SparseVec> solve(const SparseMatrix& m, const SparseVec& b) {
  SparseMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& [c, x] : m.row(r)) aug.set(r, c, x);
  for (const auto& [r, x] : b) aug.set(r, m.cols(), x);
  Elimination e = eliminate(aug, m.cols());
  std::vector<bool> pivot_row(m.rows(), false);
  SparseVec x;
  for (auto [r, c] : e.pivots) {
    pivot_row[r] = true;
    auto it = e.rows[r].find(m.cols());
    if (it != e.rows[r].end()) x.emplace(c, it->second / e.rows[r].at(c));
  }
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (!pivot_row[r] && !e.rows[r].empty()) return std::nullopt;
  return x;
}

std::optional<Vec> solve(const SparseMatrix& m, const Vec& b) {
  auto x = solve(m, to_sparse(b));
  if (!x) return std::nullopt;
  return to_dense(*x, m.cols());
}

SparseVec EchelonBasis::reduce(SparseVec v) const {
  auto it = v.begin();
  while (it != v.end()) {
    auto row = rows_.find(it->first);
    if (row == rows_.end()) {
      ++it;
      continue;
    }
    const std::size_t c = it->first;
    const Scalar s = -it->second;
    axpy(v, s, row->second);  // removes entry c; row entries beyond c are non-pivot
    it = v.upper_bound(c);
  }
  return v;
}

bool EchelonBasis::insert(SparseVec v) {
  v = reduce(std::move(v));
  if (v.empty()) return false;
  const std::size_t lead = v.begin()->first;
  if (ambient_ && lead >= ambient_) throw std::out_of_range("vector exceeds ambient dimension");
  const Scalar inv = v.begin()->second.inverse();
  for (auto& [k, x] : v) x *= inv;
  for (auto& [pc, row] : rows_) {
    auto hit = row.find(lead);
    if (hit != row.end()) axpy(row, -hit->second, v);
  }
  rows_.emplace(lead, std::move(v));
  return true;
}

std::vector<SparseVec> EchelonBasis::basis() const {
  std::vector<SparseVec> out;
  for (const auto& [c, r] : rows_) out.push_back(r);
  return out;
}

std::vector<std::size_t> EchelonBasis::pivot_columns() const {
  std::vector<std::size_t> out;
  for (const auto& [c, r] : rows_) out.push_back(c);
  return out;
}

bool operator==(const EchelonBasis& a, const EchelonBasis& b) { return a.rows_ == b.rows_; }

}  // namespace gerst
