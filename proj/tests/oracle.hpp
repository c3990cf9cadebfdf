// Independent dense reference implementations used to cross-check the
// sparse library code. Nothing here calls into the elimination or cochain
// machinery of gerst; only the structure constants are read.
#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include <gmpxx.h>

#include "gerst/algebra.hpp"

namespace oracle {

struct Rationals {
  using T = mpq_class;
  T zero() const { return 0; }
  T from(const mpq_class& q) const { return q; }
  bool is_zero(const T& x) const { return x == 0; }
  T add(const T& a, const T& b) const { return a + b; }
  T mul(const T& a, const T& b) const { return a * b; }
  T neg(const T& a) const { return -a; }
  T inv(const T& a) const { return 1 / a; }
};

struct PrimeField {
  using T = std::int64_t;
  std::int64_t p;
  T zero() const { return 0; }
  T reduce(std::int64_t x) const { return ((x % p) + p) % p; }
  T from(const mpq_class& q) const {
    mpz_class n = q.get_num() % p, d = q.get_den() % p;
    return mul(reduce(n.get_si()), inv(reduce(d.get_si())));
  }
  bool is_zero(T x) const { return x == 0; }
  T add(T a, T b) const { return (a + b) % p; }
  T mul(T a, T b) const { return static_cast<T>((static_cast<__int128>(a) * b) % p); }
  T neg(T a) const { return a == 0 ? 0 : p - a; }
  T inv(T a) const {
    T r = 1, b = a;
    for (std::int64_t e = p - 2; e > 0; e >>= 1, b = mul(b, b))
      if (e & 1) r = mul(r, b);
    return r;
  }
};

template <class F>
using Matrix = std::vector<std::vector<typename F::T>>;

/// Plain row reduction: rank of a dense matrix.
template <class F>
std::size_t rank(Matrix<F> m, const F& f) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && f.is_zero(m[piv][c])) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    const auto scale = f.inv(m[r][c]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (f.is_zero(m[i][c])) continue;
      const auto factor = f.neg(f.mul(m[i][c], scale));
      for (std::size_t j = c; j < cols; ++j)
        if (!f.is_zero(m[r][j])) m[i][j] = f.add(m[i][j], f.mul(factor, m[r][j]));
    }
    ++r;
  }
  return r;
}

/// Structure constants c[i][j][k] of e_i e_j, read as rationals.
inline std::vector<std::vector<std::vector<mpq_class>>> structure(const gerst::Algebra& a) {
  const std::size_t n = a.dim();
  std::vector<std::vector<std::vector<mpq_class>>> c(n, std::vector<std::vector<mpq_class>>(n, std::vector<mpq_class>(n)));
  for (const auto& e : a.table()) c[e.i][e.j][e.k] = mpq_class(e.value.str());
  return c;
}

inline std::size_t power(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

/// Matrix of the textbook Hochschild coboundary C^k -> C^{k+1}
/// (df)(a0..ak) = a0 f(a1..ak) + sum (-1)^i f(.., a_{i-1} a_i, ..) + (-1)^{k+1} f(a0..a_{k-1}) ak,
/// on the basis of all (tuple, output) pairs. Column index = tuple * n + output.
template <class F>
Matrix<F> coboundary(const gerst::Algebra& a, std::size_t k, const F& f) {
  const std::size_t n = a.dim();
  const auto c = structure(a);
  const std::size_t cols = power(n, k) * n, rows = power(n, k + 1) * n;
  Matrix<F> m(rows, std::vector<typename F::T>(cols, f.zero()));
  auto digits = [&](std::size_t t, std::size_t len) {
    std::vector<std::size_t> d(len);
    for (std::size_t s = len; s-- > 0; t /= n) d[s] = t % n;
    return d;
  };
  auto encode = [&](const std::vector<std::size_t>& d) {
    std::size_t t = 0;
    for (auto x : d) t = t * n + x;
    return t;
  };
  auto bump = [&](std::size_t row, std::size_t col, const mpq_class& v) {
    if (v != 0) m[row][col] = f.add(m[row][col], f.from(v));
  };
  for (std::size_t t = 0; t < power(n, k); ++t) {
    const auto tup = digits(t, k);
    for (std::size_t o = 0; o < n; ++o) {
      const std::size_t col = t * n + o;
      for (std::size_t x = 0; x < n; ++x) {
        std::vector<std::size_t> s{x};
        s.insert(s.end(), tup.begin(), tup.end());
        for (std::size_t r = 0; r < n; ++r) bump(encode(s) * n + r, col, c[x][o][r]);
        std::vector<std::size_t> s2 = tup;
        s2.push_back(x);
        const mpq_class sign = (k + 1) % 2 ? -1 : 1;
        for (std::size_t r = 0; r < n; ++r) bump(encode(s2) * n + r, col, sign * c[o][x][r]);
      }
      for (std::size_t i = 1; i <= k; ++i) {
        const mpq_class sign = i % 2 ? -1 : 1;
        for (std::size_t u = 0; u < n; ++u)
          for (std::size_t v = 0; v < n; ++v) {
            if (c[u][v][tup[i - 1]] == 0) continue;
            std::vector<std::size_t> s(tup.begin(), tup.begin() + static_cast<long>(i - 1));
            s.push_back(u);
            s.push_back(v);
            s.insert(s.end(), tup.begin() + static_cast<long>(i), tup.end());
            bump(encode(s) * n + o, col, sign * c[u][v][tup[i - 1]]);
          }
      }
    }
  }
  return m;
}

/// dim HH^k for k = 0..kmax from dense ranks.
template <class F>
std::vector<std::size_t> hochschild_dims(const gerst::Algebra& a, std::size_t kmax, const F& f) {
  std::vector<std::size_t> ranks;
  for (std::size_t k = 0; k <= kmax; ++k) ranks.push_back(rank(coboundary(a, k, f), f));
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k <= kmax; ++k)
    out.push_back(power(a.dim(), k) * a.dim() - ranks[k] - (k ? ranks[k - 1] : 0));
  return out;
}

}  // namespace oracle
