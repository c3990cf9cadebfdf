#include "gerst/deformation.hpp"

#include "gerst/hochschild.hpp"

namespace gerst {

TSeries::TSeries(int order_, std::size_t arity_, std::optional<int> cap) : order(order_), arity(arity_) {
  if (order < 1) throw std::invalid_argument("truncation order must be positive");
  terms.assign(static_cast<std::size_t>(order), Cochain(arity, cap));
}

bool TSeries::is_zero() const { return valuation() == order; }

int TSeries::valuation() const {
  for (int k = 0; k < order; ++k)
    if (!terms[k].is_zero()) return k;
  return order;
}

TSeries& TSeries::operator+=(const TSeries& o) {
  if (o.order != order) throw std::invalid_argument("truncation orders differ");
  for (int k = 0; k < order; ++k) terms[k] += o.terms[k];
  return *this;
}

TSeries& TSeries::operator-=(const TSeries& o) {
  if (o.order != order) throw std::invalid_argument("truncation orders differ");
  for (int k = 0; k < order; ++k) terms[k] -= o.terms[k];
  return *this;
}

TSeries& TSeries::operator*=(const Scalar& s) {
  for (auto& c : terms) c *= s;
  return *this;
}

bool operator==(const TSeries& a, const TSeries& b) { return a.order == b.order && a.terms == b.terms; }

MCElement zero_mc(const Algebra& a, int order) { return TSeries(order, 2, a.weight_cap()); }
GaugeElement zero_gauge(const Algebra& a, int order) { return TSeries(order, 1, a.weight_cap()); }

TSeries series_bracket(const Algebra& a, const TSeries& x, const TSeries& y) {
  if (x.order != y.order) throw std::invalid_argument("truncation orders differ");
  const std::size_t arity = x.arity + y.arity == 0 ? 0 : x.arity + y.arity - 1;
  TSeries out(x.order, arity, a.weight_cap());
  for (int i = 0; i < x.order; ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; i + j < x.order; ++j) {
      if (y[j].is_zero()) continue;
      out[i + j] += gerstenhaber_bracket(a, x[i], y[j]);
    }
  }
  return out;
}

TSeries series_differential(const Algebra& a, const TSeries& x) {
  TSeries out(x.order, x.arity + 1, a.weight_cap());
  for (int k = 0; k < x.order; ++k) out[k] = hochschild_differential(a, x[k]);
  return out;
}

TSeries mc_residual(const Algebra& a, const MCElement& lambda) {
  TSeries r = series_differential(a, lambda);
  r += Scalar::fraction(1, 2) * series_bracket(a, lambda, lambda);
  return r;
}

MCElement gauge_act(const Algebra& a, const GaugeElement& x, const MCElement& lambda) {
  if (x.order != lambda.order) throw std::invalid_argument("truncation orders differ");
  if (!x[0].is_zero() || !lambda[0].is_zero()) throw std::invalid_argument("series must have no t^0 term");
  MCElement out = lambda;
  TSeries dx = series_differential(a, x);
  out -= dx;
  TSeries adl = lambda, add = dx;
  Scalar fact(1);
  for (int n = 1; n < x.order; ++n) {
    adl = series_bracket(a, x, adl);
    add = series_bracket(a, x, add);
    if (adl.is_zero() && add.is_zero()) break;
    fact *= Scalar(n);
    out += fact.inverse() * adl;
    out -= (fact * Scalar(n + 1)).inverse() * add;
  }
  return out;
}

std::vector<SparseVec> DeformedAlgebra::product(std::size_t i, std::size_t j) const {
  auto it = star.find({i, j});
  if (it != star.end()) return it->second;
  if (base->overflows(i, j)) base->product(i, j);  // throws WeightOverflow
  return std::vector<SparseVec>(static_cast<std::size_t>(order));
}

std::vector<SparseVec> DeformedAlgebra::multiply(const std::vector<SparseVec>& x, const std::vector<SparseVec>& y) const {
  std::vector<SparseVec> out(static_cast<std::size_t>(order));
  for (int p = 0; p < order; ++p)
    for (int q = 0; p + q < order; ++q)
      for (const auto& [i, a] : x[p])
        for (const auto& [j, b] : y[q]) {
          auto prod = product(i, j);
          for (int r = 0; p + q + r < order; ++r) axpy(out[p + q + r], a * b, prod[r]);
        }
  return out;
}

DeformedAlgebra deform_product(const Algebra& a, const MCElement& lambda) {
  DeformedAlgebra d;
  d.base = &a;
  d.order = lambda.order;
  auto slot = [&](std::size_t i, std::size_t j) -> std::vector<SparseVec>& {
    auto& v = d.star[{i, j}];
    if (v.empty()) v.resize(static_cast<std::size_t>(d.order));
    return v;
  };
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (!a.overflows(i, j) && !a.product(i, j).empty()) slot(i, j)[0] = a.product(i, j);
  for (int k = 1; k < d.order; ++k)
    for (const auto& [t, v] : lambda[k].entries) axpy(slot(t[0], t[1])[k], Scalar(1), v);
  return d;
}

TSeries check_associativity(const DeformedAlgebra& d) {
  const Algebra& a = *d.base;
  TSeries out(d.order, 3, a.weight_cap());
  auto basis = [&](std::size_t i) {
    std::vector<SparseVec> v(static_cast<std::size_t>(d.order));
    v[0][i] = Scalar(1);
    return v;
  };
  for_each_tuple(a, 3, a.weight_cap(), [&](const Index& t) {
    auto left = d.multiply(d.product(t[0], t[1]), basis(t[2]));
    auto right = d.multiply(basis(t[0]), d.product(t[1], t[2]));
    for (int k = 0; k < d.order; ++k) {
      out[k].add(t, left[k]);
      out[k].add(t, right[k], Scalar(-1));
    }
  });
  return out;
}

GaugeSearch gauge_equivalent(const Algebra& a, const MCElement& lambda1, const MCElement& lambda2) {
  if (a.weight_cap()) throw std::invalid_argument("gauge search supports unweighted algebras only");
  if (lambda1.order != lambda2.order) throw std::invalid_argument("truncation orders differ");
  const int n = lambda1.order;
  CochainBasis c1 = cochain_basis(a, 1, {}), c2 = cochain_basis(a, 2, {});
  SparseMatrix delta = differential_matrix(a, c1, c2);
  GaugeSearch result;
  GaugeElement x = zero_gauge(a, n);
  for (int k = 1; k < n; ++k) {
    MCElement cur = gauge_act(a, x, lambda1);
    SparseVec r = c2.coordinates(cur[k] - lambda2[k]);
    auto sol = solve(delta, r);
    if (!sol) {
      EchelonBasis image(c2.size());
      SparseMatrix t = delta.transpose();
      for (std::size_t i = 0; i < t.rows(); ++i) image.insert(t.row(i));
      result.obstruction_order = k;
      result.obstruction = c2.cochain(image.reduce(r));
      return result;
    }
    x[k] = c1.cochain(*sol);
  }
  if (!(gauge_act(a, x, lambda1) == lambda2)) throw std::logic_error("gauge search produced a wrong gauge");
  result.gauge = x;
  return result;
}

namespace {

struct Monomials {
  std::vector<std::vector<int>> exps;
  std::map<std::vector<int>, std::size_t> index;
};

Monomials two_variable_monomials(const Algebra& a) {
  if (!a.weight_cap()) throw std::invalid_argument("expected a weight-capped polynomial algebra");
  Monomials m;
  m.exps = polynomial_monomials(2, *a.weight_cap());
  if (m.exps.size() != a.dim()) throw std::invalid_argument("expected a two-variable polynomial algebra");
  for (std::size_t i = 0; i < m.exps.size(); ++i) m.index[m.exps[i]] = i;
  return m;
}

template <typename Coef>
Cochain bidifferential(const Algebra& a, int order, Coef coef) {
  Monomials m = two_variable_monomials(a);
  Cochain c = zero_cochain(a, 2);
  for_each_tuple(a, 2, a.weight_cap(), [&](const Index& t) {
    const auto& u = m.exps[t[0]];
    const auto& v = m.exps[t[1]];
    std::vector<int> e{u[0] + v[0] - order, u[1] + v[1] - order};
    if (e[0] < 0 || e[1] < 0) return;
    long k = coef(u[0], u[1], v[0], v[1]);
    if (k != 0) c.add(t, m.index.at(e), Scalar(k));
  });
  return c;
}

}  // namespace

Cochain poisson_cochain(const Algebra& a) {
  return bidifferential(a, 1, [](long ax, long ap, long bx, long bp) { return ax * bp - ap * bx; });
}

Cochain poisson_square_cochain(const Algebra& a) {
  return bidifferential(a, 2, [](long ax, long ap, long bx, long bp) {
    return ax * (ax - 1) * bp * (bp - 1) - 2 * ax * ap * bx * bp + ap * (ap - 1) * bx * (bx - 1);
  });
}

MCElement moyal_mc(const Algebra& a, int order) {
  if (order < 1 || order > 3) throw std::invalid_argument("the Moyal truncation is provided up to order 3");
  MCElement l = zero_mc(a, order);
  if (order > 1) l[1] = Scalar::fraction(1, 2) * poisson_cochain(a);
  if (order > 2) l[2] = Scalar::fraction(1, 8) * poisson_square_cochain(a);
  return l;
}

MCElement mc_transport(const Algebra& r, int n, const MCElement& lambda) {
  MCElement out(lambda.order, 2, r.weight_cap());
  for (int k = 0; k < lambda.order; ++k) out[k] = cotrace(r, n, lambda[k]);
  return out;
}

TSeries random_series(const Algebra& a, int order, std::size_t arity, std::size_t nonzeros, Rng& rng) {
  TSeries s(order, arity, a.weight_cap());
  for (int k = 1; k < order; ++k) s[k] = random_cochain(a, arity, nonzeros, rng);
  return s;
}

}  // namespace gerst
