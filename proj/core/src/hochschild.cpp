#include "gerst/hochschild.hpp"

#include <algorithm>
#include <cmath>

namespace gerst {

Cochain CochainBasis::cochain(std::size_t i) const {
  Cochain c(arity, input_cap);
  c.add(elements.at(i).first, elements[i].second, Scalar(1));
  return c;
}

Cochain CochainBasis::cochain(const SparseVec& coords) const {
  Cochain c(arity, input_cap);
  for (const auto& [i, x] : coords) c.add(elements.at(i).first, elements[i].second, x);
  return c;
}

SparseVec CochainBasis::coordinates(const Cochain& c) const {
  SparseVec v;
  for (const auto& [t, vals] : c.entries)
    for (const auto& [k, x] : vals) {
      auto it = position.find({t, k});
      if (it == position.end()) throw std::logic_error("cochain has an entry outside the basis");
      v.emplace(it->second, x);
    }
  return v;
}

std::vector<int> complex_shifts(const Algebra& a, const ComplexOptions& opt) {
  if (!a.weight_cap()) return {0};
  const int cap = *a.weight_cap();
  const int w = opt.window ? std::min(*opt.window, cap) : cap;
  std::vector<int> out;
  for (int s = -w; s <= w; ++s) out.push_back(s);
  return out;
}

CochainBasis cochain_basis(const Algebra& a, std::size_t arity, const ComplexOptions& opt, int shift) {
  const double estimate = std::pow(static_cast<double>(a.dim()), static_cast<double>(arity + 1));
  if (estimate > static_cast<double>(opt.max_basis))
    throw ResourceLimit("cochain space C^" + std::to_string(arity) + " too large", static_cast<std::size_t>(estimate));
  CochainBasis b;
  b.arity = arity;
  std::optional<std::size_t> unit;
  if (opt.normalized) {
    unit = a.unit_index();
    if (!unit) throw AlgebraError("normalized cochains need the unit as a basis vector; change basis first");
  }
  if (a.weight_cap()) b.input_cap = *a.weight_cap() - std::max(shift, 0);
  for_each_tuple(a, arity, b.input_cap, [&](const Index& t) {
    if (unit && std::find(t.begin(), t.end(), *unit) != t.end()) return;
    const int wt = a.tuple_weight(t);
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (a.weight_cap() && a.weight(j) - wt != shift) continue;
      b.position.emplace(std::make_pair(t, j), b.elements.size());
      b.elements.emplace_back(t, j);
    }
  });
  return b;
}

SparseMatrix differential_matrix(const Algebra& a, const CochainBasis& from, const CochainBasis& to) {
  SparseMatrix m(to.size(), from.size());
  const Cochain mu = multiplication_cochain(a);
  for (std::size_t c = 0; c < from.size(); ++c) m.set_column(c, to.coordinates(gerstenhaber_bracket(a, mu, from.cochain(c))));
  return m;
}

namespace {

struct SliceCohomology {
  CochainBasis basis;
  std::vector<SparseVec> image;  // columns of delta_{k-1}
  std::size_t dim_kernel = 0, dim_image = 0;
  std::vector<SparseVec> reps;
};

SliceCohomology slice_cohomology(const Algebra& a, std::size_t k, const ComplexOptions& opt, int shift) {
  SliceCohomology s;
  s.basis = cochain_basis(a, k, opt, shift);
  CochainBasis next = cochain_basis(a, k + 1, opt, shift);
  SparseMatrix dk = differential_matrix(a, s.basis, next);
  auto ker = kernel_basis(dk);
  s.dim_kernel = ker.size();
  EchelonBasis span(s.basis.size());
  if (k > 0) {
    CochainBasis prev = cochain_basis(a, k - 1, opt, shift);
    SparseMatrix dprev = differential_matrix(a, prev, s.basis);
    SparseMatrix t = dprev.transpose();
    for (std::size_t c = 0; c < t.rows(); ++c) {
      if (t.row(c).empty()) continue;
      s.image.push_back(t.row(c));
      span.insert(t.row(c));
    }
  }
  s.dim_image = span.dim();
  for (auto& v : ker)
    if (span.insert(v)) s.reps.push_back(v);
  return s;
}

}  // namespace

CohomologyReport cohomology(const Algebra& a, std::size_t k, const ComplexOptions& opt) {
  CohomologyReport r;
  r.degree = k;
  for (int shift : complex_shifts(a, opt)) {
    SliceCohomology s = slice_cohomology(a, k, opt, shift);
    r.dim_kernel += s.dim_kernel;
    r.dim_image += s.dim_image;
    for (const auto& v : s.reps) r.representatives.push_back(s.basis.cochain(v));
  }
  r.dim_hh = r.representatives.size();
  return r;
}

void check_chain_map(const Algebra& src, const ComplexOptions& so, const Algebra& dst, const CochainMap& f,
                     std::size_t k) {
  CochainBasis b = cochain_basis(src, k, so);
  const Cochain mu_s = multiplication_cochain(src), mu_d = multiplication_cochain(dst);
  for (std::size_t i = 0; i < b.size(); ++i) {
    Cochain x = b.cochain(i);
    Cochain lhs = f(gerstenhaber_bracket(src, mu_s, x));
    Cochain rhs = gerstenhaber_bracket(dst, mu_d, f(x));
    if (!(lhs == rhs)) throw ChainMapError("chain-map property fails in degree " + std::to_string(k), x);
  }
}

SparseMatrix induced_cohomology_map(const Algebra& src, const ComplexOptions& so, const Algebra& dst,
                                    const ComplexOptions& dopt, const CochainMap& f, std::size_t k) {
  if (src.weight_cap() || dst.weight_cap())
    throw std::invalid_argument("induced maps are computed on unweighted algebras only");
  if (k > 0) check_chain_map(src, so, dst, f, k - 1);
  check_chain_map(src, so, dst, f, k);
  SliceCohomology s = slice_cohomology(src, k, so, 0);
  SliceCohomology t = slice_cohomology(dst, k, dopt, 0);
  SparseMatrix basis(t.basis.size(), t.image.size() + t.reps.size());
  for (std::size_t c = 0; c < t.image.size(); ++c) basis.set_column(c, t.image[c]);
  for (std::size_t c = 0; c < t.reps.size(); ++c) basis.set_column(t.image.size() + c, t.reps[c]);
  SparseMatrix out(t.reps.size(), s.reps.size());
  for (std::size_t c = 0; c < s.reps.size(); ++c) {
    Cochain img = f(s.basis.cochain(s.reps[c]));
    auto x = solve(basis, t.basis.coordinates(img));
    if (!x) throw ChainMapError("image of a cocycle is not a cocycle", s.basis.cochain(s.reps[c]));
    for (const auto& [j, v] : *x)
      if (j >= t.image.size()) out.set(j - t.image.size(), c, v);
  }
  return out;
}

}  // namespace gerst
