#include "gerst/comparison.hpp"

#include <tuple>

#include "gerst/parallel.hpp"

namespace gerst {

namespace {

using XPoly = std::map<Mono, Scalar>;

Section scale(const Section& v, const XPoly& poly, int prec) {
  Section out;
  for (const auto& [m, c] : poly) {
    Section t = v.times_x(m);
    if (!c.is_one()) t *= c;
    out += t;
  }
  return out.truncated(prec);
}

JetDims source_dims(const JetDims& dims) { return JetDims{dims.d, 1, dims.prec}; }

// Coordinates of cochain terms in a shared index: (mask, inputs, output term).
using Coordinate = std::tuple<unsigned, FiberTuple, TermKey>;

class CoordinateIndex {
 public:
  std::size_t at(const Coordinate& c) { return index_.emplace(c, index_.size()).first->second; }

  SparseVec coordinates(const MixedCochain& x, int max_input, int weight) {
    SparseVec v;
    for (const auto& [q, part] : x.parts)
      for (const auto& [key, s] : part.entries) {
        const int in = tuple_yweight(key.second);
        if (in > max_input) continue;
        for (const auto& [k, c] : s.terms) {
          if (popcount(key.first) + key_degree(k) - in != weight) continue;
          v[at({key.first, key.second, k})] += c;
        }
      }
    std::erase_if(v, [](const auto& kv) { return kv.second.is_zero(); });
    return v;
  }

 private:
  std::map<Coordinate, std::size_t> index_;
};

// Output terms E_rs x^a y^b of total degree e.
std::vector<TermKey> terms_of_degree(const JetDims& dims, int e) {
  std::vector<TermKey> out;
  if (e < 0) return out;
  for (Mono x : monomials_up_to(dims.d, e))
    for (Mono y : monomials_up_to(dims.d, e - mono_degree(x))) {
      if (mono_degree(x) + mono_degree(y) != e) continue;
      for (int r = 0; r < dims.n; ++r)
        for (int s = 0; s < dims.n; ++s) out.push_back(term_key(static_cast<unsigned>(r), static_cast<unsigned>(s), x, y));
    }
  return out;
}

}  // namespace

ComparisonData make_comparison(const JetDims& dims, const JetIsomorphism& sigma, const Connection& c) {
  FormSection f = compute_F(sigma, c, dims);
  FormSection residual = formula_F_residual(dims, c, f, dims.prec < 0 ? -1 : dims.prec - 2);
  if (!residual.is_zero()) throw FormulaFViolation(residual, defect_norm(residual));
  return ComparisonData{dims, sigma, c, std::move(f)};
}

FormCochain sigma_push(const JetDims& dims, const JetIsomorphism& sigma, const FormCochain& x, int max_input) {
  FormCochain out(x.arity, max_input);
  if (x.arity == 0) {
    for (const auto& [key, v] : x.entries) out.add(key.first, key.second, sigma.apply(v));
    return out;
  }
  // fiber tau -> (b, coefficient of tau in sigma^-1(b)) for inputs b within the window
  std::map<TermKey, std::vector<std::pair<TermKey, XPoly>>> preimages;
  for (TermKey b : fiber_elements(dims, max_input))
    for (auto& [fiber, poly] : sigma.apply_inverse(Section::term(b)).by_fiber())
      preimages[fiber].emplace_back(b, std::move(poly));

  const std::size_t q = x.arity;
  FiberTuple t(q);
  for (const auto& [key, v] : x.entries) {
    std::vector<const std::vector<std::pair<TermKey, XPoly>>*> lists(q);
    bool reachable = true;
    for (std::size_t s = 0; s < q && reachable; ++s) {
      auto it = preimages.find(key.second[s]);
      if (it == preimages.end())
        reachable = false;
      else
        lists[s] = &it->second;
    }
    if (!reachable) continue;
    const Section sv = sigma.apply(v);
    auto rec = [&](auto&& self, std::size_t s, int weight, const Section& acc) -> void {
      if (acc.is_zero()) return;
      if (s == q) {
        out.add(key.first, t, acc);
        return;
      }
      for (const auto& [b, poly] : *lists[s]) {
        const int w = weight + key_yweight(b);
        if (w > max_input) continue;
        t[s] = b;
        self(self, s + 1, w, scale(acc, poly, dims.prec));
      }
    };
    rec(rec, 0, 0, sv);
  }
  return out;
}

MixedCochain comparison_map(const ComparisonData& data, const FormCochain& source, int max_input) {
  FormCochain cot = jet_cotrace(data.dims.n, source);
  // Degree-complete rather than window-complete from here on (see sigma_push).
  cot.cap.reset();
  const MixedCochain twisted = exp_iota(data.dims, data.F, MixedCochain(cot), -1);
  return twisted.map([&](const FormCochain& x) {
    FormCochain y = x;
    y.cap.reset();
    return sigma_push(data.dims, data.sigma, y, max_input);
  });
}

IdentityCheck check_phi_chain_map(const ComparisonData& data, const PhiOptions& opt) {
  IdentityCheck check("Phi chain map");
  const JetDims src = source_dims(data.dims);
  const int K = opt.input_window, P = opt.compare_degree;
  std::vector<FormCochain> gens;
  for (std::size_t q = 0; q <= opt.max_arity; ++q)
    for (auto& g : spanning_generators(src, q, K, opt.output_ycap))
      if (is_normalized(g)) gens.push_back(std::move(g));
  // Source delta window: entries beyond it have values of degree > P.
  const int source_window = P + K + 1;
  std::vector<Scalar> defects(gens.size());
  parallel_for(gens.size(), [&](std::size_t i) {
    const FormCochain& d = gens[i];
    FormCochain nd = nabla_tot(src, {}, d);
    FormCochain dd = delta(src, d, source_window);
    dd.cap.reset();
    MixedCochain lhs = comparison_map(data, nd, K) + comparison_map(data, dd, K);
    const MixedCochain phi = comparison_map(data, d, K);
    MixedCochain rhs = phi.map([&](const FormCochain& x) { return nabla_tot(data.dims, {}, x); }) +
                       phi.map([&](const FormCochain& x) { return delta(data.dims, x, K); });
    defects[i] = defect_norm(difference_on(lhs, rhs, K, P));
  });
  for (std::size_t i = 0; i < gens.size(); ++i) {
    ++check.cases;
    if (defects[i].is_zero()) continue;
    check.defect += defects[i];
    if (check.witness.empty()) check.witness = "generator " + std::to_string(i) + " arity " + std::to_string(gens[i].arity);
  }
  return check;
}

std::vector<FormCochain> polyvector_classes(const JetDims& dims, int degree, int x_cap, int window) {
  std::vector<FormCochain> out;
  const JetDims src = source_dims(dims);
  auto derivative = [&](Mono beta, int i) {
    Section s;
    if (mono_exp(beta, i) > 0) s.add(term_key(0, 0, 0, beta - mono_unit(i)), Scalar(mono_exp(beta, i)));
    return s;
  };
  for (Mono alpha : monomials_up_to(dims.d, x_cap)) {
    const Section c = jet_map(Section::term(term_key(0, 0, alpha, 0)));
    if (degree == 0) {
      for (int i = 0; i < dims.d; ++i) {
        FormCochain v(1, window);
        for (const auto& t : fiber_tuples(src, 1, window))
          v.add(0, t, Section::multiply(c, derivative(key_y(t[0]), i), -1));
        out.push_back(std::move(v));
      }
    } else if (degree == 1) {
      for (int i = 0; i < dims.d; ++i)
        for (int j = i + 1; j < dims.d; ++j) {
          FormCochain v(2, window);
          for (const auto& t : fiber_tuples(src, 2, window)) {
            const Mono b1 = key_y(t[0]), b2 = key_y(t[1]);
            Section w = Section::multiply(derivative(b1, i), derivative(b2, j), -1) -
                        Section::multiply(derivative(b1, j), derivative(b2, i), -1);
            v.add(0, t, Section::multiply(c, w, -1));
          }
          out.push_back(std::move(v));
        }
    } else {
      throw std::invalid_argument("polyvector classes are available in degrees 0 and 1");
    }
  }
  return out;
}

ChoiceComparison compare_choices(const ComparisonData& a, const ComparisonData& b, int degree,
                                 const ChoiceOptions& opt) {
  if (degree < 0 || degree > 1) throw std::invalid_argument("choices are compared in degrees 0 and 1");
  const JetDims& dims = a.dims;
  const int K = opt.input_window, P = opt.compare_degree;
  ChoiceComparison result;
  result.degree = degree;
  // Class representatives are degree-complete up to P on target inputs <= K.
  const auto classes = polyvector_classes(dims, degree, opt.x_cap, P + K + 2);
  result.classes = classes.size();

  std::vector<MixedCochain> phi_a(classes.size()), phi_b(classes.size());
  parallel_for(classes.size() * 2, [&](std::size_t i) {
    if (i % 2 == 0)
      phi_a[i / 2] = comparison_map(a, classes[i / 2], K);
    else
      phi_b[i / 2] = comparison_map(b, classes[i / 2], K);
  });

  CoordinateIndex index;
  std::vector<SparseVec> totals(classes.size());
  for (int w = -K; w <= P - K; ++w) {
    // Coboundaries of total degree `degree` - 1 in weight w.
    EchelonBasis boundaries;
    for (int p = 0; p <= dims.d; ++p) {
      const int q = degree - p;
      if (q < 0) continue;
      for (unsigned mask = 0; mask < (1U << dims.d); ++mask) {
        if (popcount(mask) != p) continue;
        for (const auto& t : fiber_tuples(dims, static_cast<std::size_t>(q), K))
          for (TermKey k : terms_of_degree(dims, w - p + tuple_yweight(t))) {
            FormCochain e(static_cast<std::size_t>(q), K);
            e.add(mask, t, Section::term(k));
            MixedCochain image = MixedCochain(nabla_tot(dims, {}, e)) + MixedCochain(delta(dims, e, K));
            boundaries.insert(index.coordinates(image, K, w));
          }
      }
    }
    std::vector<SparseVec> na, nb;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      na.push_back(boundaries.reduce(index.coordinates(phi_a[c], K, w)));
      nb.push_back(boundaries.reduce(index.coordinates(phi_b[c], K, w)));
      for (const auto& [col, v] : na.back()) totals[c][col] += v;
    }
    result.weights.push_back(w);
    result.normal_a.push_back(std::move(na));
    result.normal_b.push_back(std::move(nb));
  }
  result.equal = result.normal_a == result.normal_b;
  EchelonBasis span;
  for (auto& v : totals) {
    std::erase_if(v, [](const auto& kv) { return kv.second.is_zero(); });
    span.insert(v);
  }
  result.rank = span.dim();
  return result;
}

}  // namespace gerst
