#include "gerst/jets.hpp"

#include <stdexcept>

#include "gerst/sparse_matrix.hpp"

namespace gerst {

namespace {

Scalar binomial(int n, int k) {
  Scalar r(1);
  for (int i = 1; i <= k; ++i) r = r * Scalar(n - k + i) / Scalar(i);
  return r;
}

Scalar falling(int n, int k) {
  Scalar r(1);
  for (int i = 0; i < k; ++i) r *= Scalar(n - i);
  return r;
}

FormSection left_multiply(const Section& a, const FormSection& f, int prec) {
  FormSection out;
  for (const auto& [m, s] : f.comps) out.add(m, Section::multiply(a, s, prec));
  return out;
}

}  // namespace

Section jet_map(const Section& f) {
  Section out;
  for (const auto& [k, c] : f.terms) {
    if (key_y(k) != 0) throw std::invalid_argument("jet_map expects a y-free section");
    const Mono alpha = key_x(k);
    for (Mono beta : divisors(alpha, kMaxJetVars)) {
      Scalar coeff = c;
      for (int i = 0; i < kMaxJetVars; ++i) coeff *= binomial(mono_exp(alpha, i), mono_exp(beta, i));
      out.add(term_key(key_row(k), key_col(k), alpha - beta, beta), coeff);
    }
  }
  return out;
}

Section jet_evaluate(const Section& s) {
  Section out;
  for (const auto& [k, c] : s.terms)
    if (key_y(k) == 0) out.add(k, c);
  return out;
}

IdentityCheck check_jet_flatness(const JetDims& dims, int x_cap) {
  IdentityCheck check("jet flatness");
  const auto basis = basis_sections(dims, x_cap);
  for (const Section& s : basis) {
    FormSection j;
    j.add(0, jet_map(s));
    ++check.cases;
    Scalar norm = defect_norm(nabla_can(j, dims.d));
    // nabla_can^2 = 0 on any section, here x^alpha E_ab and its jet.
    FormSection plain;
    plain.add(0, s + jet_map(s));
    norm += defect_norm(nabla_can(nabla_can(plain, dims.d), dims.d));
    if (!norm.is_zero()) {
      check.defect += norm;
      if (check.witness.empty()) check.witness = s.str(dims.d);
    }
    if (!(jet_evaluate(jet_map(s)) == s)) {
      check.defect += Scalar(1);
      if (check.witness.empty()) check.witness = "evaluation " + s.str(dims.d);
    }
  }
  for (const Section& a : basis)
    for (const Section& b : basis) {
      ++check.cases;
      Section d = jet_map(Section::multiply(a, b, -1)) - Section::multiply(jet_map(a), jet_map(b), -1);
      if (!d.is_zero()) {
        check.defect += defect_norm(FormCochain::from_form(FormSection{{{0, d}}}));
        if (check.witness.empty()) check.witness = "product " + a.str(dims.d) + " * " + b.str(dims.d);
      }
    }
  return check;
}

JetIsomorphism::JetIsomorphism(const JetDims& dims, Section f) : dims_(dims), f_(std::move(f)) {
  if (dims_.prec < 0 && !f_.is_zero()) throw std::invalid_argument("exp(ad f) needs a finite jet precision");
  for (const auto& [k, c] : f_.terms)
    if (key_yweight(k) == 0) throw std::invalid_argument("jet generator must vanish at y = 0");
  if (!f_.traceless(dims_.n).trace().is_zero() || !(f_.traceless(dims_.n) == f_))
    throw std::invalid_argument("jet generator must be traceless");
  exp_ = exp_series(f_, dims_.n, dims_.prec);
  exp_neg_ = exp_series(Scalar(-1) * f_, dims_.n, dims_.prec);
}

Section JetIsomorphism::apply(const Section& s) const {
  if (f_.is_zero()) return s;
  return Section::multiply(Section::multiply(exp_, s, dims_.prec), exp_neg_, dims_.prec);
}

Section JetIsomorphism::apply_inverse(const Section& s) const {
  if (f_.is_zero()) return s;
  return Section::multiply(Section::multiply(exp_neg_, s, dims_.prec), exp_, dims_.prec);
}

FormSection JetIsomorphism::apply(const FormSection& s) const {
  FormSection out;
  for (const auto& [m, v] : s.comps) out.add(m, apply(v));
  return out;
}

FormSection JetIsomorphism::apply_inverse(const FormSection& s) const {
  FormSection out;
  for (const auto& [m, v] : s.comps) out.add(m, apply_inverse(v));
  return out;
}

Section JetIsomorphism::logarithm() const {
  if (f_.is_zero()) return f_;
  return log_series(exp_ - Section::identity(dims_.n), dims_.prec);
}

FormSection JetIsomorphism::maurer_cartan_form() const {
  FormSection e;
  e.add(0, exp_.is_zero() ? Section::identity(dims_.n) : exp_);
  if (f_.is_zero()) return FormSection();
  return left_multiply(exp_neg_, nabla_can(e, dims_.d), dims_.prec);
}

Section random_jet_generator(const JetDims& dims, int x_cap, int y_cap, std::size_t terms, Rng& rng) {
  FormSection g = random_form(dims, 0, x_cap, 1, y_cap, terms, rng, true);
  return g.comps.count(0) ? g.comps.at(0) : Section();
}

FormSection compute_F_closed(const JetIsomorphism& sigma, const Connection& c, const JetDims& dims) {
  FormSection f = sigma.maurer_cartan_form() - c.gamma_form();
  FormSection out;
  for (const auto& [m, s] : f.comps) out.add(m, s.traceless(dims.n));
  return out.truncated(dims.prec < 0 ? -1 : dims.prec - 1);
}

FormSection compute_F(const JetIsomorphism& sigma, const Connection& c, const JetDims& dims) {
  const int n = dims.n;
  const auto n2 = static_cast<std::size_t>(n * n);
  // difference(s) = sigma^-1 nabla_can(sigma s) - nabla_tot(s), a form.
  auto difference = [&](const Section& s) {
    FormSection fs;
    fs.add(0, sigma.apply(s));
    FormSection lhs = sigma.apply_inverse(nabla_can(fs, dims.d));
    FormSection plain;
    plain.add(0, s);
    return (lhs - nabla_tot(dims, c.gamma, plain)).truncated(dims.prec);
  };

  std::vector<FormSection> diffs(n2);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) diffs[static_cast<std::size_t>(a * n + b)] = difference(Section::term(term_key(a, b, 0, 0)));

  // J-linearity: difference(j s) = j difference(s) for coordinate functions j.
  const int exact = dims.prec < 0 ? -1 : dims.prec - 2;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int i = 0; i < dims.d; ++i)
        for (TermKey j : {term_key(0, 0, mono_unit(i), 0), term_key(0, 0, 0, mono_unit(i))}) {
          const Section js = Section::term(term_key(a, b, key_x(j), key_y(j)));
          FormSection lhs = difference(js);
          FormSection rhs;
          for (const auto& [m, s] : diffs[static_cast<std::size_t>(a * n + b)].comps)
            rhs.add(m, s.times_x(key_x(j)));
          if (key_y(j) != 0) {
            rhs = FormSection();
            for (const auto& [m, s] : diffs[static_cast<std::size_t>(a * n + b)].comps) {
              Section shifted;
              for (const auto& [k, v] : s.terms)
                shifted.add(term_key(key_row(k), key_col(k), key_x(k), key_y(k) + mono_unit(i)), v);
              rhs.add(m, shifted);
            }
          }
          if (!(lhs - rhs).truncated(exact).is_zero())
            throw std::runtime_error("connection difference is not J-linear");
        }

  // ad(F_i)(E_ab) = sum_c u_ca E_cb - sum_d u_bd E_ad per monomial; unknowns u_cd, plus trace.
  SparseMatrix m(n2 * n2 + 1, n2);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const std::size_t base = static_cast<std::size_t>(a * n + b) * n2;
      for (int cc = 0; cc < n; ++cc) m.add(base + static_cast<std::size_t>(cc * n + b), static_cast<std::size_t>(cc * n + a), Scalar(1));
      for (int dd = 0; dd < n; ++dd) m.add(base + static_cast<std::size_t>(a * n + dd), static_cast<std::size_t>(b * n + dd), Scalar(-1));
    }
  for (int cc = 0; cc < n; ++cc) m.add(n2 * n2, static_cast<std::size_t>(cc * n + cc), Scalar(1));

  FormSection out;
  for (int i = 0; i < dims.d; ++i) {
    const unsigned bit = 1U << i;
    // monomial (x, y) -> right-hand side
    std::map<std::pair<Mono, Mono>, SparseVec> rhs;
    for (std::size_t ab = 0; ab < n2; ++ab) {
      auto it = diffs[ab].comps.find(bit);
      if (it == diffs[ab].comps.end()) continue;
      for (const auto& [k, v] : it->second.terms)
        rhs[{key_x(k), key_y(k)}][ab * n2 + key_row(k) * static_cast<unsigned>(n) + key_col(k)] += v;
    }
    Section fi;
    for (auto& [mono, vec] : rhs) {
      // Top-degree terms are not exact after nabla_can lowers the degree.
      if (dims.prec >= 0 && mono_degree(mono.first) + mono_degree(mono.second) > dims.prec - 1) continue;
      std::erase_if(vec, [](const auto& kv) { return kv.second.is_zero(); });
      if (vec.empty()) continue;
      auto sol = solve(m, vec);
      if (!sol) throw std::runtime_error("no F solves ad(F) = connection difference");
      for (const auto& [col, v] : *sol)
        fi.add(term_key(static_cast<unsigned>(col) / static_cast<unsigned>(n), static_cast<unsigned>(col) % static_cast<unsigned>(n), mono.first, mono.second), v);
    }
    out.add(bit, fi);
  }
  return out;
}

FormCochain jet_prolong(const JetDims& dims, const Algebra& alg, const Cochain& d, int max_input) {
  FormCochain out(d.arity, max_input);
  const auto n = static_cast<unsigned>(dims.n);
  for (const auto& t : fiber_tuples(dims, d.arity, max_input)) {
    Index idx(t.size());
    Mono ysum = 0;
    for (std::size_t s = 0; s < t.size(); ++s) {
      idx[s] = key_row(t[s]) * n + key_col(t[s]);
      ysum += key_y(t[s]);
    }
    auto it = d.entries.find(idx);
    if (it == d.entries.end()) continue;
    Section v;
    for (const auto& [k, c] : it->second) {
      if (k >= alg.dim()) throw std::invalid_argument("cochain output outside the matrix algebra");
      v.add(term_key(static_cast<unsigned>(k) / n, static_cast<unsigned>(k) % n, 0, ysum), c);
    }
    out.add(0, t, v);
  }
  return out;
}

FormCochain jet_prolong_operator(const JetDims& dims, const SparseMatrix& phi, int m, int k, int max_input) {
  if (dims.d != 1) throw std::invalid_argument("operator prolongation is implemented for d = 1");
  const auto n = static_cast<unsigned>(dims.n);
  FormCochain out(1, max_input);
  Section xy_power = Section::identity(1);
  {
    Section xy = Section::term(term_key(0, 0, mono_unit(0), 0)) + Section::term(term_key(0, 0, 0, mono_unit(0)));
    for (int i = 0; i < m; ++i) xy_power = Section::multiply(xy_power, xy, -1);
  }
  for (TermKey f : fiber_elements(dims, max_input)) {
    const int beta = mono_exp(key_y(f), 0);
    if (beta < k) continue;
    const std::size_t col = key_row(f) * n + key_col(f);
    Section v;
    for (std::size_t r = 0; r < phi.rows(); ++r) {
      Scalar c = phi.get(r, col);
      if (c.is_zero()) continue;
      for (const auto& [pk, pc] : xy_power.terms)
        v.add(term_key(static_cast<unsigned>(r) / n, static_cast<unsigned>(r) % n, key_x(pk),
                       key_y(pk) + static_cast<Mono>(beta - k) * mono_unit(0)),
              c * pc * falling(beta, k));
    }
    out.add(0, {f}, v);
  }
  return out;
}

std::vector<JetDeRhamSlice> jet_de_rham_check(const JetDims& dims, std::size_t arity, int window, int max_weight) {
  if (dims.d != 1) throw std::invalid_argument("jet de Rham check is implemented for d = 1");
  if (arity > 1) throw std::invalid_argument("jet de Rham check supports arity <= 1");
  const auto n = static_cast<unsigned>(dims.n);
  const std::size_t n2 = n * n;
  const auto tuples = fiber_tuples(dims, arity, window);
  std::vector<JetDeRhamSlice> out;
  for (int w = arity == 0 ? 0 : -window; w <= max_weight; ++w) {
    // Omega^p basis: (tuple, output key) with output degree w + |tuple| - p.
    auto enumerate = [&](int p) {
      std::map<std::pair<FiberTuple, TermKey>, std::size_t> index;
      for (const auto& t : tuples) {
        const int deg = w + tuple_yweight(t) - p;
        if (deg < 0) continue;
        for (int a = 0; a <= deg; ++a)
          for (unsigned r = 0; r < n; ++r)
            for (unsigned c = 0; c < n; ++c) {
              const TermKey k = term_key(r, c, static_cast<Mono>(a) * mono_unit(0), static_cast<Mono>(deg - a) * mono_unit(0));
              index.emplace(std::make_pair(t, k), index.size());
            }
      }
      return index;
    };
    const auto idx0 = enumerate(0), idx1 = enumerate(1);
    SparseMatrix mat(idx1.size(), idx0.size());
    std::vector<std::pair<FiberTuple, TermKey>> cols(idx0.size());
    for (const auto& [key, col] : idx0) cols[col] = key;
    auto to_coords = [&](const FormCochain& c, const std::map<std::pair<FiberTuple, TermKey>, std::size_t>& index,
                         unsigned mask) {
      SparseVec v;
      for (const auto& [key, s] : c.entries) {
        if (key.first != mask) throw std::logic_error("unexpected form degree");
        for (const auto& [k, x] : s.terms) {
          auto it = index.find({key.second, k});
          if (it == index.end()) throw std::logic_error("term outside the weight slice");
          v[it->second] += x;
        }
      }
      std::erase_if(v, [](const auto& kv) { return kv.second.is_zero(); });
      return v;
    };
    for (std::size_t col = 0; col < cols.size(); ++col) {
      FormCochain e(arity, window);
      e.add(0, cols[col].first, Section::term(cols[col].second));
      mat.set_column(col, to_coords(nabla_tot(dims, {}, e), idx1, 1));
    }
    JetDeRhamSlice slice;
    slice.weight = w;
    slice.dim_omega0 = idx0.size();
    slice.dim_omega1 = idx1.size();
    slice.rank = rank(mat);
    slice.h0 = slice.dim_omega0 - slice.rank;
    slice.h1 = slice.dim_omega1 - slice.rank;

    std::vector<FormCochain> prolongations;
    if (arity == 0) {
      if (w >= 0)
        for (unsigned r = 0; r < n; ++r)
          for (unsigned c = 0; c < n; ++c) {
            FormCochain p(0, window);
            p.add(0, {}, jet_map(Section::term(term_key(r, c, static_cast<Mono>(w) * mono_unit(0), 0))));
            prolongations.push_back(std::move(p));
          }
    } else {
      for (int k = std::max(0, -w); k <= window; ++k)
        for (std::size_t r = 0; r < n2; ++r)
          for (std::size_t c = 0; c < n2; ++c) {
            SparseMatrix phi(n2, n2);
            phi.set(r, c, Scalar(1));
            prolongations.push_back(jet_prolong_operator(dims, phi, w + k, k, window));
          }
    }
    slice.expected_h0 = prolongations.size();
    EchelonBasis span(idx0.size());
    bool flat = true;
    for (const auto& p : prolongations) {
      const SparseVec v = to_coords(p, idx0, 0);
      span.insert(v);
      if (!is_zero(mat.apply(v))) flat = false;
    }
    slice.image_matches = flat && span.dim() == prolongations.size() && span.dim() == slice.h0;
    out.push_back(slice);
  }
  return out;
}

bool is_normalized(const FormCochain& d) {
  for (const auto& [key, v] : d.entries)
    for (TermKey k : key.second)
      if (k == term_key(0, 0, 0, 0)) return false;
  return true;
}

FormCochain jet_cotrace(int n, const FormCochain& d) {
  if (!is_normalized(d)) throw std::invalid_argument("cotrace needs a normalized cochain");
  const auto un = static_cast<unsigned>(n);
  FormCochain out(d.arity, d.cap);
  const std::size_t q = d.arity;
  std::vector<unsigned> chain(q + 1, 0);
  for (const auto& [key, v] : d.entries) {
    for (const auto& [k, c] : v.terms)
      if (key_row(k) != 0 || key_col(k) != 0) throw std::invalid_argument("cotrace source must have scalar fibers");
    std::fill(chain.begin(), chain.end(), 0U);
    while (true) {
      FiberTuple t(q);
      for (std::size_t s = 0; s < q; ++s) t[s] = term_key(chain[s], chain[s + 1], 0, key_y(key.second[s]));
      Section val;
      for (const auto& [k, c] : v.terms) val.add(term_key(chain[0], chain[q], key_x(k), key_y(k)), c);
      out.add(key.first, t, val);
      std::size_t pos = 0;
      while (pos <= q && ++chain[pos] == un) chain[pos++] = 0;
      if (pos > q) break;
    }
  }
  return out;
}

}  // namespace gerst
