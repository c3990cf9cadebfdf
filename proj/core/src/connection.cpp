#include "gerst/connection.hpp"

#include <sstream>

#include "gerst/parallel.hpp"

namespace gerst {

namespace {

FormSection zero_form_of(const Section& s) {
  FormSection f;
  f.add(0, s);
  return f;
}

void record(IdentityCheck& check, const Scalar& defect, const std::string& what) {
  ++check.cases;
  if (defect.is_zero()) return;
  check.defect += defect;
  if (check.witness.empty()) check.witness = what;
}

std::string describe(const FormCochain& g) {
  std::ostringstream os;
  const auto& [key, v] = *g.entries.begin();
  os << "arity " << g.arity << " mask " << key.first << " inputs";
  for (TermKey k : key.second) os << " " << std::hex << k << std::dec;
  return os.str();
}

}  // namespace

Connection Connection::trivial(const JetDims& dims) { return Connection{std::vector<Section>(static_cast<std::size_t>(dims.d))}; }

Connection random_connection(const JetDims& dims, int x_cap, std::size_t terms, Rng& rng) {
  Connection c;
  for (int i = 0; i < dims.d; ++i) {
    FormSection g = random_form(dims, 0, x_cap, 0, 0, terms, rng, true);
    c.gamma.push_back(g.comps.count(0) ? g.comps.at(0) : Section());
  }
  return c;
}

FormSection covariant_derivative(const JetDims& dims, const Connection& c, const FormSection& h) {
  return nabla_tot(dims, c.gamma, h);
}

FormSection curvature(const JetDims& dims, const Connection& c) {
  const FormSection g = c.gamma_form();
  FormSection half = graded_commutator(g, g, dims.prec);
  half *= Scalar::fraction(1, 2);
  return (de_rham(g, dims.d) + half).truncated(dims.prec);
}

std::vector<Section> basis_sections(const JetDims& dims, int x_cap) {
  std::vector<Section> out;
  for (Mono x : monomials_up_to(dims.d, x_cap))
    for (int a = 0; a < dims.n; ++a)
      for (int b = 0; b < dims.n; ++b)
        out.push_back(Section::term(term_key(static_cast<unsigned>(a), static_cast<unsigned>(b), x, 0)));
  return out;
}

IdentityCheck check_de_rham_square(const JetDims& dims, int x_cap) {
  IdentityCheck check{"d o d = 0"};
  for (const Section& s : basis_sections(dims, x_cap))
    for (unsigned mask = 0; mask < (1U << dims.d); ++mask) {
      FormSection f;
      f.add(mask, s);
      record(check, defect_norm(de_rham(de_rham(f, dims.d), dims.d)), s.str(dims.d));
    }
  return check;
}

IdentityCheck check_curvature(const JetDims& dims, const Connection& c, int x_cap) {
  IdentityCheck check{"ad(theta) = nabla^2"};
  const FormSection theta = curvature(dims, c);
  for (const Section& s : basis_sections(dims, x_cap))
    for (unsigned mask = 0; mask < (1U << dims.d); ++mask) {
      if (popcount(mask) > 1) continue;
      FormSection f;
      f.add(mask, s);
      FormSection lhs = covariant_derivative(dims, c, covariant_derivative(dims, c, f));
      FormSection rhs = graded_commutator(theta, f, dims.prec);
      record(check, defect_norm(lhs - rhs), s.str(dims.d));
    }
  return check;
}

IdentityCheck check_leibniz(const JetDims& dims, const Connection& c, int x_cap) {
  IdentityCheck check{"Leibniz"};
  const auto basis = basis_sections(dims, x_cap);
  for (const Section& a : basis)
    for (const Section& b : basis) {
      const FormSection fa = zero_form_of(a), fb = zero_form_of(b);
      FormSection lhs = covariant_derivative(dims, c, zero_form_of(Section::multiply(a, b, dims.prec)));
      FormSection rhs = wedge(covariant_derivative(dims, c, fa), fb, dims.prec) +
                        wedge(fa, covariant_derivative(dims, c, fb), dims.prec);
      record(check, defect_norm(lhs - rhs), a.str(dims.d) + " * " + b.str(dims.d));
    }
  return check;
}

IdentityCheck check_traceless_preserved(const JetDims& dims, const Connection& c, int x_cap) {
  IdentityCheck check{"nabla(A0) in A0"};
  for (const Section& s : basis_sections(dims, x_cap)) {
    const Section t = s.traceless(dims.n);
    if (t.is_zero()) continue;
    FormSection out = covariant_derivative(dims, c, zero_form_of(t));
    Scalar norm(0);
    for (const auto& [m, v] : out.comps) norm += defect_norm(zero_form_of(v.trace()));
    record(check, norm, t.str(dims.d));
  }
  return check;
}

FormSection formula_F_residual(const JetDims& dims, const Connection& c, const FormSection& f, int degree) {
  FormSection half = graded_commutator(f, f, dims.prec);
  half *= Scalar::fraction(1, 2);
  FormSection r = nabla_tot(dims, c.gamma, f) + half + curvature(dims, c);
  return r.truncated(degree);
}

FormCochain difference_on(const FormCochain& a, const FormCochain& b, int max_input, int max_degree) {
  if ((a.cap && *a.cap < max_input) || (b.cap && *b.cap < max_input))
    throw std::logic_error("cochain is not known on the requested input window");
  FormCochain ra = a.restricted(max_input, max_degree), rb = b.restricted(max_input, max_degree);
  if (ra.arity != rb.arity) {
    if (ra.is_zero()) return Scalar(-1) * rb;
    if (rb.is_zero()) return ra;
    throw std::logic_error("comparing cochains of different arity");
  }
  return ra - rb;
}

MixedCochain difference_on(const MixedCochain& a, const MixedCochain& b, int max_input, int max_degree) {
  MixedCochain out;
  for (const auto& [q, c] : a.parts) {
    auto it = b.parts.find(q);
    out.add(it == b.parts.end() ? difference_on(c, FormCochain(q), max_input, max_degree)
                                : difference_on(c, it->second, max_input, max_degree));
  }
  for (const auto& [q, c] : b.parts)
    if (!a.parts.count(q)) out.add(difference_on(FormCochain(q), c, max_input, max_degree));
  return out;
}

Scalar defect_norm(const MixedCochain& c) {
  Scalar total(0);
  for (const auto& kv : c.parts) total += defect_norm(kv.second);
  return total;
}

AdiotaReport adiota_conjugate(const JetDims& dims, const Connection& c, const FormSection& f,
                              const AdiotaOptions& opt) {
  AdiotaReport report;
  const int cmp = opt.compare_degree;
  report.formula_residual = formula_F_residual(dims, c, f, cmp);
  const Scalar residual_norm = defect_norm(report.formula_residual);
  record(report.formula, residual_norm, "formula F");
  if (!residual_norm.is_zero()) throw FormulaFViolation(report.formula_residual, residual_norm);

  const FormSection theta = curvature(dims, c);
  FormSection ff = graded_commutator(f, f, dims.prec);
  FormSection half_ff = ff;
  half_ff *= Scalar::fraction(1, 2);
  const FormSection nf = nabla_tot(dims, c.gamma, f);
  const int K = opt.input_window;
  const int window = K + dims.d * std::max(0, f.max_yweight());

  std::vector<FormCochain> gens;
  for (std::size_t q = 1; q <= opt.max_arity; ++q)
    for (auto& g : spanning_generators(dims, q, K, opt.output_ycap, opt.masks)) gens.push_back(std::move(g));
  report.generators = gens.size();

  struct Defects {
    Scalar delta, ad, nabla, total;
  };
  std::vector<Defects> results(gens.size());
  parallel_for(gens.size(), [&](std::size_t i) {
    const FormCochain& d = gens[i];
    const MixedCochain e = exp_iota(dims, f, MixedCochain(d), -1);
    const MixedCochain lhs_delta =
        exp_iota(dims, f, e.map([&](const FormCochain& x) { return delta(dims, x, window); }), 1);
    const MixedCochain lhs_ad = exp_iota(dims, f, e.map([&](const FormCochain& x) { return ad_inner(dims, f, x); }), 1);
    const MixedCochain lhs_nabla =
        exp_iota(dims, f, e.map([&](const FormCochain& x) { return nabla_tot(dims, c.gamma, x); }), 1);

    const MixedCochain dd = delta(dims, d, K);
    const MixedCochain ad = ad_inner(dims, f, d);
    const MixedCochain nd = nabla_tot(dims, c.gamma, d);
    Defects r;
    r.delta = defect_norm(difference_on(lhs_delta, dd - ad + iota(dims, half_ff, d), K, cmp));
    r.ad = defect_norm(difference_on(lhs_ad, ad - iota(dims, ff, d), K, cmp));
    r.nabla = defect_norm(difference_on(lhs_nabla, nd - iota(dims, nf, d), K, cmp));
    r.total = defect_norm(difference_on(lhs_delta + lhs_ad + lhs_nabla, nd + dd + iota(dims, theta, d), K, cmp));
    results[i] = r;
  });
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string what = describe(gens[i]);
    record(report.delta_part, results[i].delta, what);
    record(report.ad_part, results[i].ad, what);
    record(report.nabla_part, results[i].nabla, what);
    record(report.conjugation, results[i].total, what);
  }
  return report;
}

}  // namespace gerst
