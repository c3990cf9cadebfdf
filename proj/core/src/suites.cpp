#include "gerst/suites.hpp"

#include <chrono>
#include <functional>
#include <sstream>

#include "gerst/hochschild.hpp"
#include "gerst/parallel.hpp"

namespace gerst {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

CheckRecord record_of(const IdentityCheck& c, double secs) {
  CheckRecord r;
  r.name = c.name;
  r.pass = c.passed();
  r.defect = c.defect;
  r.cases = c.cases;
  r.wall_seconds = secs;
  r.witness = c.witness;
  return r;
}

void add_all(RunReport& report, const std::vector<IdentityCheck>& checks, double secs) {
  for (const auto& c : checks) report.add(record_of(c, secs));
}

void note(IdentityCheck& check, const Scalar& defect, const std::function<std::string()>& witness) {
  ++check.cases;
  if (defect.is_zero()) return;
  check.defect += defect;
  if (check.witness.empty()) check.witness = witness();
}

// Signed sum in which empty terms are skipped: brackets landing below
// arity 0 come back as empty cochains of a placeholder arity.
Cochain signed_sum(std::initializer_list<std::pair<Scalar, Cochain>> terms) {
  std::optional<Cochain> acc;
  for (const auto& [s, c] : terms) {
    if (c.entries.empty()) continue;
    if (acc)
      *acc += s * c;
    else
      acc = s * c;
  }
  return acc ? *acc : Cochain(0);
}

// Parity of |D||E| with |D| = arity - 1.
bool odd_product(std::size_t a, std::size_t b) { return ((a + 1) * (b + 1)) % 2 == 1; }

MixedCochain iota_mixed(const JetDims& dims, const FormSection& h, const MixedCochain& x) {
  MixedCochain out;
  for (const auto& [q, c] : x.parts)
    if (q > 0) out.add(iota(dims, h, c));
  return out;
}

std::string generator_label(const FormCochain& g) {
  std::ostringstream os;
  const auto& [key, v] = *g.entries.begin();
  os << "arity " << g.arity << " inputs [";
  for (std::size_t s = 0; s < key.second.size(); ++s) os << (s ? " " : "") << std::hex << key.second[s] << std::dec;
  os << "] output " << v.str(3);
  return os.str();
}

template <class Fn>
std::vector<IdentityCheck> timed(double& secs, Fn&& fn) {
  const auto t0 = Clock::now();
  auto out = fn();
  secs = seconds_since(t0);
  return out;
}

// Inputs of y-weight up to the window use up that much of the truncation margin.
int comparison_degree(const JetDims& dims, int input_window) { return dims.prec - 2 - input_window; }

std::size_t trials_or(const SuiteOptions& opt, std::size_t fallback) { return opt.trials ? opt.trials : fallback; }

// ---------------------------------------------------------------------------

RunReport suite_dgla(const DeskConfig& cfg, const SuiteOptions& opt, Rng& rng, RunReport report) {
  const Algebra a = make_matrix_algebra(2, make_ground_field());
  double secs = 0;
  auto checks = timed(secs, [&] { return dgla_axiom_checks(a, trials_or(opt, 100), cfg.cochain_arity_max, rng); });
  add_all(report, checks, secs);
  return report;
}

RunReport suite_commutators(const DeskConfig& cfg, const SuiteOptions&, Rng& rng, RunReport report) {
  JetDims dims{cfg.d, cfg.n, -1};
  const FormSection h = random_form(dims, 1, cfg.x_weight_cap, 0, cfg.y_weight_cap, 3, rng, false);
  const FormSection g = random_form(dims, 1, cfg.x_weight_cap, 0, cfg.y_weight_cap, 3, rng, false);
  const Connection c = random_connection(dims, cfg.x_weight_cap, 2, rng);
  CommutatorOptions co;
  co.max_arity = cfg.cochain_arity_max;
  co.input_window = cfg.y_weight_cap;
  co.output_ycap = cfg.y_weight_cap;
  double secs = 0;
  auto checks = timed(secs, [&] { return commutator_checks(dims, h, g, c, co); });
  add_all(report, checks, secs);
  return report;
}

RunReport suite_adiota(const DeskConfig& cfg, const SuiteOptions& opt, Rng& rng, RunReport report) {
  const JetDims dims = jet_dims(cfg);
  AdiotaOptions ao;
  ao.max_arity = std::min<std::size_t>(cfg.cochain_arity_max, 2);
  ao.input_window = 1;
  ao.output_ycap = 1;
  ao.compare_degree = comparison_degree(dims, ao.input_window);
  std::vector<IdentityCheck> totals{IdentityCheck("formula-F"), IdentityCheck("conjugated delta"),
                                    IdentityCheck("conjugated ad F"), IdentityCheck("conjugated nabla"),
                                    IdentityCheck("adiota")};
  const auto t0 = Clock::now();
  const std::size_t trials = trials_or(opt, 5);
  for (std::size_t t = 0; t < trials; ++t) {
    const ComparisonData choice = random_choice(dims, cfg, rng);
    const AdiotaReport r = adiota_conjugate(dims, choice.connection, choice.F, ao);
    const IdentityCheck* parts[] = {&r.formula, &r.delta_part, &r.ad_part, &r.nabla_part, &r.conjugation};
    for (std::size_t i = 0; i < totals.size(); ++i) {
      totals[i].cases += parts[i]->cases;
      if (parts[i]->passed()) continue;
      totals[i].defect += parts[i]->defect;
      if (totals[i].witness.empty()) totals[i].witness = "draw " + std::to_string(t) + ": " + parts[i]->witness;
    }
  }
  add_all(report, totals, seconds_since(t0));
  report.artifacts["draws"] = trials;
  return report;
}

RunReport suite_formula_f(const DeskConfig& cfg, const SuiteOptions& opt, Rng& rng, RunReport report) {
  const JetDims dims = jet_dims(cfg);
  IdentityCheck solve("F solve = closed form"), residual("formula-F residual"), log_check("log exp round trip"),
      curv("ad(theta) = nabla^2"), leibniz("Leibniz"), traceless("nabla(A0) in A0");
  const auto t0 = Clock::now();
  const std::size_t trials = trials_or(opt, 10);
  for (std::size_t t = 0; t < trials; ++t) {
    const Section f = random_jet_generator(dims, cfg.x_weight_cap, cfg.y_weight_cap, 3, rng);
    const Connection c = random_connection(dims, cfg.x_weight_cap, 2, rng);
    const JetIsomorphism sigma(dims, f);
    const std::string draw = "draw " + std::to_string(t);
    FormSection solved;
    try {
      solved = compute_F(sigma, c, dims);
    } catch (const std::exception& e) {
      note(solve, Scalar(1), [&] { return draw + ": " + e.what(); });
      continue;
    }
    const FormSection closed = compute_F_closed(sigma, c, dims);
    note(solve, defect_norm((solved - closed).truncated(dims.prec - 1)), [&] { return draw; });
    note(residual, defect_norm(formula_F_residual(dims, c, solved, dims.prec - 2)), [&] { return draw; });
    FormSection lg;
    lg.add(0, (sigma.logarithm() - f).truncated(dims.prec));
    note(log_check, defect_norm(lg), [&] { return draw; });
    for (auto [check, result] : {std::pair{&curv, check_curvature(dims, c, cfg.x_weight_cap)},
                                 std::pair{&leibniz, check_leibniz(dims, c, 1)},
                                 std::pair{&traceless, check_traceless_preserved(dims, c, cfg.x_weight_cap)}})
      note(*check, result.defect, [&] { return draw + ": " + result.witness; });
  }
  IdentityCheck flat = check_jet_flatness(dims, cfg.x_weight_cap);
  IdentityCheck dd = check_de_rham_square(dims, cfg.x_weight_cap);
  add_all(report, {solve, residual, log_check, curv, leibniz, traceless, flat, dd}, seconds_since(t0));
  return report;
}

RunReport suite_cotrace(const DeskConfig& cfg, const SuiteOptions& opt, Rng& rng, RunReport report) {
  const Algebra r = make_truncated_polynomial_algebra(2);
  const Algebra m = make_matrix_algebra(cfg.n, r);
  IdentityCheck diff("cotr delta = delta cotr"), bracket("cotr bracket = bracket cotr"), jet_diff("jet cotr delta = delta jet cotr"),
      jet_bracket("jet cotr bracket = bracket jet cotr");
  auto t0 = Clock::now();
  const std::size_t trials = trials_or(opt, 20);
  const std::size_t max_arity = std::max<std::size_t>(1, std::min<std::size_t>(cfg.cochain_arity_max, 3));
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t p = 1 + rng.below(max_arity), q = 1 + rng.below(max_arity);
    const Cochain d = normalize_projection(r, random_cochain(r, p, 4, rng));
    const Cochain e = normalize_projection(r, random_cochain(r, q, 4, rng));
    const std::string draw = "draw " + std::to_string(t);
    note(diff, defect_norm(cotrace(r, cfg.n, hochschild_differential(r, d)) - hochschild_differential(m, cotrace(r, cfg.n, d))),
         [&] { return draw; });
    note(bracket,
         defect_norm(cotrace(r, cfg.n, gerstenhaber_bracket(r, d, e)) -
                     gerstenhaber_bracket(m, cotrace(r, cfg.n, d), cotrace(r, cfg.n, e))),
         [&] { return draw; });
  }
  const double finite_secs = seconds_since(t0);
  t0 = Clock::now();
  const JetDims src{cfg.d, 1, -1}, dst{cfg.d, cfg.n, -1};
  const int K = std::min(cfg.y_weight_cap, 2);
  std::vector<FormCochain> gens;
  for (std::size_t a = 1; a <= std::min<std::size_t>(cfg.cochain_arity_max, 2); ++a)
    for (auto& g : spanning_generators(src, a, K, 1))
      if (is_normalized(g)) gens.push_back(std::move(g));
  for (const auto& g : gens) {
    note(jet_diff, defect_norm(difference_on(jet_cotrace(cfg.n, delta(src, g, K)), delta(dst, jet_cotrace(cfg.n, g), K), K, -1)),
         [&] { return generator_label(g); });
  }
  for (std::size_t t = 0; t < trials && !gens.empty(); ++t) {
    const FormCochain& x = gens[rng.below(gens.size())];
    const FormCochain& y = gens[rng.below(gens.size())];
    note(jet_bracket,
         defect_norm(difference_on(jet_cotrace(cfg.n, bracket_L(src, x, y)),
                                   bracket_L(dst, jet_cotrace(cfg.n, x), jet_cotrace(cfg.n, y)), K, -1)),
         [&] { return generator_label(x) + " with " + generator_label(y); });
  }
  const double jet_secs = seconds_since(t0);
  add_all(report, {diff, bracket}, finite_secs);
  add_all(report, {jet_diff, jet_bracket}, jet_secs);
  ComplexOptions normalized;
  normalized.normalized = true;
  const CochainMap cotr = [&](const Cochain& x) { return cotrace(r, cfg.n, x); };
  for (std::size_t k = 0; k <= 2; ++k) {
    t0 = Clock::now();
    const std::size_t hs = cohomology(r, k, normalized).dim_hh, ht = cohomology(m, k).dim_hh;
    const std::size_t rk = rank(induced_cohomology_map(r, normalized, m, {}, cotr, k));
    CheckRecord rec;
    rec.name = "cotr iso on HH^" + std::to_string(k);
    rec.pass = hs == ht && rk == hs;
    rec.dims = Json{{"source", hs}, {"target", ht}, {"rank", rk}};
    rec.wall_seconds = seconds_since(t0);
    report.add(rec);
  }
  return report;
}

RunReport suite_phi(const DeskConfig& cfg, const SuiteOptions& opt, Rng& rng, RunReport report) {
  const JetDims dims = jet_dims(cfg);
  PhiOptions po;
  po.max_arity = std::min<std::size_t>(cfg.cochain_arity_max, 2);
  po.input_window = std::min(cfg.y_weight_cap, 2);
  po.output_ycap = 1;
  po.compare_degree = comparison_degree(dims, po.input_window);
  IdentityCheck total("Phi chain map");
  const auto t0 = Clock::now();
  const std::size_t trials = trials_or(opt, 2);
  for (std::size_t t = 0; t < trials; ++t) {
    const IdentityCheck c = check_phi_chain_map(random_choice(dims, cfg, rng), po);
    total.cases += c.cases;
    total.defect += c.defect;
    if (total.witness.empty() && !c.witness.empty()) total.witness = "draw " + std::to_string(t) + ": " + c.witness;
  }
  add_all(report, {total}, seconds_since(t0));
  return report;
}

RunReport suite_jet_poincare(const DeskConfig& cfg, const SuiteOptions&, Rng&, RunReport report) {
  const JetDims dims{1, cfg.n, -1};
  const int window = cfg.y_weight_cap;
  for (std::size_t q = 0; q <= 1; ++q) {
    const auto t0 = Clock::now();
    const auto slices = jet_de_rham_check(dims, q, window, 2);
    const double secs = seconds_since(t0);
    CheckRecord h1, h0;
    h1.name = "H^1 = 0, arity " + std::to_string(q);
    h0.name = "H^0 = jet image, arity " + std::to_string(q);
    h1.pass = h0.pass = true;
    Json d1 = Json::array(), d0 = Json::array();
    for (const auto& s : slices) {
      d1.push_back({{"weight", s.weight}, {"h1", s.h1}});
      d0.push_back({{"weight", s.weight}, {"h0", s.h0}, {"expected", s.expected_h0}, {"image_matches", s.image_matches}});
      if (s.h1 != 0) h1.pass = false;
      if (s.h0 != s.expected_h0 || !s.image_matches) h0.pass = false;
    }
    h1.dims = d1;
    h0.dims = d0;
    h1.wall_seconds = h0.wall_seconds = secs;
    report.add(h1);
    report.add(h0);
  }
  return report;
}

RunReport suite_choices(const DeskConfig& cfg, const SuiteOptions&, Rng& rng, RunReport report) {
  const JetDims dims = jet_dims(cfg);
  const ComparisonData a = random_choice(dims, cfg, rng);
  const ComparisonData b = random_choice(dims, cfg, rng);
  ChoiceOptions co;
  co.x_cap = 1;
  co.input_window = std::min(cfg.y_weight_cap, 2);
  co.compare_degree = comparison_degree(dims, co.input_window);
  // Bivector classes lower the input weight by two, so H^1 needs d >= 2 and a window of 2.
  const int top = dims.d >= 2 && co.input_window >= 2 ? 1 : 0;
  if (top == 0) report.artifacts["skipped"] = "H^1 comparison needs d >= 2 and y_weight_cap >= 2";
  for (int k = 0; k <= top; ++k) {
    const auto t0 = Clock::now();
    const ChoiceComparison r = compare_choices(a, b, k, co);
    CheckRecord rec;
    rec.name = "induced maps equal on H^" + std::to_string(k);
    rec.pass = r.equal && r.rank == r.classes;
    rec.dims = Json{{"classes", r.classes}, {"rank", r.rank}, {"weights", r.weights}, {"equal", r.equal}};
    if (!r.equal) rec.witness = "normal forms differ";
    else if (r.rank != r.classes) rec.witness = "induced map is not injective on the classes";
    rec.wall_seconds = seconds_since(t0);
    report.add(rec);
  }
  return report;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"dgla-axioms", "commutators", "adiota", "formula-F",
                                              "cotrace-morphism", "phi-chainmap", "jet-poincare", "choices"};
  return names;
}

JetDims jet_dims(const DeskConfig& cfg) { return JetDims{cfg.d, cfg.n, cfg.x_weight_cap + cfg.y_weight_cap + 2}; }

Scalar defect_norm(const Cochain& c) {
  Scalar total(0);
  for (const auto& [idx, out] : c.entries)
    for (const auto& [k, v] : out) total += v.magnitude();
  return total;
}

Scalar defect_norm(const TSeries& s) {
  Scalar total(0);
  for (const auto& c : s.terms) total += defect_norm(c);
  return total;
}

RunReport run_suite(const std::string& name, const DeskConfig& cfg, const SuiteOptions& opt) {
  using Runner = RunReport (*)(const DeskConfig&, const SuiteOptions&, Rng&, RunReport);
  static const std::map<std::string, Runner> runners{
      {"dgla-axioms", suite_dgla},     {"commutators", suite_commutators},     {"adiota", suite_adiota},
      {"formula-F", suite_formula_f},  {"cotrace-morphism", suite_cotrace},    {"phi-chainmap", suite_phi},
      {"jet-poincare", suite_jet_poincare}, {"choices", suite_choices}};
  auto it = runners.find(name);
  if (it == runners.end()) throw UnknownSuite(name);
  FieldGuard guard(cfg.field);
  Rng rng(cfg.seed);
  RunReport report;
  report.command = "verify " + name;
  report.config = config_to_json(cfg);
  report.seed = cfg.seed;
  return it->second(cfg, opt, rng, std::move(report));
}

std::vector<IdentityCheck> dgla_axiom_checks(const Algebra& a, std::size_t trials, std::size_t max_arity, Rng& rng) {
  IdentityCheck square("delta^2 = 0"), antisym("graded antisymmetry"), jacobi("graded Jacobi"),
      derivation("delta is a derivation");
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t p = rng.below(max_arity + 1), q = rng.below(max_arity + 1), r = rng.below(max_arity + 1);
    const Cochain d = random_cochain(a, p, 3, rng), e = random_cochain(a, q, 3, rng), f = random_cochain(a, r, 3, rng);
    auto draw = [&] { return "draw " + std::to_string(t) + " arities " + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r); };
    auto br = [&](const Cochain& x, const Cochain& y) { return gerstenhaber_bracket(a, x, y); };
    auto sgn = [](bool odd) { return odd ? Scalar(-1) : Scalar(1); };

    note(square, defect_norm(hochschild_differential(a, hochschild_differential(a, d))), draw);

    note(antisym, defect_norm(signed_sum({{Scalar(1), br(d, e)}, {sgn(odd_product(p, q)), br(e, d)}})), draw);

    const Cochain jac = signed_sum({{sgn(odd_product(p, r)), br(d, br(e, f))},
                                    {sgn(odd_product(q, p)), br(e, br(f, d))},
                                    {sgn(odd_product(r, q)), br(f, br(d, e))}});
    note(jacobi, defect_norm(jac), draw);

    const Scalar dsign = p % 2 == 1 ? Scalar(1) : Scalar(-1);  // (-1)^{|d|}, |d| = p - 1
    const Cochain der = signed_sum({{Scalar(1), hochschild_differential(a, br(d, e))},
                                    {Scalar(-1), br(hochschild_differential(a, d), e)},
                                    {-dsign, br(d, hochschild_differential(a, e))}});
    note(derivation, defect_norm(der), draw);
  }
  return {square, antisym, jacobi, derivation};
}

std::vector<IdentityCheck> commutator_checks(const JetDims& dims, const FormSection& h, const FormSection& g,
                                             const Connection& c, const CommutatorOptions& opt) {
  const int K = opt.input_window, P = opt.compare_degree;
  const int window = K + std::max({0, h.max_yweight(), g.max_yweight()});
  const FormSection hg = graded_commutator(h, g, dims.prec);
  const FormSection nh = nabla_tot(dims, c.gamma, h);

  std::vector<FormCochain> gens;
  for (std::size_t q = 0; q <= opt.max_arity; ++q)
    for (auto& x : spanning_generators(dims, q, K, opt.output_ycap)) gens.push_back(std::move(x));

  struct Defects {
    Scalar di, ai, ii, ni;
  };
  std::vector<Defects> results(gens.size());
  parallel_for(gens.size(), [&](std::size_t i) {
    const FormCochain& d = gens[i];
    const MixedCochain dm(d);
    auto delta_of = [&](const MixedCochain& x, int w) {
      return x.map([&](const FormCochain& y) { return delta(dims, y, w); });
    };
    auto ad_of = [&](const FormSection& f, const MixedCochain& x) {
      return x.map([&](const FormCochain& y) { return ad_inner(dims, f, y); });
    };
    Defects r;
    {
      MixedCochain lhs = delta_of(iota_mixed(dims, h, dm), K) - iota_mixed(dims, h, delta_of(dm, window));
      r.di = defect_norm(difference_on(lhs, ad_of(h, dm), K, P));
    }
    if (d.arity >= 1) {
      MixedCochain lhs = ad_of(h, iota_mixed(dims, g, dm)) - iota_mixed(dims, g, ad_of(h, dm));
      r.ai = defect_norm(difference_on(lhs, iota_mixed(dims, hg, dm), K, P));
      MixedCochain ii = iota_mixed(dims, h, iota_mixed(dims, g, dm)) - iota_mixed(dims, g, iota_mixed(dims, h, dm));
      r.ii = defect_norm(difference_on(ii, MixedCochain(), K, P));
      MixedCochain nl = MixedCochain(nabla_tot(dims, c.gamma, iota(dims, h, d))) - iota(dims, h, nabla_tot(dims, c.gamma, d));
      r.ni = defect_norm(difference_on(nl, iota(dims, nh, d), K, P));
    }
    results[i] = r;
  });
  IdentityCheck di("[delta, iota_H] = ad H"), ai("[ad H, iota_G] = iota_[H,G]"), ii("[iota_H, iota_G] = 0"),
      ni("[nabla, iota_H] = iota_(nabla H)");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    auto label = [&] { return generator_label(gens[i]); };
    note(di, results[i].di, label);
    if (gens[i].arity >= 1) {
      note(ai, results[i].ai, label);
      note(ii, results[i].ii, label);
      note(ni, results[i].ni, label);
    }
  }
  return {di, ai, ii, ni};
}

ComparisonData random_choice(const JetDims& dims, const DeskConfig& cfg, Rng& rng) {
  const Section f = random_jet_generator(dims, cfg.x_weight_cap, cfg.y_weight_cap, 3, rng);
  const Connection c = random_connection(dims, cfg.x_weight_cap, 2, rng);
  return make_comparison(dims, JetIsomorphism(dims, f), c);
}

RunReport run_hh(const Algebra& a, std::size_t kmax, std::optional<int> window) {
  RunReport report;
  report.command = "hh";
  report.config = Json{{"field", current_field().name()}, {"dim", a.dim()}, {"kmax", kmax}};
  if (window) report.config["window"] = *window;
  ComplexOptions full;
  full.window = window;
  std::optional<Algebra> adapted;
  if (a.unit_index()) adapted = a;
  Json table = Json::array();
  for (std::size_t k = 0; k <= kmax; ++k) {
    const auto t0 = Clock::now();
    const CohomologyReport r = cohomology(a, k, full);
    CheckRecord rec;
    rec.name = "HH^" + std::to_string(k);
    rec.pass = true;
    rec.dims = Json{{"kernel", r.dim_kernel}, {"image", r.dim_image}, {"hh", r.dim_hh}};
    rec.wall_seconds = seconds_since(t0);
    table.push_back(r.dim_hh);
    if (adapted) {
      ComplexOptions norm = full;
      norm.normalized = true;
      const auto t1 = Clock::now();
      const CohomologyReport n = cohomology(*adapted, k, norm);
      CheckRecord cross;
      cross.name = "HH^" + std::to_string(k) + " normalized = full";
      cross.pass = n.dim_hh == r.dim_hh;
      cross.dims = Json{{"full", r.dim_hh}, {"normalized", n.dim_hh}};
      cross.wall_seconds = seconds_since(t1);
      report.add(cross);
    }
    report.add(rec);
  }
  report.artifacts["hh"] = table;
  return report;
}

RunReport run_deform(const Algebra& a, const MCElement& lambda, bool moyal) {
  RunReport report;
  report.command = "deform";
  report.config = Json{{"field", current_field().name()}, {"dim", a.dim()}, {"order", lambda.order}, {"moyal", moyal}};
  auto t0 = Clock::now();
  const TSeries residual = mc_residual(a, lambda);
  CheckRecord mc;
  mc.name = "mc-residual";
  mc.defect = defect_norm(residual);
  mc.pass = mc.defect->is_zero();
  mc.wall_seconds = seconds_since(t0);
  report.add(mc);

  t0 = Clock::now();
  const DeformedAlgebra star = deform_product(a, lambda);
  const TSeries assoc = check_associativity(star);
  CheckRecord as;
  as.name = "associativity";
  as.defect = defect_norm(assoc);
  as.pass = as.defect->is_zero();
  if (!as.pass) {
    // First nonzero trilinear defect as a witness.
    for (int k = 0; k < assoc.order && as.witness.empty(); ++k)
      for (const auto& [idx, out] : assoc[k].entries) {
        std::ostringstream os;
        os << "t^" << k << " (" << a.labels()[idx[0]] << ", " << a.labels()[idx[1]] << ", " << a.labels()[idx[2]] << ")";
        as.witness = os.str();
        break;
      }
  }
  as.wall_seconds = seconds_since(t0);
  report.add(as);

  CheckRecord agree;
  agree.name = "associativity defect = delta lambda + 1/2 [lambda, lambda]";
  agree.defect = defect_norm(assoc - residual);
  agree.pass = agree.defect->is_zero();
  report.add(agree);

  if (moyal) {
    std::optional<std::size_t> x, p;
    for (std::size_t i = 0; i < a.dim(); ++i) {
      if (a.labels()[i] == "x") x = i;
      if (a.labels()[i] == "p") p = i;
    }
    CheckRecord comm;
    comm.name = "x*p - p*x = t";
    if (!x || !p || !a.unit_index()) {
      comm.pass = false;
      comm.witness = "algebra has no basis elements labelled x and p";
    } else {
      const auto xp = star.product(*x, *p), px = star.product(*p, *x);
      TSeries diff(lambda.order, 0);
      for (int k = 0; k < lambda.order; ++k) {
        SparseVec v = xp[static_cast<std::size_t>(k)];
        axpy(v, Scalar(-1), px[static_cast<std::size_t>(k)]);
        if (k == 1) axpy(v, Scalar(-1), SparseVec{{*a.unit_index(), Scalar(1)}});
        diff[k].add(Index{}, v);
      }
      comm.defect = defect_norm(diff);
      comm.pass = comm.defect->is_zero();
    }
    report.add(comm);
  }

  Json table = Json::array();
  for (const auto& [ij, powers] : star.star)
    for (std::size_t k = 0; k < powers.size(); ++k)
      for (const auto& [out, v] : powers[k]) table.push_back(Json::array({ij.first, ij.second, out, v.str(), k}));
  report.artifacts["star"] = table;
  return report;
}

}  // namespace gerst
