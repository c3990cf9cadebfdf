// Acceptance run: one PASS/FAIL line per criterion, exit status = number of failures.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"

#include "gerst/deformation.hpp"
#include "gerst/hochschild.hpp"
#include "gerst/suites.hpp"

using namespace gerst;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

bool all_pass(const RunReport& r, Outcome& o) {
  for (const auto& c : r.checks)
    if (!c.pass) o.require(false, c.name + (c.witness.empty() ? "" : " (" + c.witness + ")"));
  return r.failures() == 0;
}

std::size_t total_cases(const RunReport& r) {
  std::size_t n = 0;
  for (const auto& c : r.checks) n += c.cases;
  return n;
}

std::string run_cli(const std::string& args, int& code) {
  const std::string cmd = std::string(GERST_CLI_PATH) + " " + args + " 2>/dev/null";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    code = -1;
    return out;
  }
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

std::string data(const std::string& name) { return std::string(GERST_DATA_DIR) + "/" + name; }

Outcome dgla_axioms() {
  Outcome o;
  for (Field f : {Field::prime(10007), Field::rationals()}) {
    FieldGuard g(f);
    Rng rng(2024);
    const Algebra a = make_matrix_algebra(2, make_ground_field());
    for (const auto& c : dgla_axiom_checks(a, 100, 4, rng))
      o.require(c.passed() && c.cases == 100, c.name + " over " + f.name() + ": " + c.defect.str());
  }
  o.detail << "4 axioms x 100 draws over F_10007 and Q, arity <= 4, dim 4";
  return o;
}

Outcome deformation_equivalence() {
  Outcome o;
  const Algebra a = make_matrix_algebra(2, make_ground_field());
  Rng rng(99);
  std::size_t nonzero = 0;
  for (int t = 0; t < 100; ++t) {
    const MCElement lambda = random_series(a, 3, 2, 4, rng);
    const TSeries residual = mc_residual(a, lambda);
    if (!residual.is_zero()) ++nonzero;
    o.require(check_associativity(deform_product(a, lambda)) == residual, "draw " + std::to_string(t));
  }
  const Algebra xp = make_polynomial_algebra(2, 3, {"x", "p"});
  const MCElement moyal = moyal_mc(xp, 3);
  o.require(mc_residual(xp, moyal).is_zero(), "Moyal residual");
  o.require(check_associativity(deform_product(xp, moyal)).is_zero(), "Moyal associativity");
  o.detail << "100 draws mod t^3 (" << nonzero << " non-MC), Moyal on Q[x,p] cap 3 residual 0";
  return o;
}

Outcome morita() {
  Outcome o;
  using Dims = std::vector<std::size_t>;
  const Algebra q = make_ground_field(), dual = make_truncated_polynomial_algebra(2);
  const Algebra mat2 = make_matrix_algebra(2, q), mat2dual = make_matrix_algebra(2, dual);
  auto dims = [](const Algebra& a) {
    Dims d;
    for (std::size_t k = 0; k <= 2; ++k) d.push_back(cohomology(a, k).dim_hh);
    return d;
  };
  o.require(dims(mat2) == Dims{1, 0, 0}, "HH(Mat2(Q))");
  o.require(dims(dual) == Dims{2, 1, 1}, "HH(Q[x]/x^2)");
  o.require(dims(mat2dual) == Dims{2, 1, 1}, "HH(Mat2(Q[x]/x^2))");
  const oracle::Rationals rat;
  o.require(oracle::hochschild_dims(mat2, 2, rat) == dims(mat2), "dense oracle Mat2(Q)");
  o.require(oracle::hochschild_dims(dual, 2, rat) == dims(dual), "dense oracle Q[x]/x^2");
  o.require(oracle::hochschild_dims(mat2dual, 2, rat) == dims(mat2dual), "dense oracle Mat2(Q[x]/x^2)");

  ComplexOptions normalized;
  normalized.normalized = true;
  for (const Algebra* r : {&q, &dual}) {
    const Algebra m = make_matrix_algebra(2, *r);
    const CochainMap cotr = [&](const Cochain& x) { return cotrace(*r, 2, x); };
    for (std::size_t k = 0; k <= 2; ++k) {
      const std::size_t hs = cohomology(*r, k, normalized).dim_hh, ht = cohomology(m, k).dim_hh;
      const SparseMatrix map = induced_cohomology_map(*r, normalized, m, {}, cotr, k);
      o.require(hs == ht && rank(map) == hs, "cotrace iso on HH^" + std::to_string(k) + " for dim R = " + std::to_string(r->dim()));
    }
  }
  o.detail << "dims (1,0,0), (2,1,1), (2,1,1); dense oracle agrees; cotrace isomorphisms k <= 2";
  return o;
}

Outcome commutators() {
  Outcome o;
  DeskConfig cfg;
  cfg.cochain_arity_max = 3;
  const RunReport r = run_suite("commutators", cfg);
  all_pass(r, o);
  o.require(r.checks.size() == 4, "four identities");
  o.detail << "4 identities, " << total_cases(r) << " generator evaluations, d = 2, n = 2, caps 2, arity <= 3";
  return o;
}

Outcome adiota() {
  Outcome o;
  const RunReport r = run_suite("adiota", DeskConfig{}, SuiteOptions{50});
  all_pass(r, o);
  o.require(r.artifacts["draws"] == 50, "50 draws");
  o.detail << "50 draws of (f, gamma): formula-F residual 0, conjugation defect 0 on " << total_cases(r)
           << " generator evaluations";
  return o;
}

Outcome jet_poincare() {
  Outcome o;
  const RunReport r = run_suite("jet-poincare", DeskConfig{});
  all_pass(r, o);
  o.detail << "d = 1, arity 0 and 1, weights <= 2: H^1 = 0, H^0 = jet image";
  return o;
}

Outcome choices() {
  Outcome o;
  for (std::uint64_t seed : {1, 2}) {
    DeskConfig cfg;
    cfg.seed = seed;
    const RunReport r = run_suite("choices", cfg);
    all_pass(r, o);
    o.require(r.checks.size() == 2, "H^0 and H^1 compared");
  }
  o.detail << "two pairs of random choices, equal induced maps on H^0 and H^1";
  return o;
}

Outcome gauge() {
  Outcome o;
  const Algebra a = make_matrix_algebra(2, make_truncated_polynomial_algebra(2));
  Rng rng(7);
  auto first_order = [&] {
    GaugeElement x(3, 1);
    x[1] = random_cochain(a, 1, 3, rng);
    return x;
  };
  for (int t = 0; t < 100; ++t) {
    const MCElement lambda = gauge_act(a, first_order(), zero_mc(a, 3));
    const MCElement moved = gauge_act(a, random_series(a, 3, 1, 3, rng), lambda);
    o.require(mc_residual(a, lambda).is_zero() && mc_residual(a, moved).is_zero(), "trial " + std::to_string(t));
  }
  for (int t = 0; t < 5; ++t) {
    const MCElement l1 = gauge_act(a, first_order(), zero_mc(a, 3));
    const MCElement l2 = gauge_act(a, random_series(a, 3, 1, 3, rng), l1);
    const GaugeSearch found = gauge_equivalent(a, l1, l2);
    o.require(found.gauge && gauge_act(a, *found.gauge, l1) == l2, "round trip " + std::to_string(t));
  }
  o.detail << "100 gauge trials keep MC; 5 generate-and-recover round trips";
  return o;
}

Outcome cli() {
  Outcome o;
  int c1 = 0, c2 = 0;
  for (const std::string& args : std::vector<std::string>{"--no-times verify commutators --seed 11", "--no-times verify choices --seed 11",
                                 "--no-times hh " + data("mat2_dual.json") + " --kmax 2"}) {
    const std::string a = run_cli(args, c1), b = run_cli(args, c2);
    o.require(c1 == 0 && c2 == 0 && a == b && !a.empty(), "byte-identical: " + args);
  }
  const std::string bad = run_cli("--no-times deform " + data("qxp3.json") + " --mc " + data("moyal_flipped_mc.json"), c1);
  const Json j = parse_json(bad);
  bool nonzero = false;
  for (const auto& c : j["checks"])
    if (c["name"] == "associativity") nonzero = c["status"] == "fail" && c["defect"] != "0/1";
  o.require(c1 != 0 && nonzero, "corrupted MC element fails");
  // Library-level negative control: Phi with F dropped is not a chain map.
  DeskConfig cfg;
  Rng rng(3);
  ComparisonData broken = random_choice(jet_dims(cfg), cfg, rng);
  broken.F = FormSection();
  PhiOptions po;
  po.input_window = 2;
  po.compare_degree = jet_dims(cfg).prec - 4;
  const IdentityCheck phi = check_phi_chain_map(broken, po);
  o.require(!phi.passed() && !phi.defect.is_zero(), "Phi without F fails");
  o.detail << "identical reports for identical seeds; corrupted MC exit " << c1 << "; Phi without F defect "
           << phi.defect.str();
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"DGLA axioms", 30, dgla_axioms},
      {"associativity defect = MC residual; Moyal", 60, deformation_equivalence},
      {"Hochschild dims and cotrace isomorphisms", 300, morita},
      {"commutator identities on the spanning set", 0, commutators},
      {"Adiota conjugation and formula F", 600, adiota},
      {"jet de Rham cohomology", 0, jet_poincare},
      {"independence of choices", 0, choices},
      {"gauge action and gauge recovery", 0, gauge},
      {"CLI determinism and negative controls", 0, cli},
  };
  int failures = 0, index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs > c.budget_s) o.require(false, "time budget " + std::to_string(c.budget_s) + " s");
    if (!o.pass) ++failures;
    std::printf("%s criterion %d: %s (%s; %.1f s)\n", o.pass ? "PASS" : "FAIL", index, c.name, o.detail.str().c_str(), secs);
    std::fflush(stdout);
  }
  return failures;
}
