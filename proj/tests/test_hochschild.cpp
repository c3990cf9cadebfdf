#include "doctest.h"
#include "oracle.hpp"

#include "gerst/hochschild.hpp"
#include "gerst/random.hpp"
#include "gerst/suites.hpp"

using namespace gerst;

namespace {

std::vector<std::size_t> library_dims(const Algebra& a, std::size_t kmax, bool normalized = false) {
  ComplexOptions opt;
  opt.normalized = normalized;
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k <= kmax; ++k) out.push_back(cohomology(a, k, opt).dim_hh);
  return out;
}

using Dims = std::vector<std::size_t>;

}  // namespace

TEST_SUITE("hochschild-dgla") {
  TEST_CASE("bracket basics") {
    const Algebra m = make_matrix_algebra(2, make_ground_field());
    const Cochain mu = multiplication_cochain(m);
    CHECK(gerstenhaber_bracket(m, mu, mu).is_zero());
    CHECK(hochschild_differential(m, mu).is_zero());

    // Arity-1 cochains bracket to the matrix commutator.
    Rng rng(2);
    const Cochain d = random_cochain(m, 1, 5, rng), e = random_cochain(m, 1, 5, rng);
    const Cochain de = gerstenhaber_bracket(m, d, e);
    for (std::size_t i = 0; i < m.dim(); ++i) {
      const Vec x = m.basis_vector(i);
      const Vec dex = evaluate(m, d, {evaluate(m, e, {x})});
      const Vec edx = evaluate(m, e, {evaluate(m, d, {x})});
      Vec expect(m.dim(), Scalar(0));
      for (std::size_t k = 0; k < m.dim(); ++k) expect[k] = dex[k] - edx[k];
      CHECK(evaluate(m, de, {x}) == expect);
    }
  }

  TEST_CASE("delta of an element is a commutator") {
    const Algebra m = make_matrix_algebra(2, make_ground_field());
    const Vec a = m.basis_vector(1);
    const Cochain da = hochschild_differential(m, element_cochain(m, a));
    const SparseMatrix ad = derivation_ad(m, a);
    // Up to a global sign.
    const Vec probe = m.basis_vector(2);
    const Vec got = evaluate(m, da, {probe});
    const Vec ref = ad.apply(probe);
    Vec neg = ref;
    for (auto& x : neg) x = -x;
    CHECK((got == ref || got == neg));
    CHECK_FALSE(got == Vec(m.dim(), Scalar(0)));
  }

  TEST_CASE("DGLA axioms on random cochains") {
    for (Field f : {Field::rationals(), Field::prime(10007)}) {
      FieldGuard g(f);
      Rng rng(17);
      const Algebra a = make_matrix_algebra(2, make_ground_field());
      for (const auto& c : dgla_axiom_checks(a, 40, 3, rng)) {
        INFO(c.name << " over " << f.name() << ": " << c.witness);
        CHECK(c.passed());
        CHECK(c.cases == 40);
      }
    }
  }

  TEST_CASE("one-sided insertion is not a differential") {
    // Dropping the E o mu half of the bracket breaks delta^2 = 0.
    const Algebra a = make_matrix_algebra(2, make_ground_field());
    const Cochain mu = multiplication_cochain(a);
    Rng rng(1);
    bool detected = false;
    for (int t = 0; t < 5 && !detected; ++t) {
      const Cochain d = random_cochain(a, 1, 3, rng);
      detected = !insert(a, mu, insert(a, mu, d)).is_zero();
    }
    CHECK(detected);
  }

  TEST_CASE("cohomology of desk algebras matches the dense oracle") {
    const Algebra q = make_ground_field();
    const Algebra mat2 = make_matrix_algebra(2, q);
    const Algebra dual = make_truncated_polynomial_algebra(2);
    const Algebra mat2dual = make_matrix_algebra(2, dual);

    CHECK(library_dims(q, 2) == Dims{1, 0, 0});
    CHECK(library_dims(mat2, 2) == Dims{1, 0, 0});
    CHECK(library_dims(dual, 2) == Dims{2, 1, 1});
    CHECK(library_dims(mat2dual, 2) == Dims{2, 1, 1});

    const oracle::Rationals rat;
    CHECK(oracle::hochschild_dims(q, 2, rat) == Dims{1, 0, 0});
    CHECK(oracle::hochschild_dims(mat2, 2, rat) == Dims{1, 0, 0});
    CHECK(oracle::hochschild_dims(dual, 2, rat) == Dims{2, 1, 1});
    CHECK(oracle::hochschild_dims(mat2dual, 2, rat) == Dims{2, 1, 1});
    // Same comparison with both sides over a prime field.
    const oracle::PrimeField p{10007};
    FieldGuard g(Field::prime(10007));
    const Algebra mat2dual_p = make_matrix_algebra(2, make_truncated_polynomial_algebra(2));
    CHECK(library_dims(mat2dual_p, 2) == oracle::hochschild_dims(mat2dual_p, 2, p));
  }

  TEST_CASE("commutative algebras have HH^0 = A") {
    const Algebra a = make_truncated_polynomial_algebra(3);
    CHECK(cohomology(a, 0).dim_hh == 3);
  }

  TEST_CASE("weight-windowed cohomology of a polynomial model") {
    // HH^0 of a commutative algebra is the algebra; a window keeps the
    // elements of weight inside it.
    const Algebra p = make_polynomial_algebra(1, 3);
    ComplexOptions opt;
    opt.window = 1;
    CHECK(cohomology(p, 0, opt).dim_hh == 2);
    opt.window = 3;
    CHECK(cohomology(p, 0, opt).dim_hh == p.dim());
  }

  TEST_CASE("normalized complex is quasi-isomorphic to the full one") {
    for (const Algebra& a : {make_truncated_polynomial_algebra(2), make_truncated_polynomial_algebra(3),
                             unit_adapted(make_matrix_algebra(2, make_ground_field()))})
      CHECK(library_dims(a, 2, true) == library_dims(a, 2));
  }

  TEST_CASE("normalized projection") {
    const Algebra dual = make_truncated_polynomial_algebra(2);
    Rng rng(6);
    const Cochain d = random_cochain(dual, 2, 4, rng);
    const Cochain n = normalize_projection(dual, d);
    CHECK(is_normalized(dual, n));
    CHECK(normalize_projection(dual, n) == n);
    CHECK(is_normalized(dual, hochschild_differential(dual, n)));
    Cochain one(1);
    one.add({0}, 1, Scalar(1));
    CHECK(normalize_projection(dual, one).is_zero());
    ComplexOptions opt;
    opt.normalized = true;
    CHECK(cochain_basis(dual, 1, opt).size() == 2);
    CHECK_THROWS(normalize_projection(make_matrix_algebra(2, make_ground_field()), d));
  }

  TEST_CASE("induced maps") {
    const Algebra dual = make_truncated_polynomial_algebra(2);
    const Algebra target = make_matrix_algebra(2, dual);
    const CochainMap id = [](const Cochain& x) { return x; };
    for (std::size_t k = 0; k <= 2; ++k) {
      const SparseMatrix m = induced_cohomology_map(dual, {}, dual, {}, id, k);
      CHECK(m == SparseMatrix::identity(cohomology(dual, k).dim_hh));
    }
    ComplexOptions norm;
    norm.normalized = true;
    const CochainMap cotr = [&](const Cochain& x) { return cotrace(dual, 2, x); };
    for (std::size_t k = 0; k <= 2; ++k) {
      const SparseMatrix m = induced_cohomology_map(dual, norm, target, {}, cotr, k);
      CHECK(m.rows() == m.cols());
      CHECK(rank(m) == cohomology(dual, k).dim_hh);
    }
    const CochainMap zero = [](const Cochain& x) { return Cochain(x.arity, x.input_cap); };
    CHECK(rank(induced_cohomology_map(dual, {}, dual, {}, zero, 1)) == 0);
  }

  TEST_CASE("a non chain map is rejected with a witness") {
    const Algebra dual = make_truncated_polynomial_algebra(2);
    const CochainMap twice_on_low = [](const Cochain& x) {
      Cochain y = x;
      if (x.arity == 1) y *= Scalar(2);
      return y;
    };
    CHECK_THROWS_AS(induced_cohomology_map(dual, {}, dual, {}, twice_on_low, 1), ChainMapError);
  }

  TEST_CASE("cotrace is a morphism of brackets on normalized cochains") {
    const Algebra r = make_truncated_polynomial_algebra(2);
    const Algebra m = make_matrix_algebra(2, r);
    Rng rng(9);
    for (int t = 0; t < 20; ++t) {
      const Cochain d = normalize_projection(r, random_cochain(r, 1 + rng.below(2), 3, rng));
      const Cochain e = normalize_projection(r, random_cochain(r, 1 + rng.below(2), 3, rng));
      CHECK(cotrace(r, 2, gerstenhaber_bracket(r, d, e)) ==
            gerstenhaber_bracket(m, cotrace(r, 2, d), cotrace(r, 2, e)));
      CHECK(cotrace(r, 2, hochschild_differential(r, d)) == hochschild_differential(m, cotrace(r, 2, d)));
    }
  }
}
