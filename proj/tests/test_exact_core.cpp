#include "doctest.h"
#include "oracle.hpp"

#include "gerst/random.hpp"
#include "gerst/scalar.hpp"
#include "gerst/sparse_matrix.hpp"

using namespace gerst;

TEST_SUITE("exact-core") {
  TEST_CASE("rational arithmetic is exact") {
    FieldGuard g(Field::rationals());
    const Scalar third = Scalar::fraction(1, 3);
    CHECK((third + third + third).is_one());
    CHECK((Scalar::fraction(2, 4)).str() == "1/2");
    CHECK(Scalar::parse("-6/4").str() == "-3/2");
    CHECK(Scalar::parse("123456789012345678901234567890/3").str() == "41152263004115226300411522630/1");
    CHECK_THROWS_AS(Scalar(1) / Scalar(0), DivisionByZero);
    CHECK(Scalar::fraction(-5, 7).magnitude() == Scalar::fraction(5, 7));
  }

  TEST_CASE("prime field arithmetic") {
    FieldGuard g(Field::parse("Fp:10007"));
    const Scalar a(10006);
    CHECK((a + Scalar(1)).is_zero());
    CHECK((Scalar(3) * Scalar(3).inverse()).is_one());
    CHECK(Scalar::parse("1/2") * Scalar(2) == Scalar(1));
    CHECK(Scalar(5).magnitude().is_one());
    CHECK(current_field().name() == "Fp:10007");
  }

  TEST_CASE("field parsing") {
    CHECK(Field::parse("Q").is_rational());
    CHECK(Field::parse("Fp:7").p == 7);
    CHECK_THROWS(Field::parse("Fp:8"));
    CHECK_THROWS(Field::parse("R"));
  }

  TEST_CASE("field guard restores the previous field") {
    CHECK(current_field().is_rational());
    {
      FieldGuard g(Field::prime(5));
      CHECK(current_field().p == 5);
      {
        FieldGuard h(Field::rationals());
        CHECK(current_field().is_rational());
      }
      CHECK(current_field().p == 5);
    }
    CHECK(current_field().is_rational());
  }

  template <class F>
  void compare_ranks(Field field, const F& f, std::uint64_t seed) {
    FieldGuard g(field);
    Rng rng(seed);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t rows = 1 + rng.below(12), cols = 1 + rng.below(12);
      SparseMatrix m(rows, cols);
      oracle::Matrix<F> dense(rows, std::vector<typename F::T>(cols, f.zero()));
      // Low-rank products keep the kernel nontrivial.
      const std::size_t inner = 1 + rng.below(std::min(rows, cols));
      std::vector<std::vector<long>> a(rows, std::vector<long>(inner)), b(inner, std::vector<long>(cols));
      for (auto& r : a)
        for (auto& x : r) x = rng.coin() ? rng.range(-3, 3) : 0;
      for (auto& r : b)
        for (auto& x : r) x = rng.coin() ? rng.range(-3, 3) : 0;
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
          long v = 0;
          for (std::size_t t = 0; t < inner; ++t) v += a[i][t] * b[t][j];
          m.set(i, j, Scalar(v));
          dense[i][j] = f.from(mpq_class(v));
        }
      const std::size_t r = rank(m);
      CHECK(r == oracle::rank(dense, f));
      const auto kernel = kernel_basis(m);
      CHECK(kernel.size() == cols - r);
      for (const auto& v : kernel) CHECK(is_zero(m.apply(v)));
      // A consistent right-hand side is always solved.
      SparseVec x;
      x[rng.below(cols)] = Scalar(1);
      const SparseVec rhs = m.apply(x);
      const auto sol = solve(m, rhs);
      REQUIRE(sol.has_value());
      CHECK(m.apply(*sol) == rhs);
    }
  }

  TEST_CASE("sparse rank agrees with the dense oracle over Q") { compare_ranks(Field::rationals(), oracle::Rationals{}, 11); }

  TEST_CASE("sparse rank agrees with the dense oracle over F_10007") {
    compare_ranks(Field::prime(10007), oracle::PrimeField{10007}, 12);
  }

  TEST_CASE("inconsistent systems are reported") {
    FieldGuard g(Field::rationals());
    SparseMatrix m(2, 1);
    m.set(0, 0, Scalar(1));
    m.set(1, 0, Scalar(1));
    SparseVec b{{0, Scalar(1)}, {1, Scalar(2)}};
    CHECK_FALSE(solve(m, b).has_value());
  }

  TEST_CASE("rank over F_p can drop below rank over Q") {
    // [[1, 1], [1, 8]] has determinant 7.
    for (auto [field, expected] : {std::pair{Field::rationals(), 2UL}, std::pair{Field::prime(7), 1UL}}) {
      FieldGuard g(field);
      SparseMatrix m(2, 2);
      m.set(0, 0, Scalar(1));
      m.set(0, 1, Scalar(1));
      m.set(1, 0, Scalar(1));
      m.set(1, 1, Scalar(8));
      CHECK(rank(m) == expected);
    }
  }

  TEST_CASE("echelon basis is independent of insertion order") {
    FieldGuard g(Field::rationals());
    Rng rng(3);
    std::vector<SparseVec> vs;
    for (int i = 0; i < 6; ++i) {
      SparseVec v;
      for (int j = 0; j < 3; ++j) v[rng.below(8)] = rng.nonzero_scalar();
      vs.push_back(v);
    }
    vs.push_back(vs[0]);
    axpy(vs.back(), Scalar::fraction(-2, 3), vs[1]);
    EchelonBasis a(8), b(8);
    for (const auto& v : vs) a.insert(v);
    for (auto it = vs.rbegin(); it != vs.rend(); ++it) b.insert(*it);
    CHECK(a == b);
    CHECK(a.contains(vs.back()));
    SparseVec w{{7, Scalar(1)}};
    CHECK(a.reduce(w) == b.reduce(w));
  }
}
