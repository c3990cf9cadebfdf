#include "doctest.h"

#include "gerst/algebra.hpp"
#include "gerst/json_io.hpp"
#include "gerst/random.hpp"

using namespace gerst;

namespace {

Vec basis(const Algebra& a, std::size_t i) { return a.basis_vector(i); }

Vec combo(std::initializer_list<std::pair<std::size_t, Scalar>> terms, std::size_t dim) {
  Vec v(dim, Scalar(0));
  for (const auto& [i, s] : terms) v[i] += s;
  return v;
}

Vec sum(Vec a, const Vec& b, const Scalar& s = Scalar(1)) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
  return a;
}

}  // namespace

TEST_SUITE("assoc-algebra") {
  TEST_CASE("matrix units multiply as expected") {
    const Algebra m = make_matrix_algebra(2, make_ground_field());
    REQUIRE(m.dim() == 4);
    CHECK(m.multiply(basis(m, 0), basis(m, 1)) == basis(m, 1));  // E11 E12 = E12
    CHECK(m.multiply(basis(m, 1), basis(m, 0)) == Vec(4, Scalar(0)));
    CHECK(m.unit() == combo({{0, 1}, {3, 1}}, 4));
  }

  TEST_CASE("Mat_1 of an algebra is the algebra") {
    const Algebra dual = make_truncated_polynomial_algebra(2);
    const Algebra m = make_matrix_algebra(1, dual);
    CHECK(m.dim() == dual.dim());
    for (std::size_t i = 0; i < dual.dim(); ++i)
      for (std::size_t j = 0; j < dual.dim(); ++j) CHECK(m.product(i, j) == dual.product(i, j));
  }

  TEST_CASE("polynomial model enforces the weight cap") {
    const Algebra p = make_polynomial_algebra(1, 2);
    REQUIRE(p.dim() == 3);
    CHECK(p.multiply(basis(p, 1), basis(p, 1)) == basis(p, 2));
    CHECK(p.multiply(basis(p, 1), basis(p, 0)) == basis(p, 1));
    const Algebra q = make_polynomial_algebra(2, 1);
    CHECK_THROWS_AS(q.product(1, 2), WeightOverflow);
  }

  TEST_CASE("graded matrix algebra over k[x]") {
    const Algebra m = make_matrix_algebra(2, make_polynomial_algebra(1, 2));
    const SubspaceBasis z = center(m);
    CHECK(z.graded_dims(m) == std::vector<std::size_t>{1, 1, 1});
    CHECK(commutator_submodule(m).graded_dims(m) == std::vector<std::size_t>{3, 3, 3});
    const Algebra m1 = make_matrix_algebra(2, make_polynomial_algebra(1, 1));
    CHECK(commutator_submodule(m1).graded_dims(m1) == std::vector<std::size_t>{3, 3});
  }

  TEST_CASE("center and commutators of Mat_2") {
    const Algebra m = make_matrix_algebra(2, make_ground_field());
    const SubspaceBasis z = center(m);
    CHECK(z.dim() == 1);
    CHECK(z.contains(m.unit()));
    const SubspaceBasis c = commutator_submodule(m);
    CHECK(c.dim() == 3);
    CHECK(c.contains(combo({{0, 1}, {3, -1}}, 4)));
    CHECK_FALSE(c.contains(m.unit()));
  }

  TEST_CASE("commutative algebras") {
    const Algebra p = make_polynomial_algebra(2, 2);
    CHECK(center(p).dim() == p.dim());
    CHECK(commutator_submodule(p).dim() == 0);
  }

  TEST_CASE("decomposition into center and traceless part") {
    const Algebra m = make_matrix_algebra(2, make_ground_field());
    const Scalar half = Scalar::fraction(1, 2);
    const Decomposition d = decompose(m, basis(m, 0));
    CHECK(d.central == combo({{0, half}, {3, half}}, 4));
    CHECK(d.traceless == combo({{0, half}, {3, -half}}, 4));
    const Decomposition id = decompose(m, m.unit());
    CHECK(id.central == m.unit());
    CHECK(id.traceless == Vec(4, Scalar(0)));
    const Decomposition off = decompose(m, basis(m, 1));
    CHECK(off.central == Vec(4, Scalar(0)));
  }

  TEST_CASE("inner derivations") {
    const Algebra m = make_matrix_algebra(2, make_ground_field());
    CHECK(rank(derivation_ad(m, m.unit())) == 0);
    CHECK(derivation_ad(m, basis(m, 1)).apply(basis(m, 2)) == combo({{0, 1}, {3, -1}}, 4));
    CHECK(ad_rank_on(m, commutator_submodule(m)) == 3);
    CHECK(derivation_space_dim(m) == 3);
  }

  TEST_CASE("ad is a Lie algebra map and its kernel is the center") {
    const Algebra m = make_matrix_algebra(2, make_truncated_polynomial_algebra(2));
    for (std::size_t i = 0; i < m.dim(); ++i)
      for (std::size_t j = 0; j < m.dim(); ++j) {
        const SparseMatrix lhs = derivation_ad(m, m.commutator(basis(m, i), basis(m, j)));
        const SparseMatrix ai = derivation_ad(m, basis(m, i)), aj = derivation_ad(m, basis(m, j));
        CHECK(lhs == ai * aj - aj * ai);
      }
    const SubspaceBasis z = center(m);
    for (const auto& v : z.vectors()) CHECK(rank(derivation_ad(m, v)) == 0);
    // dim ker(a -> ad a) = dim Z: stack the ad matrices column-wise.
    SparseMatrix stacked(m.dim() * m.dim(), m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) {
      const SparseMatrix ad = derivation_ad(m, basis(m, i));
      for (std::size_t r = 0; r < m.dim(); ++r)
        for (std::size_t c = 0; c < m.dim(); ++c) stacked.set(r * m.dim() + c, i, ad.get(r, c));
    }
    const std::size_t kernel = m.dim() - rank(stacked);
    CHECK(kernel == z.dim());
    CHECK(z.dim() + commutator_submodule(m).dim() == m.dim());
  }

  TEST_CASE("center plus traceless part recomposes random elements") {
    const Algebra m = make_matrix_algebra(2, make_polynomial_algebra(1, 2));
    Rng rng(4);
    for (int t = 0; t < 10; ++t) {
      Vec v(m.dim(), Scalar(0));
      for (int k = 0; k < 4; ++k) v[rng.below(m.dim())] = rng.nonzero_scalar();
      const Decomposition d = decompose(m, v);
      CHECK(sum(d.central, d.traceless) == v);
      CHECK(center(m).contains(d.central));
      CHECK(commutator_submodule(m).contains(d.traceless));
    }
  }

  TEST_CASE("construction rejects non-associative tables") {
    const Vec unit{Scalar(1), Scalar(0)};
    std::vector<TableEntry> table{{0, 0, 0, Scalar(1)}, {0, 1, 1, Scalar(1)}, {1, 0, 1, Scalar(1)}, {1, 1, 0, Scalar(1)}};
    CHECK_NOTHROW(Algebra::from_table({"1", "x"}, unit, table));
    // x x = 1 + x: still associative since commutative and two-dimensional.
    table.push_back({1, 1, 1, Scalar(1)});
    CHECK_NOTHROW(Algebra::from_table({"1", "x"}, unit, table));
    // Unit axiom broken.
    CHECK_THROWS_AS(Algebra::from_table({"1", "x"}, unit, {{0, 0, 0, Scalar(1)}}), AlgebraError);
    // Three-dimensional table with e1 e2 = e1 and e2 e1 = 0 but e1 e1 = e2 is not associative.
    const Vec unit3{Scalar(1), Scalar(0), Scalar(0)};
    std::vector<TableEntry> bad{{0, 0, 0, 1}, {0, 1, 1, 1}, {0, 2, 2, 1}, {1, 0, 1, 1}, {2, 0, 2, 1},
                                {1, 2, 1, 1}, {1, 1, 2, 1}};
    CHECK_THROWS_AS(Algebra::from_table({"1", "a", "b"}, unit3, bad), AlgebraError);
  }

  TEST_CASE("JSON round trip is bit exact") {
    for (const Algebra& a : {make_ground_field(), make_matrix_algebra(2, make_truncated_polynomial_algebra(2)),
                             make_polynomial_algebra(2, 3, {"x", "p"})}) {
      const Json j = algebra_to_json(a);
      const Algebra b = algebra_from_json(j);
      CHECK(b == a);
      CHECK(algebra_to_json(b).dump() == j.dump());
      CHECK(algebra_from_json(parse_json(j.dump(2))) == a);
    }
  }

  TEST_CASE("malformed algebra JSON reports a location") {
    Json j = algebra_to_json(make_truncated_polynomial_algebra(2));
    j["table"][0][2] = 7;
    try {
      algebra_from_json(j);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("/table/0/2") != std::string::npos);
    }
    try {
      parse_json("{\"dim\": 2,\n \"basis\": [}");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }

  TEST_CASE("unit adapted basis") {
    const Algebra m = make_matrix_algebra(2, make_ground_field());
    CHECK_FALSE(m.unit_index().has_value());
    const Algebra u = unit_adapted(m);
    REQUIRE(u.unit_index().has_value());
    CHECK(center(u).dim() == 1);
  }
}
