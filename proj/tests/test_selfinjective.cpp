#include "doctest.h"
#include "helpers.hpp"
#include "qpkit/canonical.hpp"
#include "qpkit/families.hpp"
#include "qpkit/resolution.hpp"
#include "qpkit/selfinjective.hpp"

using namespace qpkit;

TEST_CASE("cycles are selfinjective with sigma a rotation by two") {
  for (int n = 3; n <= 7; ++n) {
    auto rep = is_selfinjective(cycle_qp(n));
    REQUIRE(rep.selfinjective);
    for (int i = 0; i < n; ++i) CHECK((*rep.nakayama)[i] == (i + 2) % n);
  }
}

TEST_CASE("the second cut example is not selfinjective") {
  auto rep = is_selfinjective(cuts_example_b());
  CHECK(rep.finiteDimensional);
  CHECK_FALSE(rep.selfinjective);
  CHECK_FALSE(rep.nakayama.has_value());
  bool someDefect = false;
  for (auto d : rep.defects) someDefect = someDefect || d > 0;
  CHECK(someDefect);
}

TEST_CASE("tubular QP has identity Nakayama permutation") {
  for (const Rational& l : {Rational(2), Rational(-1), Rational(1, 3)}) {
    auto rep = is_selfinjective(tubular_2222(l));
    REQUIRE(rep.selfinjective);
    for (std::size_t i = 0; i < rep.nakayama->size(); ++i) CHECK((*rep.nakayama)[i] == static_cast<int>(i));
  }
}

TEST_CASE("square product A3 x A3 has sigma (i,j) -> (4-i,4-j)") {
  auto rep = is_selfinjective(square_product_qp(alternating_dynkin(DynkinType::A, 3), alternating_dynkin(DynkinType::A, 3)));
  REQUIRE(rep.selfinjective);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK((*rep.nakayama)[i * 3 + j] == (2 - i) * 3 + (2 - j));
}

TEST_CASE("an arrow outside the potential breaks exactness") {
  QP q{linear_a(3), Potential{}};
  auto rep = is_selfinjective(q);
  CHECK(rep.finiteDimensional);
  CHECK_FALSE(rep.selfinjective);
  CHECK(rep.dimension == 6);
}

TEST_CASE("socle oracle agrees with the exactness verdict") {
  std::vector<QP> list{cycle_qp(4), cycle_qp(6), cuts_example_a(), cuts_example_b(), tubular_2222(2),
                       triangle_qp(3).qp, tilde_cycle_qp(4)};
  for (const QP& qp : list) {
    auto res = jacobian_algebra(qp);
    REQUIRE(res.determined());
    auto rep = is_selfinjective(qp, *res.algebra);
    CHECK(socle_oracle(*res.algebra) == rep.selfinjective);
    bool dual = true;
    for (int i = 0; i < qp.quiver.num_vertices(); ++i) dual = dual && dual_exactness_defect(*res.algebra, qp, i) == 0;
    CHECK(dual == rep.selfinjective);
  }
}

TEST_CASE("socle of a projective of the 4-cycle is one dimensional") {
  auto res = jacobian_algebra(cycle_qp(4));
  REQUIRE(res.determined());
  for (int j = 0; j < 4; ++j) CHECK(socle(*res.algebra, j).size() == 1);
}

TEST_CASE("QP of an algebra") {
  Quiver a3 = linear_a(3);
  std::vector<AlgebraElement> rel{testing::word(a3, {a3.arrow(0).id, a3.arrow(1).id})};
  auto qc = qp_of_algebra(a3, rel);
  CHECK(qc.cut.size() == 1);
  CHECK(isomorphic(qc.qp, cycle_qp(3), IsoMode::Rescaling));
  CHECK(is_2rf(a3, rel));
  CHECK_FALSE(is_2rf(a3, {}));
}

TEST_CASE("global dimension of truncated algebras") {
  QP e1 = cuts_example_a();
  auto res = truncated_jacobian(e1, testing::cut(e1.quiver, {"a", "c"}));
  REQUIRE(res.determined());
  CHECK(global_dimension(*res.algebra, 5) == 3);
  auto ok = truncated_jacobian(e1, testing::cut(e1.quiver, {"b"}));
  REQUIRE(ok.determined());
  CHECK(global_dimension_le(*ok.algebra, 2));
  // KA_n is hereditary.
  auto h = presented_algebra(linear_a(4), {});
  REQUIRE(h.determined());
  CHECK(global_dimension(*h.algebra, 4) == 1);
}
