#include <functional>

#include "doctest.h"
#include "helpers.hpp"
#include "qpkit/canonical.hpp"
#include "qpkit/families.hpp"
#include "qpkit/selfinjective.hpp"

using namespace qpkit;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvariantViolated;
}

}  // namespace

TEST_CASE("parameter errors") {
  CHECK(code_of([] { tubular_2222(0); }) == ErrorCode::BadParameter);
  CHECK(code_of([] { tubular_2222(1); }) == ErrorCode::BadParameter);
  CHECK(code_of([] { tilde_cycle_qp(5); }) == ErrorCode::BadParameter);
  CHECK(code_of([] { cycle_qp(1); }) == ErrorCode::BadParameter);
  CHECK(code_of([] { triangle_qp(1); }) == ErrorCode::BadParameter);
  CHECK(code_of([] { dynkin_edges(DynkinType::E, 9); }) == ErrorCode::BadParameter);
  CHECK(code_of([] { square_product_qp(linear_a(3), linear_a(3)); }) == ErrorCode::NotAlternating);
}

TEST_CASE("Dynkin data") {
  CHECK(coxeter_number(DynkinType::A, 4) == 5);
  CHECK(coxeter_number(DynkinType::D, 4) == 6);
  CHECK(coxeter_number(DynkinType::D, 7) == 12);
  CHECK(coxeter_number(DynkinType::E, 6) == 12);
  CHECK(coxeter_number(DynkinType::E, 7) == 18);
  CHECK(coxeter_number(DynkinType::E, 8) == 30);
  CHECK(canonical_involution(DynkinType::A, 4) == std::vector<int>{3, 2, 1, 0});
  CHECK(canonical_involution(DynkinType::D, 4) == std::vector<int>{0, 1, 2, 3});
  CHECK(canonical_involution(DynkinType::D, 5) == std::vector<int>{0, 1, 2, 4, 3});
  CHECK(dynkin_edges(DynkinType::E, 6).size() == 5);
  Quiver alt = alternating_dynkin(DynkinType::A, 5);
  CHECK(is_alternating(alt));
  CHECK(is_stable(alt, DynkinType::A, 5));
  CHECK_FALSE(is_alternating(linear_a(3)));
  CHECK_FALSE(is_stable(alternating_dynkin(DynkinType::A, 4), DynkinType::A, 4));
}

TEST_CASE("tensor and square products") {
  Quiver a3 = alternating_dynkin(DynkinType::A, 3);
  QP t = tensor_qp(a3, a3);
  CHECK(t.quiver.num_vertices() == 9);
  CHECK(t.quiver.num_arrows() == 16);
  CHECK(t.potential.size() == 8);
  CHECK(is_cut(t, tensor_cut(a3, a3)));
  QP s = square_product_qp(a3, a3);
  CHECK(s.quiver.num_arrows() == 12);
  CHECK(s.potential.size() == 4);
  CHECK(product_permutation({1, 0}, {2, 1, 0}, 3) == std::vector<int>{5, 4, 3, 2, 1, 0});
}

TEST_CASE("triangle QPs") {
  for (int s = 2; s <= 5; ++s) {
    PlanarQP p = triangle_qp(s);
    const Quiver& q = p.qp.quiver;
    CHECK(q.num_vertices() == s * (s + 1) / 2);
    CHECK(q.num_arrows() == 3 * s * (s - 1) / 2);
    CHECK(p.qp.potential.size() == static_cast<std::size_t>((s - 1) * (s - 1)));
    for (int i = 1; i <= 3; ++i) {
      auto c = triangle_type_arrows(q, i);
      CHECK(c.size() == static_cast<std::size_t>(s * (s - 1) / 2));
      CHECK(is_cut(p.qp, c));
    }
    if (s <= 4) {
      auto rep = is_selfinjective(p.qp);
      CHECK(rep.selfinjective);
      CHECK(rep.dimension == testing::graded_quotient_dim(q, jacobian_relations(p.qp), 20));
    }
  }
  CHECK_THROWS_AS(triangle_type_arrows(triangle_qp(3).qp.quiver, 4), Error);
}

TEST_CASE("square-shaped QPs") {
  auto plain = orient_square_patterns(3, {1, 1, 1, 1});
  CHECK(plain[1].opposite != plain[0].opposite);
  PlanarQP p = square_shaped_qp(3, plain);
  Quiver a3 = alternating_dynkin(DynkinType::A, 3);
  CHECK(isomorphic(p.qp, square_product_qp(a3, a3), IsoMode::Rescaling));
  CHECK(is_symmetric_square_shaped(p, 3));
  auto rec = recognize_square_shaped(p.qp.quiver, 3);
  REQUIRE(rec);
  CHECK(rec->size() == 4);

  // Orientation propagation succeeds exactly when some choice of flips is consistent.
  int orientable = 0;
  for (int code = 0; code < 81; ++code) {
    std::vector<int> pats;
    for (int k = 0, c = code; k < 4; ++k, c /= 3) pats.push_back(c % 3 + 1);
    bool exists = false;
    for (int flips = 0; flips < 16 && !exists; ++flips) {
      std::vector<SquareFace> f;
      for (int k = 0; k < 4; ++k) f.push_back({pats[k], (flips >> k & 1) != 0});
      exists = code_of([&] { square_shaped_qp(3, f); }) == ErrorCode::InvariantViolated;
    }
    std::optional<PlanarQP> built;
    try {
      built = square_shaped_qp(3, orient_square_patterns(3, pats));
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::IllegalFacePattern);
    }
    CHECK(built.has_value() == exists);
    if (!built) continue;
    ++orientable;
    CHECK(check_planar(*built).disk);
    auto back = recognize_square_shaped(built->qp.quiver, 3);
    REQUIRE(back);
    for (int k = 0; k < 4; ++k) CHECK((*back)[k].pattern == pats[k]);
  }
  CHECK(orientable > 1);

  CHECK(code_of([] { orient_square_patterns(3, {1, 4, 1, 1}); }) == ErrorCode::IllegalFacePattern);
  std::vector<SquareFace> clash{{1, false}, {1, false}, {1, false}, {1, false}};
  clash[1].opposite = true;
  CHECK(code_of([&] { square_shaped_qp(3, clash); }) == ErrorCode::IllegalFacePattern);
}

TEST_CASE("the 4x4 square-shaped example") {
  PlanarQP p = square_shaped_example();
  CHECK(p.qp.quiver.num_arrows() == 29);
  CHECK(p.qp.potential.size() == 14);
  CHECK(check_planar(p).disk);
  CHECK(recognize_square_shaped(p.qp.quiver, 4).has_value());
  // The half-turn sends the arrow (1,4)>(2,4) to (4,1)>(3,1), but the quiver has (3,1)>(4,1).
  CHECK(p.qp.quiver.find_arrow("(1,4)>(2,4)").has_value());
  CHECK(p.qp.quiver.find_arrow("(3,1)>(4,1)").has_value());
  CHECK_FALSE(p.qp.quiver.find_arrow("(4,1)>(3,1)").has_value());
  CHECK_FALSE(is_symmetric_square_shaped(p, 4));
}

TEST_CASE("cut fixtures") {
  QP e1 = cuts_example_a();
  CHECK(e1.quiver.num_vertices() == 4);
  CHECK(e1.quiver.num_arrows() == 5);
  CHECK(e1.potential_string() == "a.b.e + b.c.d");
  QP e2 = cuts_example_b();
  CHECK(e2.potential.size() == 2);
  CHECK(covering_example().num_arrows() == 3);
}
