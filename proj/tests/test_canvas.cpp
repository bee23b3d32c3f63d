#include "doctest.h"
#include "helpers.hpp"
#include "qpkit/canvas.hpp"
#include "qpkit/families.hpp"

using namespace qpkit;

namespace {

void check_shape(const QP& qp, int v, int e, int f) {
  Canvas c = build_canvas(qp);
  CHECK(c.vertices == v);
  CHECK(static_cast<int>(c.edges.size()) == e);
  CHECK(static_cast<int>(c.cells.size()) == f);
  CHECK(euler_characteristic(c) == v - e + f);
}

}  // namespace

TEST_CASE("canvas shapes") {
  check_shape(cycle_qp(4), 4, 4, 1);
  check_shape(tubular_2222(2), 6, 10, 6);
  check_shape(tensor_qp(alternating_dynkin(DynkinType::A, 3), alternating_dynkin(DynkinType::A, 3)), 9, 16, 8);
}

TEST_CASE("homology of small canvases") {
  CHECK(homology_h1(build_canvas(cycle_qp(4))).trivial());
  QP circle = cycle_qp(4);
  circle.potential = Potential{};
  auto h = homology_h1(build_canvas(circle));
  CHECK(h.rank == 1);
  CHECK(h.torsion.empty());
  CHECK(is_simply_connected(circle).verdict == Verdict::No);

  // One loop with W = aa glues a disk along a doubled circle: the projective plane.
  QP rp2 = make_qp({"1"}, {{"a", "1", "1"}}, {{1, {"a", "a"}}});
  auto t = homology_h1(build_canvas(rp2));
  CHECK(t.rank == 0);
  REQUIRE(t.torsion.size() == 1);
  CHECK(t.torsion[0] == 2);
  CHECK(is_simply_connected(rp2).verdict == Verdict::No);
}

TEST_CASE("abelianized fundamental group equals H1") {
  QP circle = cycle_qp(5);
  circle.potential = Potential{};
  QP rp2 = make_qp({"1"}, {{"a", "1", "1"}}, {{1, {"a", "a"}}});
  for (const QP& qp : {cycle_qp(4), circle, rp2, tubular_2222(2), cuts_example_a(), cuts_example_b(), triangle_qp(3).qp}) {
    Canvas c = build_canvas(qp);
    auto h = homology_h1(c);
    auto p = pi1_presentation(c);
    auto a = abelianize(p);
    CHECK(a.rank == h.rank);
    CHECK(a.torsion == h.torsion);
    auto s = abelianize(tietze_simplify(p));
    CHECK(s.rank == h.rank);
    CHECK(s.torsion == h.torsion);
  }
}

TEST_CASE("simple connectivity verdicts") {
  CHECK(is_simply_connected(cycle_qp(4)).verdict == Verdict::Yes);
  CHECK(is_simply_connected(tubular_2222(2)).verdict == Verdict::Yes);
  PlanarQP t = triangle_qp(4);
  CHECK(is_simply_connected(t.qp, &t.rot).verdict == Verdict::Yes);
  QP two{linear_a(2), Potential{}};
  two.quiver.add_vertex("x");
  CHECK_THROWS_AS(pi1_presentation(build_canvas(two)), Error);
}

TEST_CASE("triangle embeddings are disks whose faces are the potential") {
  for (int s = 2; s <= 5; ++s) {
    PlanarQP p = triangle_qp(s);
    auto cert = check_planar(p);
    CHECK(cert.planar);
    CHECK(cert.facesMatchCells);
    CHECK(cert.disk);
    CHECK(faces_and_potential(p.qp.quiver, p.rot) == p.qp.potential);
    CHECK(p.qp.potential.size() == static_cast<std::size_t>((s - 1) * (s - 1)));
    CHECK(euler_characteristic(build_canvas(p.qp)) == 1);
    int boundary = 0;
    for (int v = 0; v < p.qp.quiver.num_vertices(); ++v) boundary += on_boundary(p, v);
    CHECK(boundary == 3 * (s - 1));
  }
}

TEST_CASE("faces of a hand-made embedding") {
  Quiver q;
  for (auto id : {"1", "2", "3"}) q.add_vertex(id);
  q.add_arrow("a", 0, 1);
  q.add_arrow("b", 1, 2);
  q.add_arrow("c", 2, 0);
  PlanarQP p = planar_from_coordinates(q, {{0, 0}, {2, 0}, {1, 1}});
  auto faces = trace_faces(q, p.rot);
  REQUIRE(faces.size() == 2);
  int outer = 0;
  for (const auto& f : faces) outer += f.outer;
  CHECK(outer == 1);
  CHECK(p.qp.potential.size() == 1);
  CHECK(p.qp.potential.coef({0, 1, 2}) == 1);
  CHECK(satisfies_euler(q, p.rot));
}

TEST_CASE("planar JSON") {
  PlanarQP p = triangle_qp(3);
  PlanarQP back = parse_planar(serialize_planar(p));
  CHECK(back.qp.quiver == p.qp.quiver);
  CHECK(back.qp.potential == p.qp.potential);
  CHECK(back.rot.order == p.rot.order);
  CHECK(back.rot.outerDart == p.rot.outerDart);
  try {
    parse_planar(serialize_qp(p.qp));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedJson);
  }
  CHECK_THROWS_AS(parse_planar("[1,2"), Error);
}

TEST_CASE("embedding errors") {
  Quiver q;
  for (auto id : {"1", "2", "3"}) q.add_vertex(id);
  q.add_arrow("a", 0, 1);
  q.add_arrow("b", 0, 2);
  try {
    planar_from_coordinates(q, {{0, 0}, {1, 0}, {2, 0}});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPlanar);
  }
  PlanarQP t = triangle_qp(3);
  t.qp.potential = Potential{};
  try {
    validate_planar(t);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmbeddingMismatch);
  }
}
