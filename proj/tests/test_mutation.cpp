#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "qpkit/canonical.hpp"
#include "qpkit/families.hpp"
#include "qpkit/mutation.hpp"
#include "qpkit/selfinjective.hpp"

using namespace qpkit;

namespace {

bool has_two_cycle(const Quiver& q) {
  for (const auto& a : q.arrows())
    for (const auto& b : q.arrows())
      if (a.src == b.tgt && a.tgt == b.src) return true;
  return false;
}

}  // namespace

TEST_CASE("premutation adds composites and reverses arrows at k") {
  QP e1 = cuts_example_a();
  int k = e1.quiver.vertex_index("2");  // in: a, d; out: b
  PremutationMap map;
  QP pre = premutate(e1, k, &map);
  CHECK(pre.quiver.num_arrows() == e1.quiver.num_arrows() + 2);
  CHECK(map.composite.size() == 2);
  for (int a : e1.quiver.in_arrows(k)) CHECK(pre.quiver.arrow(map.arrowImage[a]).src == k);
  for (int b : e1.quiver.out_arrows(k)) CHECK(pre.quiver.arrow(map.arrowImage[b]).tgt == k);
  // Each composite [ab] closes a triangle with b* and a* in the new potential.
  CHECK(pre.potential.size() == e1.potential.size() + 2);
  CHECK_NOTHROW(pre.validate());
}

TEST_CASE("mutation at a vertex on a 2-cycle is refused") {
  QP qp = make_qp({"1", "2"}, {{"a", "1", "2"}, {"b", "2", "1"}}, {{1, {"a", "b"}}});
  try {
    mutate(qp, 0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TwoCycleAtVertex);
  }
}

TEST_CASE("reduction splits off the trivial part") {
  QP qp = make_qp({"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "1"}, {"c", "2", "3"}, {"d", "3", "1"}},
                  {{1, {"a", "b"}}, {1, {"a", "c", "d"}}});
  auto r = reduce_qp(qp);
  CHECK(r.trivialPartRank == 1);
  CHECK(r.qp.quiver.num_arrows() == 2);
  CHECK_FALSE(has_two_cycle(r.qp.quiver));
}

TEST_CASE("tilde cycles mutate to cycles") {
  for (int n : {4, 6, 8}) {
    QP qp = tilde_cycle_qp(n);
    auto first = mutate(qp, qp.quiver.vertex_index("2"));
    CHECK_FALSE(has_two_cycle(first.qp.quiver));
    qp = first.qp;
    for (int v = 4; v <= n; v += 2) qp = mutate(qp, qp.quiver.vertex_index(std::to_string(v))).qp;
    CHECK(isomorphic(qp, cycle_qp(n), IsoMode::Rescaling));
  }
}

TEST_CASE("tubular mutation at A") {
  QP t = tubular_2222(2);
  QP m = mutate(t, t.quiver.vertex_index("A")).qp;
  CHECK(m.quiver.num_arrows() == 9);
  auto w = find_right_equivalence(m, tubular_2222_mutated(2), 2);
  CHECK(w.has_value());
  CHECK_FALSE(find_right_equivalence(m, tubular_2222_mutated(3), 2).has_value());
  CHECK(is_selfinjective(m).selfinjective);
}

TEST_CASE("mutation is an involution on reduced QPs") {
  for (const QP& qp : {cycle_qp(5), triangle_qp(3).qp, cuts_example_a()}) {
    for (int k = 0; k < qp.quiver.num_vertices(); ++k) {
      if (on_two_cycle(qp.quiver, k)) continue;
      QP once = mutate(qp, k).qp;
      QP twice = mutate(once, k).qp;
      CHECK((isomorphic(twice, qp, IsoMode::Rescaling) || find_right_equivalence(twice, qp, 2)));
    }
  }
}

TEST_CASE("mutation preserves selfinjectivity") {
  QP t = triangle_qp(3).qp;
  auto rep = is_selfinjective(t);
  REQUIRE(rep.selfinjective);
  std::set<int> seen;
  for (int k = 0; k < t.quiver.num_vertices(); ++k) {
    auto orbit = orbit_of(*rep.nakayama, k);
    if (seen.count(orbit.front())) continue;
    seen.insert(orbit.begin(), orbit.end());
    try {
      QP m = orbit_mutate(t, *rep.nakayama, k).qp;
      CHECK(is_selfinjective(m).selfinjective);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::OrbitPreconditionViolated);
    }
  }
}

TEST_CASE("orbit mutation precondition") {
  QP q4 = cycle_qp(4);
  std::vector<int> shift{1, 2, 3, 0};
  CHECK_THROWS_AS(orbit_mutate(q4, shift, 0), Error);
  CHECK(orbit_of({2, 3, 0, 1}, 1) == std::vector<int>{1, 3});
  // The cycle's own sigma pairs opposite vertices, which are not adjacent.
  auto m = orbit_mutate(q4, {2, 3, 0, 1}, 0);
  CHECK(is_selfinjective(m.qp).selfinjective);
}

TEST_CASE("planar mutation agrees with mutation") {
  PlanarQP t = triangle_qp(4);
  int done = 0;
  for (int k = 0; k < t.qp.quiver.num_vertices(); ++k) {
    if (!planar_mutable(t, k)) {
      CHECK_THROWS_AS(planar_mutate(t, k), Error);
      continue;
    }
    PlanarQP m = planar_mutate(t, k);
    CHECK(check_planar(m).disk);
    QP dwz = mutate(t.qp, k).qp;
    CHECK((isomorphic(dwz, m.qp, IsoMode::Rescaling) || find_right_equivalence(dwz, m.qp, 2)));
    PlanarQP back = planar_mutate(m, k);
    CHECK(isomorphic(back.qp, t.qp, IsoMode::Rescaling));
    ++done;
  }
  CHECK(done > 0);
}
