#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "qpkit/covering.hpp"
#include "qpkit/families.hpp"

using namespace qpkit;
using testing::cut;

TEST_CASE("covering window of the small example") {
  Quiver q = covering_example();
  Cut b = cut(q, {"b"});
  auto w = build_covering_window(q, b, 0, 2);
  CHECK(w.quiver.num_vertices() == 9);
  // a and c stay on their level (3 lifts each); b drops one level (2 lifts inside).
  CHECK(w.quiver.num_arrows() == 8);
  CHECK(w.incomplete == std::vector<std::string>{"(b,0)"});
  for (int a = 0; a < w.quiver.num_arrows(); ++a) {
    const Arrow& lifted = w.quiver.arrow(a);
    const Arrow& base = q.arrow(w.baseArrow[a]);
    CHECK(lifted.src % 3 == base.src);
    CHECK(lifted.tgt % 3 == base.tgt);
    CHECK(lifted.src / 3 - lifted.tgt / 3 == grading(q, b)[w.baseArrow[a]]);
  }
  CHECK(w.to_dot().find("\"(1,0)\" -> \"(2,0)\"") != std::string::npos);
  CHECK_THROWS_AS(build_covering_window(q, b, 2, 1), Error);
}

TEST_CASE("lifting walks") {
  Quiver q = covering_example();
  Cut b = cut(q, {"b"});
  int a = q.arrow_index("a"), bb = q.arrow_index("b");
  auto p = lift_walk(q, b, {{a, false}, {bb, true}}, q.vertex_index("1"), 0);
  CHECK(p.vertex == q.vertex_index("1"));
  CHECK(p.level == 1);
  CHECK_THROWS_AS(lift_walk(q, b, {{bb, true}}, q.vertex_index("1"), 0), Error);
}

TEST_CASE("slices of the small example") {
  Quiver q = covering_example();
  Cut b = cut(q, {"b"});
  auto slices = enumerate_slices(q, b);
  REQUIRE(slices.size() == 2);
  CHECK(slices[0] == HeightFunction{0, 0, 0});
  CHECK(slices[1] == HeightFunction{0, 0, 1});
  CHECK(slice_to_cut(q, b, slices[0]) == b);
  CHECK(slice_to_cut(q, b, slices[1]) == cut(q, {"b", "c"}));
  CHECK(cut_to_slice(q, b, cut(q, {"b", "c"})) == slices[1]);
  CHECK_FALSE(is_slice(q, b, {0, 0, 2}));
}

namespace {

// Brute force over bounded height functions, modulo a constant shift.
std::set<HeightFunction> brute_slices(const Quiver& q, const Cut& c, int range) {
  std::set<HeightFunction> out;
  int n = q.num_vertices();
  HeightFunction t(n, 0);
  auto rec = [&](auto&& self, int v) -> void {
    if (v == n) {
      if (is_slice(q, c, t)) out.insert(normalize_height(q, t));
      return;
    }
    for (int x = 0; x <= range; ++x) {
      t[v] = x;
      self(self, v + 1);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace

TEST_CASE("slice enumeration against brute force") {
  for (const QP& qp : {cycle_qp(4), cycle_qp(5), cuts_example_a(), tubular_2222(2), triangle_qp(3).qp}) {
    const Quiver& q = qp.quiver;
    for (const auto& c : enumerate_cuts(qp)) {
      auto slices = enumerate_slices(q, c);
      CHECK(std::set<HeightFunction>(slices.begin(), slices.end()) == brute_slices(q, c, q.num_vertices()));
      CHECK(slices.size() == compatibility_class(q, c).size());
    }
  }
}

TEST_CASE("slice mutation matches cut mutation") {
  for (const QP& qp : {cycle_qp(5), triangle_qp(3).qp, cuts_example_a()}) {
    const Quiver& q = qp.quiver;
    Cut c = enumerate_cuts(qp).front();
    for (const auto& t : enumerate_slices(q, c)) {
      Cut d = slice_to_cut(q, c, t);
      for (int x : strict_sources(q, d)) {
        auto up = slice_mutate_plus(q, c, t, x);
        CHECK(slice_to_cut(q, c, up) == cut_mutate_plus(q, d, x));
        CHECK(slice_mutate_minus(q, c, up, x) == t);
      }
      for (int x = 0; x < q.num_vertices(); ++x)
        if (!is_strict_source(q, d, x)) CHECK_THROWS_AS(slice_mutate_plus(q, c, t, x), Error);
    }
  }
}

TEST_CASE("plus mutation lowers the volume") {
  QP q5 = cycle_qp(5);
  const Quiver& q = q5.quiver;
  Cut c = cut(q, {"a1"});
  HeightFunction t = cut_to_slice(q, c, c);
  // Walk down with plus moves until the class is exhausted; the volume of
  // unnormalized heights drops by one per move.
  HeightFunction raw = t;
  for (int step = 0; step < 4; ++step) {
    Cut d = slice_to_cut(q, c, normalize_height(q, raw));
    auto src = strict_sources(q, d);
    REQUIRE_FALSE(src.empty());
    HeightFunction next = raw;
    --next[src.front()];
    CHECK(volume(next) == volume(raw) - 1);
    CHECK(normalize_height(q, next) == slice_mutate_plus(q, c, normalize_height(q, raw), src.front()));
    raw = next;
  }
}

TEST_CASE("reachability under cut mutation") {
  QP q4 = cycle_qp(4);
  auto r = cut_mutation_reachability(q4, cut(q4.quiver, {"a1"}));
  CHECK(r.cuts.size() == 4);
  CHECK(r.connected());
  CHECK(r.theoremApplies);
  for (const auto& m : r.moves) CHECK(r.component[m.from] == r.component[m.to]);
}
