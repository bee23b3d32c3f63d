#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "qpkit/canonical.hpp"
#include "qpkit/explorer.hpp"
#include "qpkit/families.hpp"

using namespace qpkit;

namespace {

// Replaces every cut arrow x -> y by x -> m -> y and hangs a pendant arrow off m. Only the m
// carry an arrow outside W, so cuts in one automorphism orbit give isomorphic decorated QPs
// and conversely.
QP subdivide(const QP& qp, const Cut& c) {
  std::set<int> in(c.begin(), c.end());
  QP out;
  Quiver& q = out.quiver;
  for (int v = 0; v < qp.quiver.num_vertices(); ++v) q.add_vertex(qp.quiver.vertex_id(v));
  std::vector<std::vector<int>> image(qp.quiver.num_arrows());
  for (int a = 0; a < qp.quiver.num_arrows(); ++a) {
    const Arrow& ar = qp.quiver.arrow(a);
    if (!in.count(a)) {
      image[a] = {q.add_arrow(ar.id, ar.src, ar.tgt)};
      continue;
    }
    int m = q.add_vertex("mid " + ar.id);
    q.add_arrow("tag " + ar.id, m, q.add_vertex("leaf " + ar.id));
    image[a] = {q.add_arrow(ar.id + "'", ar.src, m), q.add_arrow(ar.id + "''", m, ar.tgt)};
  }
  for (const auto& [cyc, coef] : qp.potential.terms()) {
    std::vector<int> w;
    for (int a : cyc) w.insert(w.end(), image[a].begin(), image[a].end());
    out.potential.add_term(w, coef);
  }
  return out;
}

std::size_t orbit_count(const QP& qp) {
  std::set<std::string> keys;
  for (const auto& c : enumerate_cuts(qp)) keys.insert(qp_canonical_form(subdivide(qp, c), IsoMode::Rescaling));
  return keys.size();
}

Quiver a3() { return alternating_dynkin(DynkinType::A, 3); }

}  // namespace

TEST_CASE("cut lattices of the A3 products") {
  QP tensor = tensor_qp(a3(), a3());
  QP square = square_product_qp(a3(), a3());
  auto t = cut_lattice(tensor);
  auto s = cut_lattice(square);
  CHECK(t.cuts.size() == 47);
  CHECK(s.cuts.size() == 34);
  CHECK(t.graph.nodes.size() == orbit_count(tensor));
  CHECK(s.graph.nodes.size() == orbit_count(square));
  CHECK(t.graph.nodes.size() == 14);
  CHECK(s.graph.nodes.size() == 15);
  CHECK(t.graph.connected());
  CHECK(s.graph.connected());
  CHECK(t.rawConnected);
  CHECK(s.rawConnected);
  for (const auto& e : t.graph.edges) CHECK(e.from <= e.to);
}

TEST_CASE("planar mutation lattices") {
  auto q4 = planar_mutation_lattice(triangle_qp(4));
  CHECK(q4.graph.nodes.size() == 2);
  CHECK(q4.graph.complete);
  auto sq = planar_mutation_lattice(product_embedding(square_product_qp(a3(), a3()), 3));
  CHECK(sq.graph.nodes.size() == 4);
  CHECK(sq.graph.connected());
  for (bool b : sq.selfinjective) CHECK(b);
  for (const auto& p : sq.qps) CHECK(check_planar(p).disk);
  // Nodes are pairwise non-isomorphic.
  std::set<std::string> keys;
  for (const auto& p : sq.qps) keys.insert(qp_canonical_form(p.qp));
  CHECK(keys.size() == sq.qps.size());
}

TEST_CASE("lattices do not depend on labels") {
  PlanarQP t = triangle_qp(4);
  auto base = planar_mutation_lattice(t);
  QP q = t.qp;
  std::vector<int> vp(q.quiver.num_vertices()), ap(q.quiver.num_arrows());
  for (std::size_t i = 0; i < vp.size(); ++i) vp[i] = static_cast<int>(vp.size() - 1 - i);
  for (std::size_t i = 0; i < ap.size(); ++i) ap[i] = static_cast<int>((i + 3) % ap.size());
  QP pq = permute_qp(q, vp, ap);
  PlanarQP moved{pq, RotationSystem{}};
  moved.rot.order.resize(vp.size());
  for (std::size_t v = 0; v < vp.size(); ++v)
    for (int d : t.rot.order[v]) moved.rot.order[vp[v]].push_back(dart_of(ap[dart_arrow(d)], dart_at_source(d)));
  moved.rot.outerDart = dart_of(ap[dart_arrow(t.rot.outerDart)], dart_at_source(t.rot.outerDart));
  auto other = planar_mutation_lattice(moved);
  std::set<std::string> k1, k2;
  for (const auto& n : base.graph.nodes) k1.insert(n.key);
  for (const auto& n : other.graph.nodes) k2.insert(n.key);
  CHECK(k1 == k2);
  CHECK(base.graph.edges.size() == other.graph.edges.size());

  auto c1 = cut_lattice(cycle_qp(5));
  auto c2 = cut_lattice(permute_qp(cycle_qp(5), {4, 0, 1, 2, 3}, {1, 2, 3, 4, 0}));
  CHECK(c1.graph.nodes.size() == c2.graph.nodes.size());
}

TEST_CASE("size bound") {
  auto partial = planar_mutation_lattice(triangle_qp(5), 3);
  CHECK_FALSE(partial.graph.complete);
  CHECK(partial.graph.nodes.size() <= 3);
  try {
    planar_mutation_lattice(triangle_qp(5), 3, false, true);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SizeBoundExceeded);
  }
}

TEST_CASE("graph export") {
  auto lat = cut_lattice(cycle_qp(4));
  std::string json = export_json(lat.graph);
  CHECK(parse_lattice_json(json) == lat.graph);
  std::string dot = export_dot(lat.graph);
  CHECK(dot.rfind("graph lattice {", 0) == 0);
  CHECK(std::count(dot.begin(), dot.end(), '\n') >= static_cast<long>(lat.graph.nodes.size()));

  LatticeGraph empty;
  empty.kind = "cut";
  CHECK(export_dot(empty).find("--") == std::string::npos);
  CHECK(parse_lattice_json(export_json(empty)) == empty);
  CHECK(empty.connected());
  CHECK_THROWS_AS(parse_lattice_json(R"({"kind":"cut","seed":"","complete":true,"nodes":[],"edges":[{"from":0,"to":1,"label":""}]})"), Error);
}

TEST_CASE("transitivity report") {
  auto r = transitivity_report(cycle_qp(4));
  CHECK(r.selfinjective);
  CHECK(r.hypothesesMet);
  CHECK(r.allConnected);
  CHECK(r.cuts == 4);
  CHECK(r.chains.size() == 6);
  QP q4 = cycle_qp(4);
  auto cuts = enumerate_cuts(q4);
  for (const auto& ch : r.chains) {
    Cut c = cuts[ch.from];
    for (const auto& st : ch.steps) c = st.plus ? cut_mutate_plus(q4.quiver, c, st.vertex) : cut_mutate_minus(q4.quiver, c, st.vertex);
    std::sort(c.begin(), c.end());
    CHECK(c == cuts[ch.to]);
  }
  CHECK(r.to_json(q4, cuts).find("\"move\"") != std::string::npos);
  auto bad = transitivity_report(cuts_example_b());
  CHECK_FALSE(bad.hypothesesMet);
}
