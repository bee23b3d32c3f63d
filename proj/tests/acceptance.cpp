// Acceptance checks. Prints one PASS/FAIL line per criterion; exit status 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include "qpkit/algebra.hpp"
#include "qpkit/canonical.hpp"
#include "qpkit/canvas.hpp"
#include "qpkit/covering.hpp"
#include "qpkit/cuts.hpp"
#include "qpkit/explorer.hpp"
#include "qpkit/families.hpp"
#include "qpkit/mutation.hpp"
#include "qpkit/selfinjective.hpp"

using namespace qpkit;

namespace {

// Time limits in seconds, one per criterion.
constexpr double kLimit[13] = {0, 1, 1, 5, 5, 60, 30, 120, 600, 10, 300, 120, 10};

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      note << what << "; ";
    }
  }
};

Quiver alt(DynkinType t, int n) { return alternating_dynkin(t, n); }

// Paths in q avoiding every word of `zero` as a subword, counted up to a length where none survive.
std::size_t monomial_quotient_dim(const Quiver& q, const std::vector<std::vector<int>>& zero, std::size_t maxLen) {
  std::size_t count = q.num_vertices();
  std::vector<std::vector<int>> layer;
  for (int a = 0; a < q.num_arrows(); ++a) layer.push_back({a});
  auto dead = [&](const std::vector<int>& w) {
    for (const auto& z : zero)
      if (w.size() >= z.size() && std::equal(z.begin(), z.end(), w.end() - z.size())) return true;
    return false;
  };
  for (std::size_t len = 1; len <= maxLen && !layer.empty(); ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& w : layer) {
      if (dead(w)) continue;
      ++count;
      for (int b : q.out_arrows(q.arrow(w.back()).tgt)) {
        auto x = w;
        x.push_back(b);
        next.push_back(std::move(x));
      }
    }
    layer = std::move(next);
  }
  return count;
}

bool same_qp(const QP& x, const QP& y) {
  return isomorphic(x, y, IsoMode::Rescaling) || find_right_equivalence(x, y, 2).has_value();
}

// 1. Example (a) census.
void c1(Outcome& o) {
  QP e1 = cuts_example_a();
  auto cuts = enumerate_cuts(e1);
  o.require(cuts.size() == 5, "E1 has " + std::to_string(cuts.size()) + " cuts");
  int alg = 0;
  for (const auto& c : cuts) alg += is_algebraic_cut(e1, c).algebraic;
  o.require(alg == 3, "E1 has " + std::to_string(alg) + " algebraic cuts");
  o.note << "cuts=" << cuts.size() << " algebraic=" << alg << "; ";
}

// 2. Example (b) census.
void c2(Outcome& o) {
  QP e2 = cuts_example_b();
  auto cuts = enumerate_cuts(e2);
  o.require(cuts.size() == 3, "E2 has " + std::to_string(cuts.size()) + " cuts");
  Cut cd = cut_from_ids(e2.quiver, {"c", "d"});
  std::sort(cd.begin(), cd.end());
  o.require(std::find(cuts.begin(), cuts.end(), cd) != cuts.end(), "{c,d} is not a cut");
  auto rep = is_algebraic_cut(e2, cd);
  o.require(!rep.algebraic && !rep.minimal, "{c,d} not rejected for minimality");
  o.require(rep.diagnostic.find("minimal") != std::string::npos, "diagnostic lacks the minimality reason");
  o.note << "cuts=" << cuts.size() << " {c,d}: " << rep.diagnostic << "; ";
}

// 3. Cycle family.
void c3(Outcome& o) {
  for (int n = 4; n <= 7; ++n) {
    QP qp = cycle_qp(n);
    std::vector<std::vector<int>> zero;
    for (const auto& [cyc, coef] : qp.potential.terms())
      for (std::size_t r = 0; r < cyc.size(); ++r) {
        std::vector<int> w;
        for (std::size_t k = 1; k < cyc.size(); ++k) w.push_back(cyc[(r + k) % cyc.size()]);
        zero.push_back(w);
      }
    std::size_t oracle = monomial_quotient_dim(qp.quiver, zero, 4 * n);
    auto rep = is_selfinjective(qp);
    std::string tag = "n=" + std::to_string(n);
    o.require(rep.selfinjective, tag + " not selfinjective");
    o.require(rep.dimension == static_cast<std::size_t>(n * (n - 1)), tag + " dim " + std::to_string(rep.dimension));
    o.require(oracle == rep.dimension, tag + " oracle dim " + std::to_string(oracle));
    bool plus = rep.nakayama.has_value(), minus = rep.nakayama.has_value();
    if (rep.nakayama)
      for (int i = 0; i < n; ++i) {
        plus = plus && (*rep.nakayama)[i] == (i + 2) % n;
        minus = minus && (*rep.nakayama)[i] == (i + n - 2) % n;
      }
    o.require(plus || minus, tag + " Nakayama is not a rotation by 2");
    if (n == 4) o.note << "sigma convention: " << (plus ? "i->i+2" : "i->i-2") << "; ";
  }
}

// 4. Mutating the tilde cycles at even vertices.
void c4(Outcome& o) {
  for (int n : {4, 6}) {
    QP qp = tilde_cycle_qp(n);
    for (int v = 2; v <= n; v += 2) qp = mutate(qp, *qp.quiver.find_vertex(std::to_string(v))).qp;
    bool iso = qp_canonical_form(qp, IsoMode::Rescaling) == qp_canonical_form(cycle_qp(n), IsoMode::Rescaling);
    o.require(iso, "n=" + std::to_string(n) + " result not isomorphic to the cycle QP");
  }
}

// 5. Tensor and square products.
void c5(Outcome& o) {
  struct Case {
    std::string name;
    QP qp;
    std::optional<std::vector<int>> sigma;
  };
  std::vector<Case> cases;
  auto omega2 = [](DynkinType t1, int n1, DynkinType t2, int n2) {
    return product_permutation(canonical_involution(t1, n1), canonical_involution(t2, n2), n2);
  };
  using D = DynkinType;
  cases.push_back({"A3(x)A3", tensor_qp(alt(D::A, 3), alt(D::A, 3)), omega2(D::A, 3, D::A, 3)});
  for (int n : {3, 2, 4})
    cases.push_back({"A" + std::to_string(n) + "[]A" + std::to_string(n), square_product_qp(alt(D::A, n), alt(D::A, n)),
                     omega2(D::A, n, D::A, n)});
  o.require(is_stable(alt(D::A, 5), D::A, 5) && is_stable(alt(D::D, 4), D::D, 4), "A5/D4 orientation not stable");
  cases.push_back({"A5(x)D4", tensor_qp(alt(D::A, 5), alt(D::D, 4)), std::nullopt});
  for (const auto& c : cases) {
    auto rep = is_selfinjective(c.qp);
    o.require(rep.selfinjective, c.name + " not selfinjective");
    if (c.sigma) o.require(rep.nakayama == c.sigma, c.name + " Nakayama differs from omega x omega");
  }
}

// 6. Cut lattices.
void c6(Outcome& o) {
  using D = DynkinType;
  auto tensor = cut_lattice(tensor_qp(alt(D::A, 3), alt(D::A, 3)));
  auto square = cut_lattice(square_product_qp(alt(D::A, 3), alt(D::A, 3)));
  o.note << "tensor=" << tensor.graph.nodes.size() << " square=" << square.graph.nodes.size() << "; ";
  o.require(tensor.graph.nodes.size() == 15, "tensor lattice has " + std::to_string(tensor.graph.nodes.size()) + " nodes, expected 15");
  o.require(square.graph.nodes.size() == 14, "square lattice has " + std::to_string(square.graph.nodes.size()) + " nodes, expected 14");
  o.require(tensor.graph.connected() && square.graph.connected(), "lattice disconnected");
}

// 7. Triangles.
void c7(Outcome& o) {
  for (int s = 2; s <= 5; ++s) {
    QP qp = triangle_qp(s).qp;
    std::string tag = "s=" + std::to_string(s);
    o.require(is_selfinjective(qp).selfinjective, tag + " not selfinjective");
    for (int i = 1; i <= 3; ++i) {
      Cut c = triangle_type_arrows(qp.quiver, i);
      std::string ti = tag + " type " + std::to_string(i);
      if (!is_cut(qp, c)) {
        o.require(false, ti + " not a cut");
        continue;
      }
      auto rep = is_algebraic_cut(qp, c);
      o.require(rep.globalDimension && *rep.globalDimension <= 2, ti + " gl.dim > 2");
      auto pres = cut_presentation(qp, c);
      auto back = qp_of_algebra(pres.quiver, pres.relations);
      o.require(isomorphic(back.qp, qp, IsoMode::Rescaling), ti + " round trip not isomorphic");
    }
  }
}

// 8. Planar mutation lattices.
void c8(Outcome& o) {
  using D = DynkinType;
  struct Case {
    std::string name;
    PlanarQP seed;
    std::size_t expected;
  };
  std::vector<Case> cases{
      {"Q^(4)", triangle_qp(4), 2},
      {"A3[]A3", product_embedding(square_product_qp(alt(D::A, 3), alt(D::A, 3)), 3), 4},
      {"Q^(5)", triangle_qp(5), 9},
      {"A4[]A4", product_embedding(square_product_qp(alt(D::A, 4), alt(D::A, 4)), 4), 28},
  };
  for (const auto& c : cases) {
    auto lat = planar_mutation_lattice(c.seed);
    std::size_t n = lat.graph.nodes.size();
    o.note << c.name << "=" << n << " ";
    o.require(lat.graph.complete, c.name + " lattice incomplete");
    o.require(n == c.expected, c.name + " has " + std::to_string(n) + " nodes");
    o.require(std::all_of(lat.selfinjective.begin(), lat.selfinjective.end(), [](bool b) { return b; }),
              c.name + " has a node that is not selfinjective");
  }
  o.note << "; ";
}

// 9. Covering correspondence.
void check_slices(Outcome& o, const std::string& name, const Quiver& q, const Cut& c) {
  auto cls = compatibility_class(q, c);
  auto slices = enumerate_slices(q, c);
  o.require(slices.size() == cls.size(), name + ": " + std::to_string(slices.size()) + " slices vs " +
                                             std::to_string(cls.size()) + " compatible cuts");
  std::set<Cut> fromSlices;
  for (const auto& t : slices) {
    Cut d = slice_to_cut(q, c, t);
    fromSlices.insert(d);
    o.require(cut_to_slice(q, c, d) == t, name + ": cut_to_slice does not invert slice_to_cut");
    for (int x : strict_sources(q, d))
      o.require(slice_to_cut(q, c, slice_mutate_plus(q, c, t, x)) == cut_mutate_plus(q, d, x),
                name + ": plus square does not commute");
    for (int x : strict_sinks(q, d))
      o.require(slice_to_cut(q, c, slice_mutate_minus(q, c, t, x)) == cut_mutate_minus(q, d, x),
                name + ": minus square does not commute");
  }
  o.require(fromSlices == std::set<Cut>(cls.begin(), cls.end()), name + ": slice cuts differ from the class");
}

void c9(Outcome& o) {
  Quiver cov = covering_example();
  Cut b = cut_from_ids(cov, {"b"});
  o.require(compatibility_class(cov, b).size() == 2, "example does not have two compatible cuts");
  o.require(enumerate_slices(cov, b).size() == 2, "example does not have two slices");
  check_slices(o, "example", cov, b);
  using D = DynkinType;
  std::vector<std::pair<std::string, QP>> fixtures{
      {"Q4", cycle_qp(4)},
      {"Q5", cycle_qp(5)},
      {"E1", cuts_example_a()},
      {"E2", cuts_example_b()},
      {"tubular", tubular_2222(2)},
      {"Q^(3)", triangle_qp(3).qp},
      {"A3(x)A3", tensor_qp(alt(D::A, 3), alt(D::A, 3))},
      {"A3[]A3", square_product_qp(alt(D::A, 3), alt(D::A, 3))},
  };
  for (const auto& [name, qp] : fixtures)
    for (const auto& c : enumerate_cuts(qp)) check_slices(o, name + " " + cut_to_string(qp.quiver, c), qp.quiver, c);
}

// 10. Criterion equivalence on a corpus.
std::vector<std::pair<std::string, QP>> corpus() {
  using D = DynkinType;
  std::vector<std::pair<std::string, QP>> out;
  for (int n = 3; n <= 7; ++n) out.push_back({"Q" + std::to_string(n), cycle_qp(n)});
  out.push_back({"tildeQ4", tilde_cycle_qp(4)});
  out.push_back({"tildeQ6", tilde_cycle_qp(6)});
  out.push_back({"tubular2", tubular_2222(2)});
  out.push_back({"tubular3", tubular_2222(3)});
  out.push_back({"tubular'2", tubular_2222_mutated(2)});
  out.push_back({"E1", cuts_example_a()});
  out.push_back({"E2", cuts_example_b()});
  for (int s = 2; s <= 4; ++s) out.push_back({"Q^(" + std::to_string(s) + ")", triangle_qp(s).qp});
  out.push_back({"A3(x)A3", tensor_qp(alt(D::A, 3), alt(D::A, 3))});
  out.push_back({"A2[]A2", square_product_qp(alt(D::A, 2), alt(D::A, 2))});
  out.push_back({"A3[]A3", square_product_qp(alt(D::A, 3), alt(D::A, 3))});
  out.push_back({"square4x4", square_shaped_example().qp});
  // Perturbations: an extra arrow outside W, a dropped term, a rescaled term, relabelings.
  {
    QP x = cycle_qp(4);
    x.quiver.add_arrow("x", 0, 2);
    out.push_back({"Q4+arrow", x});
  }
  {
    QP x = tubular_2222(2);
    Potential w;
    bool first = true;
    for (const auto& [cyc, c] : x.potential.terms()) {
      if (first) {
        first = false;
        continue;
      }
      w.add_term(cyc, c);
    }
    x.potential = w;
    out.push_back({"tubular-term", x});
  }
  {
    QP x = cuts_example_a();
    Potential w;
    for (const auto& [cyc, c] : x.potential.terms()) w.add_term(cyc, c * (cyc.size() + 1));
    x.potential = w;
    out.push_back({"E1-rescaled", x});
  }
  {
    QP x = triangle_qp(3).qp;
    std::vector<int> vp(x.quiver.num_vertices()), ap(x.quiver.num_arrows());
    for (std::size_t i = 0; i < vp.size(); ++i) vp[i] = static_cast<int>(vp.size() - 1 - i);
    std::iota(ap.begin(), ap.end(), 0);
    std::rotate(ap.begin(), ap.begin() + 1, ap.end());
    out.push_back({"Q^(3)-relabeled", permute_qp(x, vp, ap)});
  }
  return out;
}

void c10(Outcome& o) {
  auto list = corpus();
  o.require(list.size() >= 20, "corpus too small");
  int fd = 0, si = 0, yes = 0;
  std::string skipped;
  for (const auto& [name, qp] : list) {
    auto res = jacobian_algebra(qp);
    if (!res.determined()) {
      skipped += " " + name;
      continue;
    }
    ++fd;
    const FDAlgebra& alg = *res.algebra;
    bool exact1 = true, exact2 = true;
    for (int i = 0; i < qp.quiver.num_vertices(); ++i) {
      exact1 = exact1 && resolution_exactness_defect(alg, qp, i) == 0;
      exact2 = exact2 && dual_exactness_defect(alg, qp, i) == 0;
    }
    bool oracle = socle_oracle(alg);
    auto rep = is_selfinjective(qp, alg);
    o.require(exact1 == oracle, name + ": resolution verdict disagrees with the socle oracle");
    o.require(rep.selfinjective == oracle, name + ": report disagrees with the socle oracle");
    o.require(exact1 == exact2, name + ": sequence (1) and (2) verdicts differ");
    if (rep.selfinjective) {
      ++si;
      for (int a = 0; a < qp.quiver.num_arrows(); ++a)
        o.require(qp.potential.contains_arrow(a), name + ": selfinjective but an arrow is missing from W");
    }
    if (is_simply_connected(qp).verdict == Verdict::Yes) {
      ++yes;
      o.require(is_fully_compatible(qp), name + ": simply connected but not fully compatible");
    }
  }
  o.note << "corpus=" << list.size() << " fd=" << fd << " selfinjective=" << si << " simply-connected=" << yes << " not fd:" << skipped << "; ";
}

// 11. Involutivity and orbit order independence.
void c11(Outcome& o) {
  using D = DynkinType;
  std::vector<std::pair<std::string, QP>> fixtures{
      {"Q4", cycle_qp(4)},       {"Q5", cycle_qp(5)},         {"Q6", cycle_qp(6)},
      {"tildeQ4", tilde_cycle_qp(4)}, {"E1", cuts_example_a()},    {"E2", cuts_example_b()},
      {"tubular", tubular_2222(2)}, {"Q^(3)", triangle_qp(3).qp}, {"Q^(4)", triangle_qp(4).qp},
      {"A3[]A3", square_product_qp(alt(D::A, 3), alt(D::A, 3))},
      {"A3(x)A3", tensor_qp(alt(D::A, 3), alt(D::A, 3))},
  };
  int checked = 0, orbits = 0;
  for (const auto& [name, qp] : fixtures) {
    const Quiver& q = qp.quiver;
    // Mutation is an involution on reduced QPs; an unreduced input comes back as its reduced part.
    QP reduced = reduce_qp(qp).qp;
    for (int k = 0; k < q.num_vertices(); ++k) {
      if (on_two_cycle(q, k)) continue;
      bool loop = false;
      for (int a : q.out_arrows(k)) loop = loop || q.arrow(a).tgt == k;
      if (loop) continue;
      QP once = mutate(qp, k).qp;
      if (on_two_cycle(once.quiver, k)) continue;
      QP twice = mutate(once, k).qp;
      ++checked;
      o.require(same_qp(twice, reduced), name + ": mu_" + q.vertex_id(k) + " twice is not the original");
    }
    std::optional<std::vector<int>> sigma;
    try {
      sigma = is_selfinjective(qp).nakayama;
    } catch (const Error&) {
    }
    if (!sigma) continue;
    std::set<int> seen;
    for (int k = 0; k < q.num_vertices(); ++k) {
      auto orbit = orbit_of(*sigma, k);
      if (seen.count(orbit.front()) || orbit.size() < 2) continue;
      seen.insert(orbit.front());
      std::set<int> in(orbit.begin(), orbit.end());
      bool ok = true;
      for (const auto& ar : q.arrows()) ok = ok && !(in.count(ar.src) && in.count(ar.tgt));
      for (int x : orbit) ok = ok && !on_two_cycle(q, x);
      if (!ok) continue;
      std::sort(orbit.begin(), orbit.end());
      std::string ref;
      int perms = 0;
      do {
        QP x = qp;
        for (int v : orbit) x = mutate(x, v).qp;
        std::string key = qp_canonical_form(x, IsoMode::Rescaling);
        if (ref.empty()) ref = key;
        o.require(key == ref, name + ": orbit mutation at " + q.vertex_id(k) + " depends on the order");
      } while (std::next_permutation(orbit.begin(), orbit.end()) && ++perms < 24);
      ++orbits;
    }
  }
  o.note << "double mutations=" << checked << " orbits=" << orbits << "; ";
}

// 12. Tubular.
void c12(Outcome& o) {
  QP t = tubular_2222(2);
  auto rep = is_selfinjective(t);
  o.require(rep.selfinjective, "not selfinjective");
  bool identity = rep.nakayama.has_value();
  if (rep.nakayama)
    for (std::size_t i = 0; i < rep.nakayama->size(); ++i) identity = identity && (*rep.nakayama)[i] == static_cast<int>(i);
  o.require(identity, "Nakayama permutation is not the identity");
  QP m = mutate(t, *t.quiver.find_vertex("A")).qp;
  o.require(same_qp(m, tubular_2222_mutated(2)), "mutation at A does not give the second presentation");
}

}  // namespace

int main() {
  const std::vector<std::function<void(Outcome&)>> criteria{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i](o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.note << "exception: " << e.what() << "; ";
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > kLimit[i + 1]) {
      o.ok = false;
      o.note << "over the time limit; ";
    }
    all = all && o.ok;
    std::printf("%s criterion %zu (%.2fs, limit %.0fs) %s\n", o.ok ? "PASS" : "FAIL", i + 1, secs, kLimit[i + 1],
                o.note.str().c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
