#include "qpkit/mutation.hpp"

#include <algorithm>
#include <set>

#include "qpkit/canonical.hpp"

namespace qpkit {

bool on_two_cycle(const Quiver& q, int k) {
  for (int a : q.out_arrows(k)) {
    int y = q.arrow(a).tgt;
    if (y == k) return true;
    for (int b : q.out_arrows(y))
      if (q.arrow(b).tgt == k) return true;
  }
  return false;
}

namespace {

std::string reversed_id(const std::string& id) {
  if (!id.empty() && id.back() == '*') return id.substr(0, id.size() - 1);
  return id + "*";
}

std::string unique_id(const Quiver& q, std::string id) {
  while (q.find_arrow(id)) id += "'";
  return id;
}

}  // namespace

QP premutate(const QP& qp, int k, PremutationMap* map) {
  const Quiver& q = qp.quiver;
  if (on_two_cycle(q, k))
    throw Error(ErrorCode::TwoCycleAtVertex, "vertex " + q.vertex_id(k) + " lies on a 2-cycle or loop");
  QP r;
  for (int v = 0; v < q.num_vertices(); ++v) r.quiver.add_vertex(q.vertex_id(v));
  std::vector<int> keep(q.num_arrows(), -1);
  for (int a = 0; a < q.num_arrows(); ++a) {
    const Arrow& ar = q.arrow(a);
    if (ar.src != k && ar.tgt != k) keep[a] = r.quiver.add_arrow(ar.id, ar.src, ar.tgt);
  }
  std::vector<int> rev(q.num_arrows(), -1);
  for (int a = 0; a < q.num_arrows(); ++a) {
    const Arrow& ar = q.arrow(a);
    if (ar.src == k || ar.tgt == k) rev[a] = r.quiver.add_arrow(unique_id(r.quiver, reversed_id(ar.id)), ar.tgt, ar.src);
  }
  std::map<std::pair<int, int>, int> composite;
  for (int a : q.in_arrows(k))
    for (int b : q.out_arrows(k)) {
      std::string id = unique_id(r.quiver, "[" + q.arrow(a).id + "|" + q.arrow(b).id + "]");
      composite[{a, b}] = r.quiver.add_arrow(id, q.arrow(a).src, q.arrow(b).tgt);
    }
  for (const auto& [cyc, c] : qp.potential.terms()) {
    std::size_t n = cyc.size();
    std::size_t start = 0;
    while (start < n && q.arrow(cyc[start]).src == k) ++start;
    if (start == n) throw Error(ErrorCode::InvariantViolated, "potential term lies entirely at the mutation vertex");
    std::vector<int> word;
    for (std::size_t i = 0; i < n; ++i) {
      int a = cyc[(start + i) % n];
      if (q.arrow(a).tgt == k) {
        int b = cyc[(start + i + 1) % n];
        word.push_back(composite.at({a, b}));
        ++i;
      } else {
        word.push_back(keep[a]);
      }
    }
    r.potential.add_term(word, c);
  }
  for (const auto& [ab, id] : composite) r.potential.add_term({id, rev[ab.second], rev[ab.first]}, 1);
  if (map) {
    map->arrowImage.assign(q.num_arrows(), -1);
    for (int a = 0; a < q.num_arrows(); ++a) map->arrowImage[a] = keep[a] >= 0 ? keep[a] : rev[a];
    map->composite = composite;
  }
  return r;
}

namespace {

struct Pair {
  int u, v;  // u: x -> y, v: y -> x
};

std::size_t occurrences(const Potential& w, int a) {
  std::size_t n = 0;
  for (const auto& [cyc, c] : w.terms())
    for (int b : cyc) n += b == a ? 1 : 0;
  return n;
}

// Quadratic terms c * u v with u != v and u of the smaller index.
std::vector<std::pair<Pair, Rational>> quadratic_part(const Quiver& q, const Potential& w) {
  std::vector<std::pair<Pair, Rational>> out;
  for (const auto& [cyc, c] : w.terms())
    if (cyc.size() == 2 && cyc[0] != cyc[1] && q.arrow(cyc[0]).src != q.arrow(cyc[0]).tgt)
      out.push_back({{cyc[0], cyc[1]}, c});
  return out;
}

AlgebraElement arrow_elem(const Quiver& q, int a) { return AlgebraElement::of_path(Path::of_arrow(q, a)); }

// Makes u v the only quadratic term involving u or v, with coefficient 1.
Potential isolate_pair(const Quiver& q, Potential w, Pair p, std::size_t bound) {
  Rational c = w.coef({p.u, p.v});
  // v -> c^{-1} (v - sum_{l != v} c_l v_l) for the other partners v_l of u
  AlgebraElement img = arrow_elem(q, p.v).scaled(1 / c);
  for (const auto& [pr, cl] : quadratic_part(q, w)) {
    int other = -1;
    if (pr.u == p.u && pr.v != p.v) other = pr.v;
    if (pr.v == p.u && pr.u != p.v) other = pr.u;
    if (other >= 0) img.add(arrow_elem(q, other), -cl / c);
  }
  w = substitute(q, w, {{p.v, img}}, bound);
  // u -> u - sum_{k != u} d_k u_k for the remaining partners u_k of v
  AlgebraElement uImg = arrow_elem(q, p.u);
  for (const auto& [pr, d] : quadratic_part(q, w)) {
    int other = -1;
    if (pr.u == p.v && pr.v != p.u) other = pr.v;
    if (pr.v == p.v && pr.u != p.u) other = pr.u;
    if (other >= 0) uImg.add(arrow_elem(q, other), -d);
  }
  if (uImg.size() > 1) w = substitute(q, w, {{p.u, uImg}}, bound);
  return w;
}

// Removes every occurrence of u, v outside the term u v by the substitution
// u -> u - V, v -> v - U, where the other terms are written u U + V v.
Potential clear_pair(const Quiver& q, Potential w, Pair p, std::size_t bound) {
  while (true) {
    AlgebraElement U, V;
    bool dirty = false;
    for (const auto& [cyc, c] : w.terms()) {
      if (cyc.size() == 2 && ((cyc[0] == p.u && cyc[1] == p.v) || (cyc[0] == p.v && cyc[1] == p.u))) continue;
      std::size_t n = cyc.size();
      std::size_t pos = n;
      for (std::size_t i = 0; i < n && pos == n; ++i)
        if (cyc[i] == p.u || cyc[i] == p.v) pos = i;
      if (pos == n) continue;
      dirty = true;
      std::vector<int> rest;
      if (cyc[pos] == p.u) {
        for (std::size_t i = 1; i < n; ++i) rest.push_back(cyc[(pos + i) % n]);
        U.add(Path::of_word(q, rest), c);
      } else {
        for (std::size_t i = 1; i < n; ++i) rest.push_back(cyc[(pos + i) % n]);
        V.add(Path::of_word(q, rest), c);
      }
    }
    if (!dirty) return w;
    std::map<int, AlgebraElement> images;
    if (!V.is_zero()) images[p.u] = arrow_elem(q, p.u) - V;
    if (!U.is_zero()) images[p.v] = arrow_elem(q, p.v) - U;
    w = substitute(q, w, images, bound);
    if (w.size() > 200000) throw Error(ErrorCode::ReductionBoundExceeded, "reduction produced too many terms");
  }
}

}  // namespace

MutationResult reduce_qp(const QP& qp, std::size_t degreeBound) {
  std::size_t bound = degreeBound ? degreeBound : std::max<std::size_t>(12, 4 * qp.potential.max_length());
  MutationResult res;
  QP cur = qp;
  while (true) {
    auto quad = quadratic_part(cur.quiver, cur.potential);
    if (quad.empty()) break;
    // fewest other occurrences first, ties by arrow index
    std::size_t best = 0;
    std::size_t bestScore = 0;
    for (std::size_t i = 0; i < quad.size(); ++i) {
      std::size_t s = occurrences(cur.potential, quad[i].first.u) + occurrences(cur.potential, quad[i].first.v);
      if (i == 0 || s < bestScore) {
        best = i;
        bestScore = s;
      }
    }
    Pair p = quad[best].first;
    Potential w = isolate_pair(cur.quiver, cur.potential, p, bound);
    w = clear_pair(cur.quiver, w, p, bound);
    w.add_term({p.u, p.v}, -w.coef({p.u, p.v}));
    cur.potential = w;
    cur = delete_arrows(cur, {p.u, p.v});
    ++res.trivialPartRank;
  }
  res.qp = std::move(cur);
  res.reduced = true;
  return res;
}

MutationResult mutate(const QP& qp, int k, std::size_t degreeBound) {
  return reduce_qp(premutate(qp, k), degreeBound);
}

std::vector<int> orbit_of(const std::vector<int>& sigma, int k) {
  std::vector<int> orbit{k};
  for (int x = sigma.at(k); x != k; x = sigma.at(x)) {
    orbit.push_back(x);
    if (orbit.size() > sigma.size()) throw Error(ErrorCode::BadParameter, "sigma is not a permutation");
  }
  return orbit;
}

MutationResult orbit_mutate(const QP& qp, const std::vector<int>& sigma, int k, std::size_t degreeBound) {
  const Quiver& q = qp.quiver;
  if (static_cast<int>(sigma.size()) != q.num_vertices())
    throw Error(ErrorCode::BadParameter, "sigma has the wrong size");
  auto orbit = orbit_of(sigma, k);
  std::set<int> inOrbit(orbit.begin(), orbit.end());
  for (const auto& ar : q.arrows())
    if (inOrbit.count(ar.src) && inOrbit.count(ar.tgt))
      throw Error(ErrorCode::OrbitPreconditionViolated, "arrow " + ar.id + " joins two vertices of the orbit");
  for (int x : orbit)
    if (on_two_cycle(q, x))
      throw Error(ErrorCode::OrbitPreconditionViolated, "orbit vertex " + q.vertex_id(x) + " lies on a 2-cycle");
  auto run = [&](const std::vector<int>& order) {
    MutationResult r{qp, true, 0};
    for (int x : order) {
      MutationResult s = mutate(r.qp, x, degreeBound);
      r.qp = std::move(s.qp);
      r.trivialPartRank += s.trivialPartRank;
    }
    return r;
  };
  MutationResult forward = run(orbit);
  if (orbit.size() > 1) {
    std::vector<int> back(orbit.rbegin(), orbit.rend());
    MutationResult other = run(back);
    if (!isomorphic(forward.qp, other.qp, IsoMode::Rescaling))
      throw Error(ErrorCode::InvariantViolated, "orbit mutation depends on the order");
  }
  return forward;
}

}  // namespace qpkit
