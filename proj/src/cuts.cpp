#include "qpkit/cuts.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

#include "qpkit/resolution.hpp"

namespace qpkit {

namespace {

std::vector<bool> membership(const Quiver& q, const Cut& c) {
  std::vector<bool> in(q.num_arrows(), false);
  for (int a : c) in.at(a) = true;
  return in;
}

Cut normalized(Cut c) {
  std::sort(c.begin(), c.end());
  c.erase(std::unique(c.begin(), c.end()), c.end());
  return c;
}

}  // namespace

std::vector<int> grading(const Quiver& q, const Cut& c) {
  std::vector<int> g(q.num_arrows(), 0);
  for (int a : c) g.at(a) = 1;
  return g;
}

bool is_cut(const QP& qp, const Cut& c) {
  auto in = membership(qp.quiver, c);
  for (const auto& [cyc, coef] : qp.potential.terms()) {
    int k = 0;
    for (int a : cyc) k += in[a] ? 1 : 0;
    if (k != 1) return false;
  }
  return true;
}

std::vector<Cut> enumerate_cuts(const QP& qp) {
  const int na = qp.quiver.num_arrows();
  std::vector<std::vector<int>> termArrows;          // distinct arrows of each term
  std::vector<std::vector<int>> arrowTerms(na);      // terms containing each arrow
  std::vector<bool> usable(na, false);
  for (const auto& [cyc, coef] : qp.potential.terms()) {
    int t = static_cast<int>(termArrows.size());
    std::map<int, int> mult;
    for (int a : cyc) ++mult[a];
    termArrows.emplace_back();
    for (const auto& [a, m] : mult) {
      termArrows[t].push_back(a);
      arrowTerms[a].push_back(t);
    }
    for (const auto& [a, m] : mult) usable[a] = true;
  }
  // An arrow occurring twice in one term can never be in a cut.
  for (const auto& [cyc, coef] : qp.potential.terms()) {
    std::map<int, int> mult;
    for (int a : cyc) ++mult[a];
    for (const auto& [a, m] : mult)
      if (m > 1) usable[a] = false;
  }
  const int nt = static_cast<int>(termArrows.size());
  std::vector<Cut> out;
  std::vector<int> covered(nt, 0);
  std::vector<int> banned(na, 0);
  Cut chosen;
  std::function<void()> search = [&]() {
    int best = -1;
    std::size_t bestCount = 0;
    for (int t = 0; t < nt; ++t) {
      if (covered[t]) continue;
      std::size_t k = 0;
      for (int a : termArrows[t])
        if (usable[a] && !banned[a]) ++k;
      if (best < 0 || k < bestCount) {
        best = t;
        bestCount = k;
      }
    }
    if (best < 0) {
      out.push_back(normalized(chosen));
      return;
    }
    if (bestCount == 0) return;
    for (int a : termArrows[best]) {
      if (!usable[a] || banned[a]) continue;
      for (int t : arrowTerms[a]) {
        ++covered[t];
        for (int b : termArrows[t]) ++banned[b];
      }
      chosen.push_back(a);
      search();
      chosen.pop_back();
      for (int t : arrowTerms[a]) {
        --covered[t];
        for (int b : termArrows[t]) --banned[b];
      }
    }
  };
  search();
  std::sort(out.begin(), out.end());
  return out;
}

AlgebraicCutReport is_algebraic_cut(const QP& qp, const Cut& c, std::size_t degreeBound) {
  AlgebraicCutReport rep;
  CutPresentation pres = cut_presentation(qp, c);
  AlgebraResult res = truncated_jacobian(qp, c, degreeBound);
  if (!res.determined())
    throw Error(ErrorCode::UndeterminedDimension, "truncated Jacobian algebra not shown finite dimensional: " + res.note);
  const FDAlgebra& alg = *res.algebra;
  rep.dimension = alg.dim();
  int cap = std::max(4, qp.quiver.num_vertices() + 1);
  rep.globalDimension = global_dimension(alg, cap);
  bool gl2 = rep.globalDimension && *rep.globalDimension <= 2;
  rep.minimal = min_generation_check(pres.relations, pres.quiver, degreeBound);
  rep.algebraic = gl2 && rep.minimal;
  std::vector<std::string> why;
  if (!gl2)
    why.push_back(rep.globalDimension ? "global dimension " + std::to_string(*rep.globalDimension)
                                      : "global dimension above " + std::to_string(cap));
  if (!rep.minimal) why.push_back("derivatives along the cut are not a minimal generating set");
  for (std::size_t i = 0; i < why.size(); ++i) rep.diagnostic += (i ? "; " : "") + why[i];
  return rep;
}

std::optional<std::vector<int>> compatibility_potential(const Quiver& q, const Cut& c, const Cut& d) {
  auto gc = grading(q, c);
  auto gd = grading(q, d);
  const int nv = q.num_vertices();
  std::vector<int> theta(nv, 0);
  std::vector<bool> seen(nv, false);
  for (int root = 0; root < nv; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      auto visit = [&](int a) {
        const Arrow& ar = q.arrow(a);
        int diff = gc[a] - gd[a];
        int other = ar.src == v ? ar.tgt : ar.src;
        int want = ar.src == v ? theta[v] + diff : theta[v] - diff;
        if (!seen[other]) {
          seen[other] = true;
          theta[other] = want;
          queue.push_back(other);
          return true;
        }
        return theta[ar.tgt] - theta[ar.src] == diff;
      };
      for (int a : q.out_arrows(v))
        if (!visit(a)) return std::nullopt;
      for (int a : q.in_arrows(v))
        if (!visit(a)) return std::nullopt;
    }
  }
  return theta;
}

bool cuts_compatible(const Quiver& q, const Cut& c, const Cut& d) {
  return compatibility_potential(q, c, d).has_value();
}

std::vector<Cut> compatibility_class(const Quiver& q, const Cut& c, std::size_t cap) {
  // Decide the arrows one at a time, keeping the height differences forced so far in a
  // union-find with offsets (no path compression, so undo is a pop).
  const int nv = q.num_vertices();
  const int na = q.num_arrows();
  auto g = grading(q, c);
  // Arrow order: by the later of the two endpoints in a BFS numbering, so cycles close early.
  std::vector<int> rank(nv, -1);
  int counter = 0;
  for (int root = 0; root < nv; ++root) {
    if (rank[root] >= 0) continue;
    rank[root] = counter++;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (const auto* list : {&q.out_arrows(v), &q.in_arrows(v)})
        for (int a : *list) {
          int o = q.arrow(a).src == v ? q.arrow(a).tgt : q.arrow(a).src;
          if (rank[o] < 0) {
            rank[o] = counter++;
            queue.push_back(o);
          }
        }
    }
  }
  std::vector<int> order(na);
  for (int a = 0; a < na; ++a) order[a] = a;
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    auto key = [&](int a) { return std::max(rank[q.arrow(a).src], rank[q.arrow(a).tgt]); };
    return key(x) < key(y);
  });

  std::vector<int> parent(nv), offset(nv, 0), size(nv, 1);  // theta(v) = theta(parent) + offset
  for (int v = 0; v < nv; ++v) parent[v] = v;
  auto find = [&](int v, int& off) {
    off = 0;
    while (parent[v] != v) {
      off += offset[v];
      v = parent[v];
    }
    return v;
  };
  std::vector<int> choice(na, 0);
  std::vector<Cut> out;
  std::function<void(int)> rec = [&](int k) {
    if (k == na) {
      if (out.size() >= cap) throw Error(ErrorCode::SizeBoundExceeded, "compatibility class exceeds the cap");
      Cut d;
      for (int a = 0; a < na; ++a)
        if (choice[a]) d.push_back(a);
      out.push_back(std::move(d));
      return;
    }
    int a = order[k];
    int os, ot;
    int rs = find(q.arrow(a).src, os);
    int rt = find(q.arrow(a).tgt, ot);
    for (int val = 0; val <= 1; ++val) {
      // theta(t) - theta(s) = val - g(a)
      int diff = val - g[a];
      choice[a] = val;
      if (rs == rt) {
        if (ot - os == diff) rec(k + 1);
        continue;
      }
      // attach the smaller root below the larger
      int child = rs, root = rt, off = ot - diff - os;  // theta(rs) - theta(rt)
      if (size[rs] > size[rt]) {
        child = rt;
        root = rs;
        off = -off;
      }
      parent[child] = root;
      offset[child] = off;
      size[root] += size[child];
      rec(k + 1);
      size[root] -= size[child];
      parent[child] = child;
      offset[child] = 0;
    }
    choice[a] = 0;
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_strict_source(const Quiver& q, const Cut& c, int x) {
  auto in = membership(q, c);
  for (int a : q.in_arrows(x))
    if (!in[a]) return false;
  for (int a : q.out_arrows(x))
    if (in[a]) return false;
  return true;
}

bool is_strict_sink(const Quiver& q, const Cut& c, int x) {
  auto in = membership(q, c);
  for (int a : q.out_arrows(x))
    if (!in[a]) return false;
  for (int a : q.in_arrows(x))
    if (in[a]) return false;
  return true;
}

std::vector<int> strict_sources(const Quiver& q, const Cut& c) {
  std::vector<int> out;
  for (int v = 0; v < q.num_vertices(); ++v)
    if (is_strict_source(q, c, v)) out.push_back(v);
  return out;
}

std::vector<int> strict_sinks(const Quiver& q, const Cut& c) {
  std::vector<int> out;
  for (int v = 0; v < q.num_vertices(); ++v)
    if (is_strict_sink(q, c, v)) out.push_back(v);
  return out;
}

namespace {

// Removes the arrows of `drop` and adds those of `add`.
Cut toggle(const Quiver& q, const Cut& c, const std::vector<int>& drop, const std::vector<int>& add) {
  auto in = membership(q, c);
  for (int a : drop) in[a] = false;
  for (int a : add) in[a] = true;
  Cut out;
  for (int a = 0; a < q.num_arrows(); ++a)
    if (in[a]) out.push_back(a);
  return out;
}

}  // namespace

Cut cut_mutate_plus(const Quiver& q, const Cut& c, int x) {
  if (!is_strict_source(q, c, x))
    throw Error(ErrorCode::NotStrictSource, "vertex " + q.vertex_id(x) + " is not a strict source");
  return toggle(q, c, q.in_arrows(x), q.out_arrows(x));
}

Cut cut_mutate_minus(const Quiver& q, const Cut& c, int x) {
  if (!is_strict_sink(q, c, x))
    throw Error(ErrorCode::NotStrictSink, "vertex " + q.vertex_id(x) + " is not a strict sink");
  return toggle(q, c, q.out_arrows(x), q.in_arrows(x));
}

bool has_enough_cuts(const QP& qp) {
  std::vector<bool> seen(qp.quiver.num_arrows(), false);
  for (const auto& c : enumerate_cuts(qp))
    for (int a : c) seen[a] = true;
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

bool is_fully_compatible(const QP& qp) {
  auto cuts = enumerate_cuts(qp);
  for (std::size_t i = 0; i < cuts.size(); ++i)
    for (std::size_t j = i + 1; j < cuts.size(); ++j)
      if (!cuts_compatible(qp.quiver, cuts[i], cuts[j])) return false;
  return true;
}

bool is_sufficiently_cyclic(const Quiver& q, const Cut& c) {
  auto g = grading(q, c);
  const int nv = q.num_vertices();
  for (int a = 0; a < q.num_arrows(); ++a) {
    // 0-1 BFS for the least grading of a path from e(a) back to s(a)
    std::vector<int> dist(nv, 1 << 29);
    std::deque<int> dq;
    dist[q.arrow(a).tgt] = 0;
    dq.push_back(q.arrow(a).tgt);
    while (!dq.empty()) {
      int v = dq.front();
      dq.pop_front();
      for (int b : q.out_arrows(v)) {
        int w = q.arrow(b).tgt;
        int nd = dist[v] + g[b];
        if (nd < dist[w]) {
          dist[w] = nd;
          if (g[b]) dq.push_back(w);
          else dq.push_front(w);
        }
      }
    }
    if (g[a] + dist[q.arrow(a).src] > 1) return false;
  }
  return true;
}

bool cut_quiver_acyclic(const Quiver& q, const Cut& c) {
  auto in = membership(q, c);
  const int nv = q.num_vertices();
  std::vector<int> indeg(nv, 0);
  for (int a = 0; a < q.num_arrows(); ++a)
    if (!in[a]) ++indeg[q.arrow(a).tgt];
  std::vector<int> stack;
  for (int v = 0; v < nv; ++v)
    if (indeg[v] == 0) stack.push_back(v);
  int removed = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++removed;
    for (int a : q.out_arrows(v))
      if (!in[a] && --indeg[q.arrow(a).tgt] == 0) stack.push_back(q.arrow(a).tgt);
  }
  return removed == nv;
}

bool has_enough_compatibles(const Quiver& q, const Cut& c) {
  std::vector<bool> seen(q.num_arrows(), false);
  for (const auto& d : compatibility_class(q, c))
    for (int a : d) seen[a] = true;
  bool covered = std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  if (covered != cut_quiver_acyclic(q, c))
    throw Error(ErrorCode::InvariantViolated, "compatibility cover and acyclicity of Q_C disagree");
  return covered;
}

std::vector<int> source_sequence(const Quiver& q, const Cut& c, bool strict) {
  const int nv = q.num_vertices();
  if (!cut_quiver_acyclic(q, c)) throw Error(ErrorCode::NoSequence, "Q_C has an oriented cycle");
  std::vector<int> seq;
  std::vector<bool> used(nv, false);
  std::size_t budget = 200000;
  std::function<bool(const Cut&)> rec = [&](const Cut& cur) {
    if (static_cast<int>(seq.size()) == nv) return true;
    if (budget == 0) return false;
    --budget;
    auto in = membership(q, cur);
    for (int x = 0; x < nv; ++x) {
      if (used[x]) continue;
      bool ok = true;
      for (int a : q.in_arrows(x))
        if (!in[a]) ok = false;
      if (strict)
        for (int a : q.out_arrows(x))
          if (in[a]) ok = false;
      if (!ok) continue;
      used[x] = true;
      seq.push_back(x);
      if (rec(toggle(q, cur, q.in_arrows(x), q.out_arrows(x)))) return true;
      seq.pop_back();
      used[x] = false;
    }
    return false;
  };
  if (!rec(normalized(c)))
    throw Error(ErrorCode::NoSequence, strict ? "no strict source sequence found" : "no source sequence found");
  return seq;
}

std::string cut_to_string(const Quiver& q, const Cut& c) {
  std::string s = "{";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + q.arrow(c[i]).id;
  return s + "}";
}

Cut cut_from_ids(const Quiver& q, const std::vector<std::string>& ids) {
  Cut c;
  for (const auto& id : ids) c.push_back(q.arrow_index(id));
  return normalized(c);
}

}  // namespace qpkit
