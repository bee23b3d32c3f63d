#include "qpkit/covering.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace qpkit {

namespace {

std::string level_id(const std::string& x, int l) { return "(" + x + "," + std::to_string(l) + ")"; }

// Component index per vertex and the vertices of each component in BFS order.
std::vector<std::vector<int>> components(const Quiver& q, std::vector<int>* compOf = nullptr) {
  std::vector<int> comp(q.num_vertices(), -1);
  std::vector<std::vector<int>> out;
  for (int root = 0; root < q.num_vertices(); ++root) {
    if (comp[root] >= 0) continue;
    out.emplace_back();
    comp[root] = static_cast<int>(out.size()) - 1;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      out.back().push_back(v);
      for (const auto* list : {&q.out_arrows(v), &q.in_arrows(v)})
        for (int a : *list) {
          int o = q.arrow(a).src == v ? q.arrow(a).tgt : q.arrow(a).src;
          if (comp[o] < 0) {
            comp[o] = comp[root];
            queue.push_back(o);
          }
        }
    }
  }
  if (compOf) *compOf = comp;
  return out;
}

}  // namespace

CoveringWindow build_covering_window(const Quiver& q, const Cut& c, int lo, int hi) {
  if (lo > hi) throw Error(ErrorCode::BadParameter, "empty level window");
  auto g = grading(q, c);
  CoveringWindow w;
  w.lo = lo;
  w.hi = hi;
  const int n = q.num_vertices();
  for (int l = lo; l <= hi; ++l)
    for (int x = 0; x < n; ++x) w.quiver.add_vertex(level_id(q.vertex_id(x), l));
  for (int l = lo; l <= hi; ++l)
    for (int a = 0; a < q.num_arrows(); ++a) {
      const Arrow& ar = q.arrow(a);
      int tl = l - g[a];
      std::string id = level_id(ar.id, l);
      if (tl < lo || tl > hi) {
        w.incomplete.push_back(id);
        continue;
      }
      w.quiver.add_arrow(id, (l - lo) * n + ar.src, (tl - lo) * n + ar.tgt);
      w.baseArrow.push_back(a);
      w.level.push_back(l);
    }
  return w;
}

std::string CoveringWindow::to_dot() const {
  std::string s = "digraph covering {\n  rankdir=LR;\n";
  for (int v = 0; v < quiver.num_vertices(); ++v) s += "  \"" + quiver.vertex_id(v) + "\";\n";
  for (const auto& a : quiver.arrows())
    s += "  \"" + quiver.vertex_id(a.src) + "\" -> \"" + quiver.vertex_id(a.tgt) + "\" [label=\"" + a.id + "\"];\n";
  return s + "}\n";
}

LiftedPoint lift_walk(const Quiver& q, const Cut& c, const std::vector<WalkStep>& walk, int start, int startLevel) {
  auto g = grading(q, c);
  LiftedPoint p{start, startLevel};
  for (const auto& st : walk) {
    if (st.arrow < 0 || st.arrow >= q.num_arrows()) throw Error(ErrorCode::BadParameter, "walk uses an unknown arrow");
    const Arrow& ar = q.arrow(st.arrow);
    int from = st.inverse ? ar.tgt : ar.src;
    if (from != p.vertex) throw Error(ErrorCode::BadParameter, "walk is not connected at arrow " + ar.id);
    p.vertex = st.inverse ? ar.src : ar.tgt;
    p.level += st.inverse ? g[st.arrow] : -g[st.arrow];
  }
  return p;
}

bool is_slice(const Quiver& q, const Cut& c, const HeightFunction& theta) {
  if (static_cast<int>(theta.size()) != q.num_vertices()) return false;
  auto g = grading(q, c);
  for (int a = 0; a < q.num_arrows(); ++a) {
    int v = g[a] + theta[q.arrow(a).tgt] - theta[q.arrow(a).src];
    if (v != 0 && v != 1) return false;
  }
  return true;
}

HeightFunction normalize_height(const Quiver& q, HeightFunction theta) {
  for (const auto& comp : components(q)) {
    int m = theta[comp[0]];
    for (int v : comp) m = std::min(m, theta[v]);
    for (int v : comp) theta[v] -= m;
  }
  return theta;
}

std::vector<HeightFunction> enumerate_slices(const Quiver& q, const Cut& c, std::size_t cap) {
  auto g = grading(q, c);
  const int n = q.num_vertices();
  std::vector<std::set<HeightFunction>> perComp;
  for (const auto& comp : components(q)) {
    // BFS order with a tree arrow for every vertex but the root.
    std::vector<int> treeArrow(n, -1);
    std::vector<int> pos(n, -1);
    for (std::size_t i = 0; i < comp.size(); ++i) pos[comp[i]] = static_cast<int>(i);
    for (std::size_t i = 1; i < comp.size(); ++i) {
      int v = comp[i];
      for (const auto* list : {&q.in_arrows(v), &q.out_arrows(v)})
        for (int a : *list) {
          int o = q.arrow(a).src == v ? q.arrow(a).tgt : q.arrow(a).src;
          if (pos[o] < static_cast<int>(i) && treeArrow[v] < 0) treeArrow[v] = a;
        }
    }
    std::set<HeightFunction> found;
    HeightFunction theta(n, 0);
    auto consistent = [&](int v, int upto) {
      for (const auto* list : {&q.in_arrows(v), &q.out_arrows(v)})
        for (int a : *list) {
          int x = q.arrow(a).src, y = q.arrow(a).tgt;
          if (pos[x] > upto || pos[y] > upto) continue;
          int d = g[a] + theta[y] - theta[x];
          if (d != 0 && d != 1) return false;
        }
      return true;
    };
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == comp.size()) {
        HeightFunction t(n, 0);
        int m = 0;
        for (std::size_t j = 0; j < comp.size(); ++j) m = j == 0 ? theta[comp[j]] : std::min(m, theta[comp[j]]);
        for (int v : comp) t[v] = theta[v] - m;
        found.insert(t);
        if (found.size() > cap) throw Error(ErrorCode::SizeBoundExceeded, "too many slices");
        return;
      }
      int v = comp[i];
      int a = treeArrow[v];
      const Arrow& ar = q.arrow(a);
      for (int d : {0, 1}) {
        // d = g(a) + theta(tgt) - theta(src)
        if (ar.tgt == v) theta[v] = d - g[a] + theta[ar.src];
        else theta[v] = theta[ar.tgt] + g[a] - d;
        if (consistent(v, static_cast<int>(i))) self(self, i + 1);
      }
    };
    theta[comp[0]] = 0;
    if (consistent(comp[0], 0)) rec(rec, 1);
    perComp.push_back(std::move(found));
  }
  std::vector<HeightFunction> out{HeightFunction(n, 0)};
  for (const auto& options : perComp) {
    std::vector<HeightFunction> next;
    for (const auto& base : out)
      for (const auto& t : options) {
        HeightFunction h = base;
        for (int v = 0; v < n; ++v) h[v] += t[v];
        next.push_back(std::move(h));
        if (next.size() > cap) throw Error(ErrorCode::SizeBoundExceeded, "too many slices");
      }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Cut slice_to_cut(const Quiver& q, const Cut& c, const HeightFunction& theta) {
  if (!is_slice(q, c, theta)) throw Error(ErrorCode::BadParameter, "not a slice of the covering");
  auto g = grading(q, c);
  Cut out;
  for (int a = 0; a < q.num_arrows(); ++a)
    if (g[a] + theta[q.arrow(a).tgt] - theta[q.arrow(a).src] == 1) out.push_back(a);
  return out;
}

HeightFunction cut_to_slice(const Quiver& q, const Cut& c, const Cut& other) {
  auto t = compatibility_potential(q, other, c);
  if (!t) throw Error(ErrorCode::NotCompatible, "cuts " + cut_to_string(q, c) + " and " + cut_to_string(q, other) + " are not compatible");
  HeightFunction theta = normalize_height(q, *t);
  if (!is_slice(q, c, theta)) throw Error(ErrorCode::NotCompatible, "the grading difference is not a slice");
  return theta;
}

HeightFunction slice_mutate_plus(const Quiver& q, const Cut& c, const HeightFunction& theta, int x) {
  if (!is_strict_source(q, slice_to_cut(q, c, theta), x))
    throw Error(ErrorCode::NotStrictSource, "vertex " + q.vertex_id(x) + " is not a strict source of the slice");
  HeightFunction t = theta;
  --t[x];
  return normalize_height(q, t);
}

HeightFunction slice_mutate_minus(const Quiver& q, const Cut& c, const HeightFunction& theta, int x) {
  if (!is_strict_sink(q, slice_to_cut(q, c, theta), x))
    throw Error(ErrorCode::NotStrictSink, "vertex " + q.vertex_id(x) + " is not a strict sink of the slice");
  HeightFunction t = theta;
  ++t[x];
  return normalize_height(q, t);
}

long volume(const HeightFunction& theta) {
  long v = 0;
  for (int t : theta) v += t;
  return v;
}

ReachabilityGraph cut_mutation_reachability(const QP& qp, const Cut& c) {
  const Quiver& q = qp.quiver;
  ReachabilityGraph r;
  r.cuts = compatibility_class(q, c);
  std::map<Cut, int> index;
  for (std::size_t i = 0; i < r.cuts.size(); ++i) index[r.cuts[i]] = static_cast<int>(i);
  std::vector<int> parent(r.cuts.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < r.cuts.size(); ++i) {
    const Cut& d = r.cuts[i];
    for (int x : strict_sources(q, d)) {
      int j = index.at(cut_mutate_plus(q, d, x));
      r.moves.push_back({static_cast<int>(i), j, x, true});
      parent[find(static_cast<int>(i))] = find(j);
    }
    for (int x : strict_sinks(q, d)) {
      int j = index.at(cut_mutate_minus(q, d, x));
      r.moves.push_back({static_cast<int>(i), j, x, false});
      parent[find(static_cast<int>(i))] = find(j);
    }
  }
  std::map<int, int> label;
  r.component.resize(r.cuts.size());
  for (std::size_t i = 0; i < r.cuts.size(); ++i) {
    int root = find(static_cast<int>(i));
    if (!label.count(root)) label[root] = static_cast<int>(label.size());
    r.component[i] = label[root];
  }
  r.components = static_cast<int>(label.size());
  r.theoremApplies = has_enough_compatibles(q, c) && is_sufficiently_cyclic(q, c);
  if (r.theoremApplies && !r.connected())
    throw Error(ErrorCode::InvariantViolated, "cut-mutation classes are disconnected although the hypotheses hold");
  return r;
}

}  // namespace qpkit
