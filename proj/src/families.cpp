#include "qpkit/families.hpp"

#include <set>

namespace qpkit {

namespace {

std::string num(int i) { return std::to_string(i); }

void need(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::BadParameter, what);
}

}  // namespace

QP cycle_qp(int n) {
  need(n >= 2, "cycle_qp needs n >= 2");
  QP qp;
  for (int i = 1; i <= n; ++i) qp.quiver.add_vertex(num(i));
  for (int i = 1; i <= n; ++i) qp.quiver.add_arrow("a" + num(i), i - 1, i == 1 ? n - 1 : i - 2);
  std::vector<int> cyc{0};
  for (int i = n; i >= 2; --i) cyc.push_back(i - 1);
  qp.potential.add_term(cyc, 1);
  return qp;
}

QP tilde_cycle_qp(int n) {
  need(n >= 4 && n % 2 == 0, "tilde_cycle_qp needs an even n >= 4");
  QP qp;
  Quiver& q = qp.quiver;
  for (int i = 1; i <= n; ++i) q.add_vertex(num(i));
  auto idx = [n](int i) { return ((i - 1) % n + n) % n; };  // label -> vertex index
  std::vector<int> a(n + 1, -1), b(n + 1, -1);
  for (int i = 1; i <= n; i += 2) a[i] = q.add_arrow("a" + num(i), idx(i), idx(i - 2));
  for (int i = 1; i <= n; ++i) b[i] = q.add_arrow("b" + num(i), idx(i), idx(i + 1));
  std::vector<int> odd{a[1]};
  for (int i = n - 1; i >= 3; i -= 2) odd.push_back(a[i]);
  qp.potential.add_term(odd, 1);
  auto bl = [&](int i) { return b[idx(i) + 1]; };
  for (int i = 1; i <= n; i += 2) qp.potential.add_term({a[i], bl(i - 2), bl(i - 1)}, -1);
  return qp;
}

QP tubular_2222(const Rational& lambda) {
  need(lambda != 0 && lambda != 1, "tubular parameter must avoid 0 and 1");
  std::vector<std::tuple<std::string, std::string, std::string>> arrows = {
      {"a", "T", "A"},    {"b", "T", "B"},    {"c", "T", "C"},    {"d", "T", "D"},   {"a'", "A", "Bot"},
      {"b'", "B", "Bot"}, {"c'", "C", "Bot"}, {"d'", "D", "Bot"}, {"e", "Bot", "T"}, {"f", "Bot", "T"}};
  return make_qp({"T", "A", "B", "C", "D", "Bot"}, arrows,
                 {{1, {"a", "a'", "e"}},
                  {1, {"b", "b'", "e"}},
                  {1, {"c", "c'", "e"}},
                  {1, {"a", "a'", "f"}},
                  {lambda, {"b", "b'", "f"}},
                  {1, {"d", "d'", "f"}}});
}

QP tubular_2222_mutated(const Rational& lambdaPrime) {
  need(lambdaPrime != 0 && lambdaPrime != 1, "tubular parameter must avoid 0 and 1");
  std::vector<std::tuple<std::string, std::string, std::string>> arrows = {
      {"a", "A", "T"},    {"b", "T", "B"},    {"c", "T", "C"},    {"d", "T", "D"},  {"a'", "Bot", "A"},
      {"b'", "B", "Bot"}, {"c'", "C", "Bot"}, {"d'", "D", "Bot"}, {"e", "Bot", "T"}};
  return make_qp({"T", "A", "B", "C", "D", "Bot"}, arrows,
                 {{1, {"b", "b'", "e"}},
                  {1, {"c", "c'", "e"}},
                  {1, {"d", "d'", "e"}},
                  {lambdaPrime, {"b", "b'", "a'", "a"}},
                  {1, {"d", "d'", "a'", "a"}}});
}

std::string dynkin_name(DynkinType type, int n) {
  const char* t = type == DynkinType::A ? "A" : type == DynkinType::D ? "D" : "E";
  return t + num(n);
}

std::vector<std::pair<int, int>> dynkin_edges(DynkinType type, int n) {
  std::vector<std::pair<int, int>> e;
  switch (type) {
    case DynkinType::A:
      need(n >= 1, "A_n needs n >= 1");
      for (int i = 1; i < n; ++i) e.push_back({i, i + 1});
      break;
    case DynkinType::D:
      need(n >= 4, "D_n needs n >= 4");
      for (int i = 1; i < n - 1; ++i) e.push_back({i, i + 1});
      e.push_back({n - 2, n});
      break;
    case DynkinType::E:
      need(n >= 6 && n <= 8, "E_n needs 6 <= n <= 8");
      if (n == 6) {
        e = {{1, 2}, {2, 3}, {3, 5}, {5, 6}, {3, 4}};
      } else {
        for (int i = 1; i < n - 1; ++i) e.push_back({i, i + 1});
        e.push_back({n == 7 ? 4 : 5, n});
      }
      break;
  }
  return e;
}

Quiver dynkin_quiver(DynkinType type, int n, const std::vector<bool>& forward) {
  auto edges = dynkin_edges(type, n);
  need(forward.size() == edges.size(), "orientation vector has the wrong length");
  Quiver q;
  for (int i = 1; i <= n; ++i) q.add_vertex(num(i));
  for (std::size_t k = 0; k < edges.size(); ++k) {
    auto [u, v] = edges[k];
    if (forward[k])
      q.add_arrow(num(u) + ">" + num(v), u - 1, v - 1);
    else
      q.add_arrow(num(v) + ">" + num(u), v - 1, u - 1);
  }
  return q;
}

Quiver alternating_dynkin(DynkinType type, int n, bool vertexOneSource) {
  auto edges = dynkin_edges(type, n);
  // parity by distance from vertex 1 (the diagrams are trees)
  std::vector<int> parity(n + 1, -1);
  parity[1] = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [u, v] : edges) {
      if (parity[u] >= 0 && parity[v] < 0) parity[v] = 1 - parity[u], changed = true;
      if (parity[v] >= 0 && parity[u] < 0) parity[u] = 1 - parity[v], changed = true;
    }
  }
  std::vector<bool> forward;
  for (auto [u, v] : edges) forward.push_back((parity[u] == 0) == vertexOneSource);
  return dynkin_quiver(type, n, forward);
}

Quiver linear_a(int n) { return dynkin_quiver(DynkinType::A, n, std::vector<bool>(std::max(0, n - 1), true)); }

int coxeter_number(DynkinType type, int n) {
  dynkin_edges(type, n);
  switch (type) {
    case DynkinType::A:
      return n + 1;
    case DynkinType::D:
      return 2 * (n - 1);
    case DynkinType::E:
      return n == 6 ? 12 : n == 7 ? 18 : 30;
  }
  return 0;
}

std::vector<int> canonical_involution(DynkinType type, int n) {
  dynkin_edges(type, n);
  std::vector<int> w(n);
  for (int i = 0; i < n; ++i) w[i] = i;
  if (type == DynkinType::A) {
    for (int i = 0; i < n; ++i) w[i] = n - 1 - i;
  } else if (type == DynkinType::D && n % 2 == 1) {
    std::swap(w[n - 2], w[n - 1]);
  } else if (type == DynkinType::E && n == 6) {
    w[0] = 5, w[5] = 0, w[1] = 4, w[4] = 1;
  }
  return w;
}

bool is_stable(const Quiver& q, DynkinType type, int n) {
  auto w = canonical_involution(type, n);
  std::multiset<std::pair<int, int>> arrows;
  for (const auto& a : q.arrows()) arrows.insert({a.src, a.tgt});
  for (const auto& a : q.arrows())
    if (!arrows.count({w[a.src], w[a.tgt]})) return false;
  return true;
}

bool is_alternating(const Quiver& q) {
  for (int v = 0; v < q.num_vertices(); ++v)
    if (!q.in_arrows(v).empty() && !q.out_arrows(v).empty()) return false;
  return true;
}

namespace {

std::string pair_id(const std::string& x, const std::string& y) { return "(" + x + "," + y + ")"; }

}  // namespace

QP tensor_qp(const Quiver& q1, const Quiver& q2) {
  QP qp;
  Quiver& q = qp.quiver;
  int n2 = q2.num_vertices();
  auto v = [n2](int x, int y) { return x * n2 + y; };
  for (int x = 0; x < q1.num_vertices(); ++x)
    for (int y = 0; y < n2; ++y) q.add_vertex(pair_id(q1.vertex_id(x), q2.vertex_id(y)));
  std::vector<std::vector<int>> ay(q1.num_arrows(), std::vector<int>(n2));
  std::vector<std::vector<int>> xb(q1.num_vertices(), std::vector<int>(q2.num_arrows()));
  std::vector<std::vector<int>> ab(q1.num_arrows(), std::vector<int>(q2.num_arrows()));
  for (int a = 0; a < q1.num_arrows(); ++a)
    for (int y = 0; y < n2; ++y)
      ay[a][y] = q.add_arrow(pair_id(q1.arrow(a).id, q2.vertex_id(y)), v(q1.arrow(a).src, y), v(q1.arrow(a).tgt, y));
  for (int x = 0; x < q1.num_vertices(); ++x)
    for (int b = 0; b < q2.num_arrows(); ++b)
      xb[x][b] = q.add_arrow(pair_id(q1.vertex_id(x), q2.arrow(b).id), v(x, q2.arrow(b).src), v(x, q2.arrow(b).tgt));
  for (int a = 0; a < q1.num_arrows(); ++a)
    for (int b = 0; b < q2.num_arrows(); ++b)
      ab[a][b] = q.add_arrow(pair_id(q1.arrow(a).id, q2.arrow(b).id), v(q1.arrow(a).tgt, q2.arrow(b).tgt),
                             v(q1.arrow(a).src, q2.arrow(b).src));
  for (int a = 0; a < q1.num_arrows(); ++a)
    for (int b = 0; b < q2.num_arrows(); ++b) {
      int sa = q1.arrow(a).src, ea = q1.arrow(a).tgt;
      int sb = q2.arrow(b).src, eb = q2.arrow(b).tgt;
      qp.potential.add_term({ab[a][b], xb[sa][b], ay[a][eb]}, 1);
      qp.potential.add_term({ab[a][b], ay[a][sb], xb[ea][b]}, -1);
    }
  return qp;
}

std::vector<int> tensor_cut(const Quiver& q1, const Quiver& q2) {
  int first = q1.num_arrows() * q2.num_vertices() + q1.num_vertices() * q2.num_arrows();
  std::vector<int> cut;
  for (int k = 0; k < q1.num_arrows() * q2.num_arrows(); ++k) cut.push_back(first + k);
  return cut;
}

QP square_product_qp(const Quiver& q1, const Quiver& q2) {
  if (!is_alternating(q1) || !is_alternating(q2))
    throw Error(ErrorCode::NotAlternating, "square product needs alternating quivers");
  auto isSink = [](const Quiver& q, int v) { return !q.in_arrows(v).empty(); };
  QP qp;
  Quiver& q = qp.quiver;
  int n2 = q2.num_vertices();
  auto v = [n2](int x, int y) { return x * n2 + y; };
  for (int x = 0; x < q1.num_vertices(); ++x)
    for (int y = 0; y < n2; ++y) q.add_vertex(pair_id(q1.vertex_id(x), q2.vertex_id(y)));
  auto special = [&](int x, int y) { return isSink(q1, x) && !isSink(q2, y); };  // Y1 x X2
  auto add = [&](const std::string& id, int x0, int y0, int x1, int y1) {
    if (special(x0, y0) || special(x1, y1)) return q.add_arrow(id + "*", v(x1, y1), v(x0, y0));
    return q.add_arrow(id, v(x0, y0), v(x1, y1));
  };
  std::vector<std::vector<int>> ay(q1.num_arrows(), std::vector<int>(n2));
  std::vector<std::vector<int>> xb(q1.num_vertices(), std::vector<int>(q2.num_arrows()));
  for (int a = 0; a < q1.num_arrows(); ++a)
    for (int y = 0; y < n2; ++y)
      ay[a][y] = add(pair_id(q1.arrow(a).id, q2.vertex_id(y)), q1.arrow(a).src, y, q1.arrow(a).tgt, y);
  for (int x = 0; x < q1.num_vertices(); ++x)
    for (int b = 0; b < q2.num_arrows(); ++b)
      xb[x][b] = add(pair_id(q1.vertex_id(x), q2.arrow(b).id), x, q2.arrow(b).src, x, q2.arrow(b).tgt);
  for (int a = 0; a < q1.num_arrows(); ++a)
    for (int b = 0; b < q2.num_arrows(); ++b) {
      int x = q1.arrow(a).src, y = q1.arrow(a).tgt;
      int xp = q2.arrow(b).src, yp = q2.arrow(b).tgt;
      qp.potential.add_term({xb[x][b], ay[a][yp], xb[y][b], ay[a][xp]}, 1);
    }
  return qp;
}

std::vector<int> product_permutation(const std::vector<int>& p1, const std::vector<int>& p2, int n2) {
  std::vector<int> out(p1.size() * p2.size());
  for (std::size_t x = 0; x < p1.size(); ++x)
    for (std::size_t y = 0; y < p2.size(); ++y) out[x * n2 + y] = p1[x] * n2 + p2[y];
  return out;
}

QP cuts_example_a() {
  return make_qp({"1", "2", "3", "4"},
                 {{"a", "1", "2"}, {"b", "2", "4"}, {"c", "4", "3"}, {"d", "3", "2"}, {"e", "4", "1"}},
                 {{1, {"a", "b", "e"}}, {1, {"b", "c", "d"}}});
}

QP cuts_example_b() {
  return make_qp({"1", "2", "3"}, {{"a", "1", "2"}, {"b", "2", "3"}, {"c", "3", "1"}, {"d", "3", "1"}},
                 {{1, {"a", "b", "c"}}, {1, {"a", "b", "d"}}});
}

Quiver covering_example() {
  Quiver q;
  for (const char* v : {"1", "2", "3"}) q.add_vertex(v);
  q.add_arrow("a", 0, 1);
  q.add_arrow("b", 0, 1);
  q.add_arrow("c", 1, 2);
  return q;
}

}  // namespace qpkit
