#include <array>
#include <map>
#include <set>

#include "qpkit/canonical.hpp"
#include "qpkit/families.hpp"

namespace qpkit {

PlanarQP product_embedding(const QP& product, int n2) {
  const Quiver& q = product.quiver;
  if (n2 <= 0 || q.num_vertices() % n2 != 0) throw Error(ErrorCode::BadParameter, "grid width does not divide the vertex count");
  std::vector<std::pair<Rational, Rational>> xy;
  for (int v = 0; v < q.num_vertices(); ++v) xy.push_back({Rational(v / n2), Rational(v % n2)});
  PlanarQP p{product, rotation_from_coordinates(q, xy)};
  validate_planar(p);
  return p;
}

namespace {

std::string triple_id(int x1, int x2, int x3) {
  return "(" + std::to_string(x1) + "," + std::to_string(x2) + "," + std::to_string(x3) + ")";
}

}  // namespace

PlanarQP triangle_qp(int s) {
  if (s < 2) throw Error(ErrorCode::BadParameter, "triangle_qp needs s >= 2");
  Quiver q;
  std::map<std::array<int, 3>, int> index;
  std::vector<std::pair<Rational, Rational>> xy;
  for (int x1 = s - 1; x1 >= 0; --x1)
    for (int x2 = s - 1 - x1; x2 >= 0; --x2) {
      int x3 = s - 1 - x1 - x2;
      index[{x1, x2, x3}] = q.add_vertex(triple_id(x1, x2, x3));
      xy.push_back({Rational(2 * x2 + x3), Rational(x3)});
    }
  const int f[3][3] = {{-1, 1, 0}, {0, -1, 1}, {1, 0, -1}};
  for (int i = 0; i < 3; ++i)
    for (const auto& [x, v] : index) {
      std::array<int, 3> y{x[0] + f[i][0], x[1] + f[i][1], x[2] + f[i][2]};
      auto it = index.find(y);
      if (it == index.end()) continue;
      q.add_arrow("t" + std::to_string(i + 1) + triple_id(x[0], x[1], x[2]), v, it->second);
    }
  PlanarQP p = planar_from_coordinates(q, xy);
  validate_planar(p);
  return p;
}

std::vector<int> triangle_type_arrows(const Quiver& q, int i) {
  if (i < 1 || i > 3) throw Error(ErrorCode::BadParameter, "arrow type must be 1, 2 or 3");
  std::string prefix = "t" + std::to_string(i) + "(";
  std::vector<int> out;
  for (int a = 0; a < q.num_arrows(); ++a)
    if (q.arrow(a).id.rfind(prefix, 0) == 0) out.push_back(a);
  return out;
}

namespace {

std::string grid_id(int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }

// Corner labels 0..3 = a, b, c, d.
using Edge = std::pair<int, int>;
const std::vector<Edge>& pattern_edges(int pattern) {
  static const std::vector<Edge> p1{{0, 2}, {2, 3}, {3, 1}, {1, 0}};
  static const std::vector<Edge> p2{{0, 2}, {2, 1}, {1, 0}, {1, 3}, {3, 2}};
  static const std::vector<Edge> p3{{0, 3}, {3, 2}, {2, 0}, {3, 1}, {1, 0}};
  if (pattern == 1) return p1;
  if (pattern == 2) return p2;
  if (pattern == 3) return p3;
  throw Error(ErrorCode::IllegalFacePattern, "unknown square pattern " + std::to_string(pattern));
}

std::array<std::pair<int, int>, 4> corners(int i, int j) {
  return {std::pair{i, j}, std::pair{i + 1, j}, std::pair{i, j + 1}, std::pair{i + 1, j + 1}};
}

// Directed edges of the square at (i,j), keyed by grid positions.
std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> square_edges(int i, int j, SquareFace f) {
  auto c = corners(i, j);
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> out;
  for (auto [u, v] : pattern_edges(f.pattern)) {
    if (f.opposite) std::swap(u, v);
    out.push_back({c[u], c[v]});
  }
  return out;
}

}  // namespace

PlanarQP square_shaped_qp(int s, const std::vector<SquareFace>& faces) {
  if (s < 2) throw Error(ErrorCode::BadParameter, "square_shaped_qp needs s >= 2");
  if (faces.size() != static_cast<std::size_t>((s - 1) * (s - 1)))
    throw Error(ErrorCode::BadParameter, "expected (s-1)^2 squares");
  using P = std::pair<int, int>;
  std::map<std::pair<P, P>, P> directed;  // unordered endpoints -> (source, target)
  std::vector<std::pair<P, P>> order;
  for (int j = 1; j < s; ++j)
    for (int i = 1; i < s; ++i)
      for (const auto& [u, v] : square_edges(i, j, faces[(j - 1) * (s - 1) + (i - 1)])) {
        auto key = std::minmax(u, v);
        auto it = directed.find(key);
        if (it == directed.end()) {
          directed[key] = u;
          order.push_back({u, v});
        } else if (it->second != u) {
          throw Error(ErrorCode::IllegalFacePattern,
                      "squares disagree on the edge " + grid_id(u.first, u.second) + " - " + grid_id(v.first, v.second));
        }
      }
  Quiver q;
  std::vector<std::pair<Rational, Rational>> xy;
  for (int j = 1; j <= s; ++j)
    for (int i = 1; i <= s; ++i) {
      q.add_vertex(grid_id(i, j));
      xy.push_back({Rational(i), Rational(j)});
    }
  auto vid = [s](P x) { return (x.second - 1) * s + (x.first - 1); };
  for (const auto& [u, v] : order)
    q.add_arrow(grid_id(u.first, u.second) + ">" + grid_id(v.first, v.second), vid(u), vid(v));
  PlanarQP p = planar_from_coordinates(q, xy);
  validate_planar(p);
  return p;
}

std::vector<SquareFace> orient_square_patterns(int s, const std::vector<int>& patterns) {
  if (patterns.size() != static_cast<std::size_t>((s - 1) * (s - 1)))
    throw Error(ErrorCode::BadParameter, "expected (s-1)^2 squares");
  std::vector<SquareFace> faces(patterns.size());
  for (std::size_t k = 0; k < patterns.size(); ++k) {
    pattern_edges(patterns[k]);
    faces[k].pattern = patterns[k];
  }
  // Row-major sweep: the left neighbour (or the one below at the row start) fixes the orientation.
  auto edgeDir = [&](int i, int j, SquareFace f, std::pair<int, int> u, std::pair<int, int> v) {
    for (const auto& [x, y] : square_edges(i, j, f)) {
      if (x == u && y == v) return 1;
      if (x == v && y == u) return -1;
    }
    return 0;
  };
  for (int j = 1; j < s; ++j)
    for (int i = 1; i < s; ++i) {
      if (i == 1 && j == 1) continue;
      int k = (j - 1) * (s - 1) + (i - 1);
      std::pair<int, int> u, v;
      SquareFace nb;
      int ni, nj;
      if (i > 1) {
        ni = i - 1, nj = j;
        u = {i, j}, v = {i, j + 1};
      } else {
        ni = i, nj = j - 1;
        u = {i, j}, v = {i + 1, j};
      }
      nb = faces[(nj - 1) * (s - 1) + (ni - 1)];
      int want = edgeDir(ni, nj, nb, u, v);
      SquareFace plain{faces[k].pattern, false};
      faces[k].opposite = edgeDir(i, j, plain, u, v) != want;
    }
  return faces;
}

std::optional<std::vector<SquareFace>> recognize_square_shaped(const Quiver& q, int s) {
  if (q.num_vertices() != s * s) return std::nullopt;
  std::map<std::pair<int, int>, int> vid;
  for (int j = 1; j <= s; ++j)
    for (int i = 1; i <= s; ++i) {
      auto v = q.find_vertex(grid_id(i, j));
      if (!v) return std::nullopt;
      vid[{i, j}] = *v;
    }
  std::set<std::pair<int, int>> arrows;
  for (const auto& ar : q.arrows())
    if (!arrows.insert({ar.src, ar.tgt}).second) return std::nullopt;
  std::set<std::pair<int, int>> covered;
  std::vector<SquareFace> faces;
  for (int j = 1; j < s; ++j)
    for (int i = 1; i < s; ++i) {
      auto c = corners(i, j);
      std::set<std::pair<int, int>> local;
      for (int u = 0; u < 4; ++u)
        for (int v = 0; v < 4; ++v)
          if (u != v && arrows.count({vid[c[u]], vid[c[v]]})) local.insert({vid[c[u]], vid[c[v]]});
      std::optional<SquareFace> found;
      for (int pat = 1; pat <= 3 && !found; ++pat)
        for (bool opp : {false, true}) {
          std::set<std::pair<int, int>> want;
          for (const auto& [u, v] : square_edges(i, j, {pat, opp})) want.insert({vid[u], vid[v]});
          if (want == local) {
            found = SquareFace{pat, opp};
            break;
          }
        }
      if (!found) return std::nullopt;
      faces.push_back(*found);
      covered.insert(local.begin(), local.end());
    }
  if (covered.size() != arrows.size()) return std::nullopt;
  return faces;
}

bool is_symmetric_square_shaped(const PlanarQP& p, int s) {
  const Quiver& q = p.qp.quiver;
  std::vector<int> sigma(q.num_vertices(), -1);
  for (int i = 1; i <= s; ++i)
    for (int j = 1; j <= s; ++j) {
      auto x = q.find_vertex(grid_id(i, j));
      auto y = q.find_vertex(grid_id(s - i + 1, s - j + 1));
      if (!x || !y) throw Error(ErrorCode::BadParameter, "not a square-shaped vertex set");
      sigma[*x] = *y;
    }
  for (const auto& iso : qp_automorphisms(p.qp, IsoMode::Exact))
    if (iso.vertexMap == sigma) return true;
  return false;
}

PlanarQP square_shaped_example() {
  // Arrows as (source, target) in two-digit ij labels.
  static const int arrows[][2] = {
      {14, 24}, {24, 13}, {24, 33}, {34, 24}, {34, 44}, {44, 43}, {13, 14}, {13, 23}, {23, 24}, {23, 22},
      {33, 23}, {33, 34}, {33, 42}, {43, 33}, {12, 13}, {12, 11}, {22, 12}, {22, 32}, {22, 21}, {32, 33},
      {32, 31}, {42, 43}, {42, 32}, {11, 22}, {21, 11}, {21, 31}, {31, 22}, {31, 41}, {41, 42},
  };
  Quiver q;
  std::vector<std::pair<Rational, Rational>> xy;
  for (int j = 1; j <= 4; ++j)
    for (int i = 1; i <= 4; ++i) {
      q.add_vertex(grid_id(i, j));
      xy.push_back({Rational(i), Rational(j)});
    }
  auto vid = [](int ij) { return (ij % 10 - 1) * 4 + (ij / 10 - 1); };
  for (const auto& a : arrows)
    q.add_arrow(grid_id(a[0] / 10, a[0] % 10) + ">" + grid_id(a[1] / 10, a[1] % 10), vid(a[0]), vid(a[1]));
  PlanarQP p = planar_from_coordinates(q, xy);
  validate_planar(p);
  return p;
}

}  // namespace qpkit
