#include "qpkit/canvas.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

#include "json.hpp"

namespace qpkit {

Canvas build_canvas(const QP& qp) {
  Canvas x;
  x.vertices = qp.quiver.num_vertices();
  for (const auto& a : qp.quiver.arrows()) x.edges.push_back({a.src, a.tgt});
  for (const auto& [cyc, c] : qp.potential.terms())
    if (c != 0) x.cells.push_back(cyc);
  return x;
}

namespace {

int find_root(std::vector<int>& parent, int v) {
  while (parent[v] != v) v = parent[v] = parent[parent[v]];
  return v;
}

}  // namespace

bool is_connected(const Canvas& x) {
  if (x.vertices == 0) return false;
  std::vector<int> parent(x.vertices);
  std::iota(parent.begin(), parent.end(), 0);
  int comps = x.vertices;
  for (auto [s, t] : x.edges) {
    int a = find_root(parent, s), b = find_root(parent, t);
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps == 1;
}

int euler_characteristic(const Canvas& x) {
  return x.vertices - static_cast<int>(x.edges.size()) + static_cast<int>(x.cells.size());
}

namespace {

H1Group group_from(std::size_t generators, const IntMatrix& relations) {
  H1Group h;
  std::size_t rank = 0;
  if (!relations.empty() && generators > 0) {
    for (const auto& d : smith_invariants(relations)) {
      if (d == 0) continue;
      ++rank;
      if (d != 1) h.torsion.push_back(d);
    }
  }
  h.rank = static_cast<int>(generators - rank);
  return h;
}

}  // namespace

H1Group homology_h1(const Canvas& x) {
  const std::size_t e = x.edges.size();
  // rank of the boundary map on edges: |V| minus the number of components
  std::vector<int> parent(x.vertices);
  std::iota(parent.begin(), parent.end(), 0);
  std::size_t rank1 = 0;
  for (auto [s, t] : x.edges) {
    int a = find_root(parent, s), b = find_root(parent, t);
    if (a != b) {
      parent[a] = b;
      ++rank1;
    }
  }
  IntMatrix d2;
  for (const auto& cell : x.cells) {
    std::vector<mpz_class> row(e);
    for (int a : cell) row[a] += 1;
    d2.push_back(std::move(row));
  }
  // ker d1 is a direct summand, so H1 = Z^(e - rank1) / im d2 with the torsion of coker d2.
  H1Group h = group_from(e, d2);
  h.rank -= static_cast<int>(rank1);
  return h;
}

std::string GroupPresentation::to_string(const Quiver& q) const {
  std::string s = "<";
  for (std::size_t i = 0; i < generators.size(); ++i) s += (i ? "," : "") + q.arrow(generators[i]).id;
  s += " | ";
  for (std::size_t r = 0; r < relators.size(); ++r) {
    if (r) s += ", ";
    if (relators[r].empty()) s += "1";
    for (std::size_t k = 0; k < relators[r].size(); ++k) {
      int l = relators[r][k];
      s += (k ? " " : "") + q.arrow(generators[std::abs(l) - 1]).id + (l < 0 ? "^-1" : "");
    }
  }
  return s + ">";
}

GroupPresentation pi1_presentation(const Canvas& x, int basepoint) {
  if (!is_connected(x)) throw Error(ErrorCode::Disconnected, "the canvas is not connected");
  const int nv = x.vertices;
  std::vector<std::vector<int>> incident(nv);
  for (std::size_t a = 0; a < x.edges.size(); ++a) {
    incident[x.edges[a].first].push_back(static_cast<int>(a));
    incident[x.edges[a].second].push_back(static_cast<int>(a));
  }
  std::vector<bool> seen(nv, false), tree(x.edges.size(), false);
  std::deque<int> queue{basepoint};
  seen[basepoint] = true;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int a : incident[v]) {
      int w = x.edges[a].first == v ? x.edges[a].second : x.edges[a].first;
      if (seen[w]) continue;
      seen[w] = true;
      tree[a] = true;
      queue.push_back(w);
    }
  }
  GroupPresentation p;
  std::vector<int> gen(x.edges.size(), -1);
  for (std::size_t a = 0; a < x.edges.size(); ++a)
    if (!tree[a]) {
      gen[a] = static_cast<int>(p.generators.size());
      p.generators.push_back(static_cast<int>(a));
    }
  // The tree paths to the cell's start conjugate the relator; conjugates do not change the normal closure.
  for (const auto& cell : x.cells) {
    std::vector<int> r;
    for (int a : cell)
      if (gen[a] >= 0) r.push_back(gen[a] + 1);
    p.relators.push_back(std::move(r));
  }
  return p;
}

H1Group abelianize(const GroupPresentation& p) {
  IntMatrix m;
  for (const auto& r : p.relators) {
    std::vector<mpz_class> row(p.generators.size());
    for (int l : r) row[std::abs(l) - 1] += l > 0 ? 1 : -1;
    m.push_back(std::move(row));
  }
  return group_from(p.generators.size(), m);
}

namespace {

std::vector<int> reduce_word(const std::vector<int>& w) {
  std::vector<int> out;
  for (int l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  // cyclic reduction
  std::size_t i = 0, j = out.size();
  while (j - i >= 2 && out[i] == -out[j - 1]) {
    ++i;
    --j;
  }
  return std::vector<int>(out.begin() + static_cast<long>(i), out.begin() + static_cast<long>(j));
}

std::vector<int> inverse_word(const std::vector<int>& w) {
  std::vector<int> r;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(-*it);
  return r;
}

}  // namespace

GroupPresentation tietze_simplify(GroupPresentation p, std::size_t maxLength) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::vector<int>> rels;
    for (auto& r : p.relators) {
      auto w = reduce_word(r);
      if (!w.empty()) rels.push_back(std::move(w));
    }
    std::sort(rels.begin(), rels.end());
    rels.erase(std::unique(rels.begin(), rels.end()), rels.end());
    p.relators = std::move(rels);
    const int ng = static_cast<int>(p.generators.size());
    for (std::size_t ri = 0; ri < p.relators.size() && !changed; ++ri) {
      const auto& r = p.relators[ri];
      std::vector<int> count(ng + 1, 0);
      for (int l : r) ++count[std::abs(l)];
      for (std::size_t pos = 0; pos < r.size() && !changed; ++pos) {
        int g = std::abs(r[pos]);
        if (count[g] != 1) continue;
        // r = g^e w after rotation, so g = (w^{-1})^e
        std::vector<int> w;
        for (std::size_t k = 1; k < r.size(); ++k) w.push_back(r[(pos + k) % r.size()]);
        std::vector<int> image = r[pos] > 0 ? inverse_word(w) : w;
        std::vector<int> imageInv = inverse_word(image);
        std::vector<std::vector<int>> next;
        bool tooLong = false;
        for (std::size_t rj = 0; rj < p.relators.size() && !tooLong; ++rj) {
          if (rj == ri) continue;
          std::vector<int> s;
          for (int l : p.relators[rj]) {
            if (l == g)
              s.insert(s.end(), image.begin(), image.end());
            else if (l == -g)
              s.insert(s.end(), imageInv.begin(), imageInv.end());
            else
              s.push_back(l);
          }
          s = reduce_word(s);
          if (s.size() > maxLength) tooLong = true;
          next.push_back(std::move(s));
        }
        if (tooLong) continue;
        // drop generator g and renumber
        for (auto& s : next)
          for (int& l : s) {
            int a = std::abs(l);
            if (a > g) l = l > 0 ? a - 1 : -(a - 1);
          }
        p.generators.erase(p.generators.begin() + (g - 1));
        p.relators = std::move(next);
        changed = true;
      }
    }
  }
  return p;
}

int dart_vertex(const Quiver& q, int d) {
  const Arrow& a = q.arrow(dart_arrow(d));
  return dart_at_source(d) ? a.src : a.tgt;
}

namespace {

struct DartIndex {
  std::vector<int> vertex;  // vertex holding the dart in the rotation
  std::vector<int> pos;
};

DartIndex index_darts(const Quiver& q, const RotationSystem& rot) {
  const int nd = 2 * q.num_arrows();
  if (static_cast<int>(rot.order.size()) != q.num_vertices())
    throw Error(ErrorCode::NotPlanar, "rotation system has the wrong number of vertices");
  DartIndex ix{std::vector<int>(nd, -1), std::vector<int>(nd, -1)};
  for (int v = 0; v < q.num_vertices(); ++v)
    for (std::size_t i = 0; i < rot.order[v].size(); ++i) {
      int d = rot.order[v][i];
      if (d < 0 || d >= nd || ix.vertex[d] >= 0 || dart_vertex(q, d) != v)
        throw Error(ErrorCode::NotPlanar, "rotation system does not list each arrow end once at its vertex");
      ix.vertex[d] = v;
      ix.pos[d] = static_cast<int>(i);
    }
  for (int d = 0; d < nd; ++d)
    if (ix.vertex[d] < 0) throw Error(ErrorCode::NotPlanar, "an arrow end is missing from the rotation system");
  return ix;
}

}  // namespace

std::vector<Face> trace_faces(const Quiver& q, const RotationSystem& rot) {
  for (const auto& a : q.arrows())
    if (a.src == a.tgt) throw Error(ErrorCode::NotPlanar, "loops are not supported in embeddings");
  DartIndex ix = index_darts(q, rot);
  const int nd = 2 * q.num_arrows();
  std::vector<bool> used(nd, false);
  std::vector<Face> faces;
  for (int start = 0; start < nd; ++start) {
    if (used[start]) continue;
    Face f;
    int d = start;
    while (!used[d]) {
      used[d] = true;
      f.darts.push_back(d);
      int t = dart_twin(d);
      const auto& around = rot.order[ix.vertex[t]];
      d = around[(ix.pos[t] + 1) % around.size()];
    }
    bool forward = std::all_of(f.darts.begin(), f.darts.end(), dart_at_source);
    bool backward = std::none_of(f.darts.begin(), f.darts.end(), dart_at_source);
    if (forward || backward) {
      std::vector<int> cyc;
      for (int x : f.darts) cyc.push_back(dart_arrow(x));
      if (backward) std::reverse(cyc.begin(), cyc.end());
      f.cycle = cyc;
    }
    faces.push_back(std::move(f));
  }
  int outer = -1;
  if (rot.outerDart >= 0) {
    for (std::size_t i = 0; i < faces.size(); ++i)
      if (std::count(faces[i].darts.begin(), faces[i].darts.end(), rot.outerDart)) outer = static_cast<int>(i);
  } else {
    for (std::size_t i = 0; i < faces.size(); ++i)
      if (outer < 0 || faces[i].darts.size() > faces[outer].darts.size()) outer = static_cast<int>(i);
  }
  if (outer >= 0) faces[outer].outer = true;
  return faces;
}

bool satisfies_euler(const Quiver& q, const RotationSystem& rot) {
  QP tmp;
  tmp.quiver = q;
  if (!is_connected(build_canvas(tmp))) return false;
  auto faces = trace_faces(q, rot);
  return q.num_vertices() - q.num_arrows() + static_cast<int>(faces.size()) == 2;
}

RotationSystem rotation_from_coordinates(const Quiver& q, const std::vector<std::pair<Rational, Rational>>& xy) {
  if (static_cast<int>(xy.size()) != q.num_vertices()) throw Error(ErrorCode::BadParameter, "one point per vertex");
  RotationSystem rot;
  rot.order.resize(q.num_vertices());
  auto dir = [&](int d) {
    int v = dart_vertex(q, d);
    int w = dart_vertex(q, dart_twin(d));
    return std::make_pair(xy[w].first - xy[v].first, xy[w].second - xy[v].second);
  };
  auto half = [](const std::pair<Rational, Rational>& p) {
    return (p.second > 0 || (p.second == 0 && p.first > 0)) ? 0 : 1;
  };
  for (int a = 0; a < q.num_arrows(); ++a) {
    if (q.arrow(a).src == q.arrow(a).tgt) throw Error(ErrorCode::NotPlanar, "loops are not supported in embeddings");
    rot.order[q.arrow(a).src].push_back(dart_of(a, true));
    rot.order[q.arrow(a).tgt].push_back(dart_of(a, false));
  }
  for (auto& around : rot.order) {
    std::sort(around.begin(), around.end(), [&](int x, int y) {
      auto p = dir(x), r = dir(y);
      int hp = half(p), hr = half(r);
      if (hp != hr) return hp < hr;
      return p.first * r.second - p.second * r.first > 0;
    });
    for (std::size_t i = 0; i + 1 < around.size(); ++i) {
      auto p = dir(around[i]), r = dir(around[i + 1]);
      if (half(p) == half(r) && p.first * r.second - p.second * r.first == 0)
        throw Error(ErrorCode::NotPlanar, "two arrows leave a vertex in the same direction");
    }
  }
  // outer face: largest signed area (traced counterclockwise)
  auto faces = trace_faces(q, rot);
  std::optional<Rational> best;
  for (const auto& f : faces) {
    Rational area = 0;
    for (int d : f.darts) {
      auto p = xy[dart_vertex(q, d)];
      auto r = xy[dart_vertex(q, dart_twin(d))];
      area += p.first * r.second - r.first * p.second;
    }
    if (!best || area > *best) {
      best = area;
      rot.outerDart = f.darts.front();
    }
  }
  return rot;
}

Potential faces_and_potential(const Quiver& q, const RotationSystem& rot) {
  if (!satisfies_euler(q, rot)) throw Error(ErrorCode::NotPlanar, "rotation system is not a connected plane embedding");
  Potential w;
  for (const auto& f : trace_faces(q, rot))
    if (!f.outer && f.cycle) w.add_term(*f.cycle, 1);
  return w;
}

PlanarCertificate check_planar(const PlanarQP& p) {
  PlanarCertificate c;
  const Quiver& q = p.qp.quiver;
  try {
    c.planar = satisfies_euler(q, p.rot);
  } catch (const Error& e) {
    c.mismatches.push_back(e.what());
    return c;
  }
  if (!c.planar) {
    c.mismatches.push_back("not a connected genus-0 embedding");
    return c;
  }
  std::multiset<std::vector<int>> faceCycles;
  for (const auto& f : trace_faces(q, p.rot)) {
    if (f.outer) continue;
    if (!f.cycle) {
      std::string s;
      for (int d : f.darts) s += (s.empty() ? "" : " ") + q.arrow(dart_arrow(d)).id;
      c.mismatches.push_back("bounded face is not a directed cycle: " + s);
      continue;
    }
    faceCycles.insert(canonical_rotation(*f.cycle));
  }
  std::multiset<std::vector<int>> cells;
  for (const auto& [cyc, coef] : p.qp.potential.terms()) cells.insert(cyc);
  for (const auto& cyc : cells)
    if (!faceCycles.count(cyc)) c.mismatches.push_back("potential term is not a face: " + path_to_string(q, Path::of_word(q, cyc)));
  for (const auto& cyc : faceCycles)
    if (faceCycles.count(cyc) > 1 || !cells.count(cyc))
      c.mismatches.push_back("face is not a potential term: " + path_to_string(q, Path::of_word(q, cyc)));
  c.facesMatchCells = c.mismatches.empty();
  c.disk = c.planar && c.facesMatchCells;
  return c;
}

PlanarCertificate validate_planar(const PlanarQP& p) {
  PlanarCertificate c = check_planar(p);
  if (!c.disk) {
    std::string msg = "embedding does not certify a disk";
    for (const auto& m : c.mismatches) msg += "; " + m;
    throw Error(ErrorCode::EmbeddingMismatch, msg);
  }
  return c;
}

bool on_boundary(const PlanarQP& p, int v) {
  for (const auto& f : trace_faces(p.qp.quiver, p.rot))
    if (f.outer)
      for (int d : f.darts)
        if (dart_vertex(p.qp.quiver, d) == v) return true;
  return p.rot.order.at(v).empty();
}

PlanarQP planar_from_coordinates(const Quiver& q, const std::vector<std::pair<Rational, Rational>>& xy) {
  PlanarQP p;
  p.qp.quiver = q;
  p.rot = rotation_from_coordinates(q, xy);
  p.qp.potential = faces_and_potential(q, p.rot);
  return p;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    default: return "unknown";
  }
}

SimpleConnectivity is_simply_connected(const QP& qp, const RotationSystem* embedding, std::size_t effort) {
  Canvas x = build_canvas(qp);
  if (!is_connected(x)) return {Verdict::No, "canvas is disconnected"};
  H1Group h = homology_h1(x);
  if (!h.trivial()) return {Verdict::No, "first homology is nonzero"};
  if (embedding) {
    PlanarCertificate c = check_planar(PlanarQP{qp, *embedding});
    if (c.disk) return {Verdict::Yes, "planar disk certificate"};
  }
  GroupPresentation p = tietze_simplify(pi1_presentation(x), effort);
  if (p.generators.empty()) return {Verdict::Yes, "presentation simplifies to the trivial group"};
  return {Verdict::Unknown, "presentation with " + std::to_string(p.generators.size()) + " generators left"};
}

std::string serialize_planar(const PlanarQP& p, int indent) {
  const Quiver& q = p.qp.quiver;
  auto j = nlohmann::json::parse(serialize_qp(p.qp));
  nlohmann::json emb = nlohmann::json::object();
  for (int v = 0; v < q.num_vertices(); ++v) {
    nlohmann::json list = nlohmann::json::array();
    for (int d : p.rot.order[v]) list.push_back(q.arrow(dart_arrow(d)).id);
    emb[q.vertex_id(v)] = list;
  }
  j["embedding"] = emb;
  if (p.rot.outerDart >= 0)
    j["outer_face"] = {{"vertex", q.vertex_id(dart_vertex(q, p.rot.outerDart))},
                       {"arrow", q.arrow(dart_arrow(p.rot.outerDart)).id}};
  return j.dump(indent);
}

PlanarQP parse_planar(const std::string& text) try {
  PlanarQP p;
  p.qp = parse_qp(text);
  const Quiver& q = p.qp.quiver;
  auto j = nlohmann::json::parse(text);
  if (!j.contains("embedding") || !j["embedding"].is_object())
    throw Error(ErrorCode::MalformedJson, "planar QP needs an embedding object");
  auto dart_at = [&](const std::string& vid, const std::string& aid) {
    int v = q.vertex_index(vid);
    int a = q.arrow_index(aid);
    const Arrow& ar = q.arrow(a);
    if (ar.src == ar.tgt) throw Error(ErrorCode::NotPlanar, "loops are not supported in embeddings");
    if (ar.src == v) return dart_of(a, true);
    if (ar.tgt == v) return dart_of(a, false);
    throw Error(ErrorCode::DanglingReference, "arrow " + aid + " is not incident to vertex " + vid);
  };
  p.rot.order.assign(q.num_vertices(), {});
  for (auto it = j["embedding"].begin(); it != j["embedding"].end(); ++it) {
    if (!it.value().is_array()) throw Error(ErrorCode::MalformedJson, "embedding lists must be arrays");
    int v = q.vertex_index(it.key());
    for (const auto& a : it.value()) p.rot.order[v].push_back(dart_at(it.key(), a.get<std::string>()));
  }
  if (j.contains("outer_face")) {
    const auto& o = j["outer_face"];
    if (!o.is_object() || !o.contains("vertex") || !o.contains("arrow"))
      throw Error(ErrorCode::MalformedJson, "outer_face needs vertex and arrow");
    p.rot.outerDart = dart_at(o["vertex"].get<std::string>(), o["arrow"].get<std::string>());
  }
  trace_faces(q, p.rot);
  return p;
} catch (const nlohmann::json::exception& e) {
  throw Error(ErrorCode::MalformedJson, e.what());
}

}  // namespace qpkit
