#include <algorithm>
#include <set>

#include "qpkit/canonical.hpp"
#include "qpkit/mutation.hpp"

namespace qpkit {

namespace {

int degree(const Quiver& q, int k) {
  return static_cast<int>(q.in_arrows(k).size() + q.out_arrows(k).size());
}

// Index of the face holding each dart.
std::vector<int> face_of_darts(const std::vector<Face>& faces, int numDarts) {
  std::vector<int> out(numDarts, -1);
  for (std::size_t f = 0; f < faces.size(); ++f)
    for (int d : faces[f].darts) out[d] = static_cast<int>(f);
  return out;
}

// Removes the given arrows from quiver and rotation, renumbering darts.
void drop_arrows(Quiver& q, RotationSystem& rot, const std::set<int>& dead) {
  Quiver nq;
  for (int v = 0; v < q.num_vertices(); ++v) nq.add_vertex(q.vertex_id(v));
  std::vector<int> image(q.num_arrows(), -1);
  for (int a = 0; a < q.num_arrows(); ++a)
    if (!dead.count(a)) image[a] = nq.add_arrow(q.arrow(a).id, q.arrow(a).src, q.arrow(a).tgt);
  RotationSystem nr;
  nr.order.resize(q.num_vertices());
  for (int v = 0; v < q.num_vertices(); ++v)
    for (int d : rot.order[v])
      if (image[dart_arrow(d)] >= 0) nr.order[v].push_back(dart_of(image[dart_arrow(d)], dart_at_source(d)));
  nr.outerDart = rot.outerDart >= 0 && image[dart_arrow(rot.outerDart)] >= 0
                     ? dart_of(image[dart_arrow(rot.outerDart)], dart_at_source(rot.outerDart))
                     : -1;
  q = std::move(nq);
  rot = std::move(nr);
}

}  // namespace

bool planar_mutable(const PlanarQP& p, int k) {
  const Quiver& q = p.qp.quiver;
  if (k < 0 || k >= q.num_vertices() || on_two_cycle(q, k)) return false;
  int deg = degree(q, k);
  return on_boundary(p, k) ? deg <= 4 : deg == 4;
}

PlanarQP planar_mutate(const PlanarQP& p, int k, bool crossCheck) {
  const Quiver& q = p.qp.quiver;
  if (k < 0 || k >= q.num_vertices()) throw Error(ErrorCode::BadParameter, "vertex out of range");
  if (!check_planar(p).disk) throw Error(ErrorCode::NotPlanar, "input is not a planar QP");
  if (!planar_mutable(p, k))
    throw Error(ErrorCode::NotPlanarMutable, "vertex " + q.vertex_id(k) + " fails the degree or position condition");

  auto faces = trace_faces(q, p.rot);
  auto faceOf = face_of_darts(faces, 2 * q.num_arrows());
  const auto& around = p.rot.order[k];
  const int deg = static_cast<int>(around.size());

  // Corners (c, sigma c) pairing an arrow into k with one out of k; interior corners win ties.
  struct Corner {
    int c, next;
    bool outer;
  };
  std::map<std::pair<int, int>, Corner> chosen;
  for (int i = 0; i < deg; ++i) {
    int c = around[i], n = around[(i + 1) % deg];
    bool cIn = !dart_at_source(c), nIn = !dart_at_source(n);
    if (cIn == nIn) continue;
    std::pair<int, int> ab = cIn ? std::pair{dart_arrow(c), dart_arrow(n)} : std::pair{dart_arrow(n), dart_arrow(c)};
    bool outer = faces[faceOf[n]].outer;
    auto it = chosen.find(ab);
    if (it == chosen.end() || (it->second.outer && !outer)) chosen[ab] = Corner{c, n, outer};
  }
  if (chosen.size() != q.in_arrows(k).size() * q.out_arrows(k).size())
    throw Error(ErrorCode::NotPlanarMutable, "corners at " + q.vertex_id(k) + " do not pair every arrow in with every arrow out");

  PremutationMap pm;
  QP pre = premutate(p.qp, k, &pm);
  Quiver nq = pre.quiver;
  auto mapDart = [&](int d) {
    int a = pm.arrowImage[dart_arrow(d)];
    int v = dart_vertex(q, d);
    return dart_of(a, nq.arrow(a).src == v);
  };
  RotationSystem rot;
  rot.order.resize(q.num_vertices());
  for (int v = 0; v < q.num_vertices(); ++v)
    for (int d : p.rot.order[v]) rot.order[v].push_back(mapDart(d));
  rot.outerDart = mapDart(p.rot.outerDart);

  for (const auto& [ab, corner] : chosen) {
    int comp = pm.composite.at(ab);
    int farC = dart_twin(corner.c), farN = dart_twin(corner.next);
    int vp = dart_vertex(q, farC), vq = dart_vertex(q, farN);
    int newP = dart_of(comp, nq.arrow(comp).src == vp);
    int newQ = dart_of(comp, nq.arrow(comp).src == vq);
    if (vp == vq && newP == newQ) newQ = dart_twin(newP);
    int anchorP = mapDart(farC), anchorQ = mapDart(farN);
    auto& op = rot.order[vp];
    op.insert(std::find(op.begin(), op.end(), anchorP), newP);
    auto& oq = rot.order[vq];
    oq.insert(std::find(oq.begin(), oq.end(), anchorQ) + 1, newQ);
    if (rot.outerDart == anchorP || rot.outerDart == mapDart(corner.next)) rot.outerDart = newP;
  }

  // Delete digon faces one at a time.
  while (true) {
    auto fs = trace_faces(nq, rot);
    const Face* digon = nullptr;
    for (const auto& f : fs)
      if (!f.outer && f.darts.size() == 2) {
        digon = &f;
        break;
      }
    if (!digon) break;
    std::set<int> dead{dart_arrow(digon->darts[0]), dart_arrow(digon->darts[1])};
    if (dead.count(dart_arrow(rot.outerDart))) {
      auto fod = face_of_darts(fs, 2 * nq.num_arrows());
      const auto& ring = fs[fod[rot.outerDart]].darts;
      auto pos = std::find(ring.begin(), ring.end(), rot.outerDart) - ring.begin();
      int moved = -1;
      for (std::size_t s = 1; s <= ring.size() && moved < 0; ++s) {
        int d = ring[(pos + s) % ring.size()];
        if (!dead.count(dart_arrow(d))) moved = d;
      }
      if (moved < 0) throw Error(ErrorCode::InvariantViolated, "outer face vanished during digon removal");
      rot.outerDart = moved;
    }
    drop_arrows(nq, rot, dead);
  }

  PlanarQP out;
  out.qp.quiver = nq;
  out.qp.potential = faces_and_potential(nq, rot);
  out.rot = rot;
  auto cert = check_planar(out);
  if (!cert.disk) throw Error(ErrorCode::InvariantViolated, "planar mutation left the class of planar QPs");
  if (crossCheck) {
    QP dwz = mutate(p.qp, k).qp;
    if (!isomorphic(dwz, out.qp, IsoMode::Rescaling) && !find_right_equivalence(dwz, out.qp, 2))
      throw Error(ErrorCode::InvariantViolated, "planar mutation disagrees with mutation at " + q.vertex_id(k));
  }
  return out;
}

}  // namespace qpkit
