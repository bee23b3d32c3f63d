#pragma once
#include <algorithm>
#include <string>
#include <vector>

#include "qpkit/algebra.hpp"
#include "qpkit/cuts.hpp"
#include "qpkit/linalg.hpp"
#include "qpkit/qp.hpp"

namespace testing {

inline int arrow(const qpkit::Quiver& q, const std::string& id) { return q.arrow_index(id); }
inline int vertex(const qpkit::Quiver& q, const std::string& id) { return q.vertex_index(id); }

inline qpkit::Cut cut(const qpkit::Quiver& q, const std::vector<std::string>& ids) {
  qpkit::Cut c = qpkit::cut_from_ids(q, ids);
  std::sort(c.begin(), c.end());
  return c;
}

inline qpkit::AlgebraElement word(const qpkit::Quiver& q, const std::vector<std::string>& ids,
                                  const qpkit::Rational& c = 1) {
  std::vector<int> w;
  for (const auto& id : ids) w.push_back(q.arrow_index(id));
  return qpkit::AlgebraElement::of_path(qpkit::Path::of_word(q, w), c);
}

// Dimension of KQ modulo monomial relations, by enumerating the paths that avoid them.
inline std::size_t monomial_dim(const qpkit::Quiver& q, const std::vector<std::vector<int>>& zero,
                                std::size_t maxLen) {
  std::size_t count = q.num_vertices();
  std::vector<std::vector<int>> layer;
  for (int a = 0; a < q.num_arrows(); ++a) layer.push_back({a});
  auto dead = [&](const std::vector<int>& w) {
    for (const auto& z : zero)
      if (w.size() >= z.size() && std::search(w.begin(), w.end(), z.begin(), z.end()) != w.end()) return true;
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

// All rotations of all terms with the first arrow stripped; for monomial potentials with
// pairwise distinct arrows these are exactly the Jacobian relations.
inline std::vector<std::vector<int>> stripped_rotations(const qpkit::Potential& w) {
  std::vector<std::vector<int>> out;
  for (const auto& [cyc, c] : w.terms())
    for (std::size_t r = 0; r < cyc.size(); ++r) {
      std::vector<int> x;
      for (std::size_t k = 1; k < cyc.size(); ++k) x.push_back(cyc[(r + k) % cyc.size()]);
      out.push_back(x);
    }
  return out;
}

// Dimension of KQ / (relations) for relations homogeneous in path length, computed degree by
// degree as paths modulo the span of u r v. Stops at the first degree with nothing left.
inline std::size_t graded_quotient_dim(const qpkit::Quiver& q, const std::vector<qpkit::AlgebraElement>& rels,
                                       std::size_t maxDeg) {
  using qpkit::Path;
  std::vector<std::vector<Path>> paths(maxDeg + 1);
  for (int v = 0; v < q.num_vertices(); ++v) paths[0].push_back(Path::trivial(v));
  for (std::size_t d = 1; d <= maxDeg; ++d)
    for (const auto& p : paths[d - 1])
      for (int b : q.out_arrows(p.tgt)) paths[d].push_back(*qpkit::concat(p, Path::of_arrow(q, b)));
  std::size_t total = 0;
  for (std::size_t d = 0; d <= maxDeg; ++d) {
    std::map<std::vector<int>, int> index;
    for (const auto& p : paths[d])
      if (!p.is_trivial()) index[p.arrows] = static_cast<int>(index.size());
    qpkit::Echelon span;
    for (const auto& r : rels) {
      std::size_t rd = r.degree();
      if (rd > d) continue;
      for (std::size_t ul = 0; ul + rd <= d; ++ul)
        for (const auto& u : paths[ul])
          for (const auto& v : paths[d - rd - ul]) {
            qpkit::SparseVec row;
            for (const auto& [p, c] : r.terms()) {
              auto up = qpkit::concat(u, p);
              if (!up) continue;
              auto upv = qpkit::concat(*up, v);
              if (upv) row[index.at(upv->arrows)] += c;
            }
            qpkit::SparseVec clean;
            for (const auto& [i, c] : row)
              if (c != 0) clean[i] = c;
            if (!clean.empty()) span.insert(clean);
          }
    }
    std::size_t here = d == 0 ? paths[0].size() : index.size() - span.rank();
    if (here == 0) return total;
    total += here;
  }
  return total;
}

}  // namespace testing
