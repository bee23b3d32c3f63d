#include "qpkit/canonical.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "qpkit/linalg.hpp"

namespace qpkit {

namespace {

struct Labeling {
  std::vector<int> vrank;  // vertex -> canonical position
  std::vector<int> arank;  // arrow -> canonical position
};

class Search {
 public:
  Search(const QP& qp, bool usePotential, IsoMode mode, std::size_t keep)
      : qp_(qp), usePotential_(usePotential), mode_(mode), keep_(keep) {
    n_ = qp.quiver.num_vertices();
    m_ = qp.quiver.num_arrows();
    if (usePotential_) {
      std::set<Rational> coefs;
      for (const auto& [cyc, c] : qp.potential.terms()) coefs.insert(c);
      std::vector<Rational> sorted(coefs.begin(), coefs.end());
      for (const auto& [cyc, c] : qp.potential.terms()) {
        terms_.push_back(cyc);
        coefs_.push_back(c);
        int rank = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), c) - sorted.begin());
        coefRank_.push_back(mode_ == IsoMode::Exact ? rank : 0);
      }
    }
  }

  void run() {
    std::vector<int> col(n_, 0);
    // initial invariants
    std::vector<std::vector<long long>> sig(n_);
    for (int v = 0; v < n_; ++v) {
      int loops = 0;
      for (int a : qp_.quiver.out_arrows(v))
        if (qp_.quiver.arrow(a).tgt == v) ++loops;
      sig[v] = {static_cast<long long>(qp_.quiver.out_arrows(v).size()),
                static_cast<long long>(qp_.quiver.in_arrows(v).size()), loops};
    }
    if (usePotential_) {
      for (std::size_t t = 0; t < terms_.size(); ++t) {
        std::map<int, int> occ;
        for (int a : terms_[t]) occ[qp_.quiver.arrow(a).src]++;
        for (auto [v, k] : occ) {
          sig[v].push_back(static_cast<long long>(terms_[t].size()) * 1000003LL + coefRank_[t] * 1009LL + k);
        }
      }
      for (int v = 0; v < n_; ++v) std::sort(sig[v].begin() + 3, sig[v].end());
    }
    col = ranks(sig);
    descend(refine(col));
  }

  const std::string& best() const { return best_; }
  const std::vector<Labeling>& leaves() const { return leaves_; }

 private:
  static std::vector<int> ranks(const std::vector<std::vector<long long>>& sig) {
    std::vector<std::vector<long long>> sorted = sig;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> r(sig.size());
    for (std::size_t v = 0; v < sig.size(); ++v)
      r[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), sig[v]) - sorted.begin());
    return r;
  }

  std::vector<int> refine(std::vector<int> col) const {
    std::size_t classes = std::set<int>(col.begin(), col.end()).size();
    while (true) {
      std::vector<std::vector<long long>> sig(n_);
      for (int v = 0; v < n_; ++v) {
        std::vector<long long>& s = sig[v];
        s.push_back(col[v]);
        std::vector<long long> outs, ins;
        for (int a : qp_.quiver.out_arrows(v)) outs.push_back(col[qp_.quiver.arrow(a).tgt]);
        for (int a : qp_.quiver.in_arrows(v)) ins.push_back(col[qp_.quiver.arrow(a).src]);
        std::sort(outs.begin(), outs.end());
        std::sort(ins.begin(), ins.end());
        s.push_back(-1);
        s.insert(s.end(), outs.begin(), outs.end());
        s.push_back(-2);
        s.insert(s.end(), ins.begin(), ins.end());
      }
      if (usePotential_) {
        std::vector<std::vector<std::vector<long long>>> occ(n_);
        for (std::size_t t = 0; t < terms_.size(); ++t) {
          const auto& cyc = terms_[t];
          std::size_t L = cyc.size();
          for (std::size_t i = 0; i < L; ++i) {
            int v = qp_.quiver.arrow(cyc[i]).src;
            std::vector<long long> seq{coefRank_[t]};
            for (std::size_t k = 0; k < L; ++k) seq.push_back(col[qp_.quiver.arrow(cyc[(i + k) % L]).src]);
            occ[v].push_back(std::move(seq));
          }
        }
        for (int v = 0; v < n_; ++v) {
          std::sort(occ[v].begin(), occ[v].end());
          for (const auto& seq : occ[v]) {
            sig[v].push_back(-3);
            sig[v].insert(sig[v].end(), seq.begin(), seq.end());
          }
        }
      }
      std::vector<int> next = ranks(sig);
      std::size_t k = std::set<int>(next.begin(), next.end()).size();
      col = std::move(next);
      if (k == classes) return col;
      classes = k;
    }
  }

  void descend(const std::vector<int>& col) {
    std::map<int, std::vector<int>> cells;
    for (int v = 0; v < n_; ++v) cells[col[v]].push_back(v);
    const std::vector<int>* target = nullptr;
    int targetColor = 0;
    for (const auto& [c, vs] : cells)
      if (vs.size() > 1 && (!target || vs.size() < target->size())) {
        target = &vs;
        targetColor = c;
      }
    if (!target) {
      leaf(col);
      return;
    }
    std::vector<int> cell = *target;
    for (int v : cell) {
      std::vector<int> next(n_);
      for (int u = 0; u < n_; ++u) next[u] = 2 * col[u] + ((col[u] == targetColor && u != v) ? 1 : 0);
      std::vector<std::vector<long long>> sig(n_);
      for (int u = 0; u < n_; ++u) sig[u] = {next[u]};
      descend(refine(ranks(sig)));
    }
  }

  void leaf(const std::vector<int>& vrank) {
    if (++leafCount_ > 200000)
      throw Error(ErrorCode::SizeBoundExceeded, "canonical labeling search exceeded its leaf budget");
    std::vector<int> order(m_);
    std::iota(order.begin(), order.end(), 0);
    auto key = [&](int a) {
      return std::make_pair(vrank[qp_.quiver.arrow(a).src], vrank[qp_.quiver.arrow(a).tgt]);
    };
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      if (key(x) != key(y)) return key(x) < key(y);
      return x < y;
    });
    std::vector<std::pair<int, int>> groups;  // [begin, end) in order
    for (int i = 0; i < m_;) {
      int j = i;
      while (j < m_ && key(order[j]) == key(order[i])) ++j;
      if (j - i > 1) groups.push_back({i, j});
      i = j;
    }
    std::size_t combos = 1;
    for (auto [b, e] : groups) {
      for (int k = 2; k <= e - b; ++k) combos *= static_cast<std::size_t>(k);
      if (combos > 40320)
        throw Error(ErrorCode::SizeBoundExceeded, "too many parallel-arrow permutations in canonical search");
    }
    std::function<void(std::size_t)> rec = [&](std::size_t g) {
      if (g == groups.size()) {
        std::vector<int> arank(m_);
        for (int i = 0; i < m_; ++i) arank[order[i]] = i;
        consider(vrank, arank);
        return;
      }
      auto [b, e] = groups[g];
      std::sort(order.begin() + b, order.begin() + e);
      do {
        rec(g + 1);
      } while (std::next_permutation(order.begin() + b, order.begin() + e));
    };
    if (!usePotential_) {
      // parallel arrows are interchangeable; one permutation represents the leaf, the
      // remaining ones are expanded for isomorphism enumeration
      rec(0);
    } else {
      rec(0);
    }
  }

  std::string certificate(const std::vector<int>& vrank, const std::vector<int>& arank) const {
    std::ostringstream out;
    out << "V" << n_ << ";A";
    std::vector<std::pair<int, int>> arrows(m_);
    for (int a = 0; a < m_; ++a)
      arrows[arank[a]] = {vrank[qp_.quiver.arrow(a).src], vrank[qp_.quiver.arrow(a).tgt]};
    for (auto [s, t] : arrows) out << s << ">" << t << ",";
    if (!usePotential_) return out.str();
    std::vector<std::pair<std::vector<int>, Rational>> mapped;
    for (std::size_t t = 0; t < terms_.size(); ++t) {
      std::vector<int> w;
      for (int a : terms_[t]) w.push_back(arank[a]);
      mapped.push_back({canonical_rotation(w), coefs_[t]});
    }
    std::sort(mapped.begin(), mapped.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    out << ";W";
    for (const auto& [w, c] : mapped) {
      for (std::size_t k = 0; k < w.size(); ++k) out << (k ? "." : "") << w[k];
      if (mode_ == IsoMode::Exact) out << ":" << c.get_str();
      out << "|";
    }
    if (mode_ == IsoMode::Rescaling && !mapped.empty()) {
      IntMatrix mult(mapped.size(), std::vector<mpz_class>(m_));
      for (std::size_t t = 0; t < mapped.size(); ++t)
        for (int a : mapped[t].first) mult[t][a] += 1;
      IntMatrix ker = integer_left_kernel(mult);
      out << ";X";
      for (const auto& row : ker) {
        Rational chi = 1;
        for (std::size_t t = 0; t < row.size(); ++t) {
          if (row[t] == 0) continue;
          long e = row[t].get_si();
          Rational base = mapped[t].second;
          Rational p = 1;
          for (long k = 0; k < std::labs(e); ++k) p *= base;
          if (e < 0) p = 1 / p;
          chi *= p;
        }
        out << chi.get_str() << ",";
      }
    }
    return out.str();
  }

  void consider(const std::vector<int>& vrank, const std::vector<int>& arank) {
    std::string cert = certificate(vrank, arank);
    if (leaves_.empty() || cert < best_) {
      best_ = cert;
      leaves_.clear();
      leaves_.push_back({vrank, arank});
    } else if (cert == best_ && leaves_.size() < keep_) {
      leaves_.push_back({vrank, arank});
    }
  }

  const QP& qp_;
  bool usePotential_;
  IsoMode mode_;
  std::size_t keep_;
  int n_ = 0;
  int m_ = 0;
  std::vector<std::vector<int>> terms_;
  std::vector<Rational> coefs_;
  std::vector<int> coefRank_;
  std::string best_;
  std::vector<Labeling> leaves_;
  std::size_t leafCount_ = 0;
};

Isomorphism compose(const Labeling& from, const Labeling& to) {
  Isomorphism iso;
  std::vector<int> vinv(to.vrank.size()), ainv(to.arank.size());
  for (std::size_t v = 0; v < to.vrank.size(); ++v) vinv[to.vrank[v]] = static_cast<int>(v);
  for (std::size_t a = 0; a < to.arank.size(); ++a) ainv[to.arank[a]] = static_cast<int>(a);
  for (int r : from.vrank) iso.vertexMap.push_back(vinv[r]);
  for (int r : from.arank) iso.arrowMap.push_back(ainv[r]);
  return iso;
}

bool rescaling_equivalent(const Quiver& q, const Potential& x, const Potential& y) {
  QP a{q, x}, b{q, y};
  // same quiver and identity labels: compare as fixed-label certificates
  if (x.size() != y.size()) return false;
  for (const auto& [cyc, c] : x.terms())
    if (y.coef(cyc) == 0) return false;
  std::vector<std::vector<int>> support;
  for (const auto& [cyc, c] : x.terms()) support.push_back(cyc);
  IntMatrix mult(support.size(), std::vector<mpz_class>(q.num_arrows()));
  for (std::size_t t = 0; t < support.size(); ++t)
    for (int ar : support[t]) mult[t][ar] += 1;
  IntMatrix ker = integer_left_kernel(mult);
  for (const auto& row : ker) {
    Rational chi = 1;
    for (std::size_t t = 0; t < row.size(); ++t) {
      if (row[t] == 0) continue;
      Rational ratio = x.coef(support[t]) / y.coef(support[t]);
      long e = row[t].get_si();
      Rational p = 1;
      for (long k = 0; k < std::labs(e); ++k) p *= ratio;
      if (e < 0) p = 1 / p;
      chi *= p;
    }
    if (chi != 1) return false;
  }
  return true;
}

}  // namespace

std::string qp_canonical_form(const QP& qp, IsoMode mode) {
  Search s(qp, true, mode, 1);
  s.run();
  return s.best();
}

std::vector<Isomorphism> qp_automorphisms(const QP& qp, IsoMode mode) {
  Search s(qp, true, mode, 100000);
  s.run();
  std::vector<Isomorphism> out;
  for (const auto& leaf : s.leaves()) out.push_back(compose(leaf, s.leaves().front()));
  return out;
}

std::optional<Isomorphism> find_isomorphism(const QP& from, const QP& to, IsoMode mode) {
  Search a(from, true, mode, 1), b(to, true, mode, 1);
  a.run();
  b.run();
  if (a.best() != b.best()) return std::nullopt;
  return compose(a.leaves().front(), b.leaves().front());
}

bool isomorphic(const QP& x, const QP& y, IsoMode mode) {
  return qp_canonical_form(x, mode) == qp_canonical_form(y, mode);
}

std::vector<Isomorphism> quiver_isomorphisms(const Quiver& from, const Quiver& to, std::size_t cap) {
  QP x{from, {}}, y{to, {}};
  Search a(x, false, IsoMode::Exact, cap), b(y, false, IsoMode::Exact, 1);
  a.run();
  b.run();
  std::vector<Isomorphism> out;
  if (a.best() != b.best()) return out;
  for (const auto& leaf : a.leaves()) out.push_back(compose(leaf, b.leaves().front()));
  return out;
}

Potential transport_potential(const QP& from, const Isomorphism& iso) {
  Potential w;
  for (const auto& [cyc, c] : from.potential.terms()) {
    std::vector<int> m;
    for (int a : cyc) m.push_back(iso.arrowMap[a]);
    w.add_term(m, c);
  }
  return w;
}

namespace {

void parallel_paths(const Quiver& q, int from, int to, std::size_t maxLen, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
  if (!cur.empty() && from == to) out.push_back(cur);
  if (cur.size() == maxLen) return;
  for (int a : q.out_arrows(from)) {
    cur.push_back(a);
    parallel_paths(q, q.arrow(a).tgt, to, maxLen, cur, out);
    cur.pop_back();
  }
}

// Solves A x = b over the rationals given as rows (coefficient map, rhs); returns a
// particular solution with free variables set to the provided defaults.
std::optional<std::vector<Rational>> solve_affine(const std::vector<std::pair<SparseVec, Rational>>& eqs,
                                                 std::size_t nvars, const std::vector<Rational>& freeVals) {
  // Gauss-Jordan on dense augmented rows; sizes are tiny here.
  std::vector<std::vector<Rational>> m;
  for (const auto& [row, rhs] : eqs) {
    std::vector<Rational> r(nvars + 1);
    for (const auto& [k, v] : row) r[k] = v;
    r[nvars] = rhs;
    m.push_back(std::move(r));
  }
  std::vector<int> pivotCol;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < nvars && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    Rational lead = m[rank][c];
    for (auto& x : m[rank]) x /= lead;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == rank || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t k = 0; k <= nvars; ++k) m[i][k] -= f * m[rank][k];
    }
    pivotCol.push_back(static_cast<int>(c));
    ++rank;
  }
  for (std::size_t i = rank; i < m.size(); ++i)
    if (m[i][nvars] != 0) return std::nullopt;
  std::vector<Rational> x(nvars);
  std::vector<bool> isPivot(nvars, false);
  for (int c : pivotCol) isPivot[c] = true;
  std::size_t f = 0;
  for (std::size_t c = 0; c < nvars; ++c)
    if (!isPivot[c]) x[c] = freeVals.empty() ? Rational(0) : freeVals[(f++) % freeVals.size()];
  for (std::size_t i = 0; i < rank; ++i) {
    Rational v = m[i][nvars];
    for (std::size_t c = 0; c < nvars; ++c)
      if (!isPivot[c] && m[i][c] != 0) v -= m[i][c] * x[c];
    x[pivotCol[i]] = v;
  }
  return x;
}

}  // namespace

std::optional<RightEquivalenceWitness> find_right_equivalence(const QP& from, const QP& to,
                                                              std::size_t maxShiftLength, std::size_t isoCap) {
  const Quiver& q = to.quiver;
  auto isos = quiver_isomorphisms(from.quiver, q, isoCap);
  // candidate shift directions on the target quiver
  std::vector<std::pair<int, std::vector<int>>> dirs;
  for (int a = 0; a < q.num_arrows(); ++a) {
    std::vector<std::vector<int>> paths;
    std::vector<int> cur;
    parallel_paths(q, q.arrow(a).src, q.arrow(a).tgt, maxShiftLength, cur, paths);
    for (auto& p : paths)
      if (std::find(p.begin(), p.end(), a) == p.end()) dirs.push_back({a, p});
  }
  std::size_t maxDeg = std::max(from.potential.max_length(), to.potential.max_length()) * maxShiftLength + 2;
  for (const auto& iso : isos) {
    Potential w0 = transport_potential(from, iso);
    if (rescaling_equivalent(q, w0, to.potential)) return RightEquivalenceWitness{iso, {}};
    if (dirs.empty()) continue;
    // first-order effect of each direction: replace one occurrence of a by the path
    std::vector<Potential> effect(dirs.size());
    for (std::size_t d = 0; d < dirs.size(); ++d) {
      auto [a, p] = dirs[d];
      for (const auto& [cyc, c] : w0.terms()) {
        for (std::size_t i = 0; i < cyc.size(); ++i) {
          if (cyc[i] != a) continue;
          std::vector<int> w;
          for (std::size_t k = 0; k < cyc.size(); ++k) {
            if (k == i)
              w.insert(w.end(), p.begin(), p.end());
            else
              w.push_back(cyc[k]);
          }
          effect[d].add_term(w, c);
        }
      }
    }
    std::set<std::vector<int>> monomials;
    for (const auto& [cyc, c] : w0.terms()) monomials.insert(cyc);
    for (const auto& e : effect)
      for (const auto& [cyc, c] : e.terms()) monomials.insert(cyc);
    std::vector<std::pair<SparseVec, Rational>> eqs;
    for (const auto& mono : monomials) {
      if (to.potential.coef(mono) != 0) continue;
      SparseVec row;
      for (std::size_t d = 0; d < dirs.size(); ++d) {
        Rational v = effect[d].coef(mono);
        if (v != 0) row[static_cast<int>(d)] = v;
      }
      eqs.push_back({row, -w0.coef(mono)});
    }
    const std::vector<std::vector<Rational>> trials = {{}, {1}, {-1}, {2}, {1, -1}, {3, 5}};
    for (const auto& freeVals : trials) {
      auto x = solve_affine(eqs, dirs.size(), freeVals);
      if (!x) break;
      std::map<int, AlgebraElement> images;
      std::vector<std::pair<int, AlgebraElement>> shifts;
      for (std::size_t d = 0; d < dirs.size(); ++d) {
        if ((*x)[d] == 0) continue;
        auto [a, p] = dirs[d];
        if (!images.count(a)) images[a] = AlgebraElement::of_path(Path::of_arrow(q, a));
        images[a].add(Path::of_word(q, p), (*x)[d]);
      }
      for (const auto& [a, img] : images) {
        AlgebraElement shift = img;
        shift.add(Path::of_arrow(q, a), -1);
        shifts.push_back({a, shift});
      }
      Potential w;
      try {
        w = substitute(q, w0, images, maxDeg);
      } catch (const Error&) {
        continue;
      }
      if (rescaling_equivalent(q, w, to.potential)) return RightEquivalenceWitness{iso, shifts};
    }
  }
  return std::nullopt;
}

}  // namespace qpkit
