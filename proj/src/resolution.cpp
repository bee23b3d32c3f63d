#include "qpkit/resolution.hpp"

namespace qpkit {

namespace {

// x * m for x in Lambda and m in the free module; summands are preserved.
SparseVec left_multiply(const FDAlgebra& alg, const SparseVec& x, const SparseVec& m) {
  const long long D = static_cast<long long>(alg.dim());
  SparseVec out;
  for (const auto& [key, c] : m) {
    int k = static_cast<int>(key / D);
    int b = static_cast<int>(key % D);
    for (const auto& [xi, d] : x) {
      SparseVec prod = alg.multiply(xi, b);
      for (const auto& [bi, e] : prod) {
        int nk = static_cast<int>(k * D + bi);
        auto it = out.find(nk);
        Rational v = c * d * e;
        if (it == out.end())
          out.emplace(nk, v);
        else {
          it->second += v;
          if (it->second == 0) out.erase(it);
        }
      }
    }
  }
  return out;
}

SparseVec project_to_source(const FDAlgebra& alg, const SparseVec& m, int s) {
  const long long D = static_cast<long long>(alg.dim());
  SparseVec out;
  for (const auto& [key, c] : m)
    if (alg.basis()[key % D].src == s) out.emplace(key, c);
  return out;
}

}  // namespace

SubModule radical_of_projective(const FDAlgebra& alg, int i) {
  SubModule m;
  m.summands = {i};
  for (int s = 0; s < alg.quiver().num_vertices(); ++s)
    for (int b : alg.by_pair(s, i))
      if (!alg.basis()[b].is_trivial()) m.span.push_back(SparseVec{{b, Rational(1)}});
  return m;
}

SubModule syzygy(const FDAlgebra& alg, const SubModule& m) {
  const Quiver& q = alg.quiver();
  int n = q.num_vertices();
  const int D = static_cast<int>(alg.dim());
  std::vector<std::vector<SparseVec>> basisAt(n);
  for (int s = 0; s < n; ++s) {
    Echelon e;
    for (const auto& v : m.span) {
      SparseVec p = project_to_source(alg, v, s);
      if (!p.empty() && e.insert(p)) basisAt[s].push_back(std::move(p));
    }
  }
  std::vector<std::pair<int, SparseVec>> gens;  // (vertex, generator)
  for (int s = 0; s < n; ++s) {
    if (basisAt[s].empty()) continue;
    Echelon radical;
    for (int a : q.out_arrows(s)) {
      SparseVec va = alg.to_vec(AlgebraElement::of_path(Path::of_arrow(q, a)));
      if (va.empty()) continue;
      for (const auto& x : basisAt[q.arrow(a).tgt]) radical.insert(left_multiply(alg, va, x));
    }
    for (const auto& x : basisAt[s])
      if (radical.insert(x)) gens.push_back({s, x});
  }
  SubModule out;
  std::vector<SparseVec> rows;
  std::vector<int> rowKey;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    int t = gens[k].first;
    out.summands.push_back(t);
    for (int s = 0; s < n; ++s)
      for (int p : alg.by_pair(s, t)) {
        rows.push_back(left_multiply(alg, SparseVec{{p, Rational(1)}}, gens[k].second));
        rowKey.push_back(static_cast<int>(k) * D + p);
      }
  }
  for (const auto& comb : left_kernel(rows)) {
    SparseVec v;
    for (const auto& [r, c] : comb) v.emplace(rowKey[r], c);
    out.span.push_back(std::move(v));
  }
  return out;
}

std::optional<int> projective_dimension_simple(const FDAlgebra& alg, int i, int maxDim) {
  SubModule m = radical_of_projective(alg, i);
  for (int k = 0; k <= maxDim; ++k) {
    if (m.is_zero()) return k;
    if (k == maxDim) break;
    m = syzygy(alg, m);
  }
  return std::nullopt;
}

bool global_dimension_le(const FDAlgebra& alg, int n) {
  for (int i = 0; i < alg.quiver().num_vertices(); ++i) {
    if (alg.system().killed_vertices().size() && alg.system().killed_vertices()[i]) continue;
    if (!projective_dimension_simple(alg, i, n)) return false;
  }
  return true;
}

std::optional<int> global_dimension(const FDAlgebra& alg, int maxDim) {
  int g = 0;
  for (int i = 0; i < alg.quiver().num_vertices(); ++i) {
    if (alg.system().killed_vertices().size() && alg.system().killed_vertices()[i]) continue;
    auto d = projective_dimension_simple(alg, i, maxDim);
    if (!d) return std::nullopt;
    g = std::max(g, *d);
  }
  return g;
}

}  // namespace qpkit
