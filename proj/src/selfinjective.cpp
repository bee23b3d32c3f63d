#include "qpkit/selfinjective.hpp"

#include <algorithm>
#include <set>

#include "qpkit/resolution.hpp"

namespace qpkit {

namespace {

// Basis indices of Lambda e_j (paths ending at j) and of e_i Lambda.
std::vector<int> ending_at(const FDAlgebra& alg, int j) {
  std::vector<int> out;
  for (int s = 0; s < alg.quiver().num_vertices(); ++s)
    for (int b : alg.by_pair(s, j)) out.push_back(b);
  return out;
}

std::vector<int> starting_at(const FDAlgebra& alg, int i) {
  std::vector<int> out;
  for (int t = 0; t < alg.quiver().num_vertices(); ++t)
    for (int b : alg.by_pair(i, t)) out.push_back(b);
  return out;
}

void shift_into(SparseVec& out, const SparseVec& v, int offset) {
  for (const auto& [k, c] : v) out[offset + k] += c;
}

// Kernel dimension and rank of the map sending each row generator to its image.
std::size_t rank_rows(const std::vector<SparseVec>& rows) { return rank_of(rows); }

}  // namespace

std::size_t resolution_exactness_defect(const FDAlgebra& alg, const QP& qp, int i) {
  const Quiver& q = qp.quiver;
  const int D = static_cast<int>(alg.dim());
  std::vector<int> outs;  // arrows b with s(b) = i
  for (int b : q.out_arrows(i)) outs.push_back(b);
  std::vector<int> ins;  // arrows a with e(a) = i
  for (int a : q.in_arrows(i)) ins.push_back(a);
  // first map: p -> (p b)_b, coordinates offset by the position of b
  std::vector<SparseVec> f1;
  for (int p : ending_at(alg, i)) {
    SparseVec row;
    for (std::size_t k = 0; k < outs.size(); ++k)
      shift_into(row, alg.times_path_right(SparseVec{{p, Rational(1)}}, Path::of_arrow(q, outs[k])),
                 static_cast<int>(k) * D);
    f1.push_back(std::move(row));
  }
  // second map: y in P_{e(b)} -> (y * d_(b,a) W)_a
  std::vector<std::vector<SparseVec>> dd(outs.size(), std::vector<SparseVec>(ins.size()));
  std::vector<std::vector<AlgebraElement>> dds(outs.size(), std::vector<AlgebraElement>(ins.size()));
  for (std::size_t k = 0; k < outs.size(); ++k)
    for (std::size_t l = 0; l < ins.size(); ++l) dds[k][l] = double_derivative(q, qp.potential, outs[k], ins[l]);
  std::vector<SparseVec> f2;
  for (std::size_t k = 0; k < outs.size(); ++k) {
    for (int y : ending_at(alg, q.arrow(outs[k]).tgt)) {
      SparseVec row;
      for (std::size_t l = 0; l < ins.size(); ++l) {
        SparseVec img;
        for (const auto& [p, c] : dds[k][l].terms()) {
          SparseVec part = alg.times_path_right(SparseVec{{y, Rational(1)}}, p);
          axpy(img, c, part);
        }
        shift_into(row, img, static_cast<int>(l) * D);
      }
      f2.push_back(std::move(row));
    }
  }
  std::size_t kerDim = f2.size() - rank_rows(f2);
  std::size_t rank1 = rank_rows(f1);
  if (kerDim < rank1) throw Error(ErrorCode::InvariantViolated, "complex does not compose to zero");
  return kerDim - rank1;
}

std::size_t dual_exactness_defect(const FDAlgebra& alg, const QP& qp, int i) {
  const Quiver& q = qp.quiver;
  const int D = static_cast<int>(alg.dim());
  std::vector<int> ins;  // a with e(a) = i
  for (int a : q.in_arrows(i)) ins.push_back(a);
  std::vector<int> outs;  // b with s(b) = i
  for (int b : q.out_arrows(i)) outs.push_back(b);
  std::vector<SparseVec> g1;
  for (int p : starting_at(alg, i)) {
    SparseVec row;
    for (std::size_t k = 0; k < ins.size(); ++k)
      shift_into(row, alg.times_path_left(Path::of_arrow(q, ins[k]), SparseVec{{p, Rational(1)}}),
                 static_cast<int>(k) * D);
    g1.push_back(std::move(row));
  }
  std::vector<SparseVec> g2;
  for (std::size_t k = 0; k < ins.size(); ++k) {
    for (int y : starting_at(alg, q.arrow(ins[k]).src)) {
      SparseVec row;
      for (std::size_t l = 0; l < outs.size(); ++l) {
        AlgebraElement d = double_derivative(q, qp.potential, outs[l], ins[k]);
        SparseVec img;
        for (const auto& [p, c] : d.terms()) axpy(img, c, alg.times_path_left(p, SparseVec{{y, Rational(1)}}));
        shift_into(row, img, static_cast<int>(l) * D);
      }
      g2.push_back(std::move(row));
    }
  }
  std::size_t kerDim = g2.size() - rank_rows(g2);
  std::size_t rank1 = rank_rows(g1);
  if (kerDim < rank1) throw Error(ErrorCode::InvariantViolated, "dual complex does not compose to zero");
  return kerDim - rank1;
}

std::vector<std::pair<int, int>> socle(const FDAlgebra& alg, int j) {
  const Quiver& q = alg.quiver();
  const int D = static_cast<int>(alg.dim());
  std::vector<std::pair<int, int>> out;
  for (int t = 0; t < q.num_vertices(); ++t) {
    const auto& xs = alg.by_pair(t, j);
    if (xs.empty()) continue;
    std::vector<SparseVec> rows;
    for (int x : xs) {
      SparseVec row;
      int slot = 0;
      for (int a : q.in_arrows(t)) {
        shift_into(row, alg.times_path_left(Path::of_arrow(q, a), SparseVec{{x, Rational(1)}}), slot * D);
        ++slot;
      }
      rows.push_back(std::move(row));
    }
    std::size_t ker = rows.size() - rank_of(rows);
    if (ker) out.push_back({t, static_cast<int>(ker)});
  }
  return out;
}

std::vector<int> nakayama_permutation(const FDAlgebra& alg) {
  int n = alg.quiver().num_vertices();
  std::vector<int> sigma(n, -1);
  for (int j = 0; j < n; ++j) {
    auto soc = socle(alg, j);
    if (soc.size() != 1 || soc[0].second != 1)
      throw Error(ErrorCode::NotSelfinjective,
                  "socle of the projective at " + alg.quiver().vertex_id(j) + " is not simple");
    int i = soc[0].first;
    if (sigma[i] != -1)
      throw Error(ErrorCode::NotSelfinjective, "two projectives share the socle at " + alg.quiver().vertex_id(i));
    sigma[i] = j;
  }
  for (int i = 0; i < n; ++i) {
    std::size_t right = starting_at(alg, i).size();
    std::size_t left = ending_at(alg, sigma[i]).size();
    if (right != left) throw Error(ErrorCode::NotSelfinjective, "dimension mismatch for the Nakayama pairing");
  }
  return sigma;
}

bool socle_oracle(const FDAlgebra& alg) {
  try {
    nakayama_permutation(alg);
    return true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotSelfinjective) throw;
    return false;
  }
}

SelfinjectivityReport is_selfinjective(const QP& qp, const FDAlgebra& alg) {
  SelfinjectivityReport rep;
  rep.finiteDimensional = true;
  rep.dimension = alg.dim();
  bool exact = true;
  for (int i = 0; i < qp.quiver.num_vertices(); ++i) {
    rep.defects.push_back(resolution_exactness_defect(alg, qp, i));
    if (rep.defects.back() != 0) exact = false;
  }
  if (!exact) {
    rep.diagnostic = "complex not exact at some vertex";
    return rep;
  }
  try {
    rep.nakayama = nakayama_permutation(alg);
    rep.selfinjective = true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotSelfinjective) throw;
    // exactness without simple socles contradicts the characterization; report it
    rep.diagnostic = std::string("complexes exact but ") + e.what();
  }
  return rep;
}

SelfinjectivityReport is_selfinjective(const QP& qp, std::size_t degreeBound) {
  AlgebraResult res = jacobian_algebra(qp, degreeBound);
  if (!res.determined())
    throw Error(ErrorCode::UndeterminedDimension, "Jacobian algebra not shown finite dimensional: " + res.note);
  return is_selfinjective(qp, *res.algebra);
}

QPWithCut qp_of_algebra(const Quiver& quiver, const std::vector<AlgebraElement>& relations, std::size_t degreeBound) {
  for (const auto& r : relations) {
    if (r.is_zero()) throw Error(ErrorCode::NonMinimalRelations, "zero relation");
    const Path& first = r.terms().begin()->first;
    for (const auto& [p, c] : r.terms()) {
      if (p.length() < 2) throw Error(ErrorCode::NonAdmissibleRelation, "relation has a term of length < 2");
      if (p.src != first.src || p.tgt != first.tgt)
        throw Error(ErrorCode::MixedEndpointRelation, "relation spans several vertex pairs");
    }
  }
  if (!min_generation_check(relations, quiver, degreeBound))
    throw Error(ErrorCode::NonMinimalRelations, "relations are not a minimal generating set");
  QPWithCut out;
  out.qp.quiver = quiver;
  std::set<std::string> used;
  for (const auto& a : quiver.arrows()) used.insert(a.id);
  for (std::size_t k = 0; k < relations.size(); ++k) {
    const Path& first = relations[k].terms().begin()->first;
    std::string id = "rho" + std::to_string(k + 1);
    while (used.count(id)) id += "'";
    used.insert(id);
    int rho = out.qp.quiver.add_arrow(id, first.tgt, first.src);
    out.cut.push_back(rho);
    for (const auto& [p, c] : relations[k].terms()) {
      std::vector<int> cyc{rho};
      cyc.insert(cyc.end(), p.arrows.begin(), p.arrows.end());
      out.qp.potential.add_term(cyc, c);
    }
  }
  return out;
}

bool is_2rf(const Quiver& quiver, const std::vector<AlgebraElement>& relations, std::size_t degreeBound) {
  AlgebraResult a = presented_algebra(quiver, relations, degreeBound);
  if (!a.determined()) throw Error(ErrorCode::UndeterminedDimension, "algebra not shown finite dimensional");
  if (!global_dimension_le(*a.algebra, 2)) return false;
  QPWithCut qa = qp_of_algebra(quiver, relations, degreeBound);
  return is_selfinjective(qa.qp, degreeBound).selfinjective;
}

}  // namespace qpkit
