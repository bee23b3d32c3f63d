#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qpkit/algebra.hpp"

namespace qpkit {

// dim ker - rank at the middle of the complex
//   P_i -> sum_{s(b)=i} P_{e(b)} -> sum_{e(a)=i} P_{s(a)}
// with maps given by right multiplication by b and by the double derivatives.
std::size_t resolution_exactness_defect(const FDAlgebra& alg, const QP& qp, int i);

// The same defect for the dual complex of right modules e_i Lambda.
std::size_t dual_exactness_defect(const FDAlgebra& alg, const QP& qp, int i);

// Socle of the left module Lambda e_j as (start vertex, multiplicity).
std::vector<std::pair<int, int>> socle(const FDAlgebra& alg, int j);

// sigma(i) = j where soc(Lambda e_j) is the simple at i. Throws NotSelfinjective.
std::vector<int> nakayama_permutation(const FDAlgebra& alg);

struct SelfinjectivityReport {
  bool finiteDimensional = false;
  bool selfinjective = false;
  std::optional<std::vector<int>> nakayama;
  std::vector<std::size_t> defects;
  std::size_t dimension = 0;
  std::string diagnostic;
};

// Throws UndeterminedDimension when finite dimensionality cannot be established.
SelfinjectivityReport is_selfinjective(const QP& qp, std::size_t degreeBound = 0);
SelfinjectivityReport is_selfinjective(const QP& qp, const FDAlgebra& alg);

// Independent test: all socles simple, vertex assignment bijective, dim e_i Lambda = dim Lambda e_{sigma i}.
bool socle_oracle(const FDAlgebra& alg);

struct QPWithCut {
  QP qp;
  std::vector<int> cut;  // the added arrows rho_i
};

// (Q_A, W_A): arrows rho_i : e(r_i) -> s(r_i) and potential sum rho_i r_i.
QPWithCut qp_of_algebra(const Quiver& quiver, const std::vector<AlgebraElement>& relations,
                        std::size_t degreeBound = 0);

bool is_2rf(const Quiver& quiver, const std::vector<AlgebraElement>& relations, std::size_t degreeBound = 0);

}  // namespace qpkit
