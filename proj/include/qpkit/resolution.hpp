#pragma once

#include <optional>
#include <vector>

#include "qpkit/algebra.hpp"

namespace qpkit {

// A left submodule of a free module sum_k Lambda e_{vertex_k}, given by spanning vectors.
// Coordinates are keyed summand * dim(Lambda) + basis index.
struct SubModule {
  std::vector<int> summands;
  std::vector<SparseVec> span;
  bool is_zero() const { return span.empty(); }
};

// The simple module's first syzygy J e_i inside Lambda e_i.
SubModule radical_of_projective(const FDAlgebra& alg, int i);

// Kernel of the projective cover of M (minimal first syzygy).
SubModule syzygy(const FDAlgebra& alg, const SubModule& m);

// Projective dimension of the simple at i, if at most maxDim.
std::optional<int> projective_dimension_simple(const FDAlgebra& alg, int i, int maxDim);

bool global_dimension_le(const FDAlgebra& alg, int n);

// Global dimension when at most maxDim.
std::optional<int> global_dimension(const FDAlgebra& alg, int maxDim);

}  // namespace qpkit
