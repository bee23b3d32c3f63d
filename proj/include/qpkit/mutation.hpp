#pragma once

#include <map>
#include <vector>

#include "qpkit/canvas.hpp"
#include "qpkit/qp.hpp"

namespace qpkit {

struct MutationResult {
  QP qp;
  bool reduced = false;
  int trivialPartRank = 0;  // number of 2-cycles split off
};

// Reverses the arrows at k (ids get a trailing "*", or lose one), adds composites
// "[a|b]" for each pair a: x -> k, b: k -> y, rewrites W through k and adds
// sum [a|b] b* a*. Throws TwoCycleAtVertex when k lies on a 2-cycle or carries a loop.
struct PremutationMap {
  std::vector<int> arrowImage;                 // old arrow -> new arrow (kept or reversed)
  std::map<std::pair<int, int>, int> composite;  // (a into k, b out of k) -> [a|b]
};
QP premutate(const QP& qp, int k, PremutationMap* map = nullptr);

// Splits off the trivial part. degreeBound 0 selects max(12, 4 * longest term).
// Throws ReductionBoundExceeded when the substitutions leave the bound.
MutationResult reduce_qp(const QP& qp, std::size_t degreeBound = 0);

MutationResult mutate(const QP& qp, int k, std::size_t degreeBound = 0);

// Mutation at k, sigma k, ..., sigma^{m-1} k. Throws OrbitPreconditionViolated when an
// arrow joins two orbit vertices or an orbit vertex lies on a 2-cycle, and
// InvariantViolated when the reversed order gives a non-isomorphic result.
MutationResult orbit_mutate(const QP& qp, const std::vector<int>& sigma, int k, std::size_t degreeBound = 0);

std::vector<int> orbit_of(const std::vector<int>& sigma, int k);

// Whether k lies on a 2-cycle (or has a loop).
bool on_two_cycle(const Quiver& q, int k);

// Interior vertices of degree 4 and boundary vertices of degree at most 4.
bool planar_mutable(const PlanarQP& p, int k);

// Local rewrite of the embedding at k: composites cut the corners pairing an arrow into k
// with one out of k, arrows at k are reversed, and digon faces are deleted. The potential
// is read off the new faces. With crossCheck the result is compared with mutate() up to
// rescaling or a certified right equivalence. Throws NotPlanarMutable, InvariantViolated.
PlanarQP planar_mutate(const PlanarQP& p, int k, bool crossCheck = true);

}  // namespace qpkit
