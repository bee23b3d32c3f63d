#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpkit/qp.hpp"

namespace qpkit {

// Exact: coefficients must match termwise.
// Rescaling: coefficients are compared modulo rescaling of arrows by nonzero scalars of an
// algebraically closed extension, i.e. by the values of all characters vanishing on the
// arrow-multiplicity lattice of the terms.
enum class IsoMode { Exact, Rescaling };

struct Isomorphism {
  std::vector<int> vertexMap;  // vertex of the first QP -> vertex of the second
  std::vector<int> arrowMap;   // arrow of the first QP -> arrow of the second
};

std::string qp_canonical_form(const QP& qp, IsoMode mode = IsoMode::Exact);

// All automorphisms of the QP (identity included).
std::vector<Isomorphism> qp_automorphisms(const QP& qp, IsoMode mode = IsoMode::Exact);

std::optional<Isomorphism> find_isomorphism(const QP& from, const QP& to, IsoMode mode = IsoMode::Exact);

bool isomorphic(const QP& x, const QP& y, IsoMode mode = IsoMode::Exact);

// Quiver isomorphisms only (potentials ignored), up to a cap on the number returned.
std::vector<Isomorphism> quiver_isomorphisms(const Quiver& from, const Quiver& to, std::size_t cap);

// Transports the potential of `from` along an isomorphism onto the quiver of `to`.
Potential transport_potential(const QP& from, const Isomorphism& iso);

// Bounded search for a right equivalence: a quiver isomorphism followed by arrow
// substitutions a -> a + sum of multiples of other parallel arrows and parallel paths of
// length up to maxShiftLength,
// and then a rescaling. Each candidate is verified by exact recomputation, so a positive
// answer is a certificate; a negative answer only means the search found nothing.
struct RightEquivalenceWitness {
  Isomorphism iso;
  std::vector<std::pair<int, AlgebraElement>> shifts;  // arrow of the target quiver -> added element
};
std::optional<RightEquivalenceWitness> find_right_equivalence(const QP& from, const QP& to,
                                                              std::size_t maxShiftLength = 2,
                                                              std::size_t isoCap = 2000);

}  // namespace qpkit
