#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpkit/algebra.hpp"

namespace qpkit {

// Sorted arrow indices.
using Cut = std::vector<int>;

// g_C as a 0/1 vector over arrows.
std::vector<int> grading(const Quiver& q, const Cut& c);

// Every term of the potential meets the set exactly once (counted with multiplicity).
bool is_cut(const QP& qp, const Cut& c);

// All cuts, by exact cover over (term, arrow occurrence). Arrows not occurring in
// the potential are never included. Sorted lexicographically.
std::vector<Cut> enumerate_cuts(const QP& qp);

struct AlgebraicCutReport {
  bool algebraic = false;
  std::size_t dimension = 0;
  std::optional<int> globalDimension;  // none when above the search cap
  bool minimal = false;
  std::string diagnostic;
};

// Throws NotACut, and UndeterminedDimension when the truncation is not shown finite dimensional.
AlgebraicCutReport is_algebraic_cut(const QP& qp, const Cut& c, std::size_t degreeBound = 0);

// Height function theta with theta(e(a)) - theta(s(a)) = g_C(a) - g_D(a), or none.
std::optional<std::vector<int>> compatibility_potential(const Quiver& q, const Cut& c, const Cut& d);
bool cuts_compatible(const Quiver& q, const Cut& c, const Cut& d);

// All subsets compatible with c. Throws SizeBoundExceeded above cap.
std::vector<Cut> compatibility_class(const Quiver& q, const Cut& c, std::size_t cap = 1000000);

std::vector<int> strict_sources(const Quiver& q, const Cut& c);
std::vector<int> strict_sinks(const Quiver& q, const Cut& c);
bool is_strict_source(const Quiver& q, const Cut& c, int x);
bool is_strict_sink(const Quiver& q, const Cut& c, int x);

// Throw NotStrictSource / NotStrictSink.
Cut cut_mutate_plus(const Quiver& q, const Cut& c, int x);
Cut cut_mutate_minus(const Quiver& q, const Cut& c, int x);

bool has_enough_cuts(const QP& qp);
bool is_fully_compatible(const QP& qp);
bool is_sufficiently_cyclic(const Quiver& q, const Cut& c);
// Q minus the cut has no oriented cycle.
bool cut_quiver_acyclic(const Quiver& q, const Cut& c);
// Union of the compatibility class is all arrows. Also checks agreement with
// cut_quiver_acyclic and throws InvariantViolated if they differ.
bool has_enough_compatibles(const Quiver& q, const Cut& c);

// x_1, ..., x_N with x_{i+1} a (strict) source after mutating at x_1..x_i. Throws NoSequence.
std::vector<int> source_sequence(const Quiver& q, const Cut& c, bool strict);

std::string cut_to_string(const Quiver& q, const Cut& c);
Cut cut_from_ids(const Quiver& q, const std::vector<std::string>& ids);

}  // namespace qpkit
