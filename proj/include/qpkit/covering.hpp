#pragma once

#include <string>
#include <vector>

#include "qpkit/cuts.hpp"

namespace qpkit {

// theta over vertices with minimum 0 on each connected component.
using HeightFunction = std::vector<int>;

// Levels lo..hi of Z(Q,C): vertex (x,l) and arrows (a,l) : (x,l) -> (y, l - g_C(a)).
struct CoveringWindow {
  int lo = 0, hi = 0;
  Quiver quiver;                   // vertex (x,l) has index (l - lo) * |Q0| + x
  std::vector<int> baseArrow;      // arrow of Q under each lifted arrow
  std::vector<int> level;          // source level of each lifted arrow
  std::vector<std::string> incomplete;  // lifts whose target leaves the window
  std::string to_dot() const;
};
CoveringWindow build_covering_window(const Quiver& q, const Cut& c, int lo, int hi);

// A walk step is an arrow traversed forwards or backwards.
struct WalkStep {
  int arrow;
  bool inverse = false;
};
struct LiftedPoint {
  int vertex;
  int level;
};
// Unique lift starting at (start, startLevel). Throws BadParameter when the walk is not connected.
LiftedPoint lift_walk(const Quiver& q, const Cut& c, const std::vector<WalkStep>& walk, int start, int startLevel);

bool is_slice(const Quiver& q, const Cut& c, const HeightFunction& theta);
HeightFunction normalize_height(const Quiver& q, HeightFunction theta);
// All slices modulo tau, componentwise on disconnected quivers; sorted.
std::vector<HeightFunction> enumerate_slices(const Quiver& q, const Cut& c, std::size_t cap = 1000000);

// {a : g_C(a) + theta(e(a)) - theta(s(a)) = 1}
Cut slice_to_cut(const Quiver& q, const Cut& c, const HeightFunction& theta);
// Throws NotCompatible.
HeightFunction cut_to_slice(const Quiver& q, const Cut& c, const Cut& other);

// theta(x) - 1 at a strict source of the slice, theta(x) + 1 at a strict sink.
// Throw NotStrictSource / NotStrictSink. Results are normalized.
HeightFunction slice_mutate_plus(const Quiver& q, const Cut& c, const HeightFunction& theta, int x);
HeightFunction slice_mutate_minus(const Quiver& q, const Cut& c, const HeightFunction& theta, int x);
long volume(const HeightFunction& theta);

// Moves between members of the compatibility class of c.
struct ReachabilityGraph {
  std::vector<Cut> cuts;
  struct Move {
    int from, to, vertex;
    bool plus;
  };
  std::vector<Move> moves;
  std::vector<int> component;
  int components = 0;
  bool theoremApplies = false;  // enough compatibles and sufficiently cyclic
  bool connected() const { return components <= 1; }
};
// Throws InvariantViolated when the hypotheses hold and the graph is disconnected.
ReachabilityGraph cut_mutation_reachability(const QP& qp, const Cut& c);

}  // namespace qpkit
