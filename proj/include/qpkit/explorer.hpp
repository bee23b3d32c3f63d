#pragma once

#include <string>
#include <vector>

#include "qpkit/canvas.hpp"
#include "qpkit/cuts.hpp"

namespace qpkit {

struct LatticeGraph {
  struct Node {
    std::string key;    // canonical form
    std::string label;  // compact signature
  };
  struct Edge {
    int from, to;
    std::string label;
  };
  std::string kind;
  std::string seed;
  std::vector<Node> nodes;
  std::vector<Edge> edges;  // undirected, from <= to, sorted
  bool complete = true;
  bool connected() const;
};

std::string export_dot(const LatticeGraph& g);
std::string export_json(const LatticeGraph& g, int indent = 2);
LatticeGraph parse_lattice_json(const std::string& text);
bool operator==(const LatticeGraph::Node& x, const LatticeGraph::Node& y);
bool operator==(const LatticeGraph::Edge& x, const LatticeGraph::Edge& y);
bool operator==(const LatticeGraph& x, const LatticeGraph& y);

// Cuts under strict source/sink cut-mutation. The graph has one node per orbit of cuts
// under the automorphisms of the QP (potential up to rescaling); the raw counts are kept.
struct CutLattice {
  LatticeGraph graph;
  std::vector<Cut> cuts;
  std::vector<int> orbit;  // node of each cut
  std::size_t rawEdges = 0;
  bool rawConnected = false;
  std::size_t automorphisms = 0;
};
CutLattice cut_lattice(const QP& qp);

struct PlanarLattice {
  LatticeGraph graph;
  std::vector<PlanarQP> qps;           // per node
  std::vector<bool> selfinjective;     // per node
  std::vector<std::vector<int>> nakayama;
};
// Breadth-first search over planar mutations. By default each move mutates a full orbit of
// the node's Nakayama permutation with no arrows inside the orbit; unrestricted mode moves at
// single vertices. Nodes are QPs up to isomorphism. Stops with complete = false, or throws
// SizeBoundExceeded when throwOnBound is set, once sizeBound nodes are found.
PlanarLattice planar_mutation_lattice(const PlanarQP& seed, std::size_t sizeBound = 1000, bool unrestricted = false,
                                      bool throwOnBound = false);

struct TransitivityReport {
  bool selfinjective = false;
  bool fullyCompatible = false;
  bool enoughCuts = false;
  bool hypothesesMet = false;
  std::size_t cuts = 0;
  struct Step {
    int vertex;
    bool plus;
  };
  struct Chain {
    int from, to;
    std::vector<Step> steps;
  };
  std::vector<Chain> chains;  // from cut 0 to every other cut
  bool allConnected = false;
  std::string summary;
  std::string to_json(const QP& qp, const std::vector<Cut>& cutList) const;
};
TransitivityReport transitivity_report(const QP& qp, std::size_t degreeBound = 0);

}  // namespace qpkit
