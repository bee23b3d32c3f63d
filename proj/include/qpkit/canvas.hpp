#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpkit/linalg.hpp"
#include "qpkit/qp.hpp"

namespace qpkit {

// One 0-cell per vertex, one 1-cell per arrow, one 2-cell per potential term.
struct Canvas {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;   // (source, target)
  std::vector<std::vector<int>> cells;      // boundary words in composition order
};

Canvas build_canvas(const QP& qp);
bool is_connected(const Canvas& x);
int euler_characteristic(const Canvas& x);

struct H1Group {
  int rank = 0;
  std::vector<mpz_class> torsion;  // invariant factors > 1
  bool trivial() const { return rank == 0 && torsion.empty(); }
};
H1Group homology_h1(const Canvas& x);

// Letters are +-(g+1) for generator g.
struct GroupPresentation {
  std::vector<int> generators;  // arrow of each generator
  std::vector<std::vector<int>> relators;
  std::string to_string(const Quiver& q) const;
};

// Generators are the arrows off a BFS spanning tree rooted at basepoint. Throws Disconnected.
GroupPresentation pi1_presentation(const Canvas& x, int basepoint = 0);
H1Group abelianize(const GroupPresentation& p);

// Free and cyclic reduction plus elimination of generators occurring once in a relator,
// while relators stay below maxLength.
GroupPresentation tietze_simplify(GroupPresentation p, std::size_t maxLength = 200);

// Darts: 2a is the end of arrow a at its source, 2a + 1 the end at its target.
inline int dart_of(int arrow, bool atSource) { return 2 * arrow + (atSource ? 0 : 1); }
inline int dart_arrow(int d) { return d / 2; }
inline bool dart_at_source(int d) { return d % 2 == 0; }
inline int dart_twin(int d) { return d ^ 1; }

// For each vertex the incident darts in counterclockwise order, and one dart on the outer face.
struct RotationSystem {
  std::vector<std::vector<int>> order;
  int outerDart = -1;
};

int dart_vertex(const Quiver& q, int d);

struct Face {
  std::vector<int> darts;  // the face lies to the right of each dart's walk
  bool outer = false;
  // Composition-order cycle when the boundary is a directed cycle.
  std::optional<std::vector<int>> cycle;
};

// Orbits of phi(d) = sigma(twin(d)); throws NotPlanar when the rotation is malformed.
std::vector<Face> trace_faces(const Quiver& q, const RotationSystem& rot);
bool satisfies_euler(const Quiver& q, const RotationSystem& rot);

// Exact angular sort around each vertex; the outer face is the one traced counterclockwise.
RotationSystem rotation_from_coordinates(const Quiver& q, const std::vector<std::pair<Rational, Rational>>& xy);

// Sum of the directed bounded faces, coefficient 1. Throws NotPlanar when the Euler check fails.
Potential faces_and_potential(const Quiver& q, const RotationSystem& rot);

struct PlanarQP {
  QP qp;
  RotationSystem rot;
};

struct PlanarCertificate {
  bool planar = false;         // rotation system of genus 0 on a connected quiver
  bool facesMatchCells = false;
  bool disk = false;           // both of the above: the canvas is simply connected
  std::vector<std::string> mismatches;
};

// Never throws; the certificate records what failed.
PlanarCertificate check_planar(const PlanarQP& p);
// Throws EmbeddingMismatch unless the certificate is a disk.
PlanarCertificate validate_planar(const PlanarQP& p);

// Vertex on the outer face boundary.
bool on_boundary(const PlanarQP& p, int v);

// Builds a planar QP from coordinates with the face potential.
PlanarQP planar_from_coordinates(const Quiver& q, const std::vector<std::pair<Rational, Rational>>& xy);

enum class Verdict { Yes, No, Unknown };
const char* verdict_name(Verdict v);
struct SimpleConnectivity {
  Verdict verdict = Verdict::Unknown;
  std::string reason;
};
SimpleConnectivity is_simply_connected(const QP& qp, const RotationSystem* embedding = nullptr,
                                       std::size_t effort = 200);

// JSON with "embedding": vertex id -> ccw list of arrow ids and "outer_face": {vertex, arrow}.
std::string serialize_planar(const PlanarQP& p, int indent = 2);
PlanarQP parse_planar(const std::string& text);

}  // namespace qpkit
