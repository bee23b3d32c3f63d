#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qpkit/canvas.hpp"
#include "qpkit/qp.hpp"

namespace qpkit {

// Vertices 1..n, arrows a_i : i -> i-1 (a_1 : 1 -> n), W the n-cycle.
QP cycle_qp(int n);
// n even: additional arrows b_i : i -> i+1, odd a_i : i -> i-2, and the signed potential.
QP tilde_cycle_qp(int n);

// The (2,2,2,2) tubular QP with vertices T, A, B, C, D, Bot.
QP tubular_2222(const Rational& lambda);
// Its mutation at A as presented with parameter lambda' (arrows a : A -> T, a' : Bot -> A).
QP tubular_2222_mutated(const Rational& lambdaPrime);

enum class DynkinType { A, D, E };

std::string dynkin_name(DynkinType type, int n);
// Edges (u, v), u < v, 1-based labels of the fixed diagrams.
std::vector<std::pair<int, int>> dynkin_edges(DynkinType type, int n);
// forward[k] orients edge k from its smaller to its larger label.
Quiver dynkin_quiver(DynkinType type, int n, const std::vector<bool>& forward);
// Bipartite orientation with vertex 1 a source (or a sink).
Quiver alternating_dynkin(DynkinType type, int n, bool vertexOneSource = true);
// Linear A_n: 1 -> 2 -> ... -> n.
Quiver linear_a(int n);
int coxeter_number(DynkinType type, int n);
// 0-based permutation.
std::vector<int> canonical_involution(DynkinType type, int n);
bool is_stable(const Quiver& q, DynkinType type, int n);
bool is_alternating(const Quiver& q);

// Vertices (x,y); arrows (a,y), (x,b) and (a,b) : (e(a),e(b)) -> (s(a),s(b)).
QP tensor_qp(const Quiver& q1, const Quiver& q2);
// Indices of the arrows (a,b) in tensor_qp(q1, q2).
std::vector<int> tensor_cut(const Quiver& q1, const Quiver& q2);
// Throws NotAlternating.
QP square_product_qp(const Quiver& q1, const Quiver& q2);

// Product permutation on the vertices (x,y) of tensor or square products.
std::vector<int> product_permutation(const std::vector<int>& p1, const std::vector<int>& p2, int n2);

// Five cuts, three of them algebraic: 1 -> 2 -> 4 -> 3 -> 2, 4 -> 1 with W = abe + bcd.
QP cuts_example_a();
// Parallel arrows c, d : 3 -> 1 after a : 1 -> 2, b : 2 -> 3 with W = abc + abd.
QP cuts_example_b();
// 1 => 2 -> 3 with arrows a, b : 1 -> 2 and c : 2 -> 3; the cut {b} is used with it.
Quiver covering_example();

// Planar embedding of a tensor or square product of two linear A quivers on the grid
// (vertex x * n2 + y at (x, y)); n2 is the vertex count of the second factor. The potential
// is kept. Throws EmbeddingMismatch when the grid drawing is not a disk for it.
PlanarQP product_embedding(const QP& product, int n2);

// Q^(s): vertices x in Z^3 with x_i >= 0 and x1 + x2 + x3 = s - 1, arrows "t<i>(x)" : x -> x + f_i
// with f1 = (-1,1,0), f2 = (0,-1,1), f3 = (1,0,-1). Throws BadParameter for s < 2.
PlanarQP triangle_qp(int s);
// Arrows of type i (1, 2 or 3) of triangle_qp.
std::vector<int> triangle_type_arrows(const Quiver& q, int i);

// Unit square with corners a = (i,j), b = (i+1,j), c = (i,j+1), d = (i+1,j+1):
//   1: a -> c -> d -> b -> a
//   2: a -> c -> b -> a and b -> d -> c
//   3: a -> d -> c -> a and d -> b -> a
// opposite reverses every arrow.
struct SquareFace {
  int pattern = 1;
  bool opposite = false;
};

// Vertices "(i,j)" with 1 <= i,j <= s drawn at (i, j); faces row-major over j then i.
// Throws IllegalFacePattern when a pattern is unknown or neighbouring squares disagree.
PlanarQP square_shaped_qp(int s, const std::vector<SquareFace>& faces);
// Orientations propagated from the first square (plain).
std::vector<SquareFace> orient_square_patterns(int s, const std::vector<int>& patterns);
// Reads the faces back off a quiver on the s x s grid vertex ids; nullopt when not square shaped.
std::optional<std::vector<SquareFace>> recognize_square_shaped(const Quiver& q, int s);
// An automorphism acting as (i,j) -> (s-i+1, s-j+1) on vertices.
bool is_symmetric_square_shaped(const PlanarQP& p, int s);
// The 4 x 4 example with 29 arrows.
PlanarQP square_shaped_example();

}  // namespace qpkit
