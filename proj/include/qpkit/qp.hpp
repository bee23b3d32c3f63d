#pragma once

#include <map>
#include <string>
#include <vector>

#include "qpkit/core.hpp"

namespace qpkit {

// Canonical rotation of a cyclic word: lexicographically minimal arrow index sequence.
std::vector<int> canonical_rotation(const std::vector<int>& word);

class Potential {
 public:
  using Terms = std::map<std::vector<int>, Rational>;

  // Adds c times the cycle given in composition order; merges rotations.
  void add_term(const std::vector<int>& cycle, const Rational& c);
  void add(const Potential& w, const Rational& c = 1);
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coef(const std::vector<int>& cycle) const;
  bool contains_arrow(int a) const;
  std::size_t max_length() const;
  bool operator==(const Potential& o) const { return terms_ == o.terms_; }

 private:
  Terms terms_;
};

struct QP {
  Quiver quiver;
  Potential potential;

  // Throws NonCyclicTerm / DanglingReference when a term is not a closed path
  // or is shorter than 2.
  void validate() const;
  std::string potential_string() const;
};

bool is_closed_path(const Quiver& q, const std::vector<int>& word);

AlgebraElement sigma_expand(const Quiver& q, const Potential& w);
AlgebraElement cyclic_derivative(const Quiver& q, const Potential& w, int a);
// Strips a leading a and a trailing b from every rotation of every term.
AlgebraElement double_derivative(const Quiver& q, const Potential& w, int a, int b);

// Substitutes arrows by algebra elements in every term; arrows not in the map are kept.
// Terms whose expansion exceeds maxDegree raise ReductionBoundExceeded.
Potential substitute(const Quiver& q, const Potential& w, const std::map<int, AlgebraElement>& images,
                     std::size_t maxDegree);

// Removes the listed arrows (which must not occur in the potential) and reindexes.
QP delete_arrows(const QP& qp, const std::vector<int>& arrows);

// Builds a QP from string ids; convenient for fixtures.
struct TermSpec {
  Rational coef;
  std::vector<std::string> cycle;
};
QP make_qp(const std::vector<std::string>& vertices,
           const std::vector<std::tuple<std::string, std::string, std::string>>& arrows,
           const std::vector<TermSpec>& terms);

std::string serialize_qp(const QP& qp, int indent = 2);
QP parse_qp(const std::string& text);

// Relabel vertices and arrows by permutations (new index of old index).
QP permute_qp(const QP& qp, const std::vector<int>& vertexPerm, const std::vector<int>& arrowPerm);

}  // namespace qpkit
