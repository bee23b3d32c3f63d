#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qpkit/linalg.hpp"
#include "qpkit/qp.hpp"

namespace qpkit {

// All paths of the given length starting (resp. ending) at v.
std::vector<Path> all_paths_from(const Quiver& q, int v, std::size_t len);
std::vector<Path> all_paths_to(const Quiver& q, int v, std::size_t len);

// A rewriting rule lead -> tail with tail < lead in the path order.
struct Rule {
  Path lead;
  AlgebraElement tail;
};

class ReductionSystem {
 public:
  ReductionSystem() = default;
  explicit ReductionSystem(Quiver q) : ambient_(std::move(q)) {}

  const Quiver& ambient() const { return ambient_; }
  const std::vector<Rule>& rules() const { return rules_; }
  // All ambiguities of degree <= completeDegree resolve.
  std::size_t complete_degree() const { return completeDegree_; }
  // No ambiguity between active rules was skipped: normal forms are unique in every degree.
  bool confluent() const { return confluent_; }
  std::size_t max_rule_degree() const;
  const std::vector<bool>& killed_vertices() const { return killed_; }

  // Position of the first rule lead occurring in the word, or none.
  std::optional<std::pair<std::size_t, int>> find_lead(const std::vector<int>& word) const;
  bool is_normal(const Path& p) const;
  // Reduces to normal form without degree checks.
  AlgebraElement reduce(const AlgebraElement& x) const;

 private:
  friend ReductionSystem complete_reduction_system(const std::vector<AlgebraElement>&, const Quiver&,
                                                   std::size_t, std::size_t);
  void add_rule(Rule r);
  void remove_rule(int index);

  Quiver ambient_;
  std::vector<Rule> rules_;
  std::vector<bool> active_;
  std::unordered_map<std::vector<int>, int, WordHash> byLead_;
  std::vector<std::size_t> leadLengths_;  // distinct lengths of active leads
  std::vector<bool> killed_;
  std::size_t completeDegree_ = 0;
  bool confluent_ = true;
};

// Completes the generators to a system confluent up to degreeBound. Throws
// SizeBoundExceeded when more than maxRules rules would be needed.
ReductionSystem complete_reduction_system(const std::vector<AlgebraElement>& gens, const Quiver& ambient,
                                          std::size_t degreeBound, std::size_t maxRules = 50000);

// Throws DegreeExceeded when x has degree above the complete degree of a non-confluent system.
AlgebraElement normal_form(const AlgebraElement& x, const ReductionSystem& sys);

class FDAlgebra {
 public:
  FDAlgebra(ReductionSystem sys, std::vector<Path> basis);

  const Quiver& quiver() const { return sys_.ambient(); }
  const ReductionSystem& system() const { return sys_; }
  const std::vector<Path>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  // Basis indices of paths from i to j.
  const std::vector<int>& by_pair(int i, int j) const { return byPair_[i * quiver().num_vertices() + j]; }
  std::optional<int> index_of(const Path& p) const;

  SparseVec to_vec(const AlgebraElement& x) const;  // normalizes first
  AlgebraElement from_vec(const SparseVec& v) const;
  SparseVec multiply(int x, int y) const;
  SparseVec multiply(const SparseVec& x, const SparseVec& y) const;
  // x * path and path * x for a single path (usually an arrow).
  SparseVec times_path_right(const SparseVec& x, const Path& p) const;
  SparseVec times_path_left(const Path& p, const SparseVec& x) const;

  std::vector<std::vector<int>> dimension_vector() const;
  // Smallest k with J^k = 0, or none when the arrow ideal is not nilpotent.
  std::optional<std::size_t> nilpotency_index() const;
  std::size_t max_basis_length() const;

  std::string to_json(int indent = 2) const;

 private:
  ReductionSystem sys_;
  std::vector<Path> basis_;
  std::unordered_map<Path, int, PathHash> index_;
  std::vector<std::vector<int>> byPair_;
  mutable std::unordered_map<long long, SparseVec> products_;  // memo for multiply(int, int)
};

// Result of a finite-dimensionality attempt. Undetermined carries the normal-word count
// per length that was observed.
struct AlgebraResult {
  std::optional<FDAlgebra> algebra;
  std::vector<std::size_t> profile;
  std::size_t degreeBound = 0;
  std::string note;
  bool determined() const { return algebra.has_value(); }
};

// Quotient of KQ by the ideal of the relations. degreeBound 0 selects the default
// 4 * |Q0| * hint, doubled on failure until ceiling.
AlgebraResult presented_algebra(const Quiver& q, const std::vector<AlgebraElement>& relations,
                                std::size_t degreeBound = 0, std::size_t hint = 3, std::size_t ceiling = 1024);

AlgebraResult jacobian_algebra(const QP& qp, std::size_t degreeBound = 0);

std::vector<AlgebraElement> jacobian_relations(const QP& qp);

// The quiver with cut arrows removed, and the relations {d_c W : c in cut} mapped into it.
struct CutPresentation {
  Quiver quiver;
  std::vector<AlgebraElement> relations;
  std::vector<int> arrowMap;  // arrow of Q_C -> arrow of Q
};
CutPresentation cut_presentation(const QP& qp, const std::vector<int>& cut);

// Throws NotACut when the potential is not homogeneous of degree 1 for the cut.
AlgebraResult truncated_jacobian(const QP& qp, const std::vector<int>& cut, std::size_t degreeBound = 0);

std::vector<std::vector<int>> dimension_vector(const FDAlgebra& alg);

// Whether the generators are minimal: linearly independent in I/(JI + IJ). Throws
// DegreeExceeded when the quotient could not be shown finite dimensional within the bound.
bool min_generation_check(const std::vector<AlgebraElement>& gens, const Quiver& ambient,
                          std::size_t degreeBound = 0);

}  // namespace qpkit
