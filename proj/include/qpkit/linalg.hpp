#pragma once

#include <gmpxx.h>

#include <map>
#include <utility>
#include <vector>

#include "qpkit/core.hpp"

namespace qpkit {

using SparseVec = std::map<int, Rational>;

void axpy(SparseVec& y, const Rational& c, const SparseVec& x);

// Incremental row echelon form over the rationals.
class Echelon {
 public:
  // Reduces v against the stored pivots; returns true and stores it when independent.
  bool insert(SparseVec v);
  // Reduces v in place; the result is zero iff v lies in the span.
  void reduce(SparseVec& v) const;
  bool contains(SparseVec v) const;
  std::size_t rank() const { return pivots_.size(); }

 private:
  std::map<int, SparseVec> pivots_;
};

std::size_t rank_of(const std::vector<SparseVec>& rows);

// Basis of {c : sum_i c_i rows_i = 0}.
std::vector<SparseVec> left_kernel(const std::vector<SparseVec>& rows);

using IntMatrix = std::vector<std::vector<mpz_class>>;

// Diagonal of the Smith normal form (nonzero invariant factors, ascending by divisibility).
std::vector<mpz_class> smith_invariants(IntMatrix m);

// Hermite normal form of the row lattice; zero rows dropped.
IntMatrix hermite_rows(IntMatrix m);

// Z-basis of the integer left kernel {n : n M = 0}, in Hermite normal form.
IntMatrix integer_left_kernel(const IntMatrix& m);

}  // namespace qpkit
