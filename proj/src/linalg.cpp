#include "qpkit/linalg.hpp"

#include <algorithm>

namespace qpkit {

void axpy(SparseVec& y, const Rational& c, const SparseVec& x) {
  if (c == 0) return;
  for (const auto& [k, v] : x) {
    auto it = y.find(k);
    if (it == y.end()) {
      y.emplace(k, c * v);
    } else {
      it->second += c * v;
      if (it->second == 0) y.erase(it);
    }
  }
}

void Echelon::reduce(SparseVec& v) const {
  auto it = v.begin();
  while (it != v.end()) {
    auto p = pivots_.find(it->first);
    if (p == pivots_.end()) {
      ++it;
      continue;
    }
    int col = it->first;
    Rational c = -it->second;
    axpy(v, c, p->second);
    it = v.upper_bound(col);
  }
}

bool Echelon::insert(SparseVec v) {
  while (!v.empty()) {
    auto p = pivots_.find(v.begin()->first);
    if (p == pivots_.end()) break;
    Rational c = -v.begin()->second;
    axpy(v, c, p->second);
  }
  if (v.empty()) return false;
  Rational lead = v.begin()->second;
  if (lead != 1)
    for (auto& [k, x] : v) x /= lead;
  int col = v.begin()->first;
  pivots_.emplace(col, std::move(v));
  return true;
}

bool Echelon::contains(SparseVec v) const {
  reduce(v);
  return v.empty();
}

std::size_t rank_of(const std::vector<SparseVec>& rows) {
  Echelon e;
  for (const auto& r : rows) e.insert(r);
  return e.rank();
}

std::vector<SparseVec> left_kernel(const std::vector<SparseVec>& rows) {
  std::map<int, std::pair<SparseVec, SparseVec>> piv;
  std::vector<SparseVec> ker;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    SparseVec v = rows[i];
    SparseVec comb;
    comb.emplace(static_cast<int>(i), Rational(1));
    while (!v.empty()) {
      auto p = piv.find(v.begin()->first);
      if (p == piv.end()) break;
      Rational c = -v.begin()->second;
      axpy(v, c, p->second.first);
      axpy(comb, c, p->second.second);
    }
    if (v.empty()) {
      ker.push_back(std::move(comb));
      continue;
    }
    Rational lead = v.begin()->second;
    for (auto& [k, x] : v) x /= lead;
    for (auto& [k, x] : comb) x /= lead;
    int col = v.begin()->first;
    piv.emplace(col, std::make_pair(std::move(v), std::move(comb)));
  }
  return ker;
}

std::vector<mpz_class> smith_invariants(IntMatrix m) {
  std::vector<mpz_class> diag;
  std::size_t rows = m.size();
  std::size_t cols = rows ? m[0].size() : 0;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // pivot of minimal absolute value in the remaining block
    std::size_t pr = rows, pc = cols;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j)
        if (m[i][j] != 0 && (pr == rows || abs(m[i][j]) < abs(m[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr == rows) break;
    std::swap(m[t], m[pr]);
    for (auto& row : m) std::swap(row[t], row[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        mpz_class q = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) {
          std::swap(m[t], m[i]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        mpz_class q = m[t][j] / m[t][t];
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) {
          for (auto& row : m) std::swap(row[t], row[j]);
          clean = false;
        }
      }
      if (clean) {
        // divisibility condition on the remaining block
        for (std::size_t i = t + 1; i < rows && clean; ++i)
          for (std::size_t j = t + 1; j < cols; ++j)
            if (m[i][j] % m[t][t] != 0) {
              for (std::size_t k = t; k < cols; ++k) m[t][k] += m[i][k];
              clean = false;
              break;
            }
      }
    }
    diag.push_back(abs(m[t][t]));
    ++t;
  }
  return diag;
}

IntMatrix hermite_rows(IntMatrix m) {
  std::size_t rows = m.size();
  std::size_t cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // Euclid on column c among rows r..end
    while (true) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (m[i][c] != 0 && (best == rows || abs(m[i][c]) < abs(m[best][c]))) best = i;
      if (best == rows) break;
      std::swap(m[r], m[best]);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (m[i][c] == 0) continue;
        mpz_class q = m[i][c] / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[i][j] -= q * m[r][j];
        if (m[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (m[r][c] == 0) continue;
    if (m[r][c] < 0)
      for (std::size_t j = c; j < cols; ++j) m[r][j] = -m[r][j];
    for (std::size_t i = 0; i < r; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
      if (q != 0)
        for (std::size_t j = c; j < cols; ++j) m[i][j] -= q * m[r][j];
    }
    ++r;
  }
  m.resize(r);
  return m;
}

IntMatrix integer_left_kernel(const IntMatrix& m) {
  std::size_t t = m.size();
  if (t == 0) return {};
  std::size_t a = m[0].size();
  IntMatrix aug(t, std::vector<mpz_class>(a + t));
  for (std::size_t i = 0; i < t; ++i) {
    for (std::size_t j = 0; j < a; ++j) aug[i][j] = m[i][j];
    aug[i][a + i] = 1;
  }
  IntMatrix h = hermite_rows(aug);
  IntMatrix ker;
  for (const auto& row : h) {
    bool zero = true;
    for (std::size_t j = 0; j < a; ++j)
      if (row[j] != 0) zero = false;
    if (zero) ker.emplace_back(row.begin() + static_cast<long>(a), row.end());
  }
  return hermite_rows(ker);
}

}  // namespace qpkit
