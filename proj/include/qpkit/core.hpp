#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace qpkit {

using Rational = mpq_class;

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

enum class ErrorCode {
  MalformedJson,
  DanglingReference,
  NonCyclicTerm,
  ZeroCoefficient,
  DuplicateId,
  DegreeExceeded,
  NotACut,
  UndeterminedDimension,
  NotSelfinjective,
  NonAdmissibleRelation,
  NonMinimalRelations,
  MixedEndpointRelation,
  NotStrictSource,
  NotStrictSink,
  NotCompatible,
  NoSequence,
  TwoCycleAtVertex,
  ReductionBoundExceeded,
  OrbitPreconditionViolated,
  NotPlanarMutable,
  NotPlanar,
  EmbeddingMismatch,
  Disconnected,
  BadParameter,
  NotAlternating,
  IllegalFacePattern,
  SizeBoundExceeded,
  InvariantViolated,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct Arrow {
  std::string id;
  int src = 0;
  int tgt = 0;
};

// Vertices and arrows carry string ids externally and dense indices internally.
// The arrow index order is the total order used for path comparison.
class Quiver {
 public:
  int add_vertex(const std::string& id);
  int add_arrow(const std::string& id, int src, int tgt);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_arrows() const { return static_cast<int>(arrows_.size()); }
  const std::string& vertex_id(int v) const { return vertices_[v]; }
  const Arrow& arrow(int a) const { return arrows_[a]; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::vector<std::string>& vertex_ids() const { return vertices_; }

  std::optional<int> find_vertex(const std::string& id) const;
  std::optional<int> find_arrow(const std::string& id) const;
  int vertex_index(const std::string& id) const;
  int arrow_index(const std::string& id) const;

  const std::vector<int>& out_arrows(int v) const { return out_[v]; }
  const std::vector<int>& in_arrows(int v) const { return in_[v]; }

  bool operator==(const Quiver& o) const;

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::unordered_map<std::string, int> vmap_;
  std::unordered_map<std::string, int> amap_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

// A path in composition order (first arrow first). Trivial paths keep their vertex.
struct Path {
  int src = 0;
  int tgt = 0;
  std::vector<int> arrows;

  static Path trivial(int v) { return Path{v, v, {}}; }
  static Path of_arrow(const Quiver& q, int a);
  static Path of_word(const Quiver& q, const std::vector<int>& word);
  std::size_t length() const { return arrows.size(); }
  bool is_trivial() const { return arrows.empty(); }
};

// Degree first, then lexicographic on arrow indices, trivial paths by vertex.
struct PathLess {
  bool operator()(const Path& x, const Path& y) const;
};
bool operator==(const Path& x, const Path& y);
inline bool operator!=(const Path& x, const Path& y) { return !(x == y); }

struct WordHash {
  std::size_t operator()(const std::vector<int>& w) const;
};
struct PathHash {
  std::size_t operator()(const Path& p) const;
};

// Composable concatenation; nullopt when endpoints do not match.
std::optional<Path> concat(const Path& x, const Path& y);

// A noncommutative polynomial in the path algebra.
class AlgebraElement {
 public:
  using Terms = std::map<Path, Rational, PathLess>;

  AlgebraElement() = default;
  static AlgebraElement of_path(const Path& p, const Rational& c = 1);

  void add(const Path& p, const Rational& c);
  void add(const AlgebraElement& x, const Rational& c = 1);
  AlgebraElement scaled(const Rational& c) const;
  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  std::size_t degree() const;
  const Path& leading_path() const { return terms_.rbegin()->first; }
  const Rational& leading_coef() const { return terms_.rbegin()->second; }
  Rational coef(const Path& p) const;

  // Left and right products with a path; incomposable terms vanish.
  AlgebraElement times_path_left(const Path& p) const;
  AlgebraElement times_path_right(const Path& p) const;
  friend AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y);
  friend AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y);
  friend AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y);
  bool operator==(const AlgebraElement& o) const { return terms_ == o.terms_; }
  bool operator!=(const AlgebraElement& o) const { return !(*this == o); }

  std::string to_string(const Quiver& q) const;

 private:
  Terms terms_;
};

std::string path_to_string(const Quiver& q, const Path& p);

}  // namespace qpkit
