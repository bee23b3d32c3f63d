#include "qpkit/core.hpp"

#include <sstream>

namespace qpkit {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& text) {
  std::string t;
  for (char ch : text)
    if (ch != ' ') t.push_back(ch);
  if (t.empty()) throw Error(ErrorCode::MalformedJson, "empty coefficient");
  std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  std::size_t slash = t.find('/');
  auto digits = [&](std::size_t b, std::size_t e) {
    if (b >= e) return false;
    for (std::size_t k = b; k < e; ++k)
      if (t[k] < '0' || t[k] > '9') return false;
    return true;
  };
  bool ok = slash == std::string::npos ? digits(start, t.size())
                                       : digits(start, slash) && digits(slash + 1, t.size());
  if (!ok) throw Error(ErrorCode::MalformedJson, "bad coefficient '" + text + "'");
  if (t[0] == '+') t.erase(0, 1);
  Rational q;
  q.set_str(t, 10);
  if (q.get_den() == 0) throw Error(ErrorCode::MalformedJson, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedJson: return "MalformedJson";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::NonCyclicTerm: return "NonCyclicTerm";
    case ErrorCode::ZeroCoefficient: return "ZeroCoefficient";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::DegreeExceeded: return "DegreeExceeded";
    case ErrorCode::NotACut: return "NotACut";
    case ErrorCode::UndeterminedDimension: return "UndeterminedDimension";
    case ErrorCode::NotSelfinjective: return "NotSelfinjective";
    case ErrorCode::NonAdmissibleRelation: return "NonAdmissibleRelation";
    case ErrorCode::NonMinimalRelations: return "NonMinimalRelations";
    case ErrorCode::MixedEndpointRelation: return "MixedEndpointRelation";
    case ErrorCode::NotStrictSource: return "NotStrictSource";
    case ErrorCode::NotStrictSink: return "NotStrictSink";
    case ErrorCode::NotCompatible: return "NotCompatible";
    case ErrorCode::NoSequence: return "NoSequence";
    case ErrorCode::TwoCycleAtVertex: return "TwoCycleAtVertex";
    case ErrorCode::ReductionBoundExceeded: return "ReductionBoundExceeded";
    case ErrorCode::OrbitPreconditionViolated: return "OrbitPreconditionViolated";
    case ErrorCode::NotPlanarMutable: return "NotPlanarMutable";
    case ErrorCode::NotPlanar: return "NotPlanar";
    case ErrorCode::EmbeddingMismatch: return "EmbeddingMismatch";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::BadParameter: return "BadParameter";
    case ErrorCode::NotAlternating: return "NotAlternating";
    case ErrorCode::IllegalFacePattern: return "IllegalFacePattern";
    case ErrorCode::SizeBoundExceeded: return "SizeBoundExceeded";
    case ErrorCode::InvariantViolated: return "InvariantViolated";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

int Quiver::add_vertex(const std::string& id) {
  if (vmap_.count(id)) throw Error(ErrorCode::DuplicateId, "vertex '" + id + "'");
  int v = num_vertices();
  vertices_.push_back(id);
  vmap_[id] = v;
  out_.emplace_back();
  in_.emplace_back();
  return v;
}

int Quiver::add_arrow(const std::string& id, int src, int tgt) {
  if (amap_.count(id)) throw Error(ErrorCode::DuplicateId, "arrow '" + id + "'");
  if (src < 0 || src >= num_vertices() || tgt < 0 || tgt >= num_vertices())
    throw Error(ErrorCode::DanglingReference, "arrow '" + id + "' has an unknown endpoint");
  int a = num_arrows();
  arrows_.push_back(Arrow{id, src, tgt});
  amap_[id] = a;
  out_[src].push_back(a);
  in_[tgt].push_back(a);
  return a;
}

std::optional<int> Quiver::find_vertex(const std::string& id) const {
  auto it = vmap_.find(id);
  if (it == vmap_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Quiver::find_arrow(const std::string& id) const {
  auto it = amap_.find(id);
  if (it == amap_.end()) return std::nullopt;
  return it->second;
}

int Quiver::vertex_index(const std::string& id) const {
  auto v = find_vertex(id);
  if (!v) throw Error(ErrorCode::DanglingReference, "unknown vertex '" + id + "'");
  return *v;
}

int Quiver::arrow_index(const std::string& id) const {
  auto a = find_arrow(id);
  if (!a) throw Error(ErrorCode::DanglingReference, "unknown arrow '" + id + "'");
  return *a;
}

bool Quiver::operator==(const Quiver& o) const {
  if (vertices_ != o.vertices_ || arrows_.size() != o.arrows_.size()) return false;
  for (std::size_t k = 0; k < arrows_.size(); ++k) {
    const Arrow& x = arrows_[k];
    const Arrow& y = o.arrows_[k];
    if (x.id != y.id || x.src != y.src || x.tgt != y.tgt) return false;
  }
  return true;
}

Path Path::of_arrow(const Quiver& q, int a) {
  return Path{q.arrow(a).src, q.arrow(a).tgt, {a}};
}

Path Path::of_word(const Quiver& q, const std::vector<int>& word) {
  if (word.empty()) throw Error(ErrorCode::InvariantViolated, "of_word needs a nonempty word");
  for (std::size_t k = 0; k + 1 < word.size(); ++k)
    if (q.arrow(word[k]).tgt != q.arrow(word[k + 1]).src)
      throw Error(ErrorCode::NonCyclicTerm, "arrows do not compose");
  return Path{q.arrow(word.front()).src, q.arrow(word.back()).tgt, word};
}

bool PathLess::operator()(const Path& x, const Path& y) const {
  if (x.arrows.size() != y.arrows.size()) return x.arrows.size() < y.arrows.size();
  if (x.arrows.empty()) return x.src < y.src;
  return x.arrows < y.arrows;
}

bool operator==(const Path& x, const Path& y) {
  if (x.arrows.empty() || y.arrows.empty())
    return x.arrows.empty() && y.arrows.empty() && x.src == y.src;
  return x.arrows == y.arrows;
}

std::size_t WordHash::operator()(const std::vector<int>& w) const {
  std::size_t h = 1469598103934665603ull;
  for (int a : w) {
    h ^= static_cast<std::size_t>(a) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::size_t PathHash::operator()(const Path& p) const {
  if (p.arrows.empty()) return static_cast<std::size_t>(p.src) * 0x9e3779b97f4a7c15ull + 17;
  return WordHash{}(p.arrows);
}

std::optional<Path> concat(const Path& x, const Path& y) {
  if (x.tgt != y.src) return std::nullopt;
  Path r{x.src, y.tgt, x.arrows};
  r.arrows.insert(r.arrows.end(), y.arrows.begin(), y.arrows.end());
  return r;
}

AlgebraElement AlgebraElement::of_path(const Path& p, const Rational& c) {
  AlgebraElement x;
  x.add(p, c);
  return x;
}

void AlgebraElement::add(const Path& p, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(p);
  if (it == terms_.end()) {
    terms_.emplace(p, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

void AlgebraElement::add(const AlgebraElement& x, const Rational& c) {
  if (c == 0) return;
  for (const auto& [p, d] : x.terms_) add(p, c * d);
}

AlgebraElement AlgebraElement::scaled(const Rational& c) const {
  AlgebraElement r;
  if (c == 0) return r;
  for (const auto& [p, d] : terms_) r.terms_.emplace(p, c * d);
  return r;
}

std::size_t AlgebraElement::degree() const {
  return terms_.empty() ? 0 : terms_.rbegin()->first.length();
}

Rational AlgebraElement::coef(const Path& p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? Rational(0) : it->second;
}

AlgebraElement AlgebraElement::times_path_left(const Path& p) const {
  AlgebraElement r;
  for (const auto& [q, c] : terms_)
    if (auto pq = concat(p, q)) r.add(*pq, c);
  return r;
}

AlgebraElement AlgebraElement::times_path_right(const Path& p) const {
  AlgebraElement r;
  for (const auto& [q, c] : terms_)
    if (auto qp = concat(q, p)) r.add(*qp, c);
  return r;
}

AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) {
  AlgebraElement r;
  for (const auto& [p, c] : x.terms_)
    for (const auto& [q, d] : y.terms_)
      if (auto pq = concat(p, q)) r.add(*pq, c * d);
  return r;
}

AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y) {
  AlgebraElement r = x;
  r.add(y, 1);
  return r;
}

AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y) {
  AlgebraElement r = x;
  r.add(y, -1);
  return r;
}

std::string path_to_string(const Quiver& q, const Path& p) {
  if (p.arrows.empty()) return "e_" + q.vertex_id(p.src);
  std::string s;
  for (std::size_t k = 0; k < p.arrows.size(); ++k) {
    if (k) s += ".";
    s += q.arrow(p.arrows[k]).id;
  }
  return s;
}

std::string AlgebraElement::to_string(const Quiver& q) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [p, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    if (c != 1) out << "(" << c.get_str() << ")";
    out << path_to_string(q, p);
  }
  return out.str();
}

}  // namespace qpkit
