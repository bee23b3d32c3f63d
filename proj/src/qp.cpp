#include "qpkit/qp.hpp"

#include <algorithm>
#include "json.hpp"
#include <set>
#include <sstream>

namespace qpkit {

std::vector<int> canonical_rotation(const std::vector<int>& word) {
  std::vector<int> best = word;
  std::vector<int> rot(word.size());
  for (std::size_t s = 1; s < word.size(); ++s) {
    for (std::size_t k = 0; k < word.size(); ++k) rot[k] = word[(s + k) % word.size()];
    if (rot < best) best = rot;
  }
  return best;
}

void Potential::add_term(const std::vector<int>& cycle, const Rational& c) {
  if (c == 0) return;
  auto key = canonical_rotation(cycle);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

void Potential::add(const Potential& w, const Rational& c) {
  for (const auto& [cyc, d] : w.terms_) add_term(cyc, c * d);
}

Rational Potential::coef(const std::vector<int>& cycle) const {
  auto it = terms_.find(canonical_rotation(cycle));
  return it == terms_.end() ? Rational(0) : it->second;
}

bool Potential::contains_arrow(int a) const {
  for (const auto& [cyc, c] : terms_)
    if (std::find(cyc.begin(), cyc.end(), a) != cyc.end()) return true;
  return false;
}

std::size_t Potential::max_length() const {
  std::size_t m = 0;
  for (const auto& [cyc, c] : terms_) m = std::max(m, cyc.size());
  return m;
}

bool is_closed_path(const Quiver& q, const std::vector<int>& word) {
  if (word.empty()) return false;
  for (std::size_t k = 0; k < word.size(); ++k) {
    int a = word[k];
    int b = word[(k + 1) % word.size()];
    if (a < 0 || a >= q.num_arrows() || b < 0 || b >= q.num_arrows()) return false;
    if (q.arrow(a).tgt != q.arrow(b).src) return false;
  }
  return true;
}

void QP::validate() const {
  for (const auto& [cyc, c] : potential.terms()) {
    for (int a : cyc)
      if (a < 0 || a >= quiver.num_arrows())
        throw Error(ErrorCode::DanglingReference, "potential refers to a missing arrow");
    if (cyc.size() < 2) throw Error(ErrorCode::NonCyclicTerm, "potential term of length < 2");
    if (!is_closed_path(quiver, cyc))
      throw Error(ErrorCode::NonCyclicTerm, "potential term is not a closed path");
    if (c == 0) throw Error(ErrorCode::ZeroCoefficient, "stored zero coefficient");
  }
}

std::string QP::potential_string() const {
  if (potential.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [cyc, c] : potential.terms()) {
    if (!first) out << " + ";
    first = false;
    if (c != 1) out << "(" << c.get_str() << ")";
    for (std::size_t k = 0; k < cyc.size(); ++k) out << (k ? "." : "") << quiver.arrow(cyc[k]).id;
  }
  return out.str();
}

AlgebraElement sigma_expand(const Quiver& q, const Potential& w) {
  AlgebraElement r;
  for (const auto& [cyc, c] : w.terms()) {
    std::vector<int> rot(cyc.size());
    for (std::size_t s = 0; s < cyc.size(); ++s) {
      for (std::size_t k = 0; k < cyc.size(); ++k) rot[k] = cyc[(s + k) % cyc.size()];
      r.add(Path::of_word(q, rot), c);
    }
  }
  return r;
}

AlgebraElement cyclic_derivative(const Quiver& q, const Potential& w, int a) {
  AlgebraElement r;
  for (const auto& [cyc, c] : w.terms()) {
    std::size_t n = cyc.size();
    for (std::size_t s = 0; s < n; ++s) {
      if (cyc[s] != a) continue;
      std::vector<int> rest;
      for (std::size_t k = 1; k < n; ++k) rest.push_back(cyc[(s + k) % n]);
      if (rest.empty())
        r.add(Path::trivial(q.arrow(a).tgt), c);
      else
        r.add(Path::of_word(q, rest), c);
    }
  }
  return r;
}

AlgebraElement double_derivative(const Quiver& q, const Potential& w, int a, int b) {
  AlgebraElement r;
  for (const auto& [cyc, c] : w.terms()) {
    std::size_t n = cyc.size();
    if (n < 2) continue;
    for (std::size_t s = 0; s < n; ++s) {
      if (cyc[s] != a || cyc[(s + n - 1) % n] != b) continue;
      std::vector<int> mid;
      for (std::size_t k = 1; k + 1 < n; ++k) mid.push_back(cyc[(s + k) % n]);
      if (mid.empty())
        r.add(Path::trivial(q.arrow(a).tgt), c);
      else
        r.add(Path::of_word(q, mid), c);
    }
  }
  return r;
}

Potential substitute(const Quiver& q, const Potential& w, const std::map<int, AlgebraElement>& images,
                     std::size_t maxDegree) {
  Potential out;
  for (const auto& [cyc, c] : w.terms()) {
    bool touched = false;
    for (int a : cyc)
      if (images.count(a)) touched = true;
    if (!touched) {
      out.add_term(cyc, c);
      continue;
    }
    AlgebraElement acc;
    acc.add(Path::trivial(q.arrow(cyc.front()).src), c);
    for (int a : cyc) {
      auto it = images.find(a);
      AlgebraElement img = it == images.end() ? AlgebraElement::of_path(Path::of_arrow(q, a)) : it->second;
      acc = acc * img;
      if (acc.degree() > maxDegree)
        throw Error(ErrorCode::ReductionBoundExceeded,
                    "substitution produced a term of degree " + std::to_string(acc.degree()));
    }
    for (const auto& [p, d] : acc.terms()) {
      if (p.arrows.empty())
        throw Error(ErrorCode::InvariantViolated, "substitution produced a trivial cycle");
      out.add_term(p.arrows, d);
    }
  }
  return out;
}

QP delete_arrows(const QP& qp, const std::vector<int>& arrows) {
  std::set<int> gone(arrows.begin(), arrows.end());
  QP r;
  for (int v = 0; v < qp.quiver.num_vertices(); ++v) r.quiver.add_vertex(qp.quiver.vertex_id(v));
  std::vector<int> remap(qp.quiver.num_arrows(), -1);
  for (int a = 0; a < qp.quiver.num_arrows(); ++a) {
    if (gone.count(a)) continue;
    const Arrow& ar = qp.quiver.arrow(a);
    remap[a] = r.quiver.add_arrow(ar.id, ar.src, ar.tgt);
  }
  for (const auto& [cyc, c] : qp.potential.terms()) {
    std::vector<int> m;
    for (int a : cyc) {
      if (remap[a] < 0)
        throw Error(ErrorCode::InvariantViolated, "deleting an arrow that occurs in the potential");
      m.push_back(remap[a]);
    }
    r.potential.add_term(m, c);
  }
  return r;
}

QP make_qp(const std::vector<std::string>& vertices,
           const std::vector<std::tuple<std::string, std::string, std::string>>& arrows,
           const std::vector<TermSpec>& terms) {
  QP qp;
  for (const auto& v : vertices) qp.quiver.add_vertex(v);
  for (const auto& [id, s, t] : arrows)
    qp.quiver.add_arrow(id, qp.quiver.vertex_index(s), qp.quiver.vertex_index(t));
  for (const auto& term : terms) {
    if (term.coef == 0) throw Error(ErrorCode::ZeroCoefficient, "zero coefficient in fixture");
    std::vector<int> cyc;
    for (const auto& a : term.cycle) cyc.push_back(qp.quiver.arrow_index(a));
    if (cyc.size() < 2 || !is_closed_path(qp.quiver, cyc))
      throw Error(ErrorCode::NonCyclicTerm, "fixture term is not a closed path");
    qp.potential.add_term(cyc, term.coef);
  }
  return qp;
}

namespace {

std::string json_id(const nlohmann::json& j, const char* what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw Error(ErrorCode::MalformedJson, std::string("bad ") + what + " id");
}

}  // namespace

std::string serialize_qp(const QP& qp, int indent) {
  nlohmann::json j;
  j["vertices"] = qp.quiver.vertex_ids();
  j["arrows"] = nlohmann::json::array();
  for (const Arrow& a : qp.quiver.arrows())
    j["arrows"].push_back({{"id", a.id}, {"src", qp.quiver.vertex_id(a.src)}, {"tgt", qp.quiver.vertex_id(a.tgt)}});
  j["potential"] = nlohmann::json::array();
  for (const auto& [cyc, c] : qp.potential.terms()) {
    nlohmann::json cycle = nlohmann::json::array();
    for (int a : cyc) cycle.push_back(qp.quiver.arrow(a).id);
    j["potential"].push_back({{"coef", c.get_str()}, {"cycle", cycle}});
  }
  return j.dump(indent);
}

QP parse_qp(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedJson, e.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array())
    throw Error(ErrorCode::MalformedJson, "missing vertex list");
  QP qp;
  for (const auto& v : j["vertices"]) qp.quiver.add_vertex(json_id(v, "vertex"));
  if (j.contains("arrows")) {
    if (!j["arrows"].is_array()) throw Error(ErrorCode::MalformedJson, "arrows must be a list");
    for (const auto& a : j["arrows"]) {
      if (!a.is_object() || !a.contains("id") || !a.contains("src") || !a.contains("tgt"))
        throw Error(ErrorCode::MalformedJson, "arrow needs id, src and tgt");
      qp.quiver.add_arrow(json_id(a["id"], "arrow"), qp.quiver.vertex_index(json_id(a["src"], "vertex")),
                          qp.quiver.vertex_index(json_id(a["tgt"], "vertex")));
    }
  }
  if (j.contains("potential")) {
    if (!j["potential"].is_array()) throw Error(ErrorCode::MalformedJson, "potential must be a list");
    for (const auto& t : j["potential"]) {
      if (!t.is_object() || !t.contains("coef") || !t.contains("cycle") || !t["cycle"].is_array())
        throw Error(ErrorCode::MalformedJson, "term needs coef and cycle");
      Rational c;
      if (t["coef"].is_string())
        c = parse_rational(t["coef"].get<std::string>());
      else if (t["coef"].is_number_integer())
        c = Rational(std::to_string(t["coef"].get<long long>()));
      else
        throw Error(ErrorCode::MalformedJson, "coefficient must be an exact fraction");
      if (c == 0) throw Error(ErrorCode::ZeroCoefficient, "term with coefficient 0");
      std::vector<int> cyc;
      for (const auto& a : t["cycle"]) cyc.push_back(qp.quiver.arrow_index(json_id(a, "arrow")));
      if (cyc.size() < 2 || !is_closed_path(qp.quiver, cyc))
        throw Error(ErrorCode::NonCyclicTerm, "term is not a closed path of length >= 2");
      qp.potential.add_term(cyc, c);
    }
  }
  return qp;
}

QP permute_qp(const QP& qp, const std::vector<int>& vertexPerm, const std::vector<int>& arrowPerm) {
  int n = qp.quiver.num_vertices();
  int m = qp.quiver.num_arrows();
  std::vector<int> vinv(n), ainv(m);
  for (int v = 0; v < n; ++v) vinv[vertexPerm[v]] = v;
  for (int a = 0; a < m; ++a) ainv[arrowPerm[a]] = a;
  QP r;
  for (int k = 0; k < n; ++k) r.quiver.add_vertex(qp.quiver.vertex_id(vinv[k]));
  for (int k = 0; k < m; ++k) {
    const Arrow& a = qp.quiver.arrow(ainv[k]);
    r.quiver.add_arrow(a.id, vertexPerm[a.src], vertexPerm[a.tgt]);
  }
  for (const auto& [cyc, c] : qp.potential.terms()) {
    std::vector<int> w;
    for (int a : cyc) w.push_back(arrowPerm[a]);
    r.potential.add_term(w, c);
  }
  return r;
}

}  // namespace qpkit
