#include "qpkit/algebra.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <tuple>

#include "json.hpp"

namespace qpkit {

namespace {

Path join(const Quiver& q, const std::vector<int>& pre, const Path& mid, const std::vector<int>& post) {
  if (pre.empty() && post.empty()) return mid;
  std::vector<int> w = pre;
  w.insert(w.end(), mid.arrows.begin(), mid.arrows.end());
  w.insert(w.end(), post.begin(), post.end());
  return Path{q.arrow(w.front()).src, q.arrow(w.back()).tgt, std::move(w)};
}

void paths_from(const Quiver& q, int v, std::size_t len, std::vector<int>& cur, std::vector<Path>& out) {
  if (cur.size() == len) {
    out.push_back(cur.empty() ? Path::trivial(v) : Path{q.arrow(cur.front()).src, v, cur});
    return;
  }
  for (int a : q.out_arrows(v)) {
    cur.push_back(a);
    paths_from(q, q.arrow(a).tgt, len, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Path> all_paths_from(const Quiver& q, int v, std::size_t len) {
  std::vector<Path> out;
  std::vector<int> cur;
  paths_from(q, v, len, cur, out);
  for (auto& p : out) p.src = v;
  return out;
}

std::vector<Path> all_paths_to(const Quiver& q, int v, std::size_t len) {
  std::vector<Path> out;
  std::vector<std::pair<int, std::vector<int>>> frontier{{v, {}}};
  for (std::size_t k = 0; k < len; ++k) {
    std::vector<std::pair<int, std::vector<int>>> next;
    for (const auto& [x, w] : frontier)
      for (int a : q.in_arrows(x)) {
        std::vector<int> w2{a};
        w2.insert(w2.end(), w.begin(), w.end());
        next.push_back({q.arrow(a).src, std::move(w2)});
      }
    frontier = std::move(next);
  }
  for (auto& [x, w] : frontier) out.push_back(w.empty() ? Path::trivial(v) : Path{x, v, w});
  return out;
}

std::size_t ReductionSystem::max_rule_degree() const {
  std::size_t d = 0;
  for (std::size_t i = 0; i < rules_.size(); ++i)
    if (active_[i]) d = std::max(d, rules_[i].lead.length());
  return d;
}

std::optional<std::pair<std::size_t, int>> ReductionSystem::find_lead(const std::vector<int>& word) const {
  if (byLead_.empty()) return std::nullopt;
  std::vector<int> sub;
  for (std::size_t i = 0; i < word.size(); ++i)
    for (std::size_t len : leadLengths_) {
      if (i + len > word.size()) break;
      sub.assign(word.begin() + static_cast<long>(i), word.begin() + static_cast<long>(i + len));
      auto it = byLead_.find(sub);
      if (it != byLead_.end()) return std::make_pair(i, it->second);
    }
  return std::nullopt;
}

bool ReductionSystem::is_normal(const Path& p) const {
  if (p.is_trivial()) return killed_.empty() || !killed_[p.src];
  return !find_lead(p.arrows);
}

AlgebraElement ReductionSystem::reduce(const AlgebraElement& x) const {
  AlgebraElement result;
  AlgebraElement work = x;
  while (!work.is_zero()) {
    Path p = work.leading_path();
    Rational c = work.leading_coef();
    work.add(p, -c);
    if (p.is_trivial()) {
      if (killed_.empty() || !killed_[p.src]) result.add(p, c);
      continue;
    }
    auto hit = find_lead(p.arrows);
    if (!hit) {
      result.add(p, c);
      continue;
    }
    auto [pos, r] = *hit;
    const Rule& rule = rules_[r];
    std::vector<int> pre(p.arrows.begin(), p.arrows.begin() + static_cast<long>(pos));
    std::vector<int> post(p.arrows.begin() + static_cast<long>(pos + rule.lead.length()), p.arrows.end());
    for (const auto& [q, d] : rule.tail.terms()) work.add(join(ambient_, pre, q, post), c * d);
  }
  return result;
}

void ReductionSystem::add_rule(Rule r) {
  int idx = static_cast<int>(rules_.size());
  byLead_[r.lead.arrows] = idx;
  std::size_t len = r.lead.length();
  if (std::find(leadLengths_.begin(), leadLengths_.end(), len) == leadLengths_.end()) {
    leadLengths_.push_back(len);
    std::sort(leadLengths_.begin(), leadLengths_.end());
  }
  rules_.push_back(std::move(r));
  active_.push_back(true);
}

void ReductionSystem::remove_rule(int index) {
  active_[index] = false;
  byLead_.erase(rules_[index].lead.arrows);
  std::set<std::size_t> lengths;
  for (const auto& [w, i] : byLead_) lengths.insert(w.size());
  leadLengths_.assign(lengths.begin(), lengths.end());
}

namespace {

bool contains_subword(const std::vector<int>& big, const std::vector<int>& small) {
  return std::search(big.begin(), big.end(), small.begin(), small.end()) != big.end();
}

}  // namespace

ReductionSystem complete_reduction_system(const std::vector<AlgebraElement>& gens, const Quiver& ambient,
                                          std::size_t degreeBound, std::size_t maxRules) {
  ReductionSystem sys(ambient);
  sys.killed_.assign(ambient.num_vertices(), false);
  using Amb = std::tuple<std::size_t, int, int, std::size_t>;  // degree, rule i, rule j, overlap
  std::priority_queue<Amb, std::vector<Amb>, std::greater<Amb>> ambiguities;
  std::vector<AlgebraElement> pending(gens.rbegin(), gens.rend());
  bool skipped = false;

  auto enqueue_overlaps = [&](int i) {
    const auto& u = sys.rules_[i].lead.arrows;
    for (std::size_t j = 0; j < sys.rules_.size(); ++j) {
      if (!sys.active_[j]) continue;
      const auto& v = sys.rules_[j].lead.arrows;
      std::size_t kmax = std::min(u.size(), v.size());
      for (std::size_t k = 1; k < kmax; ++k) {
        if (std::equal(u.end() - static_cast<long>(k), u.end(), v.begin()))
          ambiguities.push({u.size() + v.size() - k, i, static_cast<int>(j), k});
        if (static_cast<int>(j) != i && std::equal(v.end() - static_cast<long>(k), v.end(), u.begin()))
          ambiguities.push({u.size() + v.size() - k, static_cast<int>(j), i, k});
      }
    }
  };

  auto process = [&](const AlgebraElement& elem) {
    AlgebraElement r = sys.reduce(elem);
    if (r.is_zero()) return;
    Path lead = r.leading_path();
    Rational lc = r.leading_coef();
    if (lead.is_trivial()) {
      if (r.size() != 1)
        throw Error(ErrorCode::MixedEndpointRelation, "relation mixes several idempotents");
      int v = lead.src;
      sys.killed_[v] = true;
      std::set<int> touching;
      for (int a : ambient.out_arrows(v)) touching.insert(a);
      for (int a : ambient.in_arrows(v)) touching.insert(a);
      for (int a : touching) pending.push_back(AlgebraElement::of_path(Path::of_arrow(ambient, a)));
      return;
    }
    if (sys.rules_.size() >= maxRules)
      throw Error(ErrorCode::SizeBoundExceeded, "reduction system exceeded the rule cap");
    AlgebraElement tail = r;
    tail.add(lead, -lc);
    tail = tail.scaled(-1 / lc);
    for (std::size_t j = 0; j < sys.rules_.size(); ++j) {
      if (!sys.active_[j]) continue;
      if (contains_subword(sys.rules_[j].lead.arrows, lead.arrows)) {
        AlgebraElement back = sys.rules_[j].tail.scaled(-1);
        back.add(sys.rules_[j].lead, 1);
        sys.remove_rule(static_cast<int>(j));
        pending.push_back(std::move(back));
      }
    }
    sys.add_rule(Rule{lead, tail});
    enqueue_overlaps(static_cast<int>(sys.rules_.size()) - 1);
  };

  while (true) {
    while (!pending.empty()) {
      AlgebraElement e = std::move(pending.back());
      pending.pop_back();
      process(e);
    }
    if (ambiguities.empty()) break;
    auto [deg, i, j, k] = ambiguities.top();
    ambiguities.pop();
    if (!sys.active_[i] || !sys.active_[j]) continue;
    if (deg > degreeBound) {
      skipped = true;
      break;
    }
    const Rule& ri = sys.rules_[i];
    const Rule& rj = sys.rules_[j];
    const auto& u = ri.lead.arrows;
    const auto& v = rj.lead.arrows;
    Path vRest = Path::of_word(ambient, std::vector<int>(v.begin() + static_cast<long>(k), v.end()));
    Path uHead = Path::of_word(ambient, std::vector<int>(u.begin(), u.end() - static_cast<long>(k)));
    AlgebraElement s = ri.tail.times_path_right(vRest);
    s.add(rj.tail.times_path_left(uHead), -1);
    pending.push_back(std::move(s));
  }
  // anything left in the queue between active rules is an unresolved ambiguity
  while (skipped && !ambiguities.empty()) ambiguities.pop();
  sys.confluent_ = !skipped;
  sys.completeDegree_ = degreeBound;
  return sys;
}

AlgebraElement normal_form(const AlgebraElement& x, const ReductionSystem& sys) {
  if (!sys.confluent() && x.degree() > sys.complete_degree())
    throw Error(ErrorCode::DegreeExceeded, "element degree exceeds the complete degree of the system");
  return sys.reduce(x);
}

FDAlgebra::FDAlgebra(ReductionSystem sys, std::vector<Path> basis) : sys_(std::move(sys)), basis_(std::move(basis)) {
  int n = quiver().num_vertices();
  byPair_.assign(static_cast<std::size_t>(n) * n, {});
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    index_.emplace(basis_[k], static_cast<int>(k));
    byPair_[basis_[k].src * n + basis_[k].tgt].push_back(static_cast<int>(k));
  }
}

std::optional<int> FDAlgebra::index_of(const Path& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

SparseVec FDAlgebra::to_vec(const AlgebraElement& x) const {
  AlgebraElement r = sys_.reduce(x);
  SparseVec v;
  for (const auto& [p, c] : r.terms()) {
    auto k = index_of(p);
    if (!k) throw Error(ErrorCode::InvariantViolated, "normal form outside the computed basis");
    v[*k] += c;
  }
  return v;
}

AlgebraElement FDAlgebra::from_vec(const SparseVec& v) const {
  AlgebraElement x;
  for (const auto& [k, c] : v) x.add(basis_[k], c);
  return x;
}

SparseVec FDAlgebra::multiply(int x, int y) const {
  if (basis_[x].tgt != basis_[y].src) return {};
  long long key = static_cast<long long>(x) * static_cast<long long>(basis_.size()) + y;
  auto it = products_.find(key);
  if (it != products_.end()) return it->second;
  SparseVec v = to_vec(AlgebraElement::of_path(*concat(basis_[x], basis_[y])));
  products_.emplace(key, v);
  return v;
}

SparseVec FDAlgebra::multiply(const SparseVec& x, const SparseVec& y) const {
  SparseVec r;
  for (const auto& [i, c] : x)
    for (const auto& [j, d] : y) axpy(r, c * d, multiply(i, j));
  return r;
}

SparseVec FDAlgebra::times_path_right(const SparseVec& x, const Path& p) const {
  AlgebraElement prod;
  for (const auto& [i, c] : x)
    if (auto q = concat(basis_[i], p)) prod.add(*q, c);
  return to_vec(prod);
}

SparseVec FDAlgebra::times_path_left(const Path& p, const SparseVec& x) const {
  AlgebraElement prod;
  for (const auto& [i, c] : x)
    if (auto q = concat(p, basis_[i])) prod.add(*q, c);
  return to_vec(prod);
}

std::vector<std::vector<int>> FDAlgebra::dimension_vector() const {
  int n = quiver().num_vertices();
  std::vector<std::vector<int>> d(n, std::vector<int>(n, 0));
  for (const auto& p : basis_) d[p.src][p.tgt]++;
  return d;
}

std::size_t FDAlgebra::max_basis_length() const {
  std::size_t m = 0;
  for (const auto& p : basis_) m = std::max(m, p.length());
  return m;
}

std::optional<std::size_t> FDAlgebra::nilpotency_index() const {
  std::vector<SparseVec> layer;
  for (std::size_t k = 0; k < basis_.size(); ++k)
    if (!basis_[k].is_trivial()) layer.push_back(SparseVec{{static_cast<int>(k), Rational(1)}});
  std::size_t power = 1;
  std::size_t prevDim = basis_.size() + 1;
  while (!layer.empty()) {
    Echelon e;
    std::vector<SparseVec> independent;
    for (const auto& v : layer)
      if (e.insert(v)) independent.push_back(v);
    if (independent.size() >= prevDim) return std::nullopt;
    prevDim = independent.size();
    std::vector<SparseVec> next;
    for (const auto& v : independent)
      for (int a = 0; a < quiver().num_arrows(); ++a) {
        SparseVec w = times_path_right(v, Path::of_arrow(quiver(), a));
        if (!w.empty()) next.push_back(std::move(w));
      }
    layer = std::move(next);
    ++power;
  }
  return power;
}

std::string FDAlgebra::to_json(int indent) const {
  using nlohmann::json;
  json out;
  const Quiver& q = quiver();
  json basis = json::array();
  for (const auto& p : basis_) {
    json arrows = json::array();
    for (int a : p.arrows) arrows.push_back(q.arrow(a).id);
    basis.push_back({{"src", q.vertex_id(p.src)}, {"tgt", q.vertex_id(p.tgt)}, {"arrows", arrows}});
  }
  out["dimension"] = basis_.size();
  out["basis"] = basis;
  json table = json::array();
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      if (basis_[i].tgt != basis_[j].src) continue;
      SparseVec prod = multiply(static_cast<int>(i), static_cast<int>(j));
      if (prod.empty()) continue;
      json terms = json::array();
      for (const auto& [k, c] : prod) terms.push_back({k, c.get_str()});
      table.push_back({{"x", i}, {"y", j}, {"product", terms}});
    }
  out["multiplication"] = table;
  return out.dump(indent);
}

std::vector<std::vector<int>> dimension_vector(const FDAlgebra& alg) { return alg.dimension_vector(); }

namespace {

constexpr std::size_t kMaxBasis = 400000;

// Tries one bound. Returns the algebra or fills the profile.
AlgebraResult attempt(const Quiver& q, const std::vector<AlgebraElement>& relations, std::size_t bound) {
  AlgebraResult res;
  res.degreeBound = bound;
  ReductionSystem sys;
  try {
    sys = complete_reduction_system(relations, q, bound);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::SizeBoundExceeded) throw;
    res.note = e.what();
    return res;
  }
  std::vector<Path> basis;
  std::vector<Path> level;
  for (int v = 0; v < q.num_vertices(); ++v)
    if (sys.is_normal(Path::trivial(v))) level.push_back(Path::trivial(v));
  bool empty = false;
  std::size_t len = 0;
  while (true) {
    res.profile.push_back(level.size());
    if (level.empty()) {
      empty = true;
      break;
    }
    basis.insert(basis.end(), level.begin(), level.end());
    if (basis.size() > kMaxBasis) {
      res.note = "normal word count exceeded the cap";
      return res;
    }
    if (len >= bound) break;
    std::vector<Path> next;
    for (const auto& p : level)
      for (int a : q.out_arrows(p.tgt)) {
        Path w = p.is_trivial() ? Path::of_arrow(q, a) : Path{p.src, q.arrow(a).tgt, p.arrows};
        if (!p.is_trivial()) w.arrows.push_back(a);
        // only suffixes through the new arrow can contain a lead
        bool normal = true;
        for (std::size_t l = 1; l <= w.arrows.size() && normal; ++l) {
          std::vector<int> suf(w.arrows.end() - static_cast<long>(l), w.arrows.end());
          if (!sys.is_normal(Path::of_word(q, suf))) normal = false;
        }
        if (normal) next.push_back(std::move(w));
      }
    level = std::move(next);
    ++len;
  }
  if (!empty || !sys.confluent()) {
    res.note = sys.confluent() ? "no empty length level within the bound"
                               : "reduction system not confluent within the bound";
    return res;
  }
  FDAlgebra alg(std::move(sys), std::move(basis));
  if (!alg.nilpotency_index()) {
    res.note = "arrow ideal is not nilpotent in the polynomial quotient";
    return res;
  }
  res.algebra.emplace(std::move(alg));
  return res;
}

}  // namespace

AlgebraResult presented_algebra(const Quiver& q, const std::vector<AlgebraElement>& relations,
                                std::size_t degreeBound, std::size_t hint, std::size_t ceiling) {
  if (degreeBound != 0) return attempt(q, relations, degreeBound);
  std::size_t bound = 4 * static_cast<std::size_t>(std::max(1, q.num_vertices())) * std::max<std::size_t>(hint, 2);
  while (true) {
    AlgebraResult r = attempt(q, relations, bound);
    if (r.determined() || bound >= ceiling || r.note.find("cap") != std::string::npos)
      return r;
    bound = std::min(bound * 2, std::max(bound, ceiling));
  }
}

std::vector<AlgebraElement> jacobian_relations(const QP& qp) {
  std::vector<AlgebraElement> rels;
  for (int a = 0; a < qp.quiver.num_arrows(); ++a) {
    AlgebraElement d = cyclic_derivative(qp.quiver, qp.potential, a);
    if (!d.is_zero()) rels.push_back(std::move(d));
  }
  return rels;
}

AlgebraResult jacobian_algebra(const QP& qp, std::size_t degreeBound) {
  return presented_algebra(qp.quiver, jacobian_relations(qp), degreeBound,
                           std::max<std::size_t>(qp.potential.max_length(), 2));
}

CutPresentation cut_presentation(const QP& qp, const std::vector<int>& cut) {
  const Quiver& q = qp.quiver;
  std::vector<bool> inCut(q.num_arrows(), false);
  for (int a : cut) inCut.at(a) = true;
  for (const auto& [cyc, c] : qp.potential.terms()) {
    int k = 0;
    for (int a : cyc) k += inCut[a] ? 1 : 0;
    if (k != 1) throw Error(ErrorCode::NotACut, "a potential term meets the arrow set " + std::to_string(k) + " times");
  }
  CutPresentation out;
  for (int v = 0; v < q.num_vertices(); ++v) out.quiver.add_vertex(q.vertex_id(v));
  std::vector<int> newIndex(q.num_arrows(), -1);
  for (int a = 0; a < q.num_arrows(); ++a) {
    if (inCut[a]) continue;
    newIndex[a] = out.quiver.add_arrow(q.arrow(a).id, q.arrow(a).src, q.arrow(a).tgt);
    out.arrowMap.push_back(a);
  }
  std::vector<int> sorted = cut;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (int c : sorted) {
    AlgebraElement d = cyclic_derivative(q, qp.potential, c);
    AlgebraElement m;
    for (const auto& [p, coef] : d.terms()) {
      Path np{p.src, p.tgt, {}};
      for (int a : p.arrows) np.arrows.push_back(newIndex[a]);
      m.add(np, coef);
    }
    out.relations.push_back(std::move(m));
  }
  return out;
}

AlgebraResult truncated_jacobian(const QP& qp, const std::vector<int>& cut, std::size_t degreeBound) {
  CutPresentation pres = cut_presentation(qp, cut);
  std::vector<AlgebraElement> rels;
  for (auto& r : pres.relations)
    if (!r.is_zero()) rels.push_back(r);
  return presented_algebra(pres.quiver, rels, degreeBound, std::max<std::size_t>(qp.potential.max_length(), 2));
}

bool min_generation_check(const std::vector<AlgebraElement>& gens, const Quiver& ambient, std::size_t degreeBound) {
  if (gens.empty()) return true;
  for (const auto& g : gens) {
    if (g.is_zero()) return false;
    for (const auto& [p, c] : g.terms())
      if (p.src != g.terms().begin()->first.src || p.tgt != g.terms().begin()->first.tgt)
        throw Error(ErrorCode::MixedEndpointRelation, "generator is not concentrated at one vertex pair");
  }
  AlgebraResult res = presented_algebra(ambient, gens, degreeBound);
  if (!res.determined())
    throw Error(ErrorCode::DegreeExceeded, "quotient not shown finite dimensional: " + res.note);
  std::size_t N = *res.algebra->nilpotency_index();
  // Every path of length N lies in I, so J^{N+1} lies in JI and the check happens in KQ / J^{N+1}.
  std::unordered_map<Path, int, PathHash> index;
  auto truncate = [&](const AlgebraElement& x) {
    SparseVec v;
    for (const auto& [p, c] : x.terms()) {
      if (p.length() > N) continue;
      auto it = index.find(p);
      int k = it == index.end() ? index.emplace(p, static_cast<int>(index.size())).first->second : it->second;
      v[k] += c;
    }
    return v;
  };
  Echelon a;
  for (const auto& g : gens) {
    std::size_t low = g.terms().begin()->first.length();
    for (const auto& [p, c] : g.terms()) low = std::min(low, p.length());
    if (low > N) continue;
    int s = g.terms().begin()->first.src;
    int t = g.terms().begin()->first.tgt;
    std::size_t room = N - low;
    for (std::size_t lu = 0; lu <= room; ++lu) {
      auto us = all_paths_to(ambient, s, lu);
      for (std::size_t lv = 0; lu + lv <= room; ++lv) {
        if (lu + lv == 0) continue;
        auto vs = all_paths_from(ambient, t, lv);
        for (const auto& u : us)
          for (const auto& v : vs) {
            AlgebraElement x = g.times_path_left(u).times_path_right(v);
            SparseVec sv = truncate(x);
            if (!sv.empty()) a.insert(std::move(sv));
          }
      }
    }
  }
  std::size_t base = a.rank();
  for (const auto& g : gens) a.insert(truncate(g));
  return a.rank() == base + gens.size();
}

}  // namespace qpkit
