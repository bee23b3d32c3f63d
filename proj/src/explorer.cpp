#include "qpkit/explorer.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "json.hpp"
#include "qpkit/canonical.hpp"
#include "qpkit/mutation.hpp"
#include "qpkit/selfinjective.hpp"

namespace qpkit {

using nlohmann::json;

bool LatticeGraph::connected() const {
  if (nodes.empty()) return true;
  std::vector<std::vector<int>> adj(nodes.size());
  for (const auto& e : edges) {
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  std::vector<bool> seen(nodes.size(), false);
  std::deque<int> queue{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        ++count;
        queue.push_back(w);
      }
  }
  return count == nodes.size();
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

void add_edge(std::set<std::tuple<int, int, std::string>>& edges, int a, int b, const std::string& label) {
  if (a > b) std::swap(a, b);
  for (const auto& [x, y, l] : edges)
    if (x == a && y == b) return;
  edges.insert({a, b, label});
}

std::vector<LatticeGraph::Edge> edge_list(const std::set<std::tuple<int, int, std::string>>& edges) {
  std::vector<LatticeGraph::Edge> out;
  for (const auto& [a, b, l] : edges) out.push_back({a, b, l});
  return out;
}

}  // namespace

std::string export_dot(const LatticeGraph& g) {
  std::string s = "graph lattice {\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i)
    s += "  n" + std::to_string(i) + " [label=\"" + dot_escape(g.nodes[i].label) + "\"];\n";
  for (const auto& e : g.edges)
    s += "  n" + std::to_string(e.from) + " -- n" + std::to_string(e.to) + " [label=\"" + dot_escape(e.label) + "\"];\n";
  return s + "}\n";
}

std::string export_json(const LatticeGraph& g, int indent) {
  json j;
  j["kind"] = g.kind;
  j["seed"] = g.seed;
  j["complete"] = g.complete;
  j["nodes"] = json::array();
  for (const auto& n : g.nodes) j["nodes"].push_back({{"key", n.key}, {"label", n.label}});
  j["edges"] = json::array();
  for (const auto& e : g.edges) j["edges"].push_back({{"from", e.from}, {"to", e.to}, {"label", e.label}});
  return j.dump(indent);
}

LatticeGraph parse_lattice_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedJson, e.what());
  }
  try {
    LatticeGraph g;
    g.kind = j.value("kind", "");
    g.seed = j.value("seed", "");
    g.complete = j.value("complete", true);
    for (const auto& n : j.at("nodes")) g.nodes.push_back({n.at("key").get<std::string>(), n.at("label").get<std::string>()});
    for (const auto& e : j.at("edges")) {
      int a = e.at("from").get<int>(), b = e.at("to").get<int>();
      if (a < 0 || b < 0 || a >= static_cast<int>(g.nodes.size()) || b >= static_cast<int>(g.nodes.size()))
        throw Error(ErrorCode::DanglingReference, "edge refers to a missing node");
      g.edges.push_back({a, b, e.value("label", "")});
    }
    return g;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedJson, e.what());
  }
}

bool operator==(const LatticeGraph::Node& x, const LatticeGraph::Node& y) { return x.key == y.key && x.label == y.label; }
bool operator==(const LatticeGraph::Edge& x, const LatticeGraph::Edge& y) {
  return x.from == y.from && x.to == y.to && x.label == y.label;
}
bool operator==(const LatticeGraph& x, const LatticeGraph& y) {
  return x.kind == y.kind && x.seed == y.seed && x.complete == y.complete && x.nodes == y.nodes && x.edges == y.edges;
}

CutLattice cut_lattice(const QP& qp) {
  const Quiver& q = qp.quiver;
  CutLattice r;
  r.cuts = enumerate_cuts(qp);
  std::map<Cut, int> index;
  for (std::size_t i = 0; i < r.cuts.size(); ++i) index[r.cuts[i]] = static_cast<int>(i);

  auto autos = qp_automorphisms(qp, IsoMode::Rescaling);
  r.automorphisms = autos.size();
  // Orbit representative: the smallest cut in the orbit.
  std::vector<Cut> rep(r.cuts.size());
  for (std::size_t i = 0; i < r.cuts.size(); ++i) {
    rep[i] = r.cuts[i];
    for (const auto& iso : autos) {
      Cut img;
      for (int a : r.cuts[i]) img.push_back(iso.arrowMap[a]);
      std::sort(img.begin(), img.end());
      rep[i] = std::min(rep[i], img);
    }
  }
  std::map<Cut, int> node;
  for (const auto& c : rep) node.emplace(c, 0);
  int k = 0;
  for (auto& [c, id] : node) {
    id = k++;
    r.graph.nodes.push_back({cut_to_string(q, c), cut_to_string(q, c)});
  }
  r.orbit.resize(r.cuts.size());
  for (std::size_t i = 0; i < r.cuts.size(); ++i) r.orbit[i] = node.at(rep[i]);

  std::set<std::pair<int, int>> raw;
  std::set<std::tuple<int, int, std::string>> quotient;
  std::vector<int> parent(r.cuts.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < r.cuts.size(); ++i) {
    auto visit = [&](const Cut& d, int x, const char* sign) {
      auto it = index.find(d);
      if (it == index.end()) throw Error(ErrorCode::InvariantViolated, "cut-mutation left the set of cuts");
      int j = it->second;
      raw.insert(std::minmax(static_cast<int>(i), j));
      parent[find(static_cast<int>(i))] = find(j);
      add_edge(quotient, r.orbit[i], r.orbit[j], std::string(sign) + q.vertex_id(x));
    };
    for (int x : strict_sources(q, r.cuts[i])) visit(cut_mutate_plus(q, r.cuts[i], x), x, "+");
    for (int x : strict_sinks(q, r.cuts[i])) visit(cut_mutate_minus(q, r.cuts[i], x), x, "-");
  }
  r.rawEdges = raw.size();
  std::set<int> roots;
  for (std::size_t i = 0; i < r.cuts.size(); ++i) roots.insert(find(static_cast<int>(i)));
  r.rawConnected = roots.size() <= 1;
  r.graph.kind = "cut";
  r.graph.seed = qp_canonical_form(qp, IsoMode::Rescaling);
  r.graph.edges = edge_list(quotient);
  return r;
}

namespace {

std::string planar_label(const QP& qp, int index) {
  return "#" + std::to_string(index) + " " + std::to_string(qp.quiver.num_vertices()) + "/" +
         std::to_string(qp.quiver.num_arrows()) + "/" + std::to_string(qp.potential.size());
}

std::vector<std::vector<int>> moves_for(const QP& qp, const std::optional<std::vector<int>>& sigma, bool unrestricted) {
  const Quiver& q = qp.quiver;
  std::vector<std::vector<int>> out;
  if (unrestricted) {
    for (int v = 0; v < q.num_vertices(); ++v) out.push_back({v});
    return out;
  }
  if (!sigma) return out;
  std::vector<bool> done(q.num_vertices(), false);
  for (int v = 0; v < q.num_vertices(); ++v) {
    if (done[v]) continue;
    auto orbit = orbit_of(*sigma, v);
    for (int x : orbit) done[x] = true;
    std::set<int> in(orbit.begin(), orbit.end());
    bool inner = false;
    for (const auto& a : q.arrows()) inner = inner || (in.count(a.src) && in.count(a.tgt));
    if (!inner) out.push_back(orbit);
  }
  return out;
}

}  // namespace

PlanarLattice planar_mutation_lattice(const PlanarQP& seed, std::size_t sizeBound, bool unrestricted, bool throwOnBound) {
  validate_planar(seed);
  PlanarLattice r;
  r.graph.kind = unrestricted ? "planar-unrestricted" : "planar";
  r.graph.seed = qp_canonical_form(seed.qp, IsoMode::Exact);
  std::map<std::string, int> index;
  std::set<std::tuple<int, int, std::string>> edges;
  auto addNode = [&](const PlanarQP& p, const std::string& key) {
    int id = static_cast<int>(r.qps.size());
    index[key] = id;
    r.qps.push_back(p);
    auto rep = is_selfinjective(p.qp);
    r.selfinjective.push_back(rep.selfinjective);
    r.nakayama.push_back(rep.nakayama.value_or(std::vector<int>{}));
    r.graph.nodes.push_back({key, planar_label(p.qp, id)});
    return id;
  };
  std::vector<int> layer{addNode(seed, r.graph.seed)};
  while (!layer.empty()) {
    std::sort(layer.begin(), layer.end(), [&](int a, int b) { return r.graph.nodes[a].key < r.graph.nodes[b].key; });
    std::vector<int> next;
    for (int u : layer) {
      std::optional<std::vector<int>> sigma;
      if (r.selfinjective[u]) sigma = r.nakayama[u];
      for (const auto& orbit : moves_for(r.qps[u].qp, sigma, unrestricted)) {
        PlanarQP cur = r.qps[u];
        bool ok = true;
        for (int x : orbit) {
          if (!planar_mutable(cur, x)) {
            ok = false;
            break;
          }
          cur = planar_mutate(cur, x);
        }
        if (!ok) continue;
        std::string label;
        for (int x : orbit) label += (label.empty() ? "" : ",") + cur.qp.quiver.vertex_id(x);
        std::string key = qp_canonical_form(cur.qp, IsoMode::Exact);
        auto it = index.find(key);
        int v;
        if (it != index.end()) {
          v = it->second;
        } else {
          if (r.qps.size() >= sizeBound) {
            r.graph.complete = false;
            if (throwOnBound) throw Error(ErrorCode::SizeBoundExceeded, "planar lattice exceeds the size bound");
            continue;
          }
          v = addNode(cur, key);
          next.push_back(v);
        }
        add_edge(edges, u, v, label);
      }
    }
    layer = std::move(next);
  }
  r.graph.edges = edge_list(edges);
  return r;
}

TransitivityReport transitivity_report(const QP& qp, std::size_t degreeBound) {
  TransitivityReport r;
  try {
    r.selfinjective = is_selfinjective(qp, degreeBound).selfinjective;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::UndeterminedDimension) throw;
  }
  auto cuts = enumerate_cuts(qp);
  r.cuts = cuts.size();
  r.fullyCompatible = is_fully_compatible(qp);
  r.enoughCuts = has_enough_cuts(qp);
  r.hypothesesMet = r.selfinjective && r.fullyCompatible && r.enoughCuts;
  if (!r.hypothesesMet) {
    r.summary = "hypotheses not met";
    return r;
  }
  const Quiver& q = qp.quiver;
  std::map<Cut, int> index;
  for (std::size_t i = 0; i < cuts.size(); ++i) index[cuts[i]] = static_cast<int>(i);
  struct Arc {
    int to;
    TransitivityReport::Step step;
  };
  std::vector<std::vector<Arc>> adj(cuts.size());
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    for (int x : strict_sources(q, cuts[i])) adj[i].push_back({index.at(cut_mutate_plus(q, cuts[i], x)), {x, true}});
    for (int x : strict_sinks(q, cuts[i])) adj[i].push_back({index.at(cut_mutate_minus(q, cuts[i], x)), {x, false}});
  }
  r.allConnected = true;
  for (std::size_t s = 0; s < cuts.size(); ++s) {
    std::vector<int> prev(cuts.size(), -2);
    std::vector<TransitivityReport::Step> via(cuts.size());
    prev[s] = -1;
    std::deque<int> queue{static_cast<int>(s)};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (const auto& arc : adj[v])
        if (prev[arc.to] == -2) {
          prev[arc.to] = v;
          via[arc.to] = arc.step;
          queue.push_back(arc.to);
        }
    }
    for (std::size_t t = s + 1; t < cuts.size(); ++t) {
      if (prev[t] == -2) {
        r.allConnected = false;
        continue;
      }
      TransitivityReport::Chain ch{static_cast<int>(s), static_cast<int>(t), {}};
      for (int v = static_cast<int>(t); prev[v] >= 0; v = prev[v]) ch.steps.push_back(via[v]);
      std::reverse(ch.steps.begin(), ch.steps.end());
      r.chains.push_back(std::move(ch));
    }
  }
  r.summary = r.allConnected ? "all cut pairs are joined by cut-mutations, hence by iterated 2-APR tilts"
                             : "some cut pairs are not joined by cut-mutations";
  return r;
}

std::string TransitivityReport::to_json(const QP& qp, const std::vector<Cut>& cutList) const {
  const Quiver& q = qp.quiver;
  json j;
  j["selfinjective"] = selfinjective;
  j["fully_compatible"] = fullyCompatible;
  j["enough_cuts"] = enoughCuts;
  j["hypotheses_met"] = hypothesesMet;
  j["cuts"] = cuts;
  j["all_connected"] = allConnected;
  j["summary"] = summary;
  j["chains"] = json::array();
  for (const auto& ch : chains) {
    json steps = json::array();
    for (const auto& s : ch.steps) steps.push_back({{"vertex", q.vertex_id(s.vertex)}, {"move", s.plus ? "source" : "sink"}});
    j["chains"].push_back({{"from", cut_to_string(q, cutList.at(ch.from))},
                           {"to", cut_to_string(q, cutList.at(ch.to))},
                           {"steps", steps}});
  }
  return j.dump(2);
}

}  // namespace qpkit
