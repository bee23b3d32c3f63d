#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <numeric>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qpkit/canvas.hpp"
#include "qpkit/canonical.hpp"
#include "qpkit/covering.hpp"
#include "qpkit/cuts.hpp"
#include "qpkit/explorer.hpp"
#include "qpkit/families.hpp"
#include "qpkit/mutation.hpp"
#include "qpkit/selfinjective.hpp"

using namespace qpkit;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kNegative = 1;
constexpr int kUndetermined = 2;

struct Globals {
  std::size_t degreeBound = 0;
  unsigned seedOrder = 0;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::MalformedJson, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

bool has_embedding(const std::string& text) {
  try {
    auto j = json::parse(text);
    return j.is_object() && j.contains("embedding");
  } catch (const json::exception&) {
    return false;
  }
}

// Random relabelling of vertex and arrow order; the embedding is carried along.
PlanarQP shuffle(const PlanarQP& p, unsigned seed, bool planar) {
  if (seed == 0) return p;
  std::mt19937 rng(seed);
  const Quiver& q = p.qp.quiver;
  std::vector<int> vp(q.num_vertices()), ap(q.num_arrows());
  std::iota(vp.begin(), vp.end(), 0);
  std::iota(ap.begin(), ap.end(), 0);
  std::shuffle(vp.begin(), vp.end(), rng);
  std::shuffle(ap.begin(), ap.end(), rng);
  PlanarQP out{permute_qp(p.qp, vp, ap), {}};
  if (planar) {
    out.rot.order.resize(q.num_vertices());
    auto md = [&](int d) { return dart_of(ap[dart_arrow(d)], dart_at_source(d)); };
    for (int v = 0; v < q.num_vertices(); ++v)
      for (int d : p.rot.order[v]) out.rot.order[vp[v]].push_back(md(d));
    out.rot.outerDart = p.rot.outerDart >= 0 ? md(p.rot.outerDart) : -1;
  }
  return out;
}

struct Loaded {
  PlanarQP p;
  bool planar = false;
};

Loaded load(const std::string& path, const Globals& g) {
  std::string text = read_input(path);
  Loaded l;
  l.planar = has_embedding(text);
  l.p = l.planar ? parse_planar(text) : PlanarQP{parse_qp(text), {}};
  l.p = shuffle(l.p, g.seedOrder, l.planar);
  return l;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

DynkinType parse_type(const std::string& t) {
  if (t == "A") return DynkinType::A;
  if (t == "D") return DynkinType::D;
  if (t == "E") return DynkinType::E;
  throw Error(ErrorCode::BadParameter, "unknown Dynkin type " + t);
}

json vertex_list(const Quiver& q, const std::vector<int>& vs) {
  json a = json::array();
  for (int v : vs) a.push_back(q.vertex_id(v));
  return a;
}

json cut_json(const Quiver& q, const Cut& c) {
  json a = json::array();
  for (int x : c) a.push_back(q.arrow(x).id);
  return a;
}

void emit(const std::string& text, const std::string& outPath) {
  if (outPath.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(outPath);
  if (!out) throw Error(ErrorCode::BadParameter, "cannot write " + outPath);
  out << text << "\n";
}

int exit_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::UndeterminedDimension:
    case ErrorCode::ReductionBoundExceeded:
    case ErrorCode::SizeBoundExceeded:
      return kUndetermined;
    default:
      return kNegative;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qpkit: quivers with potential, cuts, selfinjectivity and mutation"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--degree-bound", g.degreeBound, "length bound for reductions and dimension certificates (0: automatic)");
  app.add_option("--seed-order", g.seedOrder, "shuffle vertex and arrow order with this seed (0: keep)");

  // family
  auto* fam = app.add_subcommand("family", "build a QP from a named family");
  std::string famName, famOut;
  std::vector<std::string> famParams;
  fam->add_option("name", famName,
                  "cycle N | tilde-cycle N | tubular LAMBDA | tensor T1 N1 T2 N2 | square T1 N1 T2 N2 | "
                  "triangle S | square-shaped S P1,P2,... | square-example | cuts-a | cuts-b")
      ->required();
  fam->add_option("params", famParams, "family parameters");
  fam->add_option("-o,--output", famOut, "output file (default stdout)");

  // selfinjective
  auto* si = app.add_subcommand("selfinjective", "decide selfinjectivity and the Nakayama permutation");
  std::string siIn;
  si->add_option("qp", siIn, "QP JSON file or -")->required();

  // cuts
  auto* cu = app.add_subcommand("cuts", "enumerate cuts");
  std::string cuIn, cuClass;
  bool cuAlg = false;
  cu->add_option("qp", cuIn, "QP JSON file or -")->required();
  cu->add_flag("--algebraic", cuAlg, "decide algebraicity of each cut");
  cu->add_option("--class", cuClass, "comma separated arrow ids: list the compatibility class of this cut");

  // mutate
  auto* mu = app.add_subcommand("mutate", "mutate at a vertex");
  std::string muIn, muK, muSigma;
  bool muOrbit = false, muPlanar = false;
  mu->add_option("qp", muIn, "QP JSON file or -")->required();
  mu->add_option("-k", muK, "vertex id")->required();
  mu->add_flag("--orbit", muOrbit, "mutate along the orbit of --sigma");
  mu->add_option("--sigma", muSigma, "comma separated images of the vertices in order");
  mu->add_flag("--planar", muPlanar, "planar mutation of an embedded QP");

  // cover
  auto* co = app.add_subcommand("cover", "covering Z(Q,C) and its slices");
  std::string coIn, coCut, coWindow = "-1:1";
  bool coDot = false, coSlices = false;
  co->add_option("qp", coIn, "QP JSON file or -")->required();
  co->add_option("--cut", coCut, "comma separated arrow ids")->required();
  co->add_option("--window", coWindow, "level window lo:hi");
  co->add_flag("--dot", coDot, "emit the window as DOT");
  co->add_flag("--slices", coSlices, "list the slices as height functions");

  // canvas
  auto* ca = app.add_subcommand("canvas", "canvas homology, fundamental group and simple connectivity");
  std::string caIn;
  bool caH1 = false, caPi1 = false, caSc = false;
  ca->add_option("qp", caIn, "QP JSON file or -")->required();
  ca->add_flag("--h1", caH1, "first homology");
  ca->add_flag("--pi1", caPi1, "fundamental group presentation");
  ca->add_flag("--simply-connected", caSc, "simple connectivity verdict");

  // lattice
  auto* la = app.add_subcommand("lattice", "cut-mutation or planar mutation lattice");
  std::string laIn;
  bool laPlanar = false, laDot = false, laFree = false;
  std::size_t laBound = 1000;
  la->add_option("qp", laIn, "QP JSON file or -")->required();
  la->add_flag("--planar", laPlanar, "planar mutation lattice (needs an embedding)");
  la->add_flag("--unrestricted", laFree, "planar moves at single vertices instead of Nakayama orbits");
  la->add_option("--size-bound", laBound, "maximal number of planar lattice nodes");
  la->add_flag("--dot", laDot, "emit DOT instead of JSON");

  // report
  auto* re = app.add_subcommand("report", "transitivity of cut-mutation");
  std::string reIn;
  re->add_option("qp", reIn, "QP JSON file or -")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*fam) {
      auto intAt = [&](std::size_t i) {
        if (i >= famParams.size()) throw Error(ErrorCode::BadParameter, "missing parameter for " + famName);
        return std::stoi(famParams[i]);
      };
      auto quiverAt = [&](std::size_t i) {
        if (i + 1 >= famParams.size()) throw Error(ErrorCode::BadParameter, "missing parameter for " + famName);
        return alternating_dynkin(parse_type(famParams[i]), std::stoi(famParams[i + 1]));
      };
      std::optional<PlanarQP> planar;
      QP qp;
      if (famName == "cycle") qp = cycle_qp(intAt(0));
      else if (famName == "tilde-cycle") qp = tilde_cycle_qp(intAt(0));
      else if (famName == "tubular") qp = tubular_2222(famParams.empty() ? Rational(2) : parse_rational(famParams[0]));
      else if (famName == "tensor") qp = tensor_qp(quiverAt(0), quiverAt(2));
      else if (famName == "square") qp = square_product_qp(quiverAt(0), quiverAt(2));
      else if (famName == "triangle") planar = triangle_qp(intAt(0));
      else if (famName == "square-shaped") {
        int s = intAt(0);
        if (famParams.size() < 2) throw Error(ErrorCode::BadParameter, "square-shaped needs a pattern list");
        std::vector<int> pats;
        for (const auto& x : split(famParams[1], ',')) pats.push_back(std::stoi(x));
        planar = square_shaped_qp(s, orient_square_patterns(s, pats));
      } else if (famName == "square-example") planar = square_shaped_example();
      else if (famName == "cuts-a") qp = cuts_example_a();
      else if (famName == "cuts-b") qp = cuts_example_b();
      else throw Error(ErrorCode::BadParameter, "unknown family " + famName);
      emit(planar ? serialize_planar(*planar) : serialize_qp(qp), famOut);
      return kOk;
    }

    if (*si) {
      auto l = load(siIn, g);
      auto r = is_selfinjective(l.p.qp, g.degreeBound);
      json j;
      j["finite_dimensional"] = r.finiteDimensional;
      j["dimension"] = r.dimension;
      j["selfinjective"] = r.selfinjective;
      j["defects"] = r.defects;
      if (r.nakayama) {
        json m = json::object();
        for (int v = 0; v < l.p.qp.quiver.num_vertices(); ++v)
          m[l.p.qp.quiver.vertex_id(v)] = l.p.qp.quiver.vertex_id((*r.nakayama)[v]);
        j["nakayama"] = m;
      }
      if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
      std::cout << j.dump(2) << "\n";
      return r.selfinjective ? kOk : kNegative;
    }

    if (*cu) {
      auto l = load(cuIn, g);
      const Quiver& q = l.p.qp.quiver;
      json j;
      if (!cuClass.empty()) {
        Cut c = cut_from_ids(q, split(cuClass, ','));
        if (!is_cut(l.p.qp, c)) throw Error(ErrorCode::NotACut, "the given arrows do not form a cut");
        j["class"] = json::array();
        for (const auto& d : compatibility_class(q, c)) j["class"].push_back(cut_json(q, d));
        std::cout << j.dump(2) << "\n";
        return kOk;
      }
      j["cuts"] = json::array();
      int status = kOk;
      for (const auto& c : enumerate_cuts(l.p.qp)) {
        json e;
        e["arrows"] = cut_json(q, c);
        e["strict_sources"] = vertex_list(q, strict_sources(q, c));
        e["strict_sinks"] = vertex_list(q, strict_sinks(q, c));
        if (cuAlg) {
          try {
            auto r = is_algebraic_cut(l.p.qp, c, g.degreeBound);
            e["algebraic"] = r.algebraic;
            e["dimension"] = r.dimension;
            if (r.globalDimension) e["global_dimension"] = *r.globalDimension;
            if (!r.diagnostic.empty()) e["diagnostic"] = r.diagnostic;
          } catch (const Error& err) {
            if (err.code() != ErrorCode::UndeterminedDimension) throw;
            e["algebraic"] = nullptr;
            e["diagnostic"] = err.what();
            status = kUndetermined;
          }
        }
        j["cuts"].push_back(e);
      }
      j["enough_cuts"] = has_enough_cuts(l.p.qp);
      j["fully_compatible"] = is_fully_compatible(l.p.qp);
      std::cout << j.dump(2) << "\n";
      return status;
    }

    if (*mu) {
      auto l = load(muIn, g);
      const Quiver& q = l.p.qp.quiver;
      int k = q.vertex_index(muK);
      if (muPlanar) {
        if (!l.planar) throw Error(ErrorCode::NotPlanar, "planar mutation needs an embedding");
        std::cout << serialize_planar(planar_mutate(l.p, k)) << "\n";
        return kOk;
      }
      MutationResult r;
      if (muOrbit) {
        auto ids = split(muSigma, ',');
        if (static_cast<int>(ids.size()) != q.num_vertices())
          throw Error(ErrorCode::BadParameter, "--sigma needs one image per vertex");
        std::vector<int> sigma;
        for (const auto& x : ids) sigma.push_back(q.vertex_index(x));
        r = orbit_mutate(l.p.qp, sigma, k, g.degreeBound);
      } else {
        r = mutate(l.p.qp, k, g.degreeBound);
      }
      std::cout << serialize_qp(r.qp) << "\n";
      return kOk;
    }

    if (*co) {
      auto l = load(coIn, g);
      const Quiver& q = l.p.qp.quiver;
      Cut c = cut_from_ids(q, split(coCut, ','));
      auto lh = split(coWindow, ':');
      if (lh.size() != 2) throw Error(ErrorCode::BadParameter, "window must be lo:hi");
      auto w = build_covering_window(q, c, std::stoi(lh[0]), std::stoi(lh[1]));
      if (coDot) {
        std::cout << w.to_dot();
        return kOk;
      }
      json j;
      j["window"] = {w.lo, w.hi};
      j["vertices"] = w.quiver.vertex_ids();
      j["arrows"] = json::array();
      for (const auto& a : w.quiver.arrows())
        j["arrows"].push_back({{"id", a.id}, {"src", w.quiver.vertex_id(a.src)}, {"tgt", w.quiver.vertex_id(a.tgt)}});
      j["incomplete"] = w.incomplete;
      if (coSlices) {
        j["slices"] = json::array();
        for (const auto& t : enumerate_slices(q, c)) {
          json h = json::object();
          for (int v = 0; v < q.num_vertices(); ++v) h[q.vertex_id(v)] = t[v];
          j["slices"].push_back({{"height", h}, {"cut", cut_json(q, slice_to_cut(q, c, t))}, {"volume", volume(t)}});
        }
      }
      std::cout << j.dump(2) << "\n";
      return kOk;
    }

    if (*ca) {
      auto l = load(caIn, g);
      const Quiver& q = l.p.qp.quiver;
      Canvas x = build_canvas(l.p.qp);
      bool all = !caH1 && !caPi1 && !caSc;
      json j;
      j["cells"] = {x.vertices, x.edges.size(), x.cells.size()};
      j["euler_characteristic"] = euler_characteristic(x);
      int status = kOk;
      if (caH1 || all) {
        auto h = homology_h1(x);
        json t = json::array();
        for (const auto& z : h.torsion) t.push_back(z.get_str());
        j["h1"] = {{"rank", h.rank}, {"torsion", t}};
      }
      if (caPi1 || all) {
        if (is_connected(x)) {
          auto p = tietze_simplify(pi1_presentation(x));
          j["pi1"] = p.to_string(q);
        } else {
          j["pi1"] = nullptr;
        }
      }
      if (caSc || all) {
        auto s = is_simply_connected(l.p.qp, l.planar ? &l.p.rot : nullptr);
        j["simply_connected"] = verdict_name(s.verdict);
        j["reason"] = s.reason;
        if (caSc) status = s.verdict == Verdict::Yes ? kOk : s.verdict == Verdict::No ? kNegative : kUndetermined;
      }
      std::cout << j.dump(2) << "\n";
      return status;
    }

    if (*la) {
      auto l = load(laIn, g);
      LatticeGraph graph;
      if (laPlanar) {
        if (!l.planar) throw Error(ErrorCode::NotPlanar, "planar lattice needs an embedding");
        auto pl = planar_mutation_lattice(l.p, laBound, laFree);
        graph = pl.graph;
      } else {
        graph = cut_lattice(l.p.qp).graph;
      }
      std::cout << (laDot ? export_dot(graph) : export_json(graph) + "\n");
      return graph.complete ? kOk : kUndetermined;
    }

    if (*re) {
      auto l = load(reIn, g);
      auto r = transitivity_report(l.p.qp, g.degreeBound);
      std::cout << r.to_json(l.p.qp, enumerate_cuts(l.p.qp)) << "\n";
      return r.hypothesesMet && r.allConnected ? kOk : kNegative;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e);
  }
  return kOk;
}
