// Command-line front end: growth, chains, projections, exact verification,
// Monte Carlo comparison and the scaling experiment.

#include "verify.hpp"

#include "alphagamma/chains.hpp"
#include "alphagamma/exact.hpp"
#include "alphagamma/growth.hpp"
#include "alphagamma/harness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using nlohmann::json;
using namespace ag;

struct Global {
  std::string alpha = "1/2";
  std::string gamma = "1/2";
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out;
  std::string format = "text";
};

// Usage problems detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Params<Rational> exact_params(const Global& g) { return parse_params(g.alpha, g.gamma); }
Params<double> float_params(const Global& g) { return convert_params<double>(exact_params(g)); }

void emit(const Global& g, const json& j, const std::string& text) {
  std::string body = g.format == "json" ? j.dump(2) + "\n" : text;
  if (g.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw std::runtime_error("cannot write " + g.out);
  f << body;
}

std::string read_tree_argument(const std::string& tree, const std::string& file) {
  if (!tree.empty()) return tree;
  if (file.empty()) throw UsageError("give --tree or --input");
  std::ifstream f(file);
  if (!f) throw std::runtime_error("cannot read " + file);
  std::string line;
  std::getline(f, line);
  return line;
}

// ---------------------------------------------------------------------------

struct GrowArgs {
  std::string model = "nonplanar";
  std::string variant = "standard";
  int n = 5;
  int k = 2;
  int count = 1;
  bool exact = false;
};

int cmd_grow(const Global& g, const GrowArgs& a) {
  Variant v = parse_variant(a.variant);
  json j{{"schema", kReportSchema}, {"model", a.model}, {"variant", v.name()}, {"n", a.n}};
  std::ostringstream text;
  if (a.exact) {
    Params<Rational> p = exact_params(g);
    validate(p, v);
    ExactDist law;
    if (a.model == "nonplanar") {
      law = growth_law_nonplanar(a.n, p, v);
    } else if (a.model == "semiplanar") {
      law = growth_law_semiplanar(a.n, p, v);
    } else if (a.model == "decorated") {
      law = growth_law_decorated(a.k, a.n, p);
    } else {
      throw UsageError("unknown model '" + a.model + "'");
    }
    json rows = json::object();
    for (const auto& [s, q] : law) {
      rows[s] = to_string(q);
      text << s << "\t" << to_string(q) << "\n";
    }
    j["law"] = rows;
    emit(g, j, text.str());
    return 0;
  }
  Params<double> p = float_params(g);
  validate(p, v);
  Rng rng(g.seed);
  RngChooser ch(rng);
  json trees = json::array();
  for (int i = 0; i < a.count; ++i) {
    std::string s;
    if (a.model == "nonplanar") {
      s = grow_nonplanar(a.n, p, ch, v).str();
    } else if (a.model == "semiplanar") {
      s = grow_semiplanar(a.n, p, ch, v).str();
    } else if (a.model == "decorated") {
      s = grow_decorated(grow_nonplanar(a.k, p, ch), a.n, p, ch).str();
    } else {
      throw UsageError("unknown model '" + a.model + "'");
    }
    trees.push_back(s);
    text << s << "\n";
  }
  j["seed"] = g.seed;
  j["trees"] = trees;
  emit(g, j, text.str());
  return 0;
}

// ---------------------------------------------------------------------------

struct ChainArgs {
  std::string space = "nonplanar";
  int n = 5;
  int k = 2;
  long steps = 10;
  std::string initial;
  bool trace = false;
};

int cmd_chain(const Global& g, const ChainArgs& a) {
  Params<double> p = float_params(g);
  Rng rng(g.seed);
  RngChooser ch(rng);
  ChainSpace space = parse_chain_space(a.space);
  json states = json::array();
  std::ostringstream text;
  auto record = [&](const std::string& s, const DownStepTrace* t) {
    json row{{"state", s}};
    text << s;
    if (t) {
      row["leaf"] = t->i;
      row["deleted"] = t->search.i_tilde;
      row["case"] = to_string(t->tag);
      text << "\ti=" << t->i << "\tdeleted=" << t->search.i_tilde << "\tcase=" << to_string(t->tag);
    }
    text << "\n";
    states.push_back(row);
  };
  DownStepTrace tr;
  DownStepTrace* tp = a.trace ? &tr : nullptr;
  switch (space) {
    case ChainSpace::NonPlanar: {
      LabelledTree t = a.initial.empty() ? grow_nonplanar(a.n, p, ch) : LabelledTree::parse(a.initial);
      record(t.str(), nullptr);
      for (long m = 0; m < a.steps; ++m) {
        t = nonplanar_chain_step(t, p, ch, tp);
        record(t.str(), tp);
      }
      break;
    }
    case ChainSpace::SemiPlanar: {
      SemiPlanarTree t = a.initial.empty() ? grow_semiplanar(a.n, p, ch) : SemiPlanarTree::parse(a.initial);
      record(t.str(), nullptr);
      for (long m = 0; m < a.steps; ++m) {
        t = semiplanar_chain_step(t, p, ch, tp);
        record(t.str(), tp);
      }
      break;
    }
    case ChainSpace::Decorated: {
      DecoratedTree d = a.initial.empty() ? grow_decorated(grow_nonplanar(a.k, p, ch), a.n, p, ch)
                                          : DecoratedTree::parse(a.initial);
      record(d.str(), nullptr);
      for (long m = 0; m < a.steps; ++m) {
        d = decorated_chain_step(d, p, ch, tp);
        record(d.str(), tp);
      }
      break;
    }
  }
  emit(g, {{"schema", kReportSchema}, {"space", a.space}, {"seed", g.seed}, {"states", states}}, text.str());
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_project(const Global& g, const std::string& tree, const std::string& input, int k) {
  std::string enc = read_tree_argument(tree, input);
  LabelledTree t = LabelledTree::parse(enc);
  if (k < 1 || k > t.size()) throw UsageError("need 1 <= k <= number of leaves");
  CollapsedTree c = project_collapsed(t, k);
  DecoratedTree d = project_decorated(t, k);
  json parts = json::array();
  auto ps = insertable_parts(d.shape());
  auto sets = c.label_sets();
  auto masses = d.masses();
  for (std::size_t i = 0; i < ps.size(); ++i)
    parts.push_back({{"part", address_of(d.shape(), ps[i]).str()}, {"labels", sets[i]}, {"mass", masses[i]}});
  json j{{"schema", kReportSchema}, {"tree", t.str()},  {"k", k},         {"shape", d.labelled_shape().str()},
         {"collapsed", c.str()},    {"decorated", d.str()}, {"parts", parts}};
  emit(g, j, "collapsed\t" + c.str() + "\ndecorated\t" + d.str() + "\n");
  return 0;
}

// ---------------------------------------------------------------------------

int cmd_verify(const Global& g, const std::string& check, int n, int k, int cap, const std::string& report) {
  verify::Setup s;
  s.n = n;
  s.k = k;
  s.cap = cap;
  s.params = exact_params(g);
  json r = verify::run(check, s);
  std::ostringstream text;
  for (const auto& c : r["checks"]) {
    text << c["check"].get<std::string>() << ": " << (c["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
    if (c.contains("results")) {
      for (const auto& e : c["results"]) {
        text << "  " << e["name"].get<std::string>();
        for (const char* key : {"residual", "matrix_residual", "conditional_residual"})
          if (e.contains(key)) text << "  " << key << "=" << e[key].get<std::string>();
        text << "  " << (e["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
      }
    }
    if (c.contains("entries")) {
      for (const auto& e : c["entries"])
        text << "  E(" << e["i"] << "," << e["i_tilde"] << ") P=" << e["probability"].get<std::string>()
             << " stated=" << e["stated_formula"].get<std::string>()
             << " factorization=" << e["factorization_residual"].get<std::string>()
             << " pushforward=" << e["pushforward_residual"].get<std::string>() << "\n";
    }
    if (c.contains("tilde_laws")) {
      for (const auto& row : c["tilde_laws"]) {
        text << "  tilde c=" << row["c"] << " j=" << row["j"];
        for (const char* law : {"derived", "printed"}) {
          text << "  " << law << "=";
          if (row[law].contains("error")) {
            text << "(" << row[law]["error"].get<std::string>() << ")";
            continue;
          }
          text << "[";
          bool first = true;
          for (const auto& w : row[law]["weights"]) {
            text << (first ? "" : " ") << w.get<std::string>();
            first = false;
          }
          text << "] sum=" << row[law]["sum"].get<std::string>();
        }
        text << "\n";
      }
    }
  }
  text << (r["pass"].get<bool>() ? "all checks pass\n" : "some checks FAILED\n");
  Global out = g;
  if (report == "json") out.format = "json";
  emit(out, r, text.str());
  return r["pass"].get<bool>() ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct McArgs {
  RunConfig run;
  std::string space = "nonplanar";
  std::string observable = "shape";
  std::string reference = "exact";
  long reference_samples = 1000000;
  double max_tv = -1;
  double min_p = -1;
};

int cmd_mc(const Global& g, McArgs a) {
  a.run.space = parse_chain_space(a.space);
  a.run.observable = parse_observable(a.observable);
  a.run.params = float_params(g);
  a.run.seed = g.seed;
  a.run.threads = g.threads;
  SimulationResult sim = run_simulation(a.run);
  Comparison cmp;
  if (a.reference == "exact") {
    Params<Rational> p = exact_params(g);
    ExactDist law;
    int n = a.run.n;
    switch (a.run.space) {
      case ChainSpace::NonPlanar: law = growth_law_nonplanar(n, p); break;
      case ChainSpace::SemiPlanar: law = growth_law_semiplanar(n, p); break;
      case ChainSpace::Decorated: law = growth_law_decorated(a.run.k, n, p); break;
    }
    Probabilities ref;
    int k = a.run.k;
    for (const auto& [s, q] : law) {
      std::string key;
      switch (a.run.observable) {
        case Observable::State: key = s; break;
        case Observable::Shape:
          key = a.run.space == ChainSpace::Decorated ? unlabelled_shape(DecoratedTree::parse(s).shape())
                                                     : unlabelled_shape(parse_tree(s));
          break;
        case Observable::Masses:
          key = a.run.space == ChainSpace::Decorated ? s : project_decorated(parse_tree(s), k).str();
          break;
      }
      ref[key] += to_double(q);
    }
    cmp = compare_distributions(sim.counts, ref);
  } else if (a.reference == "samples") {
    Counts ref = sample_growth(a.run.space, a.run.observable, a.run.n, a.run.k, a.run.params, a.reference_samples,
                               replica_seed(g.seed, 1u << 30), g.threads);
    cmp = compare_distributions(sim.counts, ref);
  } else {
    throw UsageError("--reference must be exact or samples");
  }
  json seeds = json::array();
  for (const auto& r : sim.replicas) seeds.push_back(r.seed);
  bool pass = (a.max_tv < 0 || cmp.tv <= a.max_tv) && (a.min_p < 0 || cmp.p > a.min_p);
  json j{{"schema", kReportSchema},
         {"space", a.space},
         {"observable", a.observable},
         {"n", a.run.n},
         {"samples", sim.samples()},
         {"seed", g.seed},
         {"seed_scheme", kSeedScheme},
         {"replica_seeds", seeds},
         {"tv", cmp.tv},
         {"chi2", cmp.chi2},
         {"dof", cmp.dof},
         {"p", cmp.p},
         {"pass", pass}};
  std::ostringstream text;
  text << "samples " << sim.samples() << "\ntv " << cmp.tv << "\nchi2 " << cmp.chi2 << " dof " << cmp.dof << " p "
       << cmp.p << "\n";
  emit(g, j, text.str());
  return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------

int cmd_scaling(const Global& g, ScalingConfig c, const std::string& shape, const std::string& dir) {
  c.shape = LabelledTree::parse(shape);
  c.params = float_params(g);
  c.seed = g.seed;
  c.threads = g.threads;
  ScalingResult r = wf_scaling_experiment(c);
  if (!dir.empty()) {
    std::filesystem::create_directories(dir);
    for (const auto& pt : r.points) {
      for (std::size_t i = 0; i < pt.trajectories.size(); ++i) {
        std::ofstream f(std::filesystem::path(dir) /
                        ("trajectory_n" + std::to_string(pt.n) + "_r" + std::to_string(i) + ".csv"));
        f << pt.trajectories[i].csv();
      }
    }
  }
  json points = json::array();
  std::ostringstream text;
  text << "parts";
  for (const auto& p : r.parts) text << " " << p;
  text << "\nweights";
  for (double w : r.weights) text << " " << w;
  text << "\n";
  for (const auto& pt : r.points) {
    json stops = json::array();
    for (const auto& t : pt.trajectories) stops.push_back(t.stop_step);
    points.push_back({{"n", pt.n},
                      {"thin", pt.thin},
                      {"tau_records", pt.iat.tau},
                      {"tau_steps", pt.tau_steps},
                      {"window", pt.iat.window},
                      {"mean", pt.mean},
                      {"standard_error", pt.se},
                      {"predicted_mean", pt.predicted},
                      {"stop_steps", stops},
                      {"stopped_at_start", pt.stopped_at_start}});
    text << "n=" << pt.n << " tau_steps=" << pt.tau_steps << " tau/n^2=" << pt.tau_steps / pt.n / pt.n
         << " stopped_at_start=" << pt.stopped_at_start << "/" << pt.trajectories.size() << "\n";
    for (std::size_t q = 0; q < pt.mean.size(); ++q)
      text << "  " << r.parts[q] << " mean=" << pt.mean[q] << " se=" << pt.se[q] << " predicted=" << pt.predicted[q]
           << "\n";
  }
  text << "fitted exponent " << r.fit.exponent << "\n";
  json j{{"schema", kReportSchema}, {"parts", r.parts},          {"weights", r.weights}, {"points", points},
         {"exponent", r.fit.exponent}, {"seed_scheme", kSeedScheme}, {"seed", g.seed}};
  emit(g, j, text.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"(alpha, gamma) tree growth processes and down-up chains"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--alpha", g.alpha, "alpha as p/q or decimal")->capture_default_str();
  app.add_option("--gamma", g.gamma, "gamma as p/q or decimal")->capture_default_str();
  app.add_option("--seed", g.seed, "master seed")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--out", g.out, "output file (default stdout)");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();

  GrowArgs grow;
  auto* sg = app.add_subcommand("grow", "sample or enumerate the growth process");
  sg->add_option("--model", grow.model, "nonplanar | semiplanar | decorated")->capture_default_str();
  sg->add_option("--variant", grow.variant, "standard | internal | bp:<c>")->capture_default_str();
  sg->add_option("-n,--n", grow.n, "number of leaves (decorated: total mass)")->capture_default_str();
  sg->add_option("-k,--k", grow.k, "leaves of the decorated shape")->capture_default_str();
  sg->add_option("--count", grow.count, "number of samples")->capture_default_str();
  sg->add_flag("--exact", grow.exact, "print the exact law instead of samples");

  ChainArgs chain;
  auto* sc = app.add_subcommand("chain", "run a down-up chain and print its states");
  sc->add_option("--space", chain.space, "nonplanar | semiplanar | decorated")->capture_default_str();
  sc->add_option("-n,--n", chain.n)->capture_default_str();
  sc->add_option("-k,--k", chain.k)->capture_default_str();
  sc->add_option("--steps", chain.steps)->capture_default_str();
  sc->add_option("--initial", chain.initial, "initial state encoding");
  sc->add_flag("--trace", chain.trace, "print selected leaf, deleted leaf and case");

  std::string ptree, pinput;
  int pk = 2;
  auto* sp = app.add_subcommand("project", "collapsed and decorated projections of a tree");
  sp->add_option("--tree", ptree, "tree encoding");
  sp->add_option("--input", pinput, "file whose first line is a tree encoding");
  sp->add_option("-k,--k", pk)->capture_default_str();

  std::string check = "all", report = "text";
  int vn = 4, vk = 2, vcap = 7;
  auto* sv = app.add_subcommand("verify", "exact rational checks");
  sv->add_option("--check", check)
      ->check(CLI::IsMember({"stationarity", "lumpability", "intertwining", "independence", "kernel-equality",
                             "order-law", "all"}))
      ->capture_default_str();
  sv->add_option("-n,--n", vn)->capture_default_str();
  sv->add_option("-k,--k", vk)->capture_default_str();
  sv->add_option("--cap", vcap, "largest n to enumerate")->capture_default_str();
  sv->add_option("--report", report)->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  McArgs mc;
  auto* sm = app.add_subcommand("mc", "simulate a chain and compare with the growth law");
  sm->add_option("--space", mc.space)->capture_default_str();
  sm->add_option("--observable", mc.observable, "state | shape | masses")->capture_default_str();
  sm->add_option("-n,--n", mc.run.n)->capture_default_str();
  sm->add_option("-k,--k", mc.run.k)->capture_default_str();
  sm->add_option("--steps", mc.run.steps)->capture_default_str();
  sm->add_option("--burn-in", mc.run.burn_in)->capture_default_str();
  sm->add_option("--thin", mc.run.thin)->capture_default_str();
  sm->add_option("--replicas", mc.run.replicas)->capture_default_str();
  sm->add_option("--reference", mc.reference, "exact | samples")->capture_default_str();
  sm->add_option("--reference-samples", mc.reference_samples)->capture_default_str();
  sm->add_option("--max-tv", mc.max_tv, "fail above this total variation");
  sm->add_option("--min-p", mc.min_p, "fail at or below this p-value");

  ScalingConfig sconf;
  std::string sshape = "(1,2)", sdir;
  auto* ss = app.add_subcommand("scaling", "Wright-Fisher scaling experiment on decorated chains");
  ss->add_option("--ns", sconf.ns, "sizes")->capture_default_str();
  ss->add_option("--shape", sshape, "shape over [k]")->capture_default_str();
  ss->add_option("--observed", sconf.observed, "tracked part address")->capture_default_str();
  ss->add_option("--horizon", sconf.horizon, "trajectory length in n^2 steps")->capture_default_str();
  ss->add_option("--records-per-unit", sconf.records_per_unit)->capture_default_str();
  ss->add_option("--stationary-units", sconf.stationary_units, "run length per replica in n^2 steps")
      ->capture_default_str();
  ss->add_option("--replicas", sconf.replicas)->capture_default_str();
  ss->add_option("--trajectory-dir", sdir, "directory for trajectory CSV files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sg->parsed()) return cmd_grow(g, grow);
    if (sc->parsed()) return cmd_chain(g, chain);
    if (sp->parsed()) return cmd_project(g, ptree, pinput, pk);
    if (sv->parsed()) return cmd_verify(g, check, vn, vk, vcap, report);
    if (sm->parsed()) return cmd_mc(g, mc);
    if (ss->parsed()) return cmd_scaling(g, sconf, sshape, sdir);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
