#include "alphagamma/harness.hpp"

#include "alphagamma/chains.hpp"
#include "alphagamma/growth.hpp"
#include "alphagamma/semiplanar.hpp"
#include "alphagamma/urn.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ag {

Probabilities normalize(const Counts& c) {
  double total = 0;
  for (const auto& [k, v] : c) total += static_cast<double>(v);
  Probabilities out;
  if (total <= 0) return out;
  for (const auto& [k, v] : c) out[k] = static_cast<double>(v) / total;
  return out;
}

double tv_distance(const Probabilities& a, const Probabilities& b) {
  double s = 0;
  for (const auto& [k, p] : a) {
    auto it = b.find(k);
    s += std::abs(p - (it == b.end() ? 0.0 : it->second));
  }
  for (const auto& [k, q] : b)
    if (!a.count(k)) s += std::abs(q);
  return s / 2;
}

double chi_square_p(double statistic, int dof) {
  if (dof <= 0) return 1;
  boost::math::chi_squared dist(dof);
  double f = boost::math::cdf(dist, statistic);
  return std::min(1.0, 2 * std::min(f, 1 - f));
}

namespace {

// Groups cells by expected count: indices of cells below the threshold are
// merged into one group, which joins the smallest other group if still small.
std::vector<std::vector<std::size_t>> pool_cells(const std::vector<double>& expected, double threshold = 5) {
  std::vector<std::vector<std::size_t>> groups;
  std::vector<std::size_t> small;
  double small_total = 0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (expected[i] < threshold) {
      small.push_back(i);
      small_total += expected[i];
    } else {
      groups.push_back({i});
    }
  }
  if (!small.empty()) {
    if (small_total < threshold && !groups.empty()) {
      auto it = std::min_element(groups.begin(), groups.end(), [&](const auto& a, const auto& b) {
        return expected[a[0]] < expected[b[0]];
      });
      it->insert(it->end(), small.begin(), small.end());
    } else {
      groups.push_back(small);
    }
  }
  return groups;
}

std::vector<std::string> union_keys(const Probabilities& a, const Probabilities& b) {
  std::vector<std::string> out;
  for (const auto& [k, v] : a) out.push_back(k);
  for (const auto& [k, v] : b)
    if (!a.count(k)) out.push_back(k);
  std::sort(out.begin(), out.end());
  return out;
}

double lookup(const Probabilities& m, const std::string& k) {
  auto it = m.find(k);
  return it == m.end() ? 0.0 : it->second;
}

long lookup(const Counts& m, const std::string& k) {
  auto it = m.find(k);
  return it == m.end() ? 0 : it->second;
}

}  // namespace

Comparison compare_distributions(const Counts& observed, const Probabilities& reference) {
  Comparison r;
  Probabilities emp = normalize(observed);
  r.tv = tv_distance(emp, reference);
  double total = 0;
  for (const auto& [k, v] : observed) total += static_cast<double>(v);
  auto ks = union_keys(emp, reference);
  std::vector<double> expected, obs;
  for (const auto& k : ks) {
    expected.push_back(total * lookup(reference, k));
    obs.push_back(static_cast<double>(lookup(observed, k)));
  }
  auto groups = pool_cells(expected);
  for (const auto& g : groups) {
    double e = 0, o = 0;
    for (auto i : g) {
      e += expected[i];
      o += obs[i];
    }
    if (e > 0) {
      r.chi2 += (o - e) * (o - e) / e;
    } else if (o > 0) {
      r.chi2 = std::numeric_limits<double>::infinity();
    }
  }
  r.cells = static_cast<int>(groups.size());
  r.dof = r.cells - 1;
  r.p = std::isinf(r.chi2) ? 0.0 : chi_square_p(r.chi2, r.dof);
  return r;
}

Comparison compare_distributions(const Counts& observed, const Counts& reference) {
  Comparison r;
  Probabilities a = normalize(observed), b = normalize(reference);
  r.tv = tv_distance(a, b);
  double na = 0, nb = 0;
  for (const auto& [k, v] : observed) na += static_cast<double>(v);
  for (const auto& [k, v] : reference) nb += static_cast<double>(v);
  auto ks = union_keys(a, b);
  std::vector<double> oa, ob, smaller;
  for (const auto& k : ks) {
    oa.push_back(static_cast<double>(lookup(observed, k)));
    ob.push_back(static_cast<double>(lookup(reference, k)));
    // Pooling is driven by the smaller of the two expected counts.
    double pooled = (oa.back() + ob.back()) / (na + nb);
    smaller.push_back(pooled * std::min(na, nb));
  }
  auto groups = pool_cells(smaller);
  for (const auto& g : groups) {
    double xa = 0, xb = 0;
    for (auto i : g) {
      xa += oa[i];
      xb += ob[i];
    }
    double pooled = (xa + xb) / (na + nb);
    double ea = pooled * na, eb = pooled * nb;
    if (ea > 0) r.chi2 += (xa - ea) * (xa - ea) / ea;
    if (eb > 0) r.chi2 += (xb - eb) * (xb - eb) / eb;
  }
  r.cells = static_cast<int>(groups.size());
  r.dof = r.cells - 1;
  r.p = chi_square_p(r.chi2, r.dof);
  return r;
}

IatEstimate integrated_autocorrelation(const std::vector<std::vector<double>>& series, double c) {
  IatEstimate r;
  long total = 0;
  double sum = 0;
  std::size_t shortest = std::numeric_limits<std::size_t>::max();
  for (const auto& s : series) {
    total += static_cast<long>(s.size());
    sum += std::accumulate(s.begin(), s.end(), 0.0);
    shortest = std::min(shortest, s.size());
  }
  if (total < 2 || shortest < 2) throw std::invalid_argument("autocorrelation needs at least two samples per series");
  r.samples = total;
  r.mean = sum / static_cast<double>(total);
  auto autocov = [&](std::size_t lag) {
    double acc = 0;
    long pairs = 0;
    for (const auto& s : series) {
      for (std::size_t i = 0; i + lag < s.size(); ++i) acc += (s[i] - r.mean) * (s[i + lag] - r.mean);
      pairs += static_cast<long>(s.size() - lag);
    }
    return acc / static_cast<double>(pairs);
  };
  double c0 = autocov(0);
  r.variance = c0;
  if (c0 <= 0) {
    r.tau = 1;
    r.standard_error = 0;
    return r;
  }
  double tau = 1;
  std::size_t w = 1;
  for (; w < shortest / 2; ++w) {
    tau += 2 * autocov(w) / c0;
    if (static_cast<double>(w) >= c * tau) break;
  }
  r.tau = std::max(tau, 1e-12);
  r.window = static_cast<long>(w);
  r.standard_error = std::sqrt(c0 * r.tau / static_cast<double>(total));
  return r;
}

PowerFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("power fit needs two or more points");
  double n = static_cast<double>(x.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  PowerFit f;
  f.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.intercept = (sy - f.exponent * sx) / n;
  return f;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t replica_seed(std::uint64_t master, std::uint64_t replica) {
  return splitmix64(master + (replica + 1) * 0x9E3779B97F4A7C15ULL);
}

ChainSpace parse_chain_space(const std::string& s) {
  if (s == "nonplanar") return ChainSpace::NonPlanar;
  if (s == "semiplanar") return ChainSpace::SemiPlanar;
  if (s == "decorated") return ChainSpace::Decorated;
  throw std::invalid_argument("unknown space '" + s + "'");
}

std::string to_string(ChainSpace s) {
  switch (s) {
    case ChainSpace::NonPlanar: return "nonplanar";
    case ChainSpace::SemiPlanar: return "semiplanar";
    case ChainSpace::Decorated: return "decorated";
  }
  return "nonplanar";
}

Observable parse_observable(const std::string& s) {
  if (s == "state") return Observable::State;
  if (s == "shape") return Observable::Shape;
  if (s == "masses") return Observable::Masses;
  throw std::invalid_argument("unknown observable '" + s + "'");
}

std::string to_string(Observable o) {
  switch (o) {
    case Observable::State: return "state";
    case Observable::Shape: return "shape";
    case Observable::Masses: return "masses";
  }
  return "state";
}

void validate(const RunConfig& c) {
  validate(c.params);
  if (c.n < 3) throw std::invalid_argument("chains need n >= 3");
  if (c.space == ChainSpace::Decorated && (c.k < 1 || c.k >= c.n))
    throw std::invalid_argument("decorated chains need 1 <= k < n");
  if (c.observable == Observable::Masses && (c.k < 1 || c.k > c.n))
    throw std::invalid_argument("mass observable needs 1 <= k <= n");
  if (c.burn_in < 0 || c.steps <= c.burn_in) throw std::invalid_argument("need steps > burn-in >= 0");
  if (c.thin < 1) throw std::invalid_argument("thinning must be at least 1");
  if (c.replicas < 1) throw std::invalid_argument("need at least one replica");
  if (c.threads < 1) throw std::invalid_argument("need at least one thread");
}

long SimulationResult::samples() const {
  long s = 0;
  for (const auto& [k, v] : counts) s += v;
  return s;
}

namespace {

// Runs jobs 0..count-1 on up to `threads` workers; each job writes its own slot.
void parallel_for(int count, int threads, const std::function<void(int)>& job) {
  int workers = std::max(1, std::min(threads, count));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          job(i);
        } catch (...) {
          errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::string observe(const LabelledTree& t, Observable o, int k) {
  switch (o) {
    case Observable::State: return t.str();
    case Observable::Shape: return unlabelled_shape(t.tree());
    case Observable::Masses: return project_decorated(t, k).str();
  }
  return t.str();
}

std::string observe(const SemiPlanarTree& t, Observable o, int k) {
  if (o == Observable::State) return t.str();
  return observe(t.shape(), o, k);
}

std::string observe(const DecoratedTree& d, Observable o, int) {
  if (o == Observable::Shape) return unlabelled_shape(d.shape());
  return d.str();
}

template <class State, class Step>
void run_chain(const RunConfig& c, State s, Step step, ReplicaResult& out) {
  for (long m = 1; m <= c.steps; ++m) {
    s = step(s);
    if (m > c.burn_in && (m - c.burn_in) % c.thin == 0) {
      std::string v = observe(s, c.observable, c.k);
      ++out.counts[v];
      if (c.record_stream) out.stream.push_back(std::move(v));
    }
  }
}

ReplicaResult run_replica(const RunConfig& c, std::uint64_t seed) {
  ReplicaResult out;
  out.seed = seed;
  Rng rng(seed);
  RngChooser ch(rng);
  const Params<double>& p = c.params;
  switch (c.space) {
    case ChainSpace::NonPlanar: {
      LabelledTree s = c.initial ? LabelledTree::parse(*c.initial) : grow_nonplanar(c.n, p, ch);
      if (s.size() != c.n) throw std::invalid_argument("initial state has the wrong size");
      run_chain(c, s, [&](const LabelledTree& t) { return nonplanar_chain_step(t, p, ch); }, out);
      break;
    }
    case ChainSpace::SemiPlanar: {
      SemiPlanarTree s = c.initial ? SemiPlanarTree::parse(*c.initial) : grow_semiplanar(c.n, p, ch);
      if (s.size() != c.n) throw std::invalid_argument("initial state has the wrong size");
      run_chain(c, s, [&](const SemiPlanarTree& t) { return semiplanar_chain_step(t, p, ch); }, out);
      break;
    }
    case ChainSpace::Decorated: {
      DecoratedTree s = c.initial ? DecoratedTree::parse(*c.initial)
                                  : grow_decorated(grow_nonplanar(c.k, p, ch), c.n, p, ch);
      if (s.total() != c.n || s.k() != c.k) throw std::invalid_argument("initial state has the wrong size");
      run_chain(c, s, [&](const DecoratedTree& d) { return decorated_chain_step(d, p, ch); }, out);
      break;
    }
  }
  return out;
}

}  // namespace

SimulationResult run_simulation(const RunConfig& c) {
  validate(c);
  SimulationResult r;
  r.replicas.resize(static_cast<std::size_t>(c.replicas));
  parallel_for(c.replicas, c.threads, [&](int i) {
    r.replicas[static_cast<std::size_t>(i)] = run_replica(c, replica_seed(c.seed, static_cast<std::uint64_t>(i)));
  });
  for (const auto& rep : r.replicas)
    for (const auto& [k, v] : rep.counts) r.counts[k] += v;
  return r;
}

Counts sample_growth(ChainSpace space, Observable o, int n, int k, const Params<double>& p, long samples,
                     std::uint64_t seed, int threads) {
  validate(p);
  constexpr long kBlock = 1L << 20;
  int blocks = static_cast<int>((samples + kBlock - 1) / kBlock);
  std::vector<Counts> parts(static_cast<std::size_t>(blocks));
  parallel_for(blocks, threads, [&](int b) {
    Rng rng(replica_seed(seed, static_cast<std::uint64_t>(b)));
    RngChooser ch(rng);
    long count = std::min(kBlock, samples - static_cast<long>(b) * kBlock);
    Counts& out = parts[static_cast<std::size_t>(b)];
    for (long i = 0; i < count; ++i) {
      switch (space) {
        case ChainSpace::NonPlanar: ++out[observe(grow_nonplanar(n, p, ch), o, k)]; break;
        case ChainSpace::SemiPlanar: ++out[observe(grow_semiplanar(n, p, ch), o, k)]; break;
        case ChainSpace::Decorated:
          ++out[observe(grow_decorated(grow_nonplanar(k, p, ch), n, p, ch), o, k)];
          break;
      }
    }
  });
  Counts merged;
  for (const auto& c : parts)
    for (const auto& [key, v] : c) merged[key] += v;
  return merged;
}

std::vector<double> urn_weights(const LabelledTree& shape, const Params<double>& p) {
  std::vector<double> w;
  for (Part x : insertable_parts(shape.tree())) w.push_back(part_weight(shape.tree(), x, p));
  return w;
}

std::vector<double> wf_weights(const LabelledTree& shape, const Params<double>& p) {
  std::vector<double> w = urn_weights(shape, p);
  auto parts = insertable_parts(shape.tree());
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (is_external(shape.tree(), parts[i])) w[i] -= 1;
  return w;
}

namespace {
std::vector<long> initial_masses(const LabelledTree& shape) {
  std::vector<long> m;
  for (Part x : insertable_parts(shape.tree())) m.push_back(is_external(shape.tree(), x) ? 1 : 0);
  return m;
}
}  // namespace

Probabilities decorated_urn_law(const LabelledTree& shape, long n, const Params<double>& p) {
  auto base = initial_masses(shape);
  long k = shape.size();
  if (n < k) throw std::invalid_argument("mass below the number of leaves");
  UrnWeights<double> w(urn_weights(shape, p));
  Probabilities out;
  for (const auto& c : compositions(n - k, w.size())) {
    double q = dirmult_pmf(n - k, w, c);
    if (q == 0) continue;
    std::vector<long> m = base;
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += c[i];
    out[DecoratedTree(shape, m).str()] = q;
  }
  return out;
}

std::vector<double> urn_mean_proportions(const LabelledTree& shape, long n, const Params<double>& p) {
  auto base = initial_masses(shape);
  auto w = urn_weights(shape, p);
  double total = std::accumulate(w.begin(), w.end(), 0.0);
  long k = shape.size();
  std::vector<double> out;
  for (std::size_t i = 0; i < w.size(); ++i)
    out.push_back((static_cast<double>(base[i]) + static_cast<double>(n - k) * w[i] / total) / static_cast<double>(n));
  return out;
}

std::string MassTrajectory::csv() const {
  std::ostringstream os;
  os << "# schema=" << kTrajectorySchema << " n=" << n << "\n";
  os << "step";
  for (const auto& a : parts) os << "," << a;
  os << ",stopped\n";
  for (std::size_t r = 0; r < steps.size(); ++r) {
    os << steps[r];
    for (double y : proportions[r]) os << "," << y;
    os << "," << (stopped[r] ? 1 : 0) << "\n";
  }
  return os.str();
}

namespace {

bool hits_minimum(const DecoratedTree& d) {
  for (Part x : insertable_parts(d.shape()))
    if (is_external(d.shape(), x) && d.mass(x) <= 1) return true;
  return false;
}

std::vector<double> proportions(const DecoratedTree& d) {
  std::vector<double> out;
  double n = static_cast<double>(d.total());
  for (long m : d.masses()) out.push_back(static_cast<double>(m) / n);
  return out;
}

MassTrajectory run_trajectory(const ScalingConfig& c, int n, long thin, const std::vector<std::string>& parts,
                              std::uint64_t seed) {
  Rng rng(seed);
  RngChooser ch(rng);
  MassTrajectory tr;
  tr.n = n;
  tr.parts = parts;
  std::string shape = c.shape.str();
  DecoratedTree d = grow_decorated(c.shape, n, c.params, ch);
  long horizon = std::lround(c.horizon * n * n);
  bool stopped = false;
  std::vector<double> frozen;
  for (long m = 0; m <= horizon; ++m) {
    if (m > 0 && !stopped) d = decorated_chain_step(d, c.params, ch);
    if (!stopped && (hits_minimum(d) || d.labelled_shape().str() != shape)) {
      stopped = true;
      tr.stop_step = m;
      frozen = d.labelled_shape().str() == shape ? proportions(d) : (tr.proportions.empty()
                                                                        ? proportions(d)
                                                                        : tr.proportions.back());
    }
    if (m % thin == 0) {
      tr.steps.push_back(m);
      tr.proportions.push_back(stopped ? frozen : proportions(d));
      tr.stopped.push_back(stopped);
    }
  }
  return tr;
}

}  // namespace

ScalingResult wf_scaling_experiment(const ScalingConfig& c) {
  validate(c.params);
  if (c.ns.empty()) throw std::invalid_argument("no sizes given");
  if (c.records_per_unit < 1 || c.replicas < 1 || c.horizon < 0 || c.stationary_units <= 0)
    throw std::invalid_argument("invalid scaling configuration");
  ScalingResult res;
  const Tree& s = c.shape.tree();
  auto parts = insertable_parts(s);
  for (Part x : parts) res.parts.push_back(address_of(s, x).str());
  res.weights = wf_weights(c.shape, c.params);
  Part observed = resolve(s, parse_address(s, c.observed));
  std::size_t x0 = static_cast<std::size_t>(std::find(parts.begin(), parts.end(), observed) - parts.begin());
  bool stationary = c.shape.size() == 2;
  std::vector<double> xs, taus;
  for (std::size_t ni = 0; ni < c.ns.size(); ++ni) {
    int n = c.ns[ni];
    if (n <= c.shape.size()) throw std::invalid_argument("n must exceed the number of shape leaves");
    ScalingPoint pt;
    pt.n = n;
    pt.thin = std::max<long>(1, std::lround(static_cast<double>(n) * n / static_cast<double>(c.records_per_unit)));
    pt.predicted = urn_mean_proportions(c.shape, n, c.params);
    std::uint64_t base = replica_seed(c.seed, ni);
    pt.trajectories.resize(static_cast<std::size_t>(c.replicas));
    parallel_for(c.replicas, c.threads, [&](int r) {
      pt.trajectories[static_cast<std::size_t>(r)] =
          run_trajectory(c, n, pt.thin, res.parts, replica_seed(base, 2 * static_cast<std::uint64_t>(r)));
    });
    for (const auto& tr : pt.trajectories)
      if (tr.stop_step == 0) ++pt.stopped_at_start;
    if (stationary) {
      // Per replica and part: proportions recorded every `thin` steps.
      std::vector<std::vector<std::vector<double>>> series(
          parts.size(), std::vector<std::vector<double>>(static_cast<std::size_t>(c.replicas)));
      long steps = std::lround(c.stationary_units * n * n);
      parallel_for(c.replicas, c.threads, [&](int r) {
        Rng rng(replica_seed(base, 2 * static_cast<std::uint64_t>(r) + 1));
        RngChooser ch(rng);
        DecoratedTree d = grow_decorated(c.shape, n, c.params, ch);
        for (long m = 1; m <= steps; ++m) {
          d = decorated_chain_step(d, c.params, ch);
          if (m % pt.thin == 0) {
            auto y = proportions(d);
            for (std::size_t q = 0; q < parts.size(); ++q) series[q][static_cast<std::size_t>(r)].push_back(y[q]);
          }
        }
      });
      for (std::size_t q = 0; q < parts.size(); ++q) {
        IatEstimate e = integrated_autocorrelation(series[q]);
        pt.mean.push_back(e.mean);
        pt.se.push_back(e.standard_error);
        if (q == x0) pt.iat = e;
      }
      pt.tau_steps = pt.iat.tau * static_cast<double>(pt.thin);
      xs.push_back(n);
      taus.push_back(pt.tau_steps);
    }
    res.points.push_back(std::move(pt));
  }
  if (xs.size() >= 2) res.fit = fit_power_law(xs, taus);
  return res;
}

}  // namespace ag
