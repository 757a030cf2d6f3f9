#pragma once

// Exact small-n verification: laws and transition kernels are computed by
// walking every decision path with rational probabilities. States are keyed
// by their canonical text encoding; std::map keeps every ordering
// deterministic.

#include "alphagamma/chains.hpp"
#include "alphagamma/chooser.hpp"
#include "alphagamma/growth.hpp"
#include "alphagamma/numeric.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace ag {

using ExactDist = std::map<std::string, Rational>;
using Kernel = std::map<std::string, ExactDist>;  // sparse rows
using Projection = std::function<std::string(const std::string&)>;

Rational total(const ExactDist& d);
ExactDist pushforward(const ExactDist& d, const Projection& f);
ExactDist evolve(const ExactDist& mu, const Kernel& k);  // mu K
Kernel compose(const Kernel& a, const Kernel& b);       // A B
Kernel as_kernel(const std::vector<std::string>& states, const Projection& f);
Kernel map_columns(const Kernel& k, const Projection& f);  // K composed with a deterministic map
// Law of X given f(X) = y, for each y in the image of mu.
Kernel condition_on(const ExactDist& mu, const Projection& f);
Rational max_residual(const ExactDist& a, const ExactDist& b);
Rational max_residual(const Kernel& a, const Kernel& b);
bool is_stochastic(const Kernel& k);
std::vector<std::string> keys(const ExactDist& d);

template <class Run>
ExactDist exact_law(Run&& run) {
  ExactDist out;
  enumerate_paths([&](PathEnumerator& e) { return run(static_cast<Chooser<Rational>&>(e)); },
                  [&](std::string s, const Rational& p) { out[s] += p; });
  return out;
}

// One row per source state: step(source, chooser) returns the next encoding.
template <class Step>
Kernel exact_kernel(const std::vector<std::string>& states, Step&& step) {
  Kernel k;
  for (const auto& s : states) k[s] = exact_law([&](Chooser<Rational>& ch) { return step(s, ch); });
  return k;
}

// Growth laws.
ExactDist growth_law_nonplanar(int n, const Params<Rational>& p, const Variant& v = {});
ExactDist growth_law_semiplanar(int n, const Params<Rational>& p, const Variant& v = {});
ExactDist growth_law_weighted(const WeightedTree<Rational>& start, int steps, const Params<Rational>& p);
// Decorated growth from (T_k, unit leaf masses) with T_k drawn from the growth law.
ExactDist growth_law_decorated(int k, int n, const Params<Rational>& p);

// Projections between encodings.
std::string project_sp_to_nonplanar(const std::string& sp);
Projection sp_to_decorated(int k);
Projection sp_to_collapsed(int k);
Projection nonplanar_to_decorated(int k);
Projection collapsed_to_decorated();
Projection decorated_down(int k);

// Kernels of the chains, with rows on the given states.
Kernel kernel_semiplanar(const std::vector<std::string>& states, const Params<Rational>& p);
Kernel kernel_nonplanar(const std::vector<std::string>& states, const Params<Rational>& p);
Kernel kernel_decorated(const std::vector<std::string>& states, const Params<Rational>& p);
// Lifting kernels: branch orders given a shape, and the decorated lift.
Kernel kernel_sample_orders(const std::vector<std::string>& shapes, const Params<Rational>& p);
Kernel kernel_lift_decorated(const std::vector<std::string>& states, const Params<Rational>& p);

// Checks.
Rational check_stationarity(const Kernel& k, const ExactDist& mu);

struct LumpabilityResult {
  bool pass = true;
  std::string x1, x2, block;  // witness on failure
};
LumpabilityResult check_lumpability(const Kernel& k, const Projection& lambda);

struct IntertwiningResult {
  Rational matrix_residual;       // candidate versus lift . K . projection
  Rational conditional_residual;  // P(X1 = x | lambda X0 = y0, lambda X1 = y) versus lift(y, x)
  bool pass() const { return matrix_residual == 0 && conditional_residual == 0; }
};
IntertwiningResult check_intertwining(const Kernel& lift, const Kernel& k, const Projection& lambda,
                                      const Kernel& candidate);

// Down-step independence under the semi-planar growth law at size n.
struct IndependenceEntry {
  int i = 0, i_tilde = 0;
  Rational probability;
  Rational factorization_residual;  // joint of (E, T_{ĩ-1}) minus product of marginals
  Rational pushforward_residual;    // down-step given E versus growth law at n-1
};
struct IndependenceReport {
  int n = 0;
  std::vector<IndependenceEntry> entries;
};
IndependenceReport check_downstep_independence(int n, const Params<Rational>& p);

// Enumeration of state spaces by recursive insertion, and independent counts.
enum class SpaceKind { Binary, NonPlanar, SemiPlanar };
SpaceKind parse_space_kind(const std::string& s);
std::vector<std::string> enumerate_space(SpaceKind kind, int n, int cap = 9);
Rational count_space(SpaceKind kind, int n);  // recursion over set partitions by root degree

}  // namespace ag
