#pragma once

// Monte Carlo driver and statistics: seeded replica runs, distribution
// comparison, autocorrelation times and the Wright-Fisher scaling experiment.

#include "alphagamma/decorated.hpp"
#include "alphagamma/numeric.hpp"
#include "alphagamma/tree.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ag {

inline constexpr const char* kTrajectorySchema = "alphagamma.trajectory/1";
inline constexpr const char* kReportSchema = "alphagamma.report/1";

using Counts = std::map<std::string, long>;
using Probabilities = std::map<std::string, double>;

Probabilities normalize(const Counts& c);
double tv_distance(const Probabilities& a, const Probabilities& b);

struct Comparison {
  double tv = 0;
  double chi2 = 0;
  int dof = 0;
  double p = 1;  // two-sided
  int cells = 0;  // cells after pooling
};

// Goodness of fit against a reference law. Cells with expectation below 5 are
// pooled into one cell; a pooled cell still below 5 joins the smallest
// remaining cell.
Comparison compare_distributions(const Counts& observed, const Probabilities& reference);
// Homogeneity of two samples (2 x m contingency table) with the same pooling.
Comparison compare_distributions(const Counts& observed, const Counts& reference);
// Two-sided chi-square p-value: 2 min(F, 1 - F), capped at 1.
double chi_square_p(double statistic, int dof);

// Integrated autocorrelation time with Sokal's self-consistent window
// (smallest W with W >= c tau(W)), pooled over replica series.
struct IatEstimate {
  double tau = 1;
  long window = 0;
  double mean = 0;
  double variance = 0;
  double standard_error = 0;  // of the mean, inflated by tau
  long samples = 0;
};
IatEstimate integrated_autocorrelation(const std::vector<std::vector<double>>& series, double c = 5);

struct PowerFit {
  double exponent = 0;
  double intercept = 0;
};
PowerFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);  // y ~ e^b x^a

// Seed splitting: replica r of master seed s runs from splitmix64 applied to
// s + (r + 1) * 0x9E3779B97F4A7C15.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t replica_seed(std::uint64_t master, std::uint64_t replica);
inline constexpr const char* kSeedScheme = "splitmix64(seed + (replica + 1) * 0x9E3779B97F4A7C15)";

enum class ChainSpace { NonPlanar, SemiPlanar, Decorated };
ChainSpace parse_chain_space(const std::string& s);
std::string to_string(ChainSpace s);

enum class Observable { State, Shape, Masses };
Observable parse_observable(const std::string& s);
std::string to_string(Observable o);

struct RunConfig {
  ChainSpace space = ChainSpace::NonPlanar;
  Params<double> params{0.5, 0.5};
  int n = 5;
  int k = 2;
  long steps = 1000;
  long burn_in = 0;
  long thin = 1;
  std::uint64_t seed = 1;
  int replicas = 1;
  int threads = 1;
  Observable observable = Observable::State;
  bool record_stream = false;
  std::optional<std::string> initial;  // encoding; default is a growth-law draw
};
void validate(const RunConfig& c);

struct ReplicaResult {
  std::uint64_t seed = 0;
  Counts counts;
  std::vector<std::string> stream;  // observed values when record_stream is set
};

struct SimulationResult {
  Counts counts;  // merged in replica order
  std::vector<ReplicaResult> replicas;
  long samples() const;
};

// Steps 1..steps are taken; the observable is recorded after step m when
// m > burn_in and (m - burn_in) % thin == 0.
SimulationResult run_simulation(const RunConfig& c);

// Observable of independent growth-law draws at size n (decorated: projection
// onto [k]), for reference histograms.
Counts sample_growth(ChainSpace space, Observable o, int n, int k, const Params<double>& p, long samples,
                     std::uint64_t seed, int threads = 1);

// Exact-arithmetic free reference: the decorated growth law of mass n on a
// fixed shape as a map from mass strings to probabilities, from the
// Dirichlet-multinomial urn over the parts.
Probabilities decorated_urn_law(const LabelledTree& shape, long n, const Params<double>& p);
// Urn weights of the parts (insertable_parts order) and their mean proportions.
std::vector<double> urn_weights(const LabelledTree& shape, const Params<double>& p);
std::vector<double> urn_mean_proportions(const LabelledTree& shape, long n, const Params<double>& p);
// Diffusion weights: urn weight minus one on external edges.
std::vector<double> wf_weights(const LabelledTree& shape, const Params<double>& p);

struct MassTrajectory {
  int n = 0;
  std::vector<std::string> parts;  // part addresses
  std::vector<long> steps;
  std::vector<std::vector<double>> proportions;
  std::vector<bool> stopped;
  long stop_step = -1;  // -1 if never stopped
  std::string csv() const;
};

struct ScalingConfig {
  std::vector<int> ns{25, 50, 100};
  LabelledTree shape = LabelledTree::parse("(1,2)");
  Params<double> params{0.5, 0.5};
  std::string observed = "e:1";  // part whose proportion is tracked
  double horizon = 1;            // trajectory length in units of n^2 steps
  long records_per_unit = 100;
  double stationary_units = 200;  // per replica, in units of n^2 steps
  std::uint64_t seed = 1;
  int replicas = 4;
  int threads = 1;
};

struct ScalingPoint {
  int n = 0;
  long thin = 1;
  IatEstimate iat;      // in records
  double tau_steps = 0;  // iat.tau * thin
  std::vector<double> mean;  // stationary mean proportions
  std::vector<double> se;
  std::vector<double> predicted;
  std::vector<MassTrajectory> trajectories;  // one per replica
  int stopped_at_start = 0;
};

struct ScalingResult {
  std::vector<std::string> parts;
  std::vector<double> weights;
  std::vector<ScalingPoint> points;
  PowerFit fit;
};

// Stationary statistics need a [2]-shape, where the shape never changes;
// trajectories run for any shape and stop when an external edge reaches mass
// one or the shape changes.
ScalingResult wf_scaling_experiment(const ScalingConfig& c);

}  // namespace ag
