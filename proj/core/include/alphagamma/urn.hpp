#pragma once

// Polya urns, Dirichlet-multinomial laws, Chinese restaurant seating (plain and
// ordered) and the decrement matrix. Gamma ratios are always evaluated as
// rising factorials so that rational inputs give rational outputs.

#include "alphagamma/chooser.hpp"
#include "alphagamma/numeric.hpp"

#include <stdexcept>
#include <vector>

namespace ag {

template <class R>
struct UrnWeights {
  std::vector<R> weights;

  explicit UrnWeights(std::vector<R> w) : weights(std::move(w)) {
    R total = 0;
    for (const auto& x : weights) {
      if (x < 0) throw std::invalid_argument("urn weight must be nonnegative");
      total += x;
    }
    if (total <= 0) throw std::invalid_argument("urn weights must have positive total");
  }
  std::size_t size() const { return weights.size(); }
};

// Zero weights are accepted: such colours are simply never drawn.
template <class R>
R dirmult_pmf(long n, const UrnWeights<R>& w, const std::vector<long>& counts) {
  if (counts.size() != w.size()) throw std::invalid_argument("counts and weights differ in length");
  long total = 0;
  for (long c : counts) {
    if (c < 0) throw std::invalid_argument("negative count");
    total += c;
  }
  if (total != n) return R(0);
  R wsum = sum(w.weights);
  if constexpr (std::is_floating_point_v<R>) {
    double lp = -log_rising(wsum, n);
    long rest = n;
    for (std::size_t j = 0; j < counts.size(); ++j) {
      lp += log_binomial(rest, counts[j]) + log_rising(w.weights[j], counts[j]);
      rest -= counts[j];
    }
    return static_cast<R>(std::exp(lp));
  }
  R p = 1;
  long left = n;
  for (std::size_t j = 0; j < counts.size(); ++j) {
    p *= binomial<R>(left, counts[j]);
    left -= counts[j];
    p *= rising(w.weights[j], counts[j]);
  }
  p /= rising(wsum, n);
  return p;
}

template <class R>
R betabin_pmf(long n, const R& a, const R& b, long m) {
  if (m < 0 || m > n) return R(0);
  return dirmult_pmf(n, UrnWeights<R>({a, b}), {m, n - m});
}

// Full pmf of BetaBin^n(a, b) on {0..n}.
template <class R>
std::vector<R> betabin_vector(long n, const R& a, const R& b) {
  std::vector<R> out(n + 1);
  for (long m = 0; m <= n; ++m) out[m] = betabin_pmf(n, a, b, m);
  return out;
}

// All count vectors of length k summing to n, in lexicographic order.
std::vector<std::vector<long>> compositions(long n, std::size_t k);

// Law of the colour counts after n draws, listed in compositions(n, k) order.
template <class R>
std::vector<R> dirmult_vector(long n, const UrnWeights<R>& w) {
  std::vector<R> out;
  for (const auto& c : compositions(n, w.size())) out.push_back(dirmult_pmf(n, w, c));
  return out;
}

// Sequential urn: returns the colour of each of n draws.
template <class R>
std::vector<std::size_t> polya_urn_draws(long n, UrnWeights<R> w, Chooser<R>& ch) {
  std::vector<std::size_t> seq;
  seq.reserve(n);
  for (long i = 0; i < n; ++i) {
    std::size_t c = ch.choose(w.weights);
    w.weights[c] += R(1);
    seq.push_back(c);
  }
  return seq;
}

// Draw a count vector from DirMult^n(w). Exact mode makes one decision over all
// compositions; float mode runs the urn, which has the same law and is O(n).
template <class R>
std::vector<long> sample_dirmult(long n, const UrnWeights<R>& w, Chooser<R>& ch) {
  if (n == 0) return std::vector<long>(w.size(), 0);
  if constexpr (std::is_same_v<R, Rational>) {
    auto comps = compositions(n, w.size());
    return comps[ch.choose(dirmult_vector(n, w))];
  } else {
    std::vector<long> counts(w.size(), 0);
    for (std::size_t c : polya_urn_draws(n, w, ch)) ++counts[c];
    return counts;
  }
}

template <class R>
long sample_betabin(long n, const R& a, const R& b, Chooser<R>& ch) {
  if (n == 0) return 0;
  if constexpr (std::is_same_v<R, Rational>) {
    return static_cast<long>(ch.choose(betabin_vector(n, a, b)));
  } else {
    return sample_dirmult(n, UrnWeights<R>({a, b}), ch)[0];
  }
}

// Number of records: positions j with sigma[j] larger than every earlier value.
int record_count(const std::vector<int>& sigma);

bool is_permutation_of_1_to_L(const std::vector<int>& sigma);

// Law of the left-to-right positions of the tables (in order of appearance) of
// an ordered (alpha, theta) restaurant: (theta/alpha)^R / rising(theta/alpha, L),
// written in the cancelled form that stays finite at theta = 0.
template <class R>
R ocrp_permutation_pmf(const std::vector<int>& sigma, const R& alpha, const R& theta) {
  if (!(alpha > 0)) throw std::invalid_argument("ordered restaurant needs alpha > 0");
  if (theta < 0) throw std::invalid_argument("ordered restaurant needs theta >= 0");
  if (!is_permutation_of_1_to_L(sigma)) throw std::invalid_argument("not a permutation");
  long L = static_cast<long>(sigma.size());
  if (L == 0) return R(1);
  R r = theta / alpha;
  R p = 1;
  int records = record_count(sigma);
  for (int i = 1; i < records; ++i) p *= r;
  R one = 1;
  p /= rising(R(r + one), L - 1);
  return p;
}

// Decrement matrix q_{alpha,theta}(n, m): law of the leftmost block size.
template <class R>
R decrement_pmf(long n, long m, const R& alpha, const R& theta) {
  if (n < 1 || m < 1 || m > n) throw std::invalid_argument("decrement matrix index out of range");
  R one = 1;
  if constexpr (std::is_floating_point_v<R>) {
    double lp = log_binomial(n, m) + log_rising(one - alpha, m - 1);
    if (m == n) return static_cast<R>(std::exp(lp - log_rising(theta + one, n - 1)));
    R lead = R(n - m) * alpha + R(m) * theta;
    if (lead == 0) return R(0);
    lp += std::log(lead) - std::log(static_cast<double>(n)) - log_rising(R(n - m) + theta, m);
    return static_cast<R>(std::exp(lp));
  }
  R p = binomial<R>(n, m);
  p *= rising(R(one - alpha), m - 1);
  if (m == n) {
    p /= rising(R(theta + one), n - 1);
    return p;
  }
  R lead = R(n - m) * alpha + R(m) * theta;
  p *= lead;
  p /= R(n);
  p /= rising(R(R(n - m) + theta), m);
  return p;
}

// Row q(n, 1..n) as a vector indexed 0..n-1.
template <class R>
std::vector<R> decrement_vector(long n, const R& alpha, const R& theta) {
  std::vector<R> out(n);
  for (long m = 1; m <= n; ++m) out[m - 1] = decrement_pmf(n, m, alpha, theta);
  return out;
}

template <class R>
long sample_decrement(long n, const R& alpha, const R& theta, Chooser<R>& ch) {
  return static_cast<long>(ch.choose(decrement_vector(n, alpha, theta))) + 1;
}

template <class R>
struct SeatingState {
  std::vector<long> counts;  // customers per table, in order of appearance
  std::vector<int> order;    // left-to-right position of each table (ordered mode)
  R alpha;
  R theta;

  long customers() const {
    long n = 0;
    for (long c : counts) n += c;
    return n;
  }
};

template <class R>
void validate_seating(const SeatingState<R>& s, bool ordered) {
  for (long c : s.counts)
    if (c < 1) throw std::invalid_argument("empty table");
  bool standard = s.alpha >= 0 && s.alpha <= 1 && s.theta > -s.alpha;
  bool degenerate_ordered = ordered && s.alpha > 0 && s.theta == 0;
  bool negative = s.alpha < 0 && s.theta > 0 && (s.theta / -s.alpha) >= R(static_cast<long>(s.counts.size()));
  if (!(standard || degenerate_ordered || negative)) throw std::invalid_argument("restaurant parameters out of range");
  if (ordered && s.order.size() != s.counts.size()) throw std::invalid_argument("order does not match tables");
  if (ordered && !is_permutation_of_1_to_L(s.order)) throw std::invalid_argument("order is not a permutation");
}

// Outcome of the next customer. Unordered: tables 0..L-1 then "new" at L.
// Ordered: tables 0..L-1 then a new table in gap g (0 = far left, L = far right)
// at index L + g.
template <class R>
std::vector<R> restaurant_next_distribution(const SeatingState<R>& s, bool ordered) {
  validate_seating(s, ordered);
  long L = static_cast<long>(s.counts.size());
  long n = s.customers();
  std::vector<R> out;
  if (n == 0) {
    out.push_back(R(1));
    return out;
  }
  R denom = R(n) + s.theta;
  for (long c : s.counts) out.push_back((R(c) - s.alpha) / denom);
  if (!ordered) {
    out.push_back((R(L) * s.alpha + s.theta) / denom);
    return out;
  }
  for (long g = 0; g < L; ++g) out.push_back(s.alpha / denom);
  out.push_back(s.theta / denom);
  return out;
}

}  // namespace ag
