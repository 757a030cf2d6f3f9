#pragma once

#include <gmpxx.h>

#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace ag {

using Rational = mpq_class;

// Accepts "p/q", an integer, or a finite decimal such as "0.75" (read exactly).
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

template <class R>
R convert(const Rational& q) {
  if constexpr (std::is_same_v<R, Rational>) {
    return q;
  } else {
    return static_cast<R>(q.get_d());
  }
}

template <class R>
bool is_zero(const R& x) {
  return x == 0;
}

template <class R>
R sum(const std::vector<R>& xs) {
  R s = 0;
  for (const auto& x : xs) s += x;
  return s;
}

// Rising factorial a (a+1) ... (a+m-1); equals Gamma(a+m)/Gamma(a).
template <class R>
R rising(const R& a, long m) {
  R out = 1;
  for (long i = 0; i < m; ++i) {
    R f = a + R(i);
    out *= f;
  }
  return out;
}

template <class R>
R binomial(long n, long m) {
  if (m < 0 || m > n) return R(0);
  R out = 1;
  for (long i = 1; i <= m; ++i) {
    out *= R(n - m + i);
    out /= R(i);
  }
  return out;
}

// Log versions for floating point, where the products above overflow once the
// counts reach a few hundred.
inline double log_rising(double a, long m) {
  if (m == 0) return 0;
  if (a > 0) return std::lgamma(a + static_cast<double>(m)) - std::lgamma(a);
  double out = 0;
  for (long i = 0; i < m; ++i) {
    double f = std::abs(a + static_cast<double>(i));
    if (f == 0) return -std::numeric_limits<double>::infinity();
    out += std::log(f);
  }
  return out;
}

inline double log_binomial(long n, long m) {
  return std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(m) + 1) -
         std::lgamma(static_cast<double>(n - m) + 1);
}

// The (alpha, gamma) pair shared by every process. Valid when 0 <= gamma <= alpha <= 1.
template <class R>
struct Params {
  R alpha;
  R gamma;
};

template <class R>
void validate(const Params<R>& p);

template <class R>
Params<R> convert_params(const Params<Rational>& p) {
  return {convert<R>(p.alpha), convert<R>(p.gamma)};
}

Params<Rational> parse_params(std::string_view alpha, std::string_view gamma);

}  // namespace ag
