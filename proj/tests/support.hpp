#pragma once

#include "alphagamma/chooser.hpp"
#include "alphagamma/numeric.hpp"

#include <doctest.h>

#include <string>

namespace ag::test {

inline Rational Q(long p, long q = 1) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}
inline Params<Rational> P(long ap, long aq, long gp, long gq) { return {Q(ap, aq), Q(gp, gq)}; }

// Chooser that takes a scripted index first and afterwards the first option
// with positive weight.
template <class R>
class FixedChooser final : public Chooser<R> {
 public:
  explicit FixedChooser(std::size_t i) : i_(i) {}
  std::size_t choose(const std::vector<R>& w) override {
    if (!used_) {
      used_ = true;
      REQUIRE(i_ < w.size());
      return i_;
    }
    for (std::size_t j = 0; j < w.size(); ++j)
      if (w[j] > 0) return j;
    FAIL("no positive weight");
    return 0;
  }

 private:
  std::size_t i_;
  bool used_ = false;
};

}  // namespace ag::test

namespace doctest {
template <>
struct StringMaker<ag::Rational> {
  static String convert(const ag::Rational& q) { return ag::to_string(q).c_str(); }
};
}  // namespace doctest
