#include "alphagamma/urn.hpp"

#include "support.hpp"

#include <algorithm>
#include <map>
#include <numeric>

using namespace ag;
using ag::test::Q;

TEST_CASE("dirichlet-multinomial small cases") {
  UrnWeights<Rational> w({Q(1), Q(1)});
  CHECK(dirmult_pmf(1, w, {1, 0}) == Q(1, 2));
  UrnWeights<Rational> w2({Q(1, 2), Q(1)});
  CHECK(dirmult_pmf(2, w2, {2, 0}) == Q(1, 5));
  CHECK(dirmult_pmf(2, w2, {1, 1}) == Q(4, 15));
  CHECK(dirmult_pmf(2, w2, {0, 2}) == Q(8, 15));
}

TEST_CASE("dirichlet-multinomial matches the sequential urn") {
  UrnWeights<Rational> w({Q(1, 3), Q(2, 3), Q(0), Q(1, 5)});
  std::map<std::vector<long>, Rational> law;
  enumerate_paths(
      [&](Chooser<Rational>& ch) {
        auto draws = polya_urn_draws(4, w, ch);
        std::vector<long> c(4, 0);
        for (auto d : draws) ++c[d];
        return c;
      },
      [&](const std::vector<long>& c, const Rational& p) { law[c] += p; });
  for (const auto& [c, p] : law) CHECK(p == dirmult_pmf(4, w, c));
  CHECK(law.size() == 15);  // colour 3 has zero weight: C(6,2) compositions on 3 colours
}

TEST_CASE("beta-binomial is the two-colour case") {
  auto v = betabin_vector(5, Q(2, 3), Q(1, 4));
  UrnWeights<Rational> w({Q(2, 3), Q(1, 4)});
  for (long m = 0; m <= 5; ++m) CHECK(v[m] == dirmult_pmf(5, w, {m, 5 - m}));
  CHECK(sum(v) == 1);
}

TEST_CASE("ordered restaurant permutation law") {
  CHECK(ocrp_permutation_pmf({1, 2}, Q(1, 2), Q(1, 2)) == Q(1, 2));
  CHECK(ocrp_permutation_pmf({2, 1}, Q(1, 2), Q(1, 2)) == Q(1, 2));
  CHECK(ocrp_permutation_pmf({2, 1}, Q(1), Q(2)) == Q(1, 3));
  CHECK(ocrp_permutation_pmf({1, 2}, Q(1), Q(2)) == Q(2, 3));
  // theta = 0: only arrangements with a single record survive
  CHECK(ocrp_permutation_pmf({3, 2, 1}, Q(1, 2), Q(0)) == Q(1, 2));
  CHECK(ocrp_permutation_pmf({3, 1, 2}, Q(1, 2), Q(0)) == Q(1, 2));
  CHECK(ocrp_permutation_pmf({1, 2, 3}, Q(1, 2), Q(0)) == Q(0));
  CHECK_THROWS_AS(ocrp_permutation_pmf({1, 1}, Q(1, 2), Q(1)), std::invalid_argument);
  CHECK(record_count({2, 1, 3, 5, 4}) == 3);
}

TEST_CASE("decrement matrix") {
  CHECK(decrement_pmf(2, 1, Q(1, 2), Q(1, 2)) == Q(2, 3));
  CHECK(decrement_pmf(2, 2, Q(1, 2), Q(1, 2)) == Q(1, 3));
  CHECK(decrement_pmf(1, 1, Q(1, 3), Q(1)) == 1);
  CHECK_THROWS_AS(decrement_pmf(3, 4, Q(1, 2), Q(1, 2)), std::invalid_argument);
}

TEST_CASE("restaurant next-customer laws") {
  SeatingState<Rational> s{{2, 1}, {1, 2}, Q(1, 2), Q(1, 2)};
  auto plain = restaurant_next_distribution(s, false);
  REQUIRE(plain.size() == 3);
  CHECK(plain[0] == Q(3, 7));
  CHECK(plain[1] == Q(1, 7));
  CHECK(plain[2] == Q(3, 7));
  auto ordered = restaurant_next_distribution(s, true);
  REQUIRE(ordered.size() == 5);
  CHECK(ordered[2] == Q(1, 7));
  CHECK(ordered[3] == Q(1, 7));
  CHECK(ordered[4] == Q(1, 7));
  CHECK(sum(ordered) == 1);
  SeatingState<Rational> bad{{1}, {1}, Q(1, 2), Q(-1)};
  CHECK_THROWS_AS(restaurant_next_distribution(bad, false), std::invalid_argument);
}

TEST_CASE("first customer and the split of a new table") {
  SeatingState<Rational> empty{{}, {}, Q(1, 3), Q(1, 5)};
  CHECK(restaurant_next_distribution(empty, true) == std::vector<Rational>{Q(1)});
  // two tables: given a new table, left / middle / right in ratio alpha : alpha : theta
  Rational a = Q(1, 3), th = Q(1, 5);
  SeatingState<Rational> s{{1, 2}, {2, 1}, a, th};
  auto d = restaurant_next_distribution(s, true);
  Rational fresh = d[2] + d[3] + d[4];
  CHECK(d[2] / fresh == a / (2 * a + th));
  CHECK(d[3] / fresh == a / (2 * a + th));
  CHECK(d[4] / fresh == th / (2 * a + th));
}

TEST_CASE("primitive laws sum to one") {
  for (long n = 1; n <= 50; ++n) CHECK(sum(decrement_vector(n, Q(2, 7), Q(3, 5))) == 1);
  UrnWeights<Rational> w({Q(1, 2), Q(0), Q(3, 4), Q(2)});
  for (long n = 0; n <= 12; ++n) CHECK(sum(dirmult_vector(n, w)) == 1);
  for (int L = 1; L <= 6; ++L) {
    std::vector<int> s(L);
    std::iota(s.begin(), s.end(), 1);
    Rational total = 0;
    do total += ocrp_permutation_pmf(s, Q(2, 3), Q(1, 4));
    while (std::next_permutation(s.begin(), s.end()));
    CHECK(total == 1);
  }
}

TEST_CASE("floating point laws stay finite for large counts") {
  for (long n : {10L, 800L, 3000L}) {
    auto q = decrement_vector(n, 0.4, 0.4);
    auto b = betabin_vector(n, 0.7, 0.3);
    double sq = std::accumulate(q.begin(), q.end(), 0.0);
    double sb = std::accumulate(b.begin(), b.end(), 0.0);
    CHECK(sq == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sb == doctest::Approx(1.0).epsilon(1e-9));
  }
  for (long m = 1; m <= 12; ++m)
    CHECK(decrement_pmf(12L, m, 0.7, 0.3) ==
          doctest::Approx(to_double(decrement_pmf(12L, m, Q(7, 10), Q(3, 10)))).epsilon(1e-12));
  CHECK(dirmult_pmf(5L, UrnWeights<double>({0.5, 0.0, 1.0}), {2, 0, 3}) ==
        doctest::Approx(to_double(dirmult_pmf(5L, UrnWeights<Rational>({Q(1, 2), Q(0), Q(1)}), {2, 0, 3}))));
  CHECK(dirmult_pmf(5L, UrnWeights<double>({0.5, 0.0, 1.0}), {2, 1, 2}) == 0.0);
}
