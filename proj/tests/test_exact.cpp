#include "alphagamma/exact.hpp"

#include "support.hpp"

using namespace ag;
using ag::test::Q;

namespace {

Rational double_factorial(int m) {
  Rational r = 1;
  for (int i = m; i > 1; i -= 2) r *= i;
  return r;
}

}  // namespace

TEST_CASE("state space sizes") {
  for (int n = 2; n <= 7; ++n) {
    CHECK(Rational(static_cast<long>(enumerate_space(SpaceKind::Binary, n).size())) == double_factorial(2 * n - 3));
    CHECK(count_space(SpaceKind::Binary, n) == double_factorial(2 * n - 3));
  }
  CHECK(enumerate_space(SpaceKind::NonPlanar, 3).size() == 4);
  CHECK(enumerate_space(SpaceKind::SemiPlanar, 3).size() == 4);
  for (auto kind : {SpaceKind::NonPlanar, SpaceKind::SemiPlanar})
    for (int n = 2; n <= 6; ++n)
      CHECK(Rational(static_cast<long>(enumerate_space(kind, n).size())) == count_space(kind, n));
  // semi-planar trees on [n] number (n-1)^(n-1)
  for (int n = 2; n <= 9; ++n) {
    Rational pw = 1;
    for (int i = 0; i < n - 1; ++i) pw *= n - 1;
    CHECK(count_space(SpaceKind::SemiPlanar, n) == pw);
  }
  CHECK_THROWS_AS(enumerate_space(SpaceKind::Binary, 8, 7), std::invalid_argument);
  CHECK_THROWS_AS(parse_space_kind("planar"), std::invalid_argument);
}

TEST_CASE("growth laws and their supports") {
  Params<Rational> p{Q(2, 3), Q(1, 3)};
  auto np = growth_law_nonplanar(5, p);
  CHECK(total(np) == 1);
  CHECK(np.size() == enumerate_space(SpaceKind::NonPlanar, 5).size());
  auto sp = growth_law_semiplanar(5, p);
  CHECK(sp.size() == enumerate_space(SpaceKind::SemiPlanar, 5).size());
  for (int k = 1; k <= 4; ++k)
    CHECK(max_residual(growth_law_decorated(k, 5, p), pushforward(np, nonplanar_to_decorated(k))) == 0);
}

TEST_CASE("stationarity of the growth law") {
  Params<Rational> p{Q(2, 3), Q(1, 3)};
  auto sp = growth_law_semiplanar(4, p);
  auto np = pushforward(sp, project_sp_to_nonplanar);
  auto ks = kernel_semiplanar(keys(sp), p);
  auto kn = kernel_nonplanar(keys(np), p);
  CHECK(is_stochastic(ks));
  CHECK(is_stochastic(kn));
  CHECK(check_stationarity(ks, sp) == 0);
  CHECK(check_stationarity(kn, np) == 0);
  for (int k = 2; k <= 3; ++k) {
    auto dec = pushforward(np, nonplanar_to_decorated(k));
    auto kd = kernel_decorated(keys(dec), p);
    CHECK(is_stochastic(kd));
    CHECK(check_stationarity(kd, dec) == 0);
  }
  // a perturbed law is not invariant
  auto bad = np;
  auto it = bad.begin();
  auto jt = std::next(it);
  it->second += Q(1, 100);
  jt->second -= Q(1, 100);
  CHECK(check_stationarity(kn, bad) > 0);
}

TEST_CASE("non-planar kernel factors through the semi-planar chain") {
  Params<Rational> p{Q(3, 4), Q(1, 4)};
  auto sp = growth_law_semiplanar(4, p);
  auto sps = keys(sp);
  auto nps = keys(pushforward(sp, project_sp_to_nonplanar));
  auto lift = kernel_sample_orders(nps, p);
  auto composite = compose(compose(lift, kernel_semiplanar(sps, p)), as_kernel(sps, project_sp_to_nonplanar));
  CHECK(max_residual(kernel_nonplanar(nps, p), composite) == 0);
  CHECK(max_residual(lift, condition_on(sp, project_sp_to_nonplanar)) == 0);
}

TEST_CASE("lumpability") {
  Params<Rational> p{Q(1, 2), Q(1, 2)};
  auto sp = growth_law_semiplanar(4, p);
  auto sps = keys(sp);
  auto ks = kernel_semiplanar(sps, p);
  auto lc = condition_on(sp, sp_to_collapsed(2));
  auto kc = compose(compose(lc, ks), as_kernel(sps, sp_to_collapsed(2)));
  CHECK(check_lumpability(kc, collapsed_to_decorated()).pass);
  CHECK(check_lumpability(kc, [](const std::string&) { return std::string("all"); }).pass);

  // lumping the non-planar chain by "is leaf 1 in a cherry" is not Markov
  auto np = pushforward(sp, project_sp_to_nonplanar);
  auto kn = kernel_nonplanar(keys(np), p);
  auto wrong = [](const std::string& s) {
    auto t = LabelledTree::parse(s);
    int v = t.tree().node(t.tree().leaf_node(1)).parent;
    return std::to_string(t.tree().leaves_below(v).size());
  };
  auto r = check_lumpability(kn, wrong);
  CHECK_FALSE(r.pass);
  CHECK(wrong(r.x1) == wrong(r.x2));
  CHECK_FALSE(r.block.empty());
}

TEST_CASE("intertwining") {
  Params<Rational> p{Q(1, 2), Q(1, 2)};
  auto sp = growth_law_semiplanar(4, p);
  auto sps = keys(sp);
  auto ks = kernel_semiplanar(sps, p);
  auto to_c = sp_to_collapsed(2);
  auto lc = condition_on(sp, to_c);
  auto kc = compose(compose(lc, ks), as_kernel(sps, to_c));
  auto rc = check_intertwining(lc, ks, to_c, kc);
  CHECK(rc.matrix_residual == 0);
  CHECK(rc.conditional_residual == 0);
  CHECK(rc.pass());

  auto id = [](const std::string& s) { return s; };
  auto ri = check_intertwining(as_kernel(sps, id), ks, id, ks);
  CHECK(ri.pass());

  // decorated level: the matrix identity holds, but the lift is not the
  // conditional law after a step (leaf n always sits in the part that grew)
  auto dec = pushforward(sp, sp_to_decorated(2));
  auto decs = keys(dec);
  auto rd = check_intertwining(kernel_lift_decorated(decs, p), ks, sp_to_decorated(2), kernel_decorated(decs, p));
  CHECK(rd.matrix_residual == 0);
  CHECK(rd.conditional_residual == Q(1, 2));
}

TEST_CASE("decorated chains are consistent across k") {
  Params<Rational> p{Q(2, 3), Q(1, 3)};
  auto np = growth_law_nonplanar(5, p);
  auto mu3 = pushforward(np, nonplanar_to_decorated(3));
  auto s3 = keys(mu3);
  auto s2 = keys(pushforward(np, nonplanar_to_decorated(2)));
  auto down = decorated_down(2);
  auto projected = compose(compose(condition_on(mu3, down), kernel_decorated(s3, p)), as_kernel(s3, down));
  CHECK(max_residual(projected, kernel_decorated(s2, p)) == 0);
}

TEST_CASE("down-step independence") {
  Params<Rational> p{Q(2, 3), Q(1, 3)};
  int n = 5;
  auto rep = check_downstep_independence(n, p);
  Rational d = Rational(n - 1) - p.alpha;
  std::map<int, Rational> mass;  // for fixed i the events partition the space
  for (const auto& e : rep.entries) {
    CHECK(e.factorization_residual == 0);
    CHECK(e.pushforward_residual == 0);
    mass[e.i] += e.probability;
    if (e.i == e.i_tilde)
      CHECK(e.probability == (Rational(e.i_tilde - 1) - p.alpha) / d);
    else if (e.i == 1 && e.i_tilde == 2)
      CHECK(e.probability == (1 - p.alpha) / d);  // the (1, 2) entry picks up a factor 1 - alpha
    else
      CHECK(e.probability == 1 / d);
  }
  CHECK(mass.size() == static_cast<std::size_t>(n));
  for (const auto& [i, m] : mass) CHECK(m == 1);
}

TEST_CASE("rational arithmetic is exact") {
  CHECK(parse_rational("3/6") == Q(1, 2));
  CHECK(parse_rational("0.25") == Q(1, 4));
  CHECK(to_string(Q(6, 4)) == "3/2");
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("x"));
  CHECK_THROWS(parse_params("1/2", "3/4"));
}
