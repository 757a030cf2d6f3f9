#include "alphagamma/chains.hpp"
#include "alphagamma/exact.hpp"

#include "support.hpp"

#include <numeric>

using namespace ag;
using ag::test::FixedChooser;
using ag::test::Q;

namespace {

const std::vector<Params<Rational>> kGrid{{Q(1, 2), Q(1, 2)}, {Q(2, 3), Q(1, 3)}, {Q(3, 4), Q(1, 4)},
                                          {Q(1), Q(1, 2)},    {Q(2, 5), Q(0)}};

std::vector<int> iota_from(int lo, int hi) {
  std::vector<int> v(hi - lo + 1);
  std::iota(v.begin(), v.end(), lo);
  return v;
}

}  // namespace

TEST_CASE("law of the replacement leaf") {
  CHECK(tilde_law(3, 3, Params<Rational>{Q(2, 3), Q(1, 3)}) == std::vector<Rational>{0, 0, 1});
  CHECK(tilde_law(4, 1, Params<Rational>{Q(1), Q(1, 2)}) == std::vector<Rational>{0, 0, Q(1, 3), Q(2, 3)});
  CHECK(tilde_law(4, 2, Params<Rational>{Q(1), Q(1, 2)}) == std::vector<Rational>{0, 0, Q(1, 3), Q(2, 3)});
  CHECK(tilde_law(3, 1, Params<Rational>{Q(1, 2), Q(1, 2)}) == std::vector<Rational>{0, 0, 1});
  for (const auto& p : kGrid)
    for (int c = 3; c <= 8; ++c)
      for (int j = 1; j <= c; ++j) {
        if (c > 3 && (c - 2) * p.alpha == p.gamma) continue;
        CHECK(sum(tilde_law(c, j, p)) == 1);
      }
  // the alternative display fails to normalise, e.g. c = 4, j = 3
  Params<Rational> p{Q(2, 3), Q(1, 3)};
  CHECK(sum(tilde_law(4, 3, p, TildeLaw::Printed)) != 1);
}

TEST_CASE("replacement law equals the marginal of the lifted down-step") {
  // On the c-star, draw an order from the restaurant and run the semi-planar
  // local search: the law of the deleted label is the oracle.
  for (const auto& p : kGrid) {
    if (!(p.alpha > 0)) continue;
    for (int c = 3; c <= 6; ++c) {
      if ((c - 2) * p.alpha == p.gamma && c > 3) continue;
      std::string star = "(";
      for (int l = 1; l <= c; ++l) star += std::to_string(l) + (l < c ? "," : ")");
      auto shape = LabelledTree::parse(star);
      for (int j = 1; j <= c; ++j) {
        auto law = exact_law([&](Chooser<Rational>& ch) {
          auto s = sp_sample_orders(shape, p, ch);
          return std::to_string(sp_local_search(s, j).i_tilde);
        });
        auto expect = tilde_law(c, j, p);
        for (int l = 1; l <= c; ++l) {
          auto it = law.find(std::to_string(l));
          Rational got = it == law.end() ? Rational(0) : it->second;
          CHECK_MESSAGE(got == expect[l - 1], "c=" << c << " j=" << j << " l=" << l);
        }
      }
    }
  }
}

TEST_CASE("generic down-up chains") {
  Params<Rational> u{Q(1, 2), Q(1, 2)};
  auto law = growth_law_nonplanar(4, u);
  auto k = exact_kernel(keys(law), [&](const std::string& s, Chooser<Rational>& ch) {
    return generic_downup_step(LabelledTree::parse(s), identity_transform, u, ch).str();
  });
  CHECK(is_stochastic(k));
  CHECK(check_stationarity(k, law) == 0);

  // binary swap transform at gamma = alpha is the non-planar chain on binary trees
  Params<Rational> a{Q(2, 3), Q(2, 3)};
  auto bin = keys(growth_law_nonplanar(4, a));
  auto kg = exact_kernel(bin, [&](const std::string& s, Chooser<Rational>& ch) {
    return generic_downup_step(LabelledTree::parse(s), binary_swap_transform, a, ch).str();
  });
  CHECK(max_residual(kg, kernel_nonplanar(bin, a)) == 0);

  Rng rng(9);
  RngChooser ch(rng);
  Params<double> p{0.6, 0.3};
  auto t = grow_nonplanar(9, p, ch);
  for (int r = 0; r < 200; ++r) {
    t = generic_downup_step(t, binary_swap_transform, p, ch);
    CHECK(t.size() == 9);
    t = nonplanar_chain_step(t, p, ch);
    CHECK(t.size() == 9);
  }
}

TEST_CASE("semi-planar down-step preserves internal and branch point growth") {
  Params<Rational> p{Q(2, 3), Q(1, 4)};
  SUBCASE("standard growth") {
    for (int n = 3; n <= 5; ++n) {
      ExactDist down;
      for (const auto& [s, pr] : growth_law_semiplanar(n, p))
        for (int i : iota_from(1, n)) down[semiplanar_down_step(SemiPlanarTree::parse(s), i).str()] += pr / n;
      CHECK(max_residual(down, growth_law_semiplanar(n - 1, p)) == 0);
    }
  }
  SUBCASE("internal growth") {
    for (int m = 2; m <= 4; ++m) {
      auto big = growth_law_semiplanar(m + 1, p, Variant::internal());
      ExactDist down;
      for (const auto& [s, pr] : big)
        for (int i : iota_from(2, m + 1))
          down[semiplanar_down_step(SemiPlanarTree::parse(s), i).str()] += pr / m;
      CHECK(max_residual(down, growth_law_semiplanar(m, p, Variant::internal())) == 0);
    }
  }
  SUBCASE("branch point growth") {
    for (int c : {2, 3}) {
      for (int n = 1; n <= 3; ++n) {
        auto v = Variant::branchpoint(c);
        auto big = growth_law_semiplanar(c + n, p, v);
        ExactDist down;
        for (const auto& [s, pr] : big)
          for (int i : iota_from(c + 1, c + n))
            down[semiplanar_down_step(SemiPlanarTree::parse(s), i).str()] += pr / n;
        CHECK(max_residual(down, growth_law_semiplanar(c + n - 1, p, v)) == 0);
      }
    }
  }
}

TEST_CASE("decorated down-step cases") {
  Params<Rational> p{Q(2, 3), Q(1, 4)};
  SUBCASE("branch point mass is decremented") {
    FixedChooser<Rational> pick_v(1);
    DownStepTrace tr;
    auto out = decorated_down_step(DecoratedTree::parse("(1,2)|0,2,1,1"), p, pick_v, &tr);
    CHECK(tr.tag == DecoratedCase::A3);
    CHECK(out.str() == "(1,2)|0,1,1,1");
  }
  SUBCASE("leaf edge of mass one under a binary branch point with mass") {
    auto d = DecoratedTree::parse("(1,2)|0,3,1,1");
    ExactDist law;
    Rational hit = 0;
    enumerate_paths(
        [&](Chooser<Rational>& ch) {
          DownStepTrace tr;
          auto out = decorated_down_step(d, p, ch, &tr);
          return tr.tag == DecoratedCase::B1 && tr.i == 1 ? out.str() : std::string("other");
        },
        [&](const std::string& s, const Rational& pr) {
          if (s != "other") {
            law[s] += pr;
            hit += pr;
          }
        });
    CHECK(hit == Q(1, 5));
    for (long y = 1; y <= 3; ++y) {
      std::string key = "(1,2)|0," + std::to_string(3 - y) + "," + std::to_string(y) + ",1";
      CHECK(law[key] / hit == decrement_pmf(3, y, p.alpha, Rational(p.alpha - p.gamma)));
    }
  }
  SUBCASE("empty branch point and edge: shape down-step") {
    FixedChooser<Rational> first_external(4);  // leaf edge 1
    DownStepTrace tr;
    auto d = DecoratedTree::parse("((1,2),3)|1,0,0,0,1,1,1");
    auto out = decorated_down_step(d, p, first_external, &tr);
    CHECK(tr.tag == DecoratedCase::B4);
    CHECK(out.k() == 3);
    CHECK(out.total() == 3);
  }
}

TEST_CASE("resampling a leaf") {
  Params<Rational> p{Q(2, 3), Q(1, 4)};
  auto law = exact_law([&](Chooser<Rational>& ch) { return resample_leaf(DecoratedTree::parse("(1,2)|0,1,1,1"), p, ch).str(); });
  CHECK(law == ExactDist{{"(1,2,3)|0,0,1,1,1", Q(1)}});
  auto law2 = exact_law([&](Chooser<Rational>& ch) { return resample_leaf(DecoratedTree::parse("(1,2)|0,0,2,1"), p, ch).str(); });
  CHECK(law2 == ExactDist{{"((1,3),2)|0,0,0,0,1,1,1", Q(1)}});
}

TEST_CASE("location of the next leaf inside a decorated tree") {
  // From the growth law alone: given the decorated [k]-tree, leaf k+1 sits in
  // part x with probability equal to its reduced mass over n - k.
  Params<Rational> p{Q(3, 4), Q(1, 3)};
  int n = 6;
  auto law = growth_law_nonplanar(n, p);
  for (int k = 2; k <= 3; ++k) {
    std::map<std::string, std::map<std::size_t, Rational>> joint;
    std::map<std::string, Rational> marg;
    for (const auto& [s, pr] : law) {
      auto t = LabelledTree::parse(s);
      auto dec = decorate(t.tree(), k);
      auto parts = insertable_parts(dec.shape);
      std::size_t q = std::find(parts.begin(), parts.end(), dec.part_of[k + 1]) - parts.begin();
      auto d = project_decorated(t, k);
      joint[d.str()][q] += pr;
      marg[d.str()] += pr;
    }
    for (const auto& [ds, row] : joint) {
      auto d = DecoratedTree::parse(ds);
      auto parts = insertable_parts(d.shape());
      for (std::size_t q = 0; q < parts.size(); ++q) {
        Rational got = row.count(q) ? row.at(q) / marg[ds] : Rational(0);
        CHECK(got == Q(d.reduced_mass(parts[q]), n - k));
      }
    }
  }
}

TEST_CASE("resampling pushes the decorated growth law up one level") {
  for (const auto& p : {Params<Rational>{Q(2, 3), Q(1, 3)}, Params<Rational>{Q(1, 2), Q(1, 2)}}) {
    for (int n = 3; n <= 6; ++n) {
      auto np = growth_law_nonplanar(n, p);
      for (int k = 2; k < n; ++k) {
        auto lower = pushforward(np, nonplanar_to_decorated(k - 1));
        auto kr = exact_kernel(keys(lower), [&](const std::string& s, Chooser<Rational>& ch) {
          return resample_leaf(DecoratedTree::parse(s), p, ch).str();
        });
        CHECK(max_residual(evolve(lower, kr), pushforward(np, nonplanar_to_decorated(k))) == 0);
      }
    }
  }
}

TEST_CASE("lifting decorated trees") {
  Params<Rational> p{Q(2, 3), Q(1, 4)};
  // k = n: nothing to distribute, only branch orders are drawn
  auto shape = LabelledTree::parse("((1,2,3,4),5)");
  auto d = project_decorated(shape, 5);
  auto lifted = exact_law([&](Chooser<Rational>& ch) { return lift_decorated(d, p, ch).str(); });
  auto orders = exact_law([&](Chooser<Rational>& ch) { return sp_sample_orders(shape, p, ch).str(); });
  CHECK(max_residual(lifted, orders) == 0);

  Rng rng(17);
  RngChooser ch(rng);
  Params<double> pd{0.55, 0.3};
  for (int r = 0; r < 200; ++r) {
    auto t = grow_nonplanar(12, pd, ch);
    int k = 1 + r % 5;
    auto dd = project_decorated(t, k);
    CHECK(project_decorated(lift_decorated(dd, pd, ch).shape(), k) == dd);
  }
}

TEST_CASE("decorated chain keeps shape size and mass") {
  Rng rng(23);
  RngChooser ch(rng);
  Params<double> p{0.5, 0.5};
  auto d = grow_decorated(LabelledTree::parse("(1,2)"), 40, p, ch);
  for (int r = 0; r < 2000; ++r) {
    d = decorated_chain_step(d, p, ch);
    REQUIRE(d.total() == 40);
    REQUIRE(d.k() == 2);
    CHECK_NOTHROW(d.validate());
  }
  CHECK_THROWS_AS(decorated_chain_step(DecoratedTree::parse("(1,2)|0,0,1,1"), p, ch), std::invalid_argument);
}

TEST_CASE("decorated chain handles large masses") {
  // Hitting leaf 2 empties its edge and forces a decrement draw on 796 items.
  Params<double> p{0.7, 0.4};
  auto d = DecoratedTree::parse("(1,2)|796,0,203,1");
  Rng rng(557);
  RngChooser ch(rng);
  for (int s = 0; s < 20000; ++s) {
    auto next = decorated_chain_step(d, p, ch);
    CHECK_EQ(next.total(), 1000);
  }
}
