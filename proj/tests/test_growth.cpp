#include "alphagamma/exact.hpp"
#include "alphagamma/growth.hpp"

#include "support.hpp"

using namespace ag;
using ag::test::Q;

namespace {

template <class R>
std::vector<R> weights_of(const std::vector<Insertion<R>>& o) {
  return option_weights(o);
}

}  // namespace

TEST_CASE("cherry weight table") {
  Params<Rational> p{Q(3, 5), Q(1, 5)};
  auto t = LabelledTree::parse("(1,2)");
  // root edge, branch point, leaf 1, leaf 2
  auto w = weights_of(nonplanar_options(t.tree(), p));
  CHECK(w == std::vector<Rational>{Q(1, 5), Q(2, 5), Q(2, 5), Q(2, 5)});
  CHECK(sum(w) == 2 - p.alpha);

  Params<Rational> u{Q(1, 2), Q(1, 2)};
  auto wu = weights_of(nonplanar_options(t.tree(), u));
  CHECK(wu == std::vector<Rational>{Q(1, 2), Q(0), Q(1, 2), Q(1, 2)});
}

TEST_CASE("semi-planar locations at a four-child branch point") {
  Params<Rational> p{Q(3, 5), Q(1, 5)};
  auto s = SemiPlanarTree::parse("(1,2,3,4)[1,2]");
  std::vector<Rational> bp;
  for (const auto& o : semiplanar_options(s.tree(), p))
    if (o.part.vertex) bp.push_back(o.weight);
  CHECK(bp == std::vector<Rational>{Q(3, 5), Q(3, 5), Q(2, 5)});
}

TEST_CASE("first steps") {
  Params<Rational> p{Q(2, 3), Q(1, 3)};
  auto law = exact_law([&](Chooser<Rational>& ch) { return grow_step(LabelledTree::single(1), p, ch).str(); });
  CHECK(law == ExactDist{{"(1,2)", Q(1)}});
  // internal growth: the only part of the starting tree has weight gamma
  auto start = initial_tree(Variant::internal());
  auto opts = nonplanar_options(start.tree(), p, Variant::internal());
  REQUIRE(opts.size() == 1);
  CHECK(opts[0].weight == p.gamma);
  auto bp = initial_tree(Variant::branchpoint(3));
  CHECK(bp.str() == "(1,2,3)");
  for (const auto& o : nonplanar_options(bp.tree(), p, Variant::branchpoint(3)))
    CHECK(o.weight == (o.part.vertex ? 2 * p.alpha - p.gamma : Q(0)));
}

TEST_CASE("decorated growth step probabilities") {
  Params<Rational> p{Q(2, 3), Q(1, 4)};
  auto d = DecoratedTree::parse("(1,2)|2,3,1,1");  // n = 7
  auto w = decorated_weights(d, p);
  Rational total = sum(w);
  CHECK(total == Rational(7) - p.alpha);
  CHECK(w[1] / total == (3 + p.alpha - p.gamma) / (7 - p.alpha));
  CHECK(w[0] == 2 + p.gamma);
  CHECK(w[2] == 1 - p.alpha);
}

TEST_CASE("uniform binary trees") {
  Params<Rational> u{Q(1, 2), Q(1, 2)};
  auto l4 = growth_law_nonplanar(4, u);
  CHECK(l4.size() == 15);
  for (const auto& [t, pr] : l4) CHECK(pr == Q(1, 15));
  auto l5 = growth_law_nonplanar(5, u);
  CHECK(l5.size() == 105);
  for (const auto& [t, pr] : l5) CHECK(pr == Q(1, 105));
  CHECK(growth_law_nonplanar(2, u) == ExactDist{{"(1,2)", Q(1)}});
}

TEST_CASE("semi-planar growth projects to non-planar growth") {
  for (auto p : {Params<Rational>{Q(2, 3), Q(1, 3)}, Params<Rational>{Q(2, 5), Q(0)}, Params<Rational>{Q(1, 4), Q(1, 8)}}) {
    for (int n = 2; n <= 5; ++n) {
      auto sp = growth_law_semiplanar(n, p);
      CHECK(total(sp) == 1);
      CHECK(max_residual(pushforward(sp, project_sp_to_nonplanar), growth_law_nonplanar(n, p)) == 0);
    }
  }
}

TEST_CASE("weighted start: insertion bookkeeping") {
  // 3-star with arbitrary weights: root edge, three leaf edges, two gaps
  Params<Rational> p{Q(3, 5), Q(1, 5)};
  auto s = SemiPlanarTree::parse("(1,2,3)[1]");
  const Tree& tr = s.tree();
  int v = tr.root();
  std::vector<Rational> edge(tr.capacity(), Q(0));
  edge[tr.root()] = Q(1, 7);
  edge[tr.leaf_node(1)] = Q(1, 11);
  edge[tr.leaf_node(2)] = Q(1, 13);
  edge[tr.leaf_node(3)] = Q(1, 17);
  std::vector<std::vector<Rational>> gaps(tr.capacity());
  gaps[v] = {Q(1, 19), Q(1, 23)};
  WeightedTree<Rational> w0(s, edge, gaps);

  SUBCASE("into the branch point at location 2") {
    auto w = w0;
    Insertion<Rational> o{Part{v, true}, 2, gaps[v][1]};
    w.insert(o, 4, p);
    CHECK(encode_planar(w.tree().tree()) == "(1,2,3,4)");
    const Tree& t = w.tree().tree();
    CHECK(w.gaps(t.root()) == std::vector<Rational>{Q(1, 19), p.alpha, Q(1, 23)});
    CHECK(w.edge(t.leaf_node(4)) == 1 - p.alpha);
    CHECK(w.edge(t.leaf_node(3)) == Q(1, 17));
    CHECK(w.edge(t.root()) == Q(1, 7));
  }
  SUBCASE("into the root edge") {
    auto w = w0;
    w.insert({Part{tr.root(), false}, 0, Q(1, 7)}, 4, p);
    const Tree& t = w.tree().tree();
    CHECK(w.edge(t.root()) == p.gamma);
    CHECK(w.gaps(t.root()) == std::vector<Rational>{p.alpha - p.gamma});
    CHECK(w.edge(t.leaf_node(4)) == 1 - p.alpha);
    int old = t.node(t.leaf_node(1)).parent;
    CHECK(w.edge(old) == Q(1, 7));
    CHECK(w.gaps(old) == std::vector<Rational>{Q(1, 19), Q(1, 23)});
    CHECK(w.edge(t.leaf_node(2)) == Q(1, 13));
  }
}

TEST_CASE("weighted start reproduces the standard processes") {
  Params<Rational> p{Q(2, 3), Q(1, 4)};
  auto start = WeightedTree<Rational>::with_rules(SemiPlanarTree::parse("1"), p, Variant::standard());
  CHECK(max_residual(growth_law_weighted(start, 4, p), growth_law_semiplanar(5, p)) == 0);
  for (int c : {2, 3}) {
    auto v = Variant::branchpoint(c);
    Rng rng(0);
    RngChooser dummy(rng);
    auto star = initial_semiplanar(v, Params<double>{0.5, 0.25}, dummy);  // c <= 3: orders are trivial
    auto w = WeightedTree<Rational>::with_rules(star, p, v);
    for (int n = c; n <= 4; ++n)
      CHECK(max_residual(growth_law_weighted(w, n - c, p), growth_law_semiplanar(n, p, v)) == 0);
  }
}
