#include "alphagamma/chains.hpp"
#include "alphagamma/exact.hpp"
#include "alphagamma/semiplanar.hpp"

#include "support.hpp"

#include <random>

using namespace ag;
using ag::test::Q;

namespace {

SemiPlanarTree S(std::string_view s) { return SemiPlanarTree::parse(s); }

// The 8-leaf example: v holds 1 and {2,5,7} as its leftmost pair, then {6,8}, then 3.
const char* kFigure = "((1,(2,5,7)[1],3,(6,8))[2,1],4)";

}  // namespace

TEST_CASE("encoding round-trips and physical order") {
  auto s = S(kFigure);
  CHECK(s.str() == kFigure);
  CHECK(s.shape() == LabelledTree::parse("((1,(2,5,7),3,(6,8)),4)"));
  int v = s.tree().node(s.tree().leaf_node(1)).parent;
  CHECK(s.order(v) == std::vector<int>{2, 1});
  CHECK(encode_planar(s.tree()) == "((1,(2,5,7),(6,8),3),4)");
  // the other order of the same shape
  CHECK(S("((1,(2,5,7)[1],3,(6,8))[1,2],4)") != s);
  CHECK_THROWS(S("((1,2,3,4)[1,1])"));
  CHECK_THROWS(S("((1,2,3,4)[1])"));
}

TEST_CASE("insertion into a semi-planar tree") {
  auto c = S("(1,2)");
  auto root = parse_address(c.tree(), "e:");
  CHECK(sp_insert_leaf(c, root, 0, 3).str() == "((1,2),3)");
  auto star = sp_insert_leaf(c, parse_address(c.tree(), "v:"), 1, 3);
  CHECK(star.str() == "(1,2,3)[1]");
  // c = 3 at l = 1: 4 lands left of 3; at l = 2 it goes rightmost
  auto v = parse_address(star.tree(), "v:");
  CHECK(encode_planar(sp_insert_leaf(star, v, 1, 4).tree()) == "(1,2,4,3)");
  CHECK(encode_planar(sp_insert_leaf(star, v, 2, 4).tree()) == "(1,2,3,4)");
  CHECK(sp_insert_leaf(star, v, 1, 4).str() == "(1,2,3,4)[2,1]");
  CHECK(sp_insert_leaf(star, v, 2, 4).str() == "(1,2,3,4)[1,2]");
  for (auto x : insertable_parts(star.tree())) {
    auto a = address_of(star.tree(), x);
    int locs = x.vertex ? 2 : 1;
    for (int l = x.vertex ? 1 : 0; l <= (x.vertex ? locs : 0); ++l)
      CHECK(sp_insert_leaf(star, a, l, 4).shape() == insert_leaf(star.shape(), a, 4));
  }
}

TEST_CASE("deletion in a semi-planar tree") {
  CHECK(sp_delete_leaf(S("((1,2),3)"), 3, true).str() == "(1,2)");
  // drop the minimum of the rightmost extra subtree at a c = 4 branch point
  auto s = S("(1,2,3,4)[2,1]");  // physical 1,2,4,3
  CHECK(sp_delete_leaf(s, 3, true).str() == "(1,2,3)[1]");
  CHECK(sp_delete_leaf(s, 3, false).str() == "(1,2,4)[1]");
}

TEST_CASE("label swaps and the semi-planar space") {
  auto star = S("(1,2,3)[1]");
  CHECK(sp_swap_labels(star, 2, 2).str() == encode_planar(star.tree()));
  CHECK(sp_swap_labels(star, 1, 2).is_semiplanar());
  CHECK_FALSE(sp_swap_labels(star, 2, 3).is_semiplanar());
}

TEST_CASE("local search") {
  auto f = S(kFigure);
  auto r = sp_local_search(f, 3);
  CHECK(r.a == 1);
  CHECK(r.b == 6);
  CHECK(r.i_tilde == 6);
  auto cherry = S("(1,2)");
  auto rc = sp_local_search(cherry, 1);
  CHECK(rc.a == 2);
  CHECK(rc.b == 0);
  CHECK(rc.i_tilde == 2);
  auto cat = S("(((1,2),3),4)");
  auto rcat = sp_local_search(cat, 1);
  CHECK(rcat.a == 2);
  CHECK(rcat.b == 3);
  CHECK(rcat.i_tilde == 3);
}

TEST_CASE("figure down-step") {
  auto down = semiplanar_down_step(S(kFigure), 3);
  CHECK(down.str() == "((1,(2,5,6)[1],(3,7))[1],4)");
  CHECK(down.size() == 7);
}

TEST_CASE("internal structures of the figure tree") {
  auto f = S(kFigure);
  Tree reduced = project_collapsed(f.shape(), 3).shape();
  auto at = [&](std::string_view a) { return internal_structure(f, 3, parse_address(reduced, a)); };
  CHECK(internal_labels(f.tree(), 3, parse_address(reduced, "v:")) == std::vector<int>{1, 2, 3, 6, 8});
  CHECK(at("v:").str() == "(1,2,3,(4,5))[2,1]");
  CHECK(at("e:2").str() == "(1,2,3)[1]");
  CHECK(at("e:").str() == "(1,2)");
  CHECK(at("e:1").str() == "1");
  CHECK(at("e:3").str() == "1");
}

TEST_CASE("grafting inverts extraction") {
  Rng rng(5);
  RngChooser ch(rng);
  Params<double> p{0.6, 0.25};
  for (int r = 0; r < 100; ++r) {
    auto s = grow_semiplanar(9, p, ch);
    for (int k = 1; k <= 4; ++k) {
      auto c = project_collapsed(s.shape(), k);
      LabelledTree shape(c.shape());
      std::vector<Tree> structures;
      for (auto x : insertable_parts(c.shape()))
        structures.push_back(internal_structure(s.tree(), k, address_of(c.shape(), x)));
      CHECK(SemiPlanarTree(graft(shape, c.label_sets(), structures)) == s);
    }
  }
}

TEST_CASE("order sampling") {
  Rng rng(1);
  RngChooser ch(rng);
  Params<double> p{0.5, 0.2};
  auto bin = LabelledTree::parse("((1,4),(2,3))");
  CHECK(sp_sample_orders(bin, p, ch).str() == "((1,4),(2,3))");
  auto star = LabelledTree::parse("(1,2,3)");
  CHECK(sp_sample_orders(star, p, ch).str() == "(1,2,3)[1]");

  auto law = exact_law([](Chooser<Rational>& c) {
    return sp_sample_orders(LabelledTree::parse("(1,2,3,4)"), Params<Rational>{Q(1), Q(1, 2)}, c).str();
  });
  CHECK(law.at("(1,2,3,4)[1,2]") == Q(1, 3));
  CHECK(law.at("(1,2,3,4)[2,1]") == Q(2, 3));

  for (int r = 0; r < 3; ++r) {
    auto t = grow_nonplanar(10, p, ch);
    CHECK(sp_project(sp_sample_orders(t, p, ch)) == t);
  }
}

TEST_CASE("down-steps stay semi-planar") {
  Rng rng(42);
  RngChooser ch(rng);
  Params<double> p{0.7, 0.3};
  auto s = grow_semiplanar(12, p, ch);
  for (int r = 0; r < 1000; ++r) {
    int i = uniform_leaf(s.size(), ch);
    auto ls = sp_local_search(s, i);
    auto swapped = sp_swap_labels(s, i, ls.i_tilde);
    auto down = planar_delete_leaf(swapped, ls.i_tilde, true);
    REQUIRE(down.is_semiplanar());
    CHECK(SemiPlanarTree::from_planar(down) == semiplanar_down_step(s, i));
    s = grow_step(SemiPlanarTree::from_planar(down), p, ch);
  }
}
