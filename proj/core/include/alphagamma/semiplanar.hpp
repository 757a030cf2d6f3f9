#pragma once

// Semi-planar trees. The physical child order of the underlying Tree is the
// left-to-right order; at every branch point the two subtrees with the smallest
// least labels occupy positions 0 and 1 and are stored sorted (their mutual
// order carries no information).

#include "alphagamma/chooser.hpp"
#include "alphagamma/numeric.hpp"
#include "alphagamma/tree.hpp"
#include "alphagamma/urn.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ag {

// True when every branch point has its two smallest-min subtrees leftmost.
bool has_leftmost_pair(const Tree& t);

// Grammar encoding with "[p1,...]" suffixes; positions of t_3.. among slots 3..c.
std::string encode_semiplanar(const Tree& t);
// Full planar encoding: children in physical order, no suffixes.
std::string encode_planar(const Tree& t);

// Fully ordered tree; may sit outside the semi-planar space.
class PlanarTree {
 public:
  PlanarTree() = default;
  explicit PlanarTree(Tree t) : t_(std::move(t)) {}
  const Tree& tree() const { return t_; }
  Tree& mutable_tree() { return t_; }
  bool is_semiplanar() const { return has_leftmost_pair(t_); }
  std::string str() const { return encode_planar(t_); }

 private:
  Tree t_;
};

class SemiPlanarTree {
 public:
  SemiPlanarTree() = default;
  // Throws std::invalid_argument unless the leftmost pair condition holds.
  explicit SemiPlanarTree(Tree t);
  static SemiPlanarTree parse(std::string_view text);  // missing suffix = identity order
  static SemiPlanarTree from_planar(const PlanarTree& p) { return SemiPlanarTree(p.tree()); }

  const Tree& tree() const { return t_; }
  int size() const { return t_.leaf_count(); }
  LabelledTree shape() const { return LabelledTree(t_); }
  std::string str() const { return encode_semiplanar(t_); }
  // sigma_v as a permutation of [c-2]; empty for binary branch points.
  std::vector<int> order(int v) const;
  friend bool operator==(const SemiPlanarTree& a, const SemiPlanarTree& b) { return a.str() == b.str(); }

 private:
  Tree t_;
};

// Insert leaf j at part x. Edges take l = 0; a branch point with c children
// takes l in [c-1] and j lands directly left of the subtree at slot l+2, or
// rightmost for l = c-1. Requires j to exceed the least labels of the two
// leftmost subtrees it would otherwise displace.
SemiPlanarTree sp_insert_leaf(const SemiPlanarTree& s, Part x, int l, int j);
SemiPlanarTree sp_insert_leaf(const SemiPlanarTree& s, const PartAddress& x, int l, int j);

PlanarTree planar_delete_leaf(const PlanarTree& p, int j, bool relabel);
// Throws std::domain_error if the result leaves the semi-planar space.
SemiPlanarTree sp_delete_leaf(const SemiPlanarTree& s, int j, bool relabel);

// Leaves swap labels; every subtree keeps its slot. Enforces admissibility.
PlanarTree sp_swap_labels(const SemiPlanarTree& s, int i, int j);
bool swap_admissible(const Tree& t, int i, int j);

struct LocalSearchResult {
  int a = 0;
  int b = 0;
  int i_tilde = 0;
};

LocalSearchResult sp_local_search(const SemiPlanarTree& s, int i);

inline LabelledTree sp_project(const SemiPlanarTree& s) { return s.shape(); }

// Arrange the children of v so that t_1, t_2 lead and t_l sits at slot sigma(l-2)+2.
void apply_order(Tree& t, int v, const std::vector<int>& sigma);

// Draw sigma_v for each multifurcating branch point from the (alpha, alpha-gamma)
// ordered restaurant, in canonical preorder of branch points.
template <class R>
SemiPlanarTree sp_sample_orders(const LabelledTree& t, const Params<R>& p, Chooser<R>& ch) {
  Tree u = t.tree();
  R theta = p.alpha - p.gamma;
  for (Part part : insertable_parts(u)) {
    if (!part.vertex) continue;
    std::size_t c = u.node(part.node).kids.size();
    if (c < 3) continue;
    if (!(p.alpha > 0)) throw std::invalid_argument("a multifurcating branch point needs alpha > 0");
    std::size_t L = c - 2;
    std::vector<int> line{1};  // table ids left to right
    for (std::size_t m = 1; m < L; ++m) {
      std::vector<R> w(m + 1, p.alpha);
      w[m] = theta;
      std::size_t g = ch.choose(w);
      line.insert(line.begin() + static_cast<std::ptrdiff_t>(g), static_cast<int>(m) + 1);
    }
    std::vector<int> sigma(L);
    for (std::size_t pos = 0; pos < L; ++pos) sigma[line[pos] - 1] = static_cast<int>(pos) + 1;
    apply_order(u, part.node, sigma);
  }
  return SemiPlanarTree(std::move(u));
}

// Restriction of t to `keep`, physical order retained, relabelled by rank.
Tree reduce_by_rank(const Tree& t, const std::vector<int>& keep);

// Label set of the internal structure of part x of the [k]-reduction of t, and
// the structure itself (rank-relabelled, physical order retained).
std::vector<int> internal_labels(const Tree& t, int k, const PartAddress& x);
Tree internal_structure(const Tree& t, int k, const PartAddress& x);
inline LabelledTree internal_structure(const LabelledTree& t, int k, const PartAddress& x) {
  return LabelledTree(internal_structure(t.tree(), k, x));
}
inline SemiPlanarTree internal_structure(const SemiPlanarTree& t, int k, const PartAddress& x) {
  return SemiPlanarTree(internal_structure(t.tree(), k, x));
}

// Inverse of internal-structure extraction. `sets` lists B_x per insertable part
// of `shape` (canonical order, leaf edges include their own leaf) and
// `structures` the matching rank-labelled trees. Physical orders are kept.
Tree graft(const LabelledTree& shape, const std::vector<std::vector<int>>& sets,
           const std::vector<Tree>& structures);

}  // namespace ag
