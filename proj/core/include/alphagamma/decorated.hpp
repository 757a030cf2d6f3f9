#pragma once

// Collapsed and decorated [k]-trees: a shape over [k] whose insertable parts
// carry label sets (collapsed) or masses (decorated).

#include "alphagamma/tree.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace ag {

bool is_external(const Tree& shape, Part p);

class DecoratedTree {
 public:
  DecoratedTree() = default;
  // Masses listed in insertable_parts() order of the canonical shape.
  DecoratedTree(const LabelledTree& shape, const std::vector<long>& masses);
  static DecoratedTree parse(std::string_view text);  // "<shape>|m1,m2,..."

  const Tree& shape() const { return shape_; }
  LabelledTree labelled_shape() const { return LabelledTree(shape_); }
  long mass(Part p) const { return p.vertex ? vm_[p.node] : em_[p.node]; }
  long reduced_mass(Part p) const { return mass(p) - (is_external(shape_, p) ? 1 : 0); }
  long total() const;
  int k() const { return shape_.leaf_count(); }
  std::vector<long> masses() const;
  std::string str() const;
  void validate() const;
  friend bool operator==(const DecoratedTree& a, const DecoratedTree& b) { return a.str() == b.str(); }

  // Mutable access for chain steps; callers restore canonical order with normalize().
  Tree& mutable_shape() { return shape_; }
  long& mass_ref(Part p);
  void normalize();

 private:
  Tree shape_;
  std::vector<long> em_, vm_;
};

class CollapsedTree {
 public:
  CollapsedTree() = default;
  CollapsedTree(const LabelledTree& shape, const std::vector<std::vector<int>>& sets);

  const Tree& shape() const { return shape_; }
  const std::vector<int>& labels(Part p) const { return p.vertex ? vb_[p.node] : eb_[p.node]; }
  std::vector<std::vector<int>> label_sets() const;  // insertable_parts() order
  int n() const;
  std::string str() const;  // "<shape>|{..};{..};..."
  friend bool operator==(const CollapsedTree& a, const CollapsedTree& b) { return a.str() == b.str(); }

 private:
  Tree shape_;
  std::vector<std::vector<int>> eb_, vb_;
};

// Shape of the tree spanned by [k] plus, for each label, the shape part it
// decorates, and the big-tree node behind each shape node.
struct Decoration {
  Tree shape;                 // canonical order
  std::vector<Part> part_of;  // indexed by label of the big tree (entry 0 unused)
  std::vector<int> shape_node_of;  // big-tree node id -> shape node id (or -1)
  std::vector<int> big_node_of;    // shape node id -> big-tree node id
};

Decoration decorate(const Tree& big, int k);

CollapsedTree project_collapsed(const LabelledTree& t, int k);
DecoratedTree collapse_to_decorated(const CollapsedTree& c);
DecoratedTree project_decorated(const Tree& t, int k);
inline DecoratedTree project_decorated(const LabelledTree& t, int k) { return project_decorated(t.tree(), k); }

// Decorated projection of a decorated [k']-tree onto [k], k <= k'. Every part of
// the larger shape lies inside a single part of the smaller one.
DecoratedTree project_decorated_down(const DecoratedTree& d, int k);

}  // namespace ag
