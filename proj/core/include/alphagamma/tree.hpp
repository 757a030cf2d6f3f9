#pragma once

// Rooted leaf-labelled trees. The root vertex is implicit: the node returned by
// root() hangs below the root edge. A Tree stores children in a physical
// left-to-right order; LabelledTree keeps them in canonical (least-label) order.

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ag {

struct Node {
  int parent = -1;
  int label = 0;  // > 0 for leaves, 0 for branch points
  std::vector<int> kids;
};

// An insertable part: the edge directly above `node`, or the branch point `node`.
struct Part {
  int node = -1;
  bool vertex = false;
  friend bool operator==(const Part&, const Part&) = default;
};

struct Removal {
  int parent = -1;        // former parent of the removed leaf
  std::size_t pos = 0;    // its position among the parent's children
  bool contracted = false;
  int sibling = -1;       // node that replaced a contracted binary parent
};

class Tree {
 public:
  Tree() = default;
  static Tree leaf(int label);

  int root() const { return root_; }
  const Node& node(int id) const { return nodes_[id]; }
  bool is_leaf(int id) const { return nodes_[id].label > 0; }
  int leaf_count() const { return leaves_; }
  int capacity() const { return static_cast<int>(nodes_.size()); }
  bool has_label(int label) const;
  int leaf_node(int label) const;
  std::vector<int> labels() const;
  int max_label() const;
  std::size_t position(int u) const;  // index of u among its parent's children

  // Structural edits. All keep node ids of untouched nodes stable.
  int add_child(int v, std::size_t pos, int label);
  // Subdivide the edge above u with a new branch point carrying leaf `label`.
  // Returns {new branch point, new leaf}; the leaf is placed second.
  std::pair<int, int> split_edge(int u, int label);
  Removal remove_leaf(int label);
  void swap_labels(int i, int j);
  void relabel(const std::function<int(int)>& f);
  void relabel_above(int j);  // labels > j move down by one
  void reorder(int v, std::vector<int> kids);

  // Build from nested children lists; nodes are created in preorder.
  int new_leaf(int label);
  int new_branch(std::vector<int> kids);
  void set_root(int u);

  std::vector<int> subtree_min() const;  // indexed by node id
  std::vector<int> preorder() const;
  std::vector<int> leaves_below(int u) const;

 private:
  int alloc();
  void release(int id);
  void replace_child(int parent, int old_kid, int new_kid);

  std::vector<Node> nodes_;
  std::vector<int> free_;
  std::vector<int> leaf_of_;
  int root_ = -1;
  int leaves_ = 0;
};

// Children sorted ascending by least leaf label, recursively.
void sort_canonical(Tree& t);
// Encoding in canonical order: label | "(" tree ("," tree)+ ")".
std::string encode_nonplanar(const Tree& t);
// Parses the grammar, with optional "[p1,...]" order suffixes. The physical
// order of the result is the encoded planar order when suffixes are present.
Tree parse_tree(std::string_view text);

// Insertable parts in canonical preorder: the edge above each node, followed by
// the node itself when it is a branch point.
std::vector<Part> insertable_parts(const Tree& t);

// Node ids in canonical order of the children of v.
std::vector<int> canonical_kids(const Tree& t, int v, const std::vector<int>& mins);

class PartAddress {
 public:
  enum class Kind { LeafEdge, InternalEdge, RootEdge, BranchPoint };
  PartAddress() = default;
  PartAddress(Kind kind, std::vector<int> path) : kind_(kind), path_(std::move(path)) {}
  Kind kind() const { return kind_; }
  const std::vector<int>& path() const { return path_; }
  bool is_vertex() const { return kind_ == Kind::BranchPoint; }
  std::string str() const;
  friend bool operator==(const PartAddress&, const PartAddress&) = default;

 private:
  Kind kind_ = Kind::RootEdge;
  std::vector<int> path_;
};

PartAddress address_of(const Tree& t, Part p);
Part resolve(const Tree& t, const PartAddress& a);
PartAddress parse_address(const Tree& t, std::string_view text);

class LabelledTree {
 public:
  LabelledTree() = default;
  explicit LabelledTree(Tree t);
  static LabelledTree parse(std::string_view text);
  static LabelledTree single(int label) { return LabelledTree(Tree::leaf(label)); }

  const Tree& tree() const { return t_; }
  int size() const { return t_.leaf_count(); }
  std::string str() const { return encode_nonplanar(t_); }
  friend bool operator==(const LabelledTree& a, const LabelledTree& b) { return a.str() == b.str(); }

 private:
  Tree t_;
};

LabelledTree insert_leaf(const LabelledTree& t, const PartAddress& x, int j);
LabelledTree delete_leaf(const LabelledTree& t, int j, bool relabel);
LabelledTree delete_leaves_above(const LabelledTree& t, int k);  // keep labels <= k
LabelledTree swap_labels(const LabelledTree& t, int i, int j);

struct SpinalDecomposition {
  std::vector<int> line;                 // node ids from the leaf's parent up to the top node
  std::vector<std::vector<int>> bushes;  // per spine vertex, subtree roots off the spine
  std::vector<std::vector<int>> bush_labels(const Tree& t) const;
};

SpinalDecomposition spinal_decomposition(const Tree& t, int label);
inline SpinalDecomposition spinal_decomposition(const LabelledTree& t, int label) {
  return spinal_decomposition(t.tree(), label);
}

// Text of an unlabelled shape: leaves print as "*", children sorted by text.
std::string unlabelled_shape(const Tree& t);

}  // namespace ag
