#include "alphagamma/semiplanar.hpp"

#include "alphagamma/decorated.hpp"

#include <algorithm>
#include <functional>

namespace ag {

namespace {

void sort_pair(Tree& t, int v, const std::vector<int>& mins) {
  auto kids = t.node(v).kids;
  if (mins[kids[1]] < mins[kids[0]]) {
    std::swap(kids[0], kids[1]);
    t.reorder(v, std::move(kids));
  }
}

void encode_sp_rec(const Tree& t, int u, const std::vector<int>& mins, std::string& out) {
  const Node& n = t.node(u);
  if (n.label > 0) {
    out += std::to_string(n.label);
    return;
  }
  auto ranked = canonical_kids(t, u, mins);
  out += '(';
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    if (i) out += ',';
    encode_sp_rec(t, ranked[i], mins, out);
  }
  out += ')';
  if (ranked.size() >= 3) {
    out += '[';
    for (std::size_t l = 2; l < ranked.size(); ++l) {
      if (l > 2) out += ',';
      out += std::to_string(t.position(ranked[l]) - 1);
    }
    out += ']';
  }
}

void encode_planar_rec(const Tree& t, int u, std::string& out) {
  const Node& n = t.node(u);
  if (n.label > 0) {
    out += std::to_string(n.label);
    return;
  }
  out += '(';
  for (std::size_t i = 0; i < n.kids.size(); ++i) {
    if (i) out += ',';
    encode_planar_rec(t, n.kids[i], out);
  }
  out += ')';
}

int parent_of_leaf(const Tree& t, int i) {
  int p = t.node(t.leaf_node(i)).parent;
  if (p < 0) throw std::invalid_argument("leaf " + std::to_string(i) + " has no parent branch point");
  return p;
}

// Minimum over the second spinal bush from leaf i, or 0 if there is none.
int second_bush_min(const Tree& t, int v, const std::vector<int>& mins) {
  int g = t.node(v).parent;
  if (g < 0) return 0;
  int m = 0;
  for (int kid : t.node(g).kids)
    if (kid != v && (m == 0 || mins[kid] < m)) m = mins[kid];
  return m;
}

}  // namespace

bool has_leftmost_pair(const Tree& t) {
  if (t.root() < 0) return true;
  auto mins = t.subtree_min();
  for (int u : t.preorder()) {
    const auto& kids = t.node(u).kids;
    if (kids.size() < 3) continue;
    int hi = std::max(mins[kids[0]], mins[kids[1]]);
    for (std::size_t p = 2; p < kids.size(); ++p)
      if (mins[kids[p]] < hi) return false;
  }
  return true;
}

std::string encode_semiplanar(const Tree& t) {
  std::string out;
  if (t.root() >= 0) encode_sp_rec(t, t.root(), t.subtree_min(), out);
  return out;
}

std::string encode_planar(const Tree& t) {
  std::string out;
  if (t.root() >= 0) encode_planar_rec(t, t.root(), out);
  return out;
}

SemiPlanarTree::SemiPlanarTree(Tree t) : t_(std::move(t)) {
  if (!has_leftmost_pair(t_)) throw std::invalid_argument("not a semi-planar tree: " + encode_planar(t_));
  auto mins = t_.subtree_min();
  for (int u : t_.preorder())
    if (!t_.is_leaf(u)) sort_pair(t_, u, mins);
}

SemiPlanarTree SemiPlanarTree::parse(std::string_view text) { return SemiPlanarTree(parse_tree(text)); }

std::vector<int> SemiPlanarTree::order(int v) const {
  auto ranked = canonical_kids(t_, v, t_.subtree_min());
  std::vector<int> sigma;
  for (std::size_t l = 2; l < ranked.size(); ++l) sigma.push_back(static_cast<int>(t_.position(ranked[l])) - 1);
  return sigma;
}

void apply_order(Tree& t, int v, const std::vector<int>& sigma) {
  auto ranked = canonical_kids(t, v, t.subtree_min());
  std::size_t c = ranked.size();
  if (sigma.size() + 2 != c) throw std::invalid_argument("order has the wrong length");
  std::vector<int> phys(c, -1);
  phys[0] = ranked[0];
  phys[1] = ranked[1];
  for (std::size_t l = 2; l < c; ++l) {
    int p = sigma[l - 2];
    if (p < 1 || p > static_cast<int>(c) - 2 || phys[p + 1] >= 0) throw std::invalid_argument("order is not a permutation");
    phys[p + 1] = ranked[l];
  }
  t.reorder(v, std::move(phys));
}

SemiPlanarTree sp_insert_leaf(const SemiPlanarTree& s, Part x, int l, int j) {
  Tree t = s.tree();
  if (x.vertex) {
    int c = static_cast<int>(t.node(x.node).kids.size());
    if (l < 1 || l > c - 1) throw std::out_of_range("insertion location out of range");
    t.add_child(x.node, static_cast<std::size_t>(l) + 1, j);
  } else {
    if (l != 0) throw std::out_of_range("edge insertions use location 0");
    auto [w, leaf] = t.split_edge(x.node, j);
    (void)leaf;
    sort_pair(t, w, t.subtree_min());
  }
  return SemiPlanarTree(std::move(t));
}

SemiPlanarTree sp_insert_leaf(const SemiPlanarTree& s, const PartAddress& x, int l, int j) {
  return sp_insert_leaf(s, resolve(s.tree(), x), l, j);
}

PlanarTree planar_delete_leaf(const PlanarTree& p, int j, bool relabel) {
  Tree t = p.tree();
  t.remove_leaf(j);
  if (relabel) t.relabel_above(j);
  return PlanarTree(std::move(t));
}

SemiPlanarTree sp_delete_leaf(const SemiPlanarTree& s, int j, bool relabel) {
  PlanarTree p = planar_delete_leaf(PlanarTree(s.tree()), j, relabel);
  if (!p.is_semiplanar()) throw std::domain_error("deletion leaves the semi-planar space: " + p.str());
  return SemiPlanarTree(p.tree());
}

bool swap_admissible(const Tree& t, int i, int j) {
  if (!t.has_label(i) || !t.has_label(j)) return false;
  if (i == j) return true;
  int v = parent_of_leaf(t, i);
  auto mins = t.subtree_min();
  for (int kid : t.node(v).kids)
    if (mins[kid] == j) return true;
  return t.node(v).kids.size() == 2 && second_bush_min(t, v, mins) == j;
}

PlanarTree sp_swap_labels(const SemiPlanarTree& s, int i, int j) {
  if (!swap_admissible(s.tree(), i, j))
    throw std::invalid_argument("inadmissible swap of " + std::to_string(i) + " and " + std::to_string(j));
  Tree t = s.tree();
  t.swap_labels(i, j);
  return PlanarTree(std::move(t));
}

LocalSearchResult sp_local_search(const SemiPlanarTree& s, int i) {
  const Tree& t = s.tree();
  int v = parent_of_leaf(t, i);
  auto mins = t.subtree_min();
  const auto& kids = t.node(v).kids;
  LocalSearchResult r;
  if (kids.size() == 2) {
    int sib = kids[0] == t.leaf_node(i) ? kids[1] : kids[0];
    r.a = mins[sib];
    r.b = second_bush_min(t, v, mins);
  } else {
    std::size_t pos = t.position(t.leaf_node(i));
    if (pos <= 1) {
      r.a = mins[kids[1 - pos]];
      r.b = mins[kids[2]];
    } else {
      r.a = mins[kids[0]];
      r.b = mins[kids[pos - 1]];
    }
  }
  r.i_tilde = std::max({i, r.a, r.b});
  return r;
}

Tree reduce_by_rank(const Tree& t, const std::vector<int>& keep) {
  std::vector<int> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  Tree u = t;
  auto labels = u.labels();
  for (auto it = labels.rbegin(); it != labels.rend(); ++it)
    if (!std::binary_search(sorted.begin(), sorted.end(), *it)) u.remove_leaf(*it);
  if (u.leaf_count() != static_cast<int>(sorted.size())) throw std::invalid_argument("labels to keep are missing");
  u.relabel([&](int l) { return static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), l) - sorted.begin()) + 1; });
  return u;
}

std::vector<int> internal_labels(const Tree& t, int k, const PartAddress& x) {
  Decoration d = decorate(t, k);
  Part p = resolve(d.shape, x);
  std::vector<int> out;
  for (int l : t.labels())
    if (d.part_of[l] == p) out.push_back(l);
  auto mins = d.shape.subtree_min();
  if (p.vertex) {
    for (int kid : d.shape.node(p.node).kids) out.push_back(mins[kid]);
  } else if (!d.shape.is_leaf(p.node)) {
    out.push_back(mins[p.node]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Tree internal_structure(const Tree& t, int k, const PartAddress& x) {
  return reduce_by_rank(t, internal_labels(t, k, x));
}

Tree graft(const LabelledTree& shape, const std::vector<std::vector<int>>& sets,
           const std::vector<Tree>& structures) {
  const Tree& s = shape.tree();
  auto parts = insertable_parts(s);
  if (sets.size() != parts.size() || structures.size() != parts.size())
    throw std::invalid_argument("one label set and structure per insertable part is required");
  auto mins = s.subtree_min();
  auto index_of = [&](Part p) {
    return static_cast<std::size_t>(std::find(parts.begin(), parts.end(), p) - parts.begin());
  };
  Tree big;

  // Copies `src` with rank r relabelled to labels[r-1]; ranks for which hole(r)
  // returns a node id are replaced by that subtree.
  std::function<int(const Tree&, int, const std::vector<int>&, const std::function<int(int)>&)> copy =
      [&](const Tree& src, int u, const std::vector<int>& labels, const std::function<int(int)>& hole) -> int {
    const Node& n = src.node(u);
    if (n.label > 0) {
      int h = hole(n.label);
      return h >= 0 ? h : big.new_leaf(labels[n.label - 1]);
    }
    std::vector<int> kids;
    for (int c : n.kids) kids.push_back(copy(src, c, labels, hole));
    return big.new_branch(std::move(kids));
  };
  auto checked = [&](std::size_t idx, std::vector<int> labels) {
    std::sort(labels.begin(), labels.end());
    if (structures[idx].leaf_count() != static_cast<int>(labels.size()))
      throw std::invalid_argument("internal structure size does not match its label set");
    return labels;
  };

  std::function<int(int)> build_edge, build_vertex;
  build_vertex = [&](int v) -> int {
    std::size_t idx = index_of({v, true});
    auto kids = canonical_kids(s, v, mins);
    auto labels = sets[idx];
    for (int kid : kids) labels.push_back(mins[kid]);
    labels = checked(idx, labels);
    const Tree& st = structures[idx];
    return copy(st, st.root(), labels, [&](int r) {
      return r <= static_cast<int>(kids.size()) ? build_edge(kids[r - 1]) : -1;
    });
  };
  build_edge = [&](int u) -> int {
    std::size_t idx = index_of({u, false});
    auto labels = sets[idx];
    const Tree& st = structures[idx];
    if (s.is_leaf(u)) return copy(st, st.root(), checked(idx, labels), [](int) { return -1; });
    labels.push_back(mins[u]);
    labels = checked(idx, labels);
    return copy(st, st.root(), labels, [&](int r) { return r == 1 ? build_vertex(u) : -1; });
  };
  big.set_root(build_edge(s.root()));
  return big;
}

}  // namespace ag
