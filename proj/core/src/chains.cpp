#include "alphagamma/chains.hpp"

namespace ag {

std::string to_string(DecoratedCase c) {
  switch (c) {
    case DecoratedCase::None: return "-";
    case DecoratedCase::A1: return "A1";
    case DecoratedCase::A2: return "A2";
    case DecoratedCase::A3: return "A3";
    case DecoratedCase::B1: return "B1";
    case DecoratedCase::B2: return "B2";
    case DecoratedCase::B3: return "B3";
    case DecoratedCase::B4: return "B4";
  }
  return "-";
}

int binary_local_search(const Tree& t, int i) {
  int u = t.leaf_node(i);
  int v = t.node(u).parent;
  if (v < 0) throw std::invalid_argument("leaf has no parent branch point");
  auto mins = t.subtree_min();
  int a = 0;
  for (int kid : t.node(v).kids)
    if (kid != u && (a == 0 || mins[kid] < a)) a = mins[kid];
  int b = 0;
  int g = t.node(v).parent;
  if (g >= 0)
    for (int kid : t.node(g).kids)
      if (kid != v && (b == 0 || mins[kid] < b)) b = mins[kid];
  return std::max({i, a, b});
}

std::pair<std::vector<int>, int> sibling_minima(const Tree& t, int i) {
  int v = t.node(t.leaf_node(i)).parent;
  if (v < 0) throw std::invalid_argument("leaf has no parent branch point");
  auto mins = t.subtree_min();
  std::vector<int> out;
  for (int kid : t.node(v).kids) out.push_back(mins[kid]);
  std::sort(out.begin(), out.end());
  int j = static_cast<int>(std::find(out.begin(), out.end(), i) - out.begin()) + 1;
  return {out, j};
}

SemiPlanarTree semiplanar_down_step(const SemiPlanarTree& s, int i, LocalSearchResult* search) {
  LocalSearchResult ls = sp_local_search(s, i);
  if (search) *search = ls;
  PlanarTree p = planar_delete_leaf(sp_swap_labels(s, i, ls.i_tilde), ls.i_tilde, true);
  if (!p.is_semiplanar()) throw std::domain_error("down-step left the semi-planar space: " + p.str());
  return SemiPlanarTree::from_planar(p);
}

MassTree::MassTree(const DecoratedTree& d) : shape(d.shape()) {
  em.assign(shape.capacity(), 0);
  vm.assign(shape.capacity(), 0);
  for (Part x : insertable_parts(shape)) (x.vertex ? vm : em)[x.node] = d.mass(x);
}

long& MassTree::edge(int u) {
  if (static_cast<int>(em.size()) < shape.capacity()) {
    em.resize(shape.capacity(), 0);
    vm.resize(shape.capacity(), 0);
  }
  return em[u];
}

long& MassTree::vertex(int v) {
  edge(v);
  return vm[v];
}

DecoratedTree MassTree::finish() const {
  LabelledTree lt(shape);
  std::vector<long> ms;
  for (Part x : insertable_parts(lt.tree())) {
    auto id = static_cast<std::size_t>(x.node);
    const auto& src = x.vertex ? vm : em;
    ms.push_back(id < src.size() ? src[id] : 0);
  }
  return DecoratedTree(lt, ms);
}

DecoratedTree decorated_shape_down(const DecoratedTree& d, int i, int tilde) {
  MassTree m(d);
  m.shape.swap_labels(i, tilde);
  int gone = m.shape.leaf_node(tilde);
  Removal r = m.shape.remove_leaf(tilde);
  m.edge(gone) = 0;
  if (r.contracted) {
    m.edge(r.sibling) += m.edge(r.parent) + m.vertex(r.parent);
    m.edge(r.parent) = 0;
    m.vertex(r.parent) = 0;
  }
  m.shape.relabel_above(tilde);
  return m.finish();
}

}  // namespace ag
