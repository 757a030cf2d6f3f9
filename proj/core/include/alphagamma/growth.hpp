#pragma once

// Growth processes. Every step lists its insertion options with weights and
// lets a Chooser pick one, so the same code samples (double) and enumerates
// exactly (Rational).

#include "alphagamma/chooser.hpp"
#include "alphagamma/decorated.hpp"
#include "alphagamma/numeric.hpp"
#include "alphagamma/semiplanar.hpp"
#include "alphagamma/tree.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace ag {

enum class GrowthKind { Standard, Internal, BranchPoint };

// Standard growth starts from leaf 1. Internal growth starts from leaf 1 whose
// edge keeps weight gamma forever. c-order branch point growth starts from the
// c-star with zero weight on the root edge and on the edges of leaves 1..c.
struct Variant {
  GrowthKind kind = GrowthKind::Standard;
  int c = 0;

  static Variant standard() { return {}; }
  static Variant internal() { return {GrowthKind::Internal, 0}; }
  static Variant branchpoint(int c) { return {GrowthKind::BranchPoint, c}; }
  std::string name() const;
};

Variant parse_variant(const std::string& text);  // "standard" | "internal" | "bp:<c>"

template <class R>
void validate(const Params<R>& p, const Variant& v) {
  validate(p);
  if (v.kind == GrowthKind::Internal && !(p.gamma > 0)) throw std::invalid_argument("internal growth needs gamma > 0");
  if (v.kind == GrowthKind::BranchPoint) {
    if (v.c < 2) throw std::invalid_argument("branch point growth needs c >= 2");
    if (!(p.alpha > p.gamma)) throw std::invalid_argument("branch point growth needs alpha > gamma");
  }
}

// One insertion option: part, location (0 on edges and in non-planar mode,
// 1..c-1 at a branch point with c children in semi-planar mode) and weight.
template <class R>
struct Insertion {
  Part part;
  int location = 0;
  R weight;
};

template <class R>
R edge_weight(const Tree& t, int u, const Params<R>& p, const Variant& v) {
  if (t.is_leaf(u)) {
    int label = t.node(u).label;
    if (v.kind == GrowthKind::Internal && label == 1) return p.gamma;
    if (v.kind == GrowthKind::BranchPoint && label <= v.c) return R(0);
    return R(1) - p.alpha;
  }
  if (v.kind == GrowthKind::BranchPoint && u == t.root()) return R(0);
  return p.gamma;
}

template <class R>
std::vector<Insertion<R>> nonplanar_options(const Tree& t, const Params<R>& p, const Variant& v = {}) {
  std::vector<Insertion<R>> out;
  for (Part x : insertable_parts(t)) {
    if (x.vertex) {
      R c = R(static_cast<long>(t.node(x.node).kids.size()));
      out.push_back({x, 0, R((c - R(1)) * p.alpha - p.gamma)});
    } else {
      out.push_back({x, 0, edge_weight(t, x.node, p, v)});
    }
  }
  return out;
}

template <class R>
std::vector<Insertion<R>> semiplanar_options(const Tree& t, const Params<R>& p, const Variant& v = {}) {
  std::vector<Insertion<R>> out;
  for (Part x : insertable_parts(t)) {
    if (x.vertex) {
      int c = static_cast<int>(t.node(x.node).kids.size());
      for (int l = 1; l <= c - 1; ++l) out.push_back({x, l, l == c - 1 ? R(p.alpha - p.gamma) : p.alpha});
    } else {
      out.push_back({x, 0, edge_weight(t, x.node, p, v)});
    }
  }
  return out;
}

template <class R>
std::vector<R> option_weights(const std::vector<Insertion<R>>& opts) {
  std::vector<R> w;
  w.reserve(opts.size());
  for (const auto& o : opts) w.push_back(o.weight);
  return w;
}

template <class R>
LabelledTree grow_step(const LabelledTree& t, const Params<R>& p, Chooser<R>& ch, const Variant& v = {}) {
  auto opts = nonplanar_options(t.tree(), p, v);
  const auto& o = opts[ch.choose(option_weights(opts))];
  Tree u = t.tree();
  int j = u.max_label() + 1;
  if (o.part.vertex) {
    u.add_child(o.part.node, u.node(o.part.node).kids.size(), j);
  } else {
    u.split_edge(o.part.node, j);
  }
  return LabelledTree(std::move(u));
}

template <class R>
SemiPlanarTree grow_step(const SemiPlanarTree& t, const Params<R>& p, Chooser<R>& ch, const Variant& v = {}) {
  auto opts = semiplanar_options(t.tree(), p, v);
  const auto& o = opts[ch.choose(option_weights(opts))];
  return sp_insert_leaf(t, o.part, o.location, t.tree().max_label() + 1);
}

// Initial states: leaf 1, or the c-star.
LabelledTree initial_tree(const Variant& v);

template <class R>
SemiPlanarTree initial_semiplanar(const Variant& v, const Params<R>& p, Chooser<R>& ch) {
  return sp_sample_orders(initial_tree(v), p, ch);
}

// Grow until the tree has n leaves (initial trees count their own leaves).
// Grows in place and canonicalises once at the end.
template <class R>
LabelledTree grow_nonplanar(int n, const Params<R>& p, Chooser<R>& ch, const Variant& v = {}) {
  Tree t = initial_tree(v).tree();
  std::vector<Part> parts;
  std::vector<R> w;
  while (t.leaf_count() < n) {
    parts.clear();
    w.clear();
    for (int u : t.preorder()) {
      parts.push_back({u, false});
      w.push_back(edge_weight(t, u, p, v));
      if (!t.is_leaf(u)) {
        R c = R(static_cast<long>(t.node(u).kids.size()));
        parts.push_back({u, true});
        w.push_back(R((c - R(1)) * p.alpha - p.gamma));
      }
    }
    Part x = parts[ch.choose(w)];
    int j = t.leaf_count() + 1;
    if (x.vertex) {
      t.add_child(x.node, t.node(x.node).kids.size(), j);
    } else {
      t.split_edge(x.node, j);
    }
  }
  return LabelledTree(std::move(t));
}

template <class R>
SemiPlanarTree grow_semiplanar(int n, const Params<R>& p, Chooser<R>& ch, const Variant& v = {}) {
  SemiPlanarTree t = initial_semiplanar(v, p, ch);
  while (t.size() < n) t = grow_step(t, p, ch, v);
  return t;
}

// Semi-planar growth from an arbitrary weight assignment: one weight per edge
// (indexed by the node below it) and, per branch point, one weight per gap.
// Gap l-1 of a branch point with c children is location l: directly left of
// the child in slot l+1 (0-based), the last gap being the far right.
template <class R>
class WeightedTree {
 public:
  WeightedTree(SemiPlanarTree t, std::vector<R> edge, std::vector<std::vector<R>> gaps)
      : t_(std::move(t)), edge_(std::move(edge)), gaps_(std::move(gaps)) {
    resize();
    for (int u : t_.tree().preorder()) {
      if (edge_[u] < 0) throw std::invalid_argument("negative edge weight");
      if (!t_.tree().is_leaf(u)) {
        if (gaps_[u].size() + 1 != t_.tree().node(u).kids.size())
          throw std::invalid_argument("gap weights do not match the branch point");
        for (const R& g : gaps_[u])
          if (g < 0) throw std::invalid_argument("negative gap weight");
      }
    }
  }

  // Standard weights of the semi-planar process for the given tree and variant.
  static WeightedTree with_rules(const SemiPlanarTree& t, const Params<R>& p, const Variant& v) {
    const Tree& tr = t.tree();
    std::vector<R> edge(tr.capacity(), R(0));
    std::vector<std::vector<R>> gaps(tr.capacity());
    for (int u : tr.preorder()) {
      edge[u] = edge_weight(tr, u, p, v);
      if (!tr.is_leaf(u)) {
        std::size_t c = tr.node(u).kids.size();
        gaps[u].assign(c - 1, p.alpha);
        gaps[u].back() = p.alpha - p.gamma;
      }
    }
    return WeightedTree(t, std::move(edge), std::move(gaps));
  }

  const SemiPlanarTree& tree() const { return t_; }
  const R& edge(int u) const { return edge_[u]; }
  const std::vector<R>& gaps(int v) const { return gaps_[v]; }

  std::vector<Insertion<R>> options() const {
    std::vector<Insertion<R>> out;
    for (Part x : insertable_parts(t_.tree())) {
      if (x.vertex) {
        const auto& g = gaps_[x.node];
        for (std::size_t l = 0; l < g.size(); ++l) out.push_back({x, static_cast<int>(l) + 1, g[l]});
      } else {
        out.push_back({x, 0, edge_[x.node]});
      }
    }
    return out;
  }

  void insert(const Insertion<R>& o, int label, const Params<R>& p) {
    t_ = sp_insert_leaf(t_, o.part, o.location, label);
    resize();
    const Tree& tr = t_.tree();
    int leaf = tr.leaf_node(label);
    edge_[leaf] = R(1) - p.alpha;
    if (o.part.vertex) {
      auto& g = gaps_[o.part.node];
      g.insert(g.begin() + (o.location - 1), p.alpha);
    } else {
      int w = tr.node(leaf).parent;
      edge_[w] = p.gamma;
      gaps_[w] = {R(p.alpha - p.gamma)};
    }
  }

  template <class Ch>
  void step(const Params<R>& p, Ch& ch) {
    auto opts = options();
    insert(opts[ch.choose(option_weights(opts))], t_.tree().max_label() + 1, p);
  }

 private:
  void resize() {
    std::size_t cap = static_cast<std::size_t>(t_.tree().capacity());
    if (edge_.size() < cap) edge_.resize(cap, R(0));
    if (gaps_.size() < cap) gaps_.resize(cap);
  }

  SemiPlanarTree t_;
  std::vector<R> edge_;
  std::vector<std::vector<R>> gaps_;
};

// Decorated growth: part x gains one unit of mass with weight y_x - alpha
// (external edge), y_x + gamma (internal edge) or y_x + (c-1) alpha - gamma
// (branch point with c children).
template <class R>
std::vector<R> decorated_weights(const DecoratedTree& d, const Params<R>& p) {
  const Tree& s = d.shape();
  std::vector<R> w;
  for (Part x : insertable_parts(s)) {
    R y = R(d.mass(x));
    if (x.vertex) {
      R c = R(static_cast<long>(s.node(x.node).kids.size()));
      w.push_back(y + (c - R(1)) * p.alpha - p.gamma);
    } else if (s.is_leaf(x.node)) {
      w.push_back(y - p.alpha);
    } else {
      w.push_back(y + p.gamma);
    }
  }
  return w;
}

template <class R>
DecoratedTree decorated_grow_step(const DecoratedTree& d, const Params<R>& p, Chooser<R>& ch) {
  auto parts = insertable_parts(d.shape());
  std::size_t idx = ch.choose(decorated_weights(d, p));
  DecoratedTree out = d;
  out.mass_ref(parts[idx]) += 1;
  return out;
}

// Decorated growth started from the shape with unit masses on its leaf edges.
template <class R>
DecoratedTree grow_decorated(const LabelledTree& shape, int n, const Params<R>& p, Chooser<R>& ch) {
  std::vector<long> m;
  for (Part x : insertable_parts(shape.tree())) m.push_back(is_external(shape.tree(), x) ? 1 : 0);
  DecoratedTree d(shape, m);
  for (long i = d.total(); i < n; ++i) d = decorated_grow_step(d, p, ch);
  return d;
}

}  // namespace ag
