#pragma once

// Down-up chains on non-planar, semi-planar and decorated trees, the resampling
// step and the lifting kernels.

#include "alphagamma/chooser.hpp"
#include "alphagamma/decorated.hpp"
#include "alphagamma/growth.hpp"
#include "alphagamma/semiplanar.hpp"
#include "alphagamma/tree.hpp"
#include "alphagamma/urn.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ag {

enum class DecoratedCase { None, A1, A2, A3, B1, B2, B3, B4 };
std::string to_string(DecoratedCase c);

struct DownStepTrace {
  int i = 0;
  LocalSearchResult search;
  DecoratedCase tag = DecoratedCase::None;
  std::string before;
  std::string after;
};

template <class R>
int uniform_leaf(int n, Chooser<R>& ch) {
  return static_cast<int>(ch.choose(std::vector<R>(static_cast<std::size_t>(n), R(1)))) + 1;
}

// ---------------------------------------------------------------------------
// Generic (f, growth) down-up step on non-planar trees: transform (t, i) into
// (t', j), delete j, optionally relabel, and grow back to n leaves.

using Transform = std::function<std::pair<LabelledTree, int>(const LabelledTree&, int)>;

template <class R>
LabelledTree generic_downup_step(const LabelledTree& t, const Transform& f, const Params<R>& p, Chooser<R>& ch,
                                 const Variant& v = {}, bool relabel = true) {
  int n = t.size();
  if (n < 3) throw std::invalid_argument("down-up chains need at least three leaves");
  int i = uniform_leaf(n, ch);
  auto [u, j] = f(t, i);
  if (!u.tree().has_label(j)) throw std::invalid_argument("transform returned a label that is not a leaf");
  LabelledTree down = delete_leaf(u, j, relabel);
  if (relabel) return grow_step(down, p, ch, v);
  // Exchangeable variant: the freed label is reused for the inserted leaf.
  auto opts = nonplanar_options(down.tree(), p, v);
  const auto& o = opts[ch.choose(option_weights(opts))];
  Tree w = down.tree();
  if (o.part.vertex) {
    w.add_child(o.part.node, w.node(o.part.node).kids.size(), j);
  } else {
    w.split_edge(o.part.node, j);
  }
  return LabelledTree(std::move(w));
}

inline std::pair<LabelledTree, int> identity_transform(const LabelledTree& t, int i) { return {t, i}; }

// ĩ = max{i, a, b} from the first two spinal bushes (b = 0 without a second bush).
int binary_local_search(const Tree& t, int i);

inline std::pair<LabelledTree, int> binary_swap_transform(const LabelledTree& t, int i) {
  int it = binary_local_search(t.tree(), i);
  return {swap_labels(t, i, it), it};
}

// ---------------------------------------------------------------------------
// Semi-planar chain.

// Deterministic down-step given the selected leaf: swap i and ĩ, delete ĩ, relabel.
SemiPlanarTree semiplanar_down_step(const SemiPlanarTree& s, int i, LocalSearchResult* search = nullptr);

template <class R>
SemiPlanarTree semiplanar_chain_step(const SemiPlanarTree& s, const Params<R>& p, Chooser<R>& ch,
                                     DownStepTrace* trace = nullptr) {
  int n = s.size();
  if (n < 3) throw std::invalid_argument("down-up chains need at least three leaves");
  int i = uniform_leaf(n, ch);
  LocalSearchResult ls;
  SemiPlanarTree down = semiplanar_down_step(s, i, &ls);
  SemiPlanarTree up = grow_step(down, p, ch);
  if (trace) *trace = {i, ls, DecoratedCase::None, s.str(), up.str()};
  return up;
}

// ---------------------------------------------------------------------------
// Non-planar chain.

enum class TildeLaw { Derived, Printed };

// Law of Ĩ over i_1..i_c (index j'-1) when i = i_j at a branch point with c > 2
// children. Derived: weights (alpha - gamma) on i_3 and alpha beyond when
// j <= 2; ((j-2) alpha - gamma) on i_j and alpha beyond when j > 2; normalised
// by (c-2) alpha - gamma. A zero normaliser (c = 3, alpha = gamma) puts all
// mass on i_3. Printed: the alternative display with normaliser
// (c-1) alpha - gamma and diagonal ((c-1-j) alpha - gamma); not a probability
// law in general and never used for sampling.
template <class R>
std::vector<R> tilde_law(int c, int j, const Params<R>& p, TildeLaw law = TildeLaw::Derived) {
  if (c < 3 || j < 1 || j > c) throw std::invalid_argument("tilde law needs c > 2 and 1 <= j <= c");
  const R& a = p.alpha;
  const R& g = p.gamma;
  std::vector<R> w(static_cast<std::size_t>(c), R(0));
  if (law == TildeLaw::Derived) {
    if (j <= 2) {
      w[2] = a - g;
      for (int jp = 4; jp <= c; ++jp) w[jp - 1] = a;
    } else {
      w[j - 1] = R(j - 2) * a - g;
      for (int jp = j + 1; jp <= c; ++jp) w[jp - 1] = a;
    }
    R total = R(c - 2) * a - g;
    if (total == 0) {
      if (c != 3) throw std::domain_error("tilde law undefined for these parameters");
      std::fill(w.begin(), w.end(), R(0));
      w[2] = 1;
      return w;
    }
    for (auto& x : w) x /= total;
    return w;
  }
  R total = R(c - 1) * a - g;
  if (j <= 2) {
    w[2] = a - g;
    for (int jp = 4; jp <= c; ++jp) w[jp - 1] = a;
  } else {
    w[j - 1] = R(c - 1 - j) * a - g;
    for (int jp = j + 1; jp <= c; ++jp) w[jp - 1] = a;
  }
  if (total != 0)
    for (auto& x : w) x /= total;
  return w;
}

// Least labels of the children of the parent of i, ascending, and the rank of i.
std::pair<std::vector<int>, int> sibling_minima(const Tree& t, int i);

// Ĩ for the non-planar down-step from leaf i.
template <class R>
int draw_tilde(const Tree& t, int i, const Params<R>& p, Chooser<R>& ch) {
  int v = t.node(t.leaf_node(i)).parent;
  if (t.node(v).kids.size() == 2) return binary_local_search(t, i);
  auto [mins, j] = sibling_minima(t, i);
  auto law = tilde_law(static_cast<int>(mins.size()), j, p);
  return mins[ch.choose(law)];
}

template <class R>
LabelledTree nonplanar_down_step(const LabelledTree& t, int i, const Params<R>& p, Chooser<R>& ch,
                                 int* tilde = nullptr) {
  int it = draw_tilde(t.tree(), i, p, ch);
  if (tilde) *tilde = it;
  return delete_leaf(swap_labels(t, i, it), it, true);
}

template <class R>
LabelledTree nonplanar_chain_step(const LabelledTree& t, const Params<R>& p, Chooser<R>& ch,
                                  DownStepTrace* trace = nullptr) {
  int n = t.size();
  if (n < 3) throw std::invalid_argument("down-up chains need at least three leaves");
  int i = uniform_leaf(n, ch);
  int it = 0;
  LabelledTree down = nonplanar_down_step(t, i, p, ch, &it);
  LabelledTree up = grow_step(down, p, ch);
  if (trace) *trace = {i, {0, 0, it}, DecoratedCase::None, t.str(), up.str()};
  return up;
}

// ---------------------------------------------------------------------------
// Decorated chain.

// Node-indexed working copy of a decorated tree for structural edits.
struct MassTree {
  Tree shape;
  std::vector<long> em, vm;

  explicit MassTree(const DecoratedTree& d);
  long& edge(int u);
  long& vertex(int v);
  DecoratedTree finish() const;  // canonicalise into a DecoratedTree
};

// Swap i and ĩ in the shape (masses stay with positions), delete ĩ, merge the
// masses of a contracted parent into the sibling's edge, and relabel.
DecoratedTree decorated_shape_down(const DecoratedTree& d, int i, int tilde);

template <class R>
R part_weight(const Tree& s, Part x, const Params<R>& p) {
  if (x.vertex) {
    R c = R(static_cast<long>(s.node(x.node).kids.size()));
    return (c - R(1)) * p.alpha - p.gamma;
  }
  return s.is_leaf(x.node) ? R(R(1) - p.alpha) : p.gamma;
}

// Resample leaf k into a decorated [k-1]-tree (labels 1..k-1).
template <class R>
DecoratedTree resample_leaf(const DecoratedTree& d, const Params<R>& p, Chooser<R>& ch) {
  const Tree& s = d.shape();
  int k = d.k() + 1;
  auto parts = insertable_parts(s);
  std::vector<R> w;
  for (Part x : parts) w.push_back(R(d.reduced_mass(x)));
  Part x = parts[ch.choose(w)];
  MassTree m(d);
  long yx = d.mass(x);
  if (x.vertex) {
    R c = R(static_cast<long>(s.node(x.node).kids.size()));
    auto counts = sample_dirmult(yx - 1, UrnWeights<R>({R(R(1) - p.alpha), R(c * p.alpha - p.gamma)}), ch);
    int leaf = m.shape.add_child(x.node, m.shape.node(x.node).kids.size(), k);
    m.edge(leaf) = counts[0] + 1;
    m.vertex(x.node) = counts[1];
  } else {
    bool external = s.is_leaf(x.node);
    long ty = d.reduced_mass(x);
    R wx = part_weight(s, x, p);
    auto counts = sample_dirmult(
        ty - 1, UrnWeights<R>({R(R(1) - p.alpha), R(p.alpha - p.gamma), p.gamma, wx}), ch);
    auto [bp, leaf] = m.shape.split_edge(x.node, k);
    m.edge(leaf) = counts[0] + 1;
    m.vertex(bp) = counts[1];
    m.edge(bp) = counts[2];
    m.edge(x.node) = counts[3] + (external ? 1 : 0);
  }
  return m.finish();
}

template <class R>
DecoratedTree decorated_down_step(const DecoratedTree& d, const Params<R>& p, Chooser<R>& ch,
                                  DownStepTrace* trace = nullptr) {
  const Tree& s = d.shape();
  auto parts = insertable_parts(s);
  std::vector<R> w;
  for (Part x : parts) w.push_back(R(d.mass(x)));
  Part x = parts[ch.choose(w)];
  DecoratedCase tag = DecoratedCase::None;
  DecoratedTree out;
  int i = 0, tilde = 0;
  bool external = is_external(s, x);
  if (!(external && d.mass(x) == 1)) {
    tag = x.vertex ? DecoratedCase::A3 : external ? DecoratedCase::A1 : DecoratedCase::A2;
    out = d;
    out.mass_ref(x) -= 1;
  } else {
    i = s.node(x.node).label;
    int v = s.node(x.node).parent;
    long yv = d.mass({v, true});
    std::size_t c = s.node(v).kids.size();
    bool shape_step = false;
    MassTree m(d);
    if (c > 2) {
      long N = yv == 0 ? 0 : sample_betabin(yv, p.alpha, R(R(static_cast<long>(c) - 2) * p.alpha - p.gamma), ch);
      if (N > 0) {
        tag = DecoratedCase::B1;
        long Y = sample_decrement(N, p.alpha, p.alpha, ch);
        m.edge(x.node) = Y;
        m.vertex(v) = yv - Y;
        out = m.finish();
      } else {
        tag = yv > 0 ? DecoratedCase::B2 : DecoratedCase::B4;
        shape_step = true;
      }
    } else {
      long ye = d.mass({v, false});
      if (yv > 0) {
        tag = DecoratedCase::B1;
        long Y = sample_decrement(yv, p.alpha, R(p.alpha - p.gamma), ch);
        m.edge(x.node) = Y;
        m.vertex(v) = yv - Y;
        out = m.finish();
      } else if (ye > 0) {
        tag = DecoratedCase::B3;
        long Nb = sample_decrement(ye, p.gamma, p.gamma, ch);
        long Nt = 1 + sample_betabin(Nb - 1, R(R(1) - p.alpha), R(p.alpha - p.gamma), ch);
        m.edge(x.node) = Nt;
        m.vertex(v) = Nb - Nt;
        m.edge(v) = ye - Nb;
        out = m.finish();
      } else {
        tag = DecoratedCase::B4;
        shape_step = true;
      }
    }
    if (shape_step) {
      tilde = draw_tilde(s, i, p, ch);
      out = resample_leaf(decorated_shape_down(d, i, tilde), p, ch);
    }
  }
  if (trace) *trace = {i, {0, 0, tilde}, tag, d.str(), out.str()};
  return out;
}

template <class R>
DecoratedTree decorated_chain_step(const DecoratedTree& d, const Params<R>& p, Chooser<R>& ch,
                                   DownStepTrace* trace = nullptr) {
  if (d.total() <= d.k()) throw std::invalid_argument("decorated chain needs k < n");
  DecoratedTree down = decorated_down_step(d, p, ch, trace);
  DecoratedTree up = decorated_grow_step(down, p, ch);
  if (trace) trace->after = up.str();
  return up;
}

// ---------------------------------------------------------------------------
// Lifting kernels.

// Uniform assignment of labels k+1..n to parts with the given reduced masses,
// followed by independent internal structures per part and branch orders.
template <class R>
SemiPlanarTree lift_decorated(const DecoratedTree& d, const Params<R>& p, Chooser<R>& ch) {
  const Tree& s = d.shape();
  auto parts = insertable_parts(s);
  int k = d.k();
  long n = d.total();
  std::vector<long> left;
  for (Part x : parts) left.push_back(d.reduced_mass(x));
  std::vector<std::vector<int>> sets(parts.size());
  for (std::size_t q = 0; q < parts.size(); ++q)
    if (is_external(s, parts[q])) sets[q].push_back(s.node(parts[q].node).label);
  for (long l = k + 1; l <= n; ++l) {
    std::vector<R> w;
    for (long c : left) w.push_back(R(c));
    std::size_t q = ch.choose(w);
    --left[q];
    sets[q].push_back(static_cast<int>(l));
  }
  std::vector<Tree> structures;
  for (std::size_t q = 0; q < parts.size(); ++q) {
    Part x = parts[q];
    long y = d.mass(x);
    if (x.vertex) {
      int c = static_cast<int>(s.node(x.node).kids.size());
      structures.push_back(grow_nonplanar(c + static_cast<int>(y), p, ch, Variant::branchpoint(c)).tree());
    } else if (s.is_leaf(x.node)) {
      structures.push_back(grow_nonplanar(static_cast<int>(y), p, ch).tree());
    } else {
      structures.push_back(grow_nonplanar(static_cast<int>(y) + 1, p, ch, Variant::internal()).tree());
    }
  }
  LabelledTree big(graft(LabelledTree(s), sets, structures));
  return sp_sample_orders(big, p, ch);
}

}  // namespace ag
