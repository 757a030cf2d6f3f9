#include "alphagamma/decorated.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace ag {

bool is_external(const Tree& shape, Part p) { return !p.vertex && shape.is_leaf(p.node); }

DecoratedTree::DecoratedTree(const LabelledTree& shape, const std::vector<long>& masses) : shape_(shape.tree()) {
  auto parts = insertable_parts(shape_);
  if (parts.size() != masses.size()) throw std::invalid_argument("one mass per insertable part is required");
  em_.assign(shape_.capacity(), 0);
  vm_.assign(shape_.capacity(), 0);
  for (std::size_t i = 0; i < parts.size(); ++i) mass_ref(parts[i]) = masses[i];
  validate();
}

DecoratedTree DecoratedTree::parse(std::string_view text) {
  auto bar = text.find('|');
  if (bar == std::string_view::npos) throw std::invalid_argument("decorated tree needs '|'");
  LabelledTree shape = LabelledTree::parse(text.substr(0, bar));
  std::vector<long> masses;
  std::string_view rest = text.substr(bar + 1);
  while (!rest.empty()) {
    auto comma = rest.find(',');
    masses.push_back(std::stol(std::string(rest.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return DecoratedTree(shape, masses);
}

long& DecoratedTree::mass_ref(Part p) {
  if (static_cast<int>(em_.size()) < shape_.capacity()) {
    em_.resize(shape_.capacity(), 0);
    vm_.resize(shape_.capacity(), 0);
  }
  return p.vertex ? vm_[p.node] : em_[p.node];
}

void DecoratedTree::normalize() {
  sort_canonical(shape_);
  em_.resize(shape_.capacity(), 0);
  vm_.resize(shape_.capacity(), 0);
}

long DecoratedTree::total() const {
  long s = 0;
  for (Part p : insertable_parts(shape_)) s += mass(p);
  return s;
}

std::vector<long> DecoratedTree::masses() const {
  std::vector<long> out;
  for (Part p : insertable_parts(shape_)) out.push_back(mass(p));
  return out;
}

std::string DecoratedTree::str() const {
  std::string out = encode_nonplanar(shape_) + "|";
  bool first = true;
  for (Part p : insertable_parts(shape_)) {
    if (!first) out += ',';
    first = false;
    out += std::to_string(mass(p));
  }
  return out;
}

void DecoratedTree::validate() const {
  for (Part p : insertable_parts(shape_)) {
    if (mass(p) < 0) throw std::invalid_argument("negative mass");
    if (is_external(shape_, p) && mass(p) < 1) throw std::invalid_argument("external edge with mass below 1");
  }
}

CollapsedTree::CollapsedTree(const LabelledTree& shape, const std::vector<std::vector<int>>& sets)
    : shape_(shape.tree()) {
  auto parts = insertable_parts(shape_);
  if (parts.size() != sets.size()) throw std::invalid_argument("one label set per insertable part is required");
  eb_.assign(shape_.capacity(), {});
  vb_.assign(shape_.capacity(), {});
  std::vector<int> all;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    auto s = sets[i];
    std::sort(s.begin(), s.end());
    if (is_external(shape_, parts[i]) &&
        !std::binary_search(s.begin(), s.end(), shape_.node(parts[i].node).label))
      throw std::invalid_argument("a leaf edge must contain its own label");
    all.insert(all.end(), s.begin(), s.end());
    (parts[i].vertex ? vb_ : eb_)[parts[i].node] = std::move(s);
  }
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i] != static_cast<int>(i) + 1) throw std::invalid_argument("label sets must partition [n]");
}

std::vector<std::vector<int>> CollapsedTree::label_sets() const {
  std::vector<std::vector<int>> out;
  for (Part p : insertable_parts(shape_)) out.push_back(labels(p));
  return out;
}

int CollapsedTree::n() const {
  int s = 0;
  for (Part p : insertable_parts(shape_)) s += static_cast<int>(labels(p).size());
  return s;
}

std::string CollapsedTree::str() const {
  std::string out = encode_nonplanar(shape_) + "|";
  bool first = true;
  for (Part p : insertable_parts(shape_)) {
    if (!first) out += ';';
    first = false;
    out += '{';
    const auto& s = labels(p);
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(s[i]);
    }
    out += '}';
  }
  return out;
}

Decoration decorate(const Tree& big, int k) {
  if (k < 1 || k > big.leaf_count()) throw std::invalid_argument("k out of range");
  int cap = big.capacity();
  std::vector<int> cnt(cap, 0);
  auto order = big.preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Node& n = big.node(*it);
    if (n.label > 0) {
      cnt[*it] = n.label <= k ? 1 : 0;
    } else {
      for (int c : n.kids) cnt[*it] += cnt[c];
    }
  }
  for (int l = 1; l <= k; ++l)
    if (!big.has_label(l)) throw std::invalid_argument("labels 1..k must be present");

  Decoration d;
  d.shape_node_of.assign(cap, -1);
  std::vector<int> target(cap, -1);  // shape node that a big node collapses onto

  std::function<int(int)> build = [&](int u) -> int {
    const Node& n = big.node(u);
    if (n.label > 0) {
      int s = d.shape.new_leaf(n.label);
      d.shape_node_of[u] = s;
      target[u] = s;
      return s;
    }
    std::vector<int> rel;
    for (int c : n.kids)
      if (cnt[c] > 0) rel.push_back(c);
    if (rel.size() == 1) {
      int s = build(rel[0]);
      target[u] = s;
      return s;
    }
    std::vector<int> kids;
    for (int c : rel) kids.push_back(build(c));
    int s = d.shape.new_branch(kids);
    d.shape_node_of[u] = s;
    target[u] = s;
    return s;
  };
  d.shape.set_root(build(big.root()));
  sort_canonical(d.shape);
  d.big_node_of.assign(d.shape.capacity(), -1);
  for (int u = 0; u < cap; ++u)
    if (d.shape_node_of[u] >= 0) d.big_node_of[d.shape_node_of[u]] = u;

  d.part_of.assign(big.max_label() + 1, Part{});
  for (int l : big.labels()) {
    int u = big.leaf_node(l);
    if (l <= k) {
      d.part_of[l] = {d.shape_node_of[u], false};
      continue;
    }
    int a = big.node(u).parent;
    while (cnt[a] == 0) a = big.node(a).parent;
    int s = d.shape_node_of[a];
    d.part_of[l] = s >= 0 ? Part{s, true} : Part{target[a], false};
  }
  return d;
}

CollapsedTree project_collapsed(const LabelledTree& t, int k) {
  Decoration d = decorate(t.tree(), k);
  auto parts = insertable_parts(d.shape);
  std::vector<std::vector<int>> sets(parts.size());
  for (int l : t.tree().labels()) {
    auto it = std::find(parts.begin(), parts.end(), d.part_of[l]);
    sets[it - parts.begin()].push_back(l);
  }
  return CollapsedTree(LabelledTree(d.shape), sets);
}

DecoratedTree collapse_to_decorated(const CollapsedTree& c) {
  std::vector<long> masses;
  for (const auto& s : c.label_sets()) masses.push_back(static_cast<long>(s.size()));
  return DecoratedTree(LabelledTree(c.shape()), masses);
}

DecoratedTree project_decorated(const Tree& t, int k) {
  Decoration d = decorate(t, k);
  auto parts = insertable_parts(d.shape);
  std::vector<long> masses(parts.size(), 0);
  for (int l : t.labels()) {
    auto it = std::find(parts.begin(), parts.end(), d.part_of[l]);
    ++masses[it - parts.begin()];
  }
  return DecoratedTree(LabelledTree(d.shape), masses);
}

DecoratedTree project_decorated_down(const DecoratedTree& d, int k) {
  Tree big = d.shape();
  int next = big.max_label() + 1;
  for (Part p : insertable_parts(d.shape())) {
    long extra = d.reduced_mass(p);
    for (long i = 0; i < extra; ++i) {
      if (p.vertex) {
        big.add_child(p.node, big.node(p.node).kids.size(), next++);
      } else {
        big.split_edge(p.node, next++);
      }
    }
  }
  return project_decorated(big, k);
}

}  // namespace ag
