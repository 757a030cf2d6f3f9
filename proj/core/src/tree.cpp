#include "alphagamma/tree.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace ag {

Tree Tree::leaf(int label) {
  Tree t;
  t.set_root(t.new_leaf(label));
  return t;
}

bool Tree::has_label(int label) const {
  return label > 0 && label < static_cast<int>(leaf_of_.size()) && leaf_of_[label] >= 0;
}

int Tree::leaf_node(int label) const {
  if (!has_label(label)) throw std::out_of_range("no leaf labelled " + std::to_string(label));
  return leaf_of_[label];
}

std::vector<int> Tree::labels() const {
  std::vector<int> out;
  for (int l = 1; l < static_cast<int>(leaf_of_.size()); ++l)
    if (leaf_of_[l] >= 0) out.push_back(l);
  return out;
}

int Tree::max_label() const {
  for (int l = static_cast<int>(leaf_of_.size()) - 1; l > 0; --l)
    if (leaf_of_[l] >= 0) return l;
  return 0;
}

std::size_t Tree::position(int u) const {
  const auto& kids = nodes_[nodes_[u].parent].kids;
  return static_cast<std::size_t>(std::find(kids.begin(), kids.end(), u) - kids.begin());
}

int Tree::alloc() {
  if (!free_.empty()) {
    int id = free_.back();
    free_.pop_back();
    nodes_[id] = Node{};
    return id;
  }
  nodes_.emplace_back();
  return static_cast<int>(nodes_.size()) - 1;
}

void Tree::release(int id) {
  nodes_[id] = Node{};
  free_.push_back(id);
}

void Tree::replace_child(int parent, int old_kid, int new_kid) {
  auto& kids = nodes_[parent].kids;
  *std::find(kids.begin(), kids.end(), old_kid) = new_kid;
  nodes_[new_kid].parent = parent;
}

int Tree::new_leaf(int label) {
  if (label <= 0) throw std::invalid_argument("leaf labels must be positive");
  if (has_label(label)) throw std::invalid_argument("duplicate label " + std::to_string(label));
  int id = alloc();
  nodes_[id].label = label;
  if (label >= static_cast<int>(leaf_of_.size())) leaf_of_.resize(label + 1, -1);
  leaf_of_[label] = id;
  ++leaves_;
  return id;
}

int Tree::new_branch(std::vector<int> kids) {
  if (kids.size() < 2) throw std::invalid_argument("a branch point needs at least two children");
  int id = alloc();
  for (int k : kids) nodes_[k].parent = id;
  nodes_[id].kids = std::move(kids);
  return id;
}

void Tree::set_root(int u) {
  root_ = u;
  nodes_[u].parent = -1;
}

int Tree::add_child(int v, std::size_t pos, int label) {
  if (is_leaf(v)) throw std::invalid_argument("cannot add a child to a leaf");
  int id = new_leaf(label);
  auto& kids = nodes_[v].kids;
  if (pos > kids.size()) throw std::out_of_range("child position out of range");
  kids.insert(kids.begin() + static_cast<std::ptrdiff_t>(pos), id);
  nodes_[id].parent = v;
  return id;
}

std::pair<int, int> Tree::split_edge(int u, int label) {
  int leaf = new_leaf(label);
  int w = alloc();
  int p = nodes_[u].parent;
  if (p < 0) {
    root_ = w;
  } else {
    replace_child(p, u, w);
  }
  nodes_[w].kids = {u, leaf};
  nodes_[u].parent = w;
  nodes_[leaf].parent = w;
  return {w, leaf};
}

Removal Tree::remove_leaf(int label) {
  int id = leaf_node(label);
  if (id == root_) throw std::invalid_argument("cannot delete the last leaf");
  Removal r;
  r.parent = nodes_[id].parent;
  r.pos = position(id);
  auto& kids = nodes_[r.parent].kids;
  kids.erase(kids.begin() + static_cast<std::ptrdiff_t>(r.pos));
  leaf_of_[label] = -1;
  --leaves_;
  release(id);
  if (nodes_[r.parent].kids.size() == 1) {
    int s = nodes_[r.parent].kids[0];
    int gp = nodes_[r.parent].parent;
    if (gp < 0) {
      set_root(s);
    } else {
      replace_child(gp, r.parent, s);
    }
    release(r.parent);
    r.contracted = true;
    r.sibling = s;
  }
  return r;
}

void Tree::swap_labels(int i, int j) {
  int a = leaf_node(i), b = leaf_node(j);
  std::swap(nodes_[a].label, nodes_[b].label);
  std::swap(leaf_of_[i], leaf_of_[j]);
}

void Tree::relabel(const std::function<int(int)>& f) {
  std::vector<int> ids;
  for (int l = 1; l < static_cast<int>(leaf_of_.size()); ++l)
    if (leaf_of_[l] >= 0) ids.push_back(leaf_of_[l]);
  leaf_of_.clear();
  for (int id : ids) {
    int nl = f(nodes_[id].label);
    if (nl <= 0) throw std::invalid_argument("relabelling must give positive labels");
    nodes_[id].label = nl;
    if (nl >= static_cast<int>(leaf_of_.size())) leaf_of_.resize(nl + 1, -1);
    if (leaf_of_[nl] >= 0) throw std::invalid_argument("relabelling is not injective");
    leaf_of_[nl] = id;
  }
}

void Tree::relabel_above(int j) {
  for (int l = j + 1; l < static_cast<int>(leaf_of_.size()); ++l) {
    int id = leaf_of_[l];
    if (id >= 0) {
      nodes_[id].label = l - 1;
      leaf_of_[l - 1] = id;
      leaf_of_[l] = -1;
    }
  }
  while (!leaf_of_.empty() && leaf_of_.back() < 0) leaf_of_.pop_back();
}

void Tree::reorder(int v, std::vector<int> kids) {
  auto a = nodes_[v].kids, b = kids;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) throw std::invalid_argument("reorder must permute the existing children");
  nodes_[v].kids = std::move(kids);
}

std::vector<int> Tree::preorder() const {
  std::vector<int> out, stack;
  if (root_ < 0) return out;
  stack.push_back(root_);
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    out.push_back(u);
    const auto& kids = nodes_[u].kids;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

std::vector<int> Tree::subtree_min() const {
  std::vector<int> mins(nodes_.size(), 0);
  auto order = preorder();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Node& n = nodes_[*it];
    if (n.label > 0) {
      mins[*it] = n.label;
    } else {
      int m = mins[n.kids[0]];
      for (int k : n.kids) m = std::min(m, mins[k]);
      mins[*it] = m;
    }
  }
  return mins;
}

std::vector<int> Tree::leaves_below(int u) const {
  std::vector<int> out, stack{u};
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    if (nodes_[x].label > 0) out.push_back(nodes_[x].label);
    for (int k : nodes_[x].kids) stack.push_back(k);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> canonical_kids(const Tree& t, int v, const std::vector<int>& mins) {
  auto kids = t.node(v).kids;
  std::sort(kids.begin(), kids.end(), [&](int a, int b) { return mins[a] < mins[b]; });
  return kids;
}

void sort_canonical(Tree& t) {
  auto mins = t.subtree_min();
  for (int u : t.preorder())
    if (!t.is_leaf(u)) t.reorder(u, canonical_kids(t, u, mins));
}

namespace {

void encode_rec(const Tree& t, int u, const std::vector<int>& mins, std::string& out) {
  const Node& n = t.node(u);
  if (n.label > 0) {
    out += std::to_string(n.label);
    return;
  }
  out += '(';
  bool first = true;
  for (int k : canonical_kids(t, u, mins)) {
    if (!first) out += ',';
    first = false;
    encode_rec(t, k, mins, out);
  }
  out += ')';
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Tree run() {
    skip();
    int r = node();
    skip();
    if (i_ != s_.size()) fail("trailing characters");
    t_.set_root(r);
    return std::move(t_);
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("tree parse error at " + std::to_string(i_) + ": " + what);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  int number() {
    skip();
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected a number");
    return std::stoi(std::string(s_.substr(start, i_ - start)));
  }
  int node() {
    if (!eat('(')) return t_.new_leaf(number());
    std::vector<int> kids{node()};
    while (eat(',')) kids.push_back(node());
    if (!eat(')')) fail("expected ')'");
    if (kids.size() < 2) fail("a branch point needs at least two children");
    int v = t_.new_branch(kids);
    if (eat('[')) {
      std::vector<int> sigma;
      if (!eat(']')) {
        sigma.push_back(number());
        while (eat(',')) sigma.push_back(number());
        if (!eat(']')) fail("expected ']'");
      }
      apply_order(v, sigma);
    }
    return v;
  }
  void apply_order(int v, const std::vector<int>& sigma) {
    auto ranked = t_.node(v).kids;
    std::sort(ranked.begin(), ranked.end(),
              [&](int a, int b) { return t_.leaves_below(a).front() < t_.leaves_below(b).front(); });
    std::size_t c = ranked.size();
    if (sigma.size() + 2 != c) fail("order has the wrong length");
    std::vector<int> phys(c, -1);
    phys[0] = ranked[0];
    phys[1] = ranked[1];
    for (std::size_t l = 2; l < c; ++l) {
      int p = sigma[l - 2];
      if (p < 1 || p > static_cast<int>(c) - 2 || phys[p + 1] >= 0) fail("order is not a permutation");
      phys[p + 1] = ranked[l];
    }
    t_.reorder(v, phys);
  }

  std::string_view s_;
  std::size_t i_ = 0;
  Tree t_;
};

}  // namespace

std::string encode_nonplanar(const Tree& t) {
  std::string out;
  if (t.root() < 0) return out;
  encode_rec(t, t.root(), t.subtree_min(), out);
  return out;
}

Tree parse_tree(std::string_view text) { return Parser(text).run(); }

std::vector<Part> insertable_parts(const Tree& t) {
  std::vector<Part> out;
  if (t.root() < 0) return out;
  auto mins = t.subtree_min();
  std::vector<int> stack{t.root()};
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    out.push_back({u, false});
    if (!t.is_leaf(u)) {
      out.push_back({u, true});
      auto kids = canonical_kids(t, u, mins);
      for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
    }
  }
  return out;
}

std::string PartAddress::str() const {
  std::string out = is_vertex() ? "v:" : "e:";
  for (std::size_t i = 0; i < path_.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(path_[i]);
  }
  return out;
}

PartAddress address_of(const Tree& t, Part p) {
  auto mins = t.subtree_min();
  std::vector<int> path;
  for (int u = p.node; t.node(u).parent >= 0; u = t.node(u).parent) {
    auto kids = canonical_kids(t, t.node(u).parent, mins);
    path.push_back(static_cast<int>(std::find(kids.begin(), kids.end(), u) - kids.begin()) + 1);
  }
  std::reverse(path.begin(), path.end());
  using K = PartAddress::Kind;
  K kind = p.vertex ? K::BranchPoint
           : t.is_leaf(p.node) ? K::LeafEdge
           : p.node == t.root() ? K::RootEdge
                                : K::InternalEdge;
  if (p.vertex && t.is_leaf(p.node)) throw std::invalid_argument("a leaf is not a branch point");
  return {kind, std::move(path)};
}

Part resolve(const Tree& t, const PartAddress& a) {
  auto mins = t.subtree_min();
  int u = t.root();
  for (int r : a.path()) {
    if (t.is_leaf(u)) throw std::out_of_range("dangling address " + a.str());
    auto kids = canonical_kids(t, u, mins);
    if (r < 1 || r > static_cast<int>(kids.size())) throw std::out_of_range("dangling address " + a.str());
    u = kids[r - 1];
  }
  if (a.is_vertex() && t.is_leaf(u)) throw std::out_of_range("address " + a.str() + " is not a branch point");
  return {u, a.is_vertex()};
}

PartAddress parse_address(const Tree& t, std::string_view text) {
  if (text.size() < 2 || text[1] != ':' || (text[0] != 'e' && text[0] != 'v'))
    throw std::invalid_argument("bad part address '" + std::string(text) + "'");
  std::vector<int> path;
  std::string_view rest = text.substr(2);
  while (!rest.empty()) {
    auto dot = rest.find('.');
    path.push_back(std::stoi(std::string(rest.substr(0, dot))));
    if (dot == std::string_view::npos) break;
    rest = rest.substr(dot + 1);
  }
  PartAddress a(text[0] == 'v' ? PartAddress::Kind::BranchPoint : PartAddress::Kind::InternalEdge, path);
  return address_of(t, resolve(t, a));
}

LabelledTree::LabelledTree(Tree t) : t_(std::move(t)) { sort_canonical(t_); }

LabelledTree LabelledTree::parse(std::string_view text) { return LabelledTree(parse_tree(text)); }

LabelledTree insert_leaf(const LabelledTree& t, const PartAddress& x, int j) {
  Tree u = t.tree();
  if (u.has_label(j)) throw std::invalid_argument("label already present");
  Part p = resolve(u, x);
  if (p.vertex) {
    u.add_child(p.node, u.node(p.node).kids.size(), j);
  } else {
    u.split_edge(p.node, j);
  }
  return LabelledTree(std::move(u));
}

LabelledTree delete_leaf(const LabelledTree& t, int j, bool relabel) {
  Tree u = t.tree();
  u.remove_leaf(j);
  if (relabel) u.relabel_above(j);
  return LabelledTree(std::move(u));
}

LabelledTree delete_leaves_above(const LabelledTree& t, int k) {
  Tree u = t.tree();
  auto labels = u.labels();
  for (auto it = labels.rbegin(); it != labels.rend(); ++it)
    if (*it > k) u.remove_leaf(*it);
  return LabelledTree(std::move(u));
}

LabelledTree swap_labels(const LabelledTree& t, int i, int j) {
  Tree u = t.tree();
  u.swap_labels(i, j);
  return LabelledTree(std::move(u));
}

SpinalDecomposition spinal_decomposition(const Tree& t, int label) {
  SpinalDecomposition s;
  int child = t.leaf_node(label);
  for (int v = t.node(child).parent; v >= 0; child = v, v = t.node(v).parent) {
    s.line.push_back(v);
    std::vector<int> bush;
    for (int k : t.node(v).kids)
      if (k != child) bush.push_back(k);
    s.bushes.push_back(std::move(bush));
  }
  return s;
}

std::vector<std::vector<int>> SpinalDecomposition::bush_labels(const Tree& t) const {
  std::vector<std::vector<int>> out;
  for (const auto& bush : bushes) {
    std::vector<int> labels;
    for (int r : bush) {
      auto l = t.leaves_below(r);
      labels.insert(labels.end(), l.begin(), l.end());
    }
    std::sort(labels.begin(), labels.end());
    out.push_back(std::move(labels));
  }
  return out;
}

namespace {
std::string shape_rec(const Tree& t, int u) {
  if (t.is_leaf(u)) return "*";
  std::vector<std::string> parts;
  for (int k : t.node(u).kids) parts.push_back(shape_rec(t, k));
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  return out + ")";
}
}  // namespace

std::string unlabelled_shape(const Tree& t) { return t.root() < 0 ? std::string() : shape_rec(t, t.root()); }

}  // namespace ag
