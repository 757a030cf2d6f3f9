#include "alphagamma/growth.hpp"

namespace ag {

std::string Variant::name() const {
  switch (kind) {
    case GrowthKind::Standard:
      return "standard";
    case GrowthKind::Internal:
      return "internal";
    case GrowthKind::BranchPoint:
      return "bp:" + std::to_string(c);
  }
  return "standard";
}

Variant parse_variant(const std::string& text) {
  if (text == "standard" || text == "nonplanar" || text == "semiplanar") return Variant::standard();
  if (text == "internal") return Variant::internal();
  if (text.rfind("bp:", 0) == 0) return Variant::branchpoint(std::stoi(text.substr(3)));
  throw std::invalid_argument("unknown growth variant '" + text + "'");
}

LabelledTree initial_tree(const Variant& v) {
  if (v.kind != GrowthKind::BranchPoint) return LabelledTree::single(1);
  Tree t;
  std::vector<int> kids;
  for (int l = 1; l <= v.c; ++l) kids.push_back(t.new_leaf(l));
  t.set_root(t.new_branch(kids));
  return LabelledTree(std::move(t));
}

}  // namespace ag
