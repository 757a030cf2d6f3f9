#include "alphagamma/exact.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ag {

Rational total(const ExactDist& d) {
  Rational s = 0;
  for (const auto& [k, p] : d) s += p;
  return s;
}

ExactDist pushforward(const ExactDist& d, const Projection& f) {
  ExactDist out;
  for (const auto& [k, p] : d) out[f(k)] += p;
  return out;
}

ExactDist evolve(const ExactDist& mu, const Kernel& k) {
  ExactDist out;
  for (const auto& [x, p] : mu) {
    if (p == 0) continue;
    auto it = k.find(x);
    if (it == k.end()) throw std::out_of_range("kernel has no row for " + x);
    for (const auto& [y, q] : it->second) out[y] += p * q;
  }
  return out;
}

Kernel compose(const Kernel& a, const Kernel& b) {
  Kernel out;
  for (const auto& [x, row] : a) out[x] = evolve(row, b);
  return out;
}

Kernel as_kernel(const std::vector<std::string>& states, const Projection& f) {
  Kernel out;
  for (const auto& s : states) out[s][f(s)] = 1;
  return out;
}

Kernel map_columns(const Kernel& k, const Projection& f) {
  Kernel out;
  for (const auto& [x, row] : k) out[x] = pushforward(row, f);
  return out;
}

Kernel condition_on(const ExactDist& mu, const Projection& f) {
  Kernel out;
  for (const auto& [x, p] : mu)
    if (p != 0) out[f(x)][x] += p;
  for (auto& [y, row] : out) {
    Rational z = total(row);
    for (auto& [x, p] : row) p /= z;
  }
  return out;
}

Rational max_residual(const ExactDist& a, const ExactDist& b) {
  Rational m = 0;
  for (const auto& [k, p] : a) {
    auto it = b.find(k);
    Rational d = abs(p - (it == b.end() ? Rational(0) : it->second));
    if (d > m) m = d;
  }
  for (const auto& [k, p] : b) {
    if (a.count(k)) continue;
    Rational d = abs(p);
    if (d > m) m = d;
  }
  return m;
}

Rational max_residual(const Kernel& a, const Kernel& b) {
  Rational m = 0;
  static const ExactDist empty;
  for (const auto& [x, row] : a) {
    auto it = b.find(x);
    Rational d = max_residual(row, it == b.end() ? empty : it->second);
    if (d > m) m = d;
  }
  for (const auto& [x, row] : b) {
    if (a.count(x)) continue;
    Rational d = max_residual(row, empty);
    if (d > m) m = d;
  }
  return m;
}

bool is_stochastic(const Kernel& k) {
  for (const auto& [x, row] : k) {
    for (const auto& [y, p] : row)
      if (p < 0) return false;
    if (total(row) != 1) return false;
  }
  return true;
}

std::vector<std::string> keys(const ExactDist& d) {
  std::vector<std::string> out;
  for (const auto& [k, p] : d) out.push_back(k);
  return out;
}

ExactDist growth_law_nonplanar(int n, const Params<Rational>& p, const Variant& v) {
  return exact_law([&](Chooser<Rational>& ch) { return grow_nonplanar(n, p, ch, v).str(); });
}

ExactDist growth_law_semiplanar(int n, const Params<Rational>& p, const Variant& v) {
  return exact_law([&](Chooser<Rational>& ch) { return grow_semiplanar(n, p, ch, v).str(); });
}

ExactDist growth_law_weighted(const WeightedTree<Rational>& start, int steps, const Params<Rational>& p) {
  return exact_law([&](Chooser<Rational>& ch) {
    WeightedTree<Rational> w = start;
    for (int s = 0; s < steps; ++s) w.step(p, ch);
    return w.tree().str();
  });
}

ExactDist growth_law_decorated(int k, int n, const Params<Rational>& p) {
  return exact_law([&](Chooser<Rational>& ch) {
    LabelledTree t = grow_nonplanar(k, p, ch);
    return grow_decorated(t, n, p, ch).str();
  });
}

std::string project_sp_to_nonplanar(const std::string& sp) { return SemiPlanarTree::parse(sp).shape().str(); }

Projection sp_to_decorated(int k) {
  return [k](const std::string& s) { return project_decorated(SemiPlanarTree::parse(s).tree(), k).str(); };
}

Projection sp_to_collapsed(int k) {
  return [k](const std::string& s) { return project_collapsed(SemiPlanarTree::parse(s).shape(), k).str(); };
}

Projection nonplanar_to_decorated(int k) {
  return [k](const std::string& s) { return project_decorated(LabelledTree::parse(s), k).str(); };
}

Projection collapsed_to_decorated() {
  return [](const std::string& s) {
    auto bar = s.find('|');
    LabelledTree shape = LabelledTree::parse(s.substr(0, bar));
    std::vector<long> masses;
    long count = 0;
    bool digit = false;
    for (std::size_t i = bar + 1; i < s.size(); ++i) {
      char c = s[i];
      if (c == '{') {
        count = 0;
        digit = false;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        if (!digit) ++count;
        digit = true;
      } else {
        digit = false;
        if (c == '}') masses.push_back(count);
      }
    }
    return DecoratedTree(shape, masses).str();
  };
}

Projection decorated_down(int k) {
  return [k](const std::string& s) { return project_decorated_down(DecoratedTree::parse(s), k).str(); };
}

Kernel kernel_semiplanar(const std::vector<std::string>& states, const Params<Rational>& p) {
  return exact_kernel(states, [&](const std::string& s, Chooser<Rational>& ch) {
    return semiplanar_chain_step(SemiPlanarTree::parse(s), p, ch).str();
  });
}

Kernel kernel_nonplanar(const std::vector<std::string>& states, const Params<Rational>& p) {
  return exact_kernel(states, [&](const std::string& s, Chooser<Rational>& ch) {
    return nonplanar_chain_step(LabelledTree::parse(s), p, ch).str();
  });
}

Kernel kernel_decorated(const std::vector<std::string>& states, const Params<Rational>& p) {
  return exact_kernel(states, [&](const std::string& s, Chooser<Rational>& ch) {
    return decorated_chain_step(DecoratedTree::parse(s), p, ch).str();
  });
}

Kernel kernel_sample_orders(const std::vector<std::string>& shapes, const Params<Rational>& p) {
  return exact_kernel(shapes, [&](const std::string& s, Chooser<Rational>& ch) {
    return sp_sample_orders(LabelledTree::parse(s), p, ch).str();
  });
}

Kernel kernel_lift_decorated(const std::vector<std::string>& states, const Params<Rational>& p) {
  return exact_kernel(states, [&](const std::string& s, Chooser<Rational>& ch) {
    return lift_decorated(DecoratedTree::parse(s), p, ch).str();
  });
}

Rational check_stationarity(const Kernel& k, const ExactDist& mu) { return max_residual(evolve(mu, k), mu); }

LumpabilityResult check_lumpability(const Kernel& k, const Projection& lambda) {
  std::map<std::string, std::pair<std::string, ExactDist>> first;  // block -> representative row
  for (const auto& [x, row] : k) {
    ExactDist lumped = pushforward(row, lambda);
    std::string b = lambda(x);
    auto it = first.find(b);
    if (it == first.end()) {
      first.emplace(b, std::make_pair(x, std::move(lumped)));
      continue;
    }
    const ExactDist& ref = it->second.second;
    std::set<std::string> blocks;
    for (const auto& [y, q] : ref) blocks.insert(y);
    for (const auto& [y, q] : lumped) blocks.insert(y);
    for (const auto& y : blocks) {
      auto a = ref.find(y);
      auto c = lumped.find(y);
      Rational pa = a == ref.end() ? Rational(0) : a->second;
      Rational pc = c == lumped.end() ? Rational(0) : c->second;
      if (pa != pc) return {false, it->second.first, x, y};
    }
  }
  return {};
}

IntertwiningResult check_intertwining(const Kernel& lift, const Kernel& k, const Projection& lambda,
                                      const Kernel& candidate) {
  IntertwiningResult r;
  r.matrix_residual = max_residual(candidate, map_columns(compose(lift, k), lambda));
  r.conditional_residual = 0;
  for (const auto& [y0, row] : lift) {
    ExactDist joint = evolve(row, k);
    ExactDist block_mass = pushforward(joint, lambda);
    for (const auto& [x, p] : joint) {
      if (p == 0) continue;
      std::string y = lambda(x);
      Rational cond = p / block_mass.at(y);
      auto it = lift.find(y);
      Rational target = 0;
      if (it != lift.end()) {
        auto jt = it->second.find(x);
        if (jt != it->second.end()) target = jt->second;
      }
      Rational d = abs(cond - target);
      if (d > r.conditional_residual) r.conditional_residual = d;
    }
  }
  return r;
}

IndependenceReport check_downstep_independence(int n, const Params<Rational>& p) {
  IndependenceReport rep;
  rep.n = n;
  ExactDist law = growth_law_semiplanar(n, p);
  ExactDist prev = growth_law_semiplanar(n - 1, p);
  std::map<std::pair<int, int>, Rational> pe;
  std::map<std::pair<int, int>, ExactDist> joint, down;
  std::map<int, ExactDist> marg;  // law of the restriction to [m]
  for (const auto& [s, q] : law) {
    SemiPlanarTree t = SemiPlanarTree::parse(s);
    for (int i = 1; i <= n; ++i) {
      LocalSearchResult ls = sp_local_search(t, i);
      std::pair<int, int> key{i, ls.i_tilde};
      int m = ls.i_tilde - 1;
      Tree r = t.tree();
      for (int l = n; l > m; --l) r.remove_leaf(l);
      std::string restricted = SemiPlanarTree(r).str();
      pe[key] += q;
      joint[key][restricted] += q;
      down[key][semiplanar_down_step(t, i).str()] += q;
    }
  }
  for (int m = 1; m < n; ++m) {
    marg[m] = pushforward(law, [m, n](const std::string& s) {
      Tree r = SemiPlanarTree::parse(s).tree();
      for (int l = n; l > m; --l) r.remove_leaf(l);
      return SemiPlanarTree(r).str();
    });
  }
  for (const auto& [key, q] : pe) {
    IndependenceEntry e;
    e.i = key.first;
    e.i_tilde = key.second;
    e.probability = q;
    ExactDist product;
    for (const auto& [t, pt] : marg.at(key.second - 1)) product[t] = q * pt;
    e.factorization_residual = max_residual(joint[key], product);
    ExactDist cond = down[key];
    for (auto& [t, pt] : cond) pt /= q;
    e.pushforward_residual = max_residual(cond, prev);
    rep.entries.push_back(e);
  }
  return rep;
}

SpaceKind parse_space_kind(const std::string& s) {
  if (s == "binary") return SpaceKind::Binary;
  if (s == "nonplanar") return SpaceKind::NonPlanar;
  if (s == "semiplanar") return SpaceKind::SemiPlanar;
  throw std::invalid_argument("unknown space '" + s + "'");
}

std::vector<std::string> enumerate_space(SpaceKind kind, int n, int cap) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (n > cap) throw std::invalid_argument("n exceeds the enumeration cap");
  std::set<std::string> cur{"1"};
  for (int m = 2; m <= n; ++m) {
    std::set<std::string> next;
    for (const auto& s : cur) {
      SemiPlanarTree t = SemiPlanarTree::parse(s);
      for (Part x : insertable_parts(t.tree())) {
        if (!x.vertex) {
          next.insert(kind == SpaceKind::SemiPlanar ? sp_insert_leaf(t, x, 0, m).str()
                                                    : sp_insert_leaf(t, x, 0, m).shape().str());
        } else if (kind == SpaceKind::NonPlanar) {
          int c = static_cast<int>(t.tree().node(x.node).kids.size());
          next.insert(sp_insert_leaf(t, x, c - 1, m).shape().str());
        } else if (kind == SpaceKind::SemiPlanar) {
          int c = static_cast<int>(t.tree().node(x.node).kids.size());
          for (int l = 1; l <= c - 1; ++l) next.insert(sp_insert_leaf(t, x, l, m).str());
        }
      }
    }
    cur = std::move(next);
  }
  return {cur.begin(), cur.end()};
}

Rational count_space(SpaceKind kind, int n) {
  auto weight = [&](int c) -> Rational {
    if (kind == SpaceKind::Binary) return c == 2 ? 1 : 0;
    if (kind == SpaceKind::NonPlanar) return 1;
    Rational f = 1;
    for (int i = 2; i <= c - 2; ++i) f *= i;
    return f;
  };
  // g[m][c]: ways to split [m] into c blocks, each carrying a tree.
  std::vector<Rational> f(n + 1, 0);
  std::vector<std::vector<Rational>> g(n + 1, std::vector<Rational>(n + 1, 0));
  f[1] = 1;
  g[1][1] = 1;
  for (int m = 2; m <= n; ++m) {
    for (int c = 2; c <= m; ++c)
      for (int b = 1; b <= m - c + 1; ++b) g[m][c] += binomial<Rational>(m - 1, b - 1) * f[b] * g[m - b][c - 1];
    for (int c = 2; c <= m; ++c) f[m] += weight(c) * g[m][c];
    g[m][1] = f[m];
  }
  return f[n];
}

}  // namespace ag
