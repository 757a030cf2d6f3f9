#include "verify.hpp"

#include "alphagamma/exact.hpp"
#include "alphagamma/harness.hpp"
#include "alphagamma/urn.hpp"

#include <algorithm>
#include <iostream>
#include <stdexcept>

namespace ag::verify {

using nlohmann::json;

namespace {

std::string q(const Rational& x) { return to_string(x); }

void require_cap(const Setup& s) {
  if (s.n < 3) throw std::invalid_argument("exact checks need n >= 3");
  if (s.n > s.cap) throw std::invalid_argument("n exceeds the enumeration cap (" + std::to_string(s.cap) + ")");
  if (s.k < 1 || s.k >= s.n) throw std::invalid_argument("need 1 <= k < n");
  Rational states = count_space(SpaceKind::SemiPlanar, s.n);
  if (states > 5000)
    std::cerr << "warning: " << q(states) << " semi-planar states; dense kernels may need a lot of memory\n";
}

json residual_entry(const std::string& name, const Rational& r, std::size_t states) {
  return {{"name", name}, {"residual", q(r)}, {"pass", r == 0}, {"states", states}};
}

bool all_pass(const json& results) {
  return std::all_of(results.begin(), results.end(), [](const json& r) { return r.at("pass").get<bool>(); });
}

struct Laws {
  ExactDist sp, np, dec;
};

Laws laws(const Setup& s) {
  Laws l;
  l.sp = growth_law_semiplanar(s.n, s.params);
  l.np = pushforward(l.sp, project_sp_to_nonplanar);
  l.dec = pushforward(l.np, nonplanar_to_decorated(s.k));
  return l;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"stationarity", "kernel-equality", "lumpability",
                                              "intertwining", "independence",    "order-law"};
  return names;
}

json stationarity(const Setup& s) {
  require_cap(s);
  Laws l = laws(s);
  json results = json::array();
  results.push_back(residual_entry("semiplanar", check_stationarity(kernel_semiplanar(keys(l.sp), s.params), l.sp),
                                   l.sp.size()));
  results.push_back(residual_entry("nonplanar", check_stationarity(kernel_nonplanar(keys(l.np), s.params), l.np),
                                   l.np.size()));
  Rational growth_gap = max_residual(growth_law_decorated(s.k, s.n, s.params), l.dec);
  results.push_back(residual_entry("decorated growth law vs projection", growth_gap, l.dec.size()));
  results.push_back(residual_entry("decorated k=" + std::to_string(s.k),
                                   check_stationarity(kernel_decorated(keys(l.dec), s.params), l.dec), l.dec.size()));
  return {{"check", "stationarity"}, {"results", results}, {"pass", all_pass(results)}};
}

json tilde_law_table(int cmax, const Params<Rational>& p) {
  json rows = json::array();
  for (int c = 3; c <= cmax; ++c) {
    for (int j = 1; j <= c; ++j) {
      json row{{"c", c}, {"j", j}};
      for (auto [law, name] : {std::pair{TildeLaw::Derived, "derived"}, std::pair{TildeLaw::Printed, "printed"}}) {
        json w = json::array();
        Rational total = 0;
        try {
          for (const auto& x : tilde_law(c, j, p, law)) {
            w.push_back(q(x));
            total += x;
          }
          row[name] = {{"weights", w}, {"sum", q(total)}};
        } catch (const std::exception& e) {
          row[name] = {{"error", e.what()}};
        }
      }
      rows.push_back(row);
    }
  }
  return rows;
}

json kernel_equality(const Setup& s) {
  require_cap(s);
  Laws l = laws(s);
  auto sp_states = keys(l.sp);
  auto np_states = keys(l.np);
  Kernel ks = kernel_semiplanar(sp_states, s.params);
  json results = json::array();
  Kernel lift = kernel_sample_orders(np_states, s.params);
  Kernel composite = compose(compose(lift, ks), as_kernel(sp_states, project_sp_to_nonplanar));
  results.push_back(residual_entry("nonplanar kernel vs order lift . semiplanar . projection",
                                   max_residual(kernel_nonplanar(np_states, s.params), composite), np_states.size()));
  results.push_back(residual_entry("order lift vs conditional growth law",
                                   max_residual(lift, condition_on(l.sp, project_sp_to_nonplanar)), np_states.size()));
  auto dec_states = keys(l.dec);
  Kernel dlift = kernel_lift_decorated(dec_states, s.params);
  Kernel dcomp = compose(compose(dlift, ks), as_kernel(sp_states, sp_to_decorated(s.k)));
  results.push_back(residual_entry("decorated kernel vs decorated lift . semiplanar . projection",
                                   max_residual(kernel_decorated(dec_states, s.params), dcomp), dec_states.size()));
  results.push_back(residual_entry("decorated lift vs conditional growth law",
                                   max_residual(dlift, condition_on(l.sp, sp_to_decorated(s.k))), dec_states.size()));
  return {{"check", "kernel-equality"},
          {"results", results},
          {"tilde_laws", tilde_law_table(s.n, s.params)},
          {"implemented_tilde_law", "derived"},
          {"pass", all_pass(results)}};
}

json lumpability(const Setup& s) {
  require_cap(s);
  ExactDist sp = growth_law_semiplanar(s.n, s.params);
  auto sp_states = keys(sp);
  Kernel ks = kernel_semiplanar(sp_states, s.params);
  Kernel lc = condition_on(sp, sp_to_collapsed(s.k));
  Kernel kc = compose(compose(lc, ks), as_kernel(sp_states, sp_to_collapsed(s.k)));
  LumpabilityResult r = check_lumpability(kc, collapsed_to_decorated());
  json entry{{"name", "collapsed to decorated"}, {"pass", r.pass}, {"states", kc.size()}};
  if (!r.pass) entry["witness"] = {{"x1", r.x1}, {"x2", r.x2}, {"block", r.block}};
  json results = json::array({entry});
  return {{"check", "lumpability"}, {"results", results}, {"pass", all_pass(results)}};
}

json intertwining(const Setup& s) {
  require_cap(s);
  ExactDist sp = growth_law_semiplanar(s.n, s.params);
  auto sp_states = keys(sp);
  Kernel ks = kernel_semiplanar(sp_states, s.params);
  Projection to_c = sp_to_collapsed(s.k);
  Kernel lc = condition_on(sp, to_c);
  Kernel kc = compose(compose(lc, ks), as_kernel(sp_states, to_c));
  IntertwiningResult rc = check_intertwining(lc, ks, to_c, kc);
  json results = json::array();
  results.push_back({{"name", "collapsed lift"},
                     {"matrix_residual", q(rc.matrix_residual)},
                     {"conditional_residual", q(rc.conditional_residual)},
                     {"pass", rc.pass()},
                     {"states", kc.size()}});
  ExactDist dec = pushforward(sp, sp_to_decorated(s.k));
  auto dec_states = keys(dec);
  IntertwiningResult rd = check_intertwining(kernel_lift_decorated(dec_states, s.params), ks, sp_to_decorated(s.k),
                                             kernel_decorated(dec_states, s.params));
  // The decorated chain comes from the collapsed one by lumping, so only the
  // matrix identity is required at this level; the conditional residual is
  // reported for information.
  results.push_back({{"name", "decorated composite"},
                     {"matrix_residual", q(rd.matrix_residual)},
                     {"conditional_residual", q(rd.conditional_residual)},
                     {"pass", rd.matrix_residual == 0},
                     {"states", dec_states.size()}});
  return {{"check", "intertwining"}, {"results", results}, {"pass", all_pass(results)}};
}

json independence(const Setup& s) {
  require_cap(s);
  const Rational& a = s.params.alpha;
  Rational denom = Rational(s.n - 1) - a;
  IndependenceReport rep = check_downstep_independence(s.n, s.params);
  json entries = json::array();
  bool pass = true, literal = true;
  for (const auto& e : rep.entries) {
    Rational stated = e.i < e.i_tilde ? Rational(Rational(1) / denom) : Rational((Rational(e.i_tilde - 1) - a) / denom);
    Rational expected = (e.i == 1 && e.i_tilde == 2) ? Rational((Rational(1) - a) / denom) : stated;
    bool ok = e.probability == expected && e.factorization_residual == 0 && e.pushforward_residual == 0;
    pass = pass && ok;
    literal = literal && e.probability == stated;
    entries.push_back({{"i", e.i},
                       {"i_tilde", e.i_tilde},
                       {"probability", q(e.probability)},
                       {"stated_formula", q(stated)},
                       {"expected", q(expected)},
                       {"factorization_residual", q(e.factorization_residual)},
                       {"pushforward_residual", q(e.pushforward_residual)},
                       {"pass", ok}});
  }
  return {{"check", "independence"},
          {"entries", entries},
          {"matches_stated_formula", literal},
          {"pass", pass}};
}

json order_law(const Setup& s) {
  require_cap(s);
  Rational theta = s.params.alpha - s.params.gamma;
  if (!(s.params.alpha > 0)) throw std::invalid_argument("order law needs alpha > 0");
  ExactDist sp = growth_law_semiplanar(s.n, s.params);
  Kernel cond = condition_on(sp, project_sp_to_nonplanar);
  json results = json::array();
  for (const auto& [shape, row] : cond) {
    std::map<std::vector<int>, std::map<std::vector<int>, Rational>> laws;  // leaf set -> law of the order
    for (const auto& [enc, p] : row) {
      SemiPlanarTree t = SemiPlanarTree::parse(enc);
      for (int v : t.tree().preorder()) {
        if (t.tree().is_leaf(v) || t.tree().node(v).kids.size() < 4) continue;
        auto leaves = t.tree().leaves_below(v);
        std::sort(leaves.begin(), leaves.end());
        laws[leaves][t.order(v)] += p;
      }
    }
    for (const auto& [leaves, law] : laws) {
      Rational r = 0;
      std::size_t perms = 0;
      for (const auto& [sigma, p] : law) {
        r = std::max<Rational>(r, abs(p - ocrp_permutation_pmf(sigma, s.params.alpha, theta)));
        ++perms;
      }
      Rational total = 0;
      for (const auto& [sigma, p] : law) total += p;
      bool full = true;
      if (!law.empty()) {
        std::vector<int> id(law.begin()->first.size());
        for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<int>(i) + 1;
        std::size_t count = 0;
        do {
          ++count;
        } while (std::next_permutation(id.begin(), id.end()));
        full = count == perms || theta == 0;
      }
      results.push_back({{"name", shape},
                         {"children", law.begin()->first.size() + 2},
                         {"residual", q(r)},
                         {"pass", r == 0 && total == 1 && full}});
    }
  }
  return {{"check", "order-law"}, {"results", results}, {"pass", all_pass(results)}};
}

json run(const std::string& check, const Setup& s) {
  json out{{"schema", kReportSchema},
           {"n", s.n},
           {"k", s.k},
           {"alpha", q(s.params.alpha)},
           {"gamma", q(s.params.gamma)}};
  std::vector<std::string> todo;
  if (check == "all") {
    todo = check_names();
  } else if (std::find(check_names().begin(), check_names().end(), check) != check_names().end()) {
    todo = {check};
  } else {
    throw std::invalid_argument("unknown check '" + check + "'");
  }
  json checks = json::array();
  bool pass = true;
  for (const auto& c : todo) {
    json r;
    if (c == "stationarity") r = stationarity(s);
    if (c == "kernel-equality") r = kernel_equality(s);
    if (c == "lumpability") r = lumpability(s);
    if (c == "intertwining") r = intertwining(s);
    if (c == "independence") r = independence(s);
    if (c == "order-law") r = order_law(s);
    pass = pass && r.at("pass").get<bool>();
    checks.push_back(std::move(r));
  }
  out["checks"] = checks;
  out["pass"] = pass;
  return out;
}

}  // namespace ag::verify
