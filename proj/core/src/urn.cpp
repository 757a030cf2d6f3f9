#include "alphagamma/urn.hpp"

#include <algorithm>

namespace ag {

namespace {
void compose(long n, std::size_t k, std::vector<long>& cur, std::vector<std::vector<long>>& out) {
  if (cur.size() + 1 == k) {
    cur.push_back(n);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (long m = n; m >= 0; --m) {
    cur.push_back(m);
    compose(n - m, k, cur, out);
    cur.pop_back();
  }
}
}  // namespace

std::vector<std::vector<long>> compositions(long n, std::size_t k) {
  std::vector<std::vector<long>> out;
  if (k == 0) {
    if (n == 0) out.emplace_back();
    return out;
  }
  std::vector<long> cur;
  compose(n, k, cur, out);
  std::reverse(out.begin(), out.end());
  return out;
}

int record_count(const std::vector<int>& sigma) {
  int records = 0;
  int best = 0;
  for (int s : sigma) {
    if (s > best) {
      ++records;
      best = s;
    }
  }
  return records;
}

bool is_permutation_of_1_to_L(const std::vector<int>& sigma) {
  std::vector<char> seen(sigma.size() + 1, 0);
  for (int s : sigma) {
    if (s < 1 || s > static_cast<int>(sigma.size()) || seen[s]) return false;
    seen[s] = 1;
  }
  return true;
}

}  // namespace ag
