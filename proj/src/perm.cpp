#include "nerode/perm.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "nerode/errors.hpp"

namespace nerode {

Perm identity_perm(std::size_t n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), Elem{0});
  return p;
}

bool is_permutation(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  for (Elem x : p) {
    if (x >= p.size() || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

bool is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

Perm compose(const Perm& p, const Perm& q) {
  Perm r(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
  return r;
}

Perm inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<Elem>(i);
  return r;
}

std::vector<Perm> generate_group(std::size_t n, const std::vector<Perm>& generators,
                                 std::size_t cap) {
  std::set<Perm> seen{identity_perm(n)};
  std::vector<Perm> frontier{identity_perm(n)};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const Perm& p : frontier) {
      for (const Perm& g : generators) {
        Perm q = compose(g, p);
        if (seen.insert(q).second) {
          if (seen.size() > cap)
            throw ResourceLimit("permutation group exceeds cap of " + std::to_string(cap));
          next.push_back(std::move(q));
        }
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

std::vector<Perm> generating_subset(const std::vector<Perm>& group) {
  if (group.empty()) return {};
  const std::size_t n = group.front().size();
  std::vector<Perm> chosen;
  std::size_t reached = 1;
  for (const Perm& p : group) {
    if (reached == group.size()) break;
    if (is_identity(p)) continue;
    auto closure = generate_group(n, chosen);
    if (std::binary_search(closure.begin(), closure.end(), p)) continue;
    chosen.push_back(p);
    reached = generate_group(n, chosen).size();
  }
  return chosen;
}

std::string to_cycles(const Perm& p) {
  std::string out;
  std::vector<bool> done(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (done[i] || p[i] == i) continue;
    out += '(';
    std::size_t j = i;
    bool first = true;
    while (!done[j]) {
      done[j] = true;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
      j = p[j];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

}  // namespace nerode
