#include "cubical/dilworth.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <string>

namespace cubical {

void FinitePoset::validate() const {
  const std::size_t n = size();
  for (std::size_t x = 0; x < n; ++x) {
    if (less[x].size() != n) throw std::invalid_argument("order matrix is not square");
    if (less[x][x]) throw std::invalid_argument("order is not irreflexive at " + std::to_string(x));
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (less[x][y])
        for (std::size_t z = 0; z < n; ++z)
          if (less[y][z] && !less[x][z])
            throw std::invalid_argument("order is not transitive at " + std::to_string(x) + "," +
                                        std::to_string(y) + "," + std::to_string(z));
}

FinitePoset FinitePoset::restrict_to(const std::vector<int>& keep) const {
  FinitePoset out;
  out.less.assign(keep.size(), std::vector<bool>(keep.size(), false));
  for (std::size_t a = 0; a < keep.size(); ++a)
    for (std::size_t b = 0; b < keep.size(); ++b) out.less[a][b] = less[keep[a]][keep[b]];
  return out;
}

bool is_chain(const FinitePoset& p, const std::vector<int>& c) {
  for (std::size_t a = 0; a < c.size(); ++a)
    for (std::size_t b = a + 1; b < c.size(); ++b)
      if (!p.comparable(c[a], c[b])) return false;
  return true;
}

bool is_antichain(const FinitePoset& p, const std::vector<int>& a) {
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = x + 1; y < a.size(); ++y)
      if (a[x] == a[y] || p.comparable(a[x], a[y])) return false;
  return true;
}

ChainPartition dilworth_partition(const FinitePoset& p) {
  const int n = static_cast<int>(p.size());
  // Left copy x is joined to right copy y when y < x, i.e. y may follow x.
  std::vector<int> next(n, -1), prev(n, -1);
  std::vector<int> seen(n, -1);
  std::function<bool(int, int)> augment = [&](int x, int stamp) -> bool {
    for (int y = 0; y < n; ++y) {
      if (!p.less[y][x] || seen[y] == stamp) continue;
      seen[y] = stamp;
      if (prev[y] < 0 || augment(prev[y], stamp)) {
        next[x] = y;
        prev[y] = x;
        return true;
      }
    }
    return false;
  };
  for (int x = 0; x < n; ++x) augment(x, x);

  ChainPartition out;
  for (int x = 0; x < n; ++x) {
    if (prev[x] >= 0) continue;
    std::vector<int> chain;
    for (int y = x; y >= 0; y = next[y]) chain.push_back(y);
    out.chains.push_back(std::move(chain));
  }

  // Konig: Z = vertices reachable from unmatched left vertices by
  // alternating paths; elements with left copy in Z and right copy outside Z
  // form a maximum antichain.
  std::vector<bool> zl(n, false), zr(n, false);
  std::deque<int> queue;
  for (int x = 0; x < n; ++x)
    if (next[x] < 0) {
      zl[x] = true;
      queue.push_back(x);
    }
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int y = 0; y < n; ++y) {
      if (!p.less[y][x] || zr[y]) continue;
      zr[y] = true;
      int x2 = prev[y];
      if (x2 >= 0 && !zl[x2]) {
        zl[x2] = true;
        queue.push_back(x2);
      }
    }
  }
  for (int x = 0; x < n; ++x)
    if (zl[x] && !zr[x]) out.antichain.push_back(x);
  if (out.antichain.size() != out.chains.size() || !is_antichain(p, out.antichain))
    throw DilworthError("antichain certificate does not match the chain cover");
  return out;
}

std::vector<std::vector<int>> maximal_chains(const FinitePoset& p, std::size_t cap) {
  const int n = static_cast<int>(p.size());
  // covers[x]: elements y < x with nothing strictly between.
  std::vector<std::vector<int>> covers(n);
  std::vector<bool> top(n, true);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!p.less[y][x]) continue;
      top[y] = false;
      bool cover = true;
      for (int z = 0; z < n && cover; ++z) cover = !(p.less[y][z] && p.less[z][x]);
      if (cover) covers[x].push_back(y);
    }
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> walk = [&](int x) {
    cur.push_back(x);
    if (covers[x].empty()) {
      if (out.size() >= cap) throw DilworthError("more than " + std::to_string(cap) + " maximal chains");
      out.push_back(cur);
    }
    for (int y : covers[x]) walk(y);
    cur.pop_back();
  };
  for (int x = 0; x < n; ++x)
    if (top[x]) walk(x);
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  });
  return out;
}

ChainPartition dilworth_with_maximal_chain(const FinitePoset& p) {
  const std::size_t d = dilworth_partition(p).chains.size();
  for (const auto& chain : maximal_chains(p)) {
    std::vector<bool> in(p.size(), false);
    for (int x : chain) in[x] = true;
    std::vector<int> rest;
    for (std::size_t x = 0; x < p.size(); ++x)
      if (!in[x]) rest.push_back(static_cast<int>(x));
    ChainPartition sub = dilworth_partition(p.restrict_to(rest));
    if (sub.chains.size() + 1 != d) continue;
    ChainPartition out;
    out.chains.push_back(chain);
    for (const auto& c : sub.chains) {
      std::vector<int> mapped;
      for (int x : c) mapped.push_back(rest[x]);
      out.chains.push_back(std::move(mapped));
    }
    out.maximal_chain = 0;
    out.antichain = dilworth_partition(p).antichain;
    return out;
  }
  throw DilworthError("no maximal chain has a complement of width d - 1");
}

}  // namespace cubical
