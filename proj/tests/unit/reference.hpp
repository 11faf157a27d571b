#pragma once

// Naive reference implementations used as test oracles. Nothing here calls
// into the library except to convert results at the boundary.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "distspec/confusability.hpp"

namespace ref {

/// splitmix64; deterministic across platforms, unlike std distributions.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
};

/// Off-diagonal adjacency as bitmasks, N <= 64.
using Graph = std::vector<std::uint64_t>;

inline Graph random_graph(Rng& rng, std::size_t n, double density) {
  Graph g(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.uniform() < density) {
        g[i] |= std::uint64_t{1} << j;
        g[j] |= std::uint64_t{1} << i;
      }
  return g;
}

inline distspec::ConfusabilityMatrix to_conf(const Graph& g) {
  std::vector<std::pair<distspec::Index, distspec::Index>> edges;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if ((g[i] >> j) & 1U) edges.emplace_back(i, j);
  return distspec::ConfusabilityMatrix::from_edges(g.size(), edges);
}

inline bool independent(const Graph& g, std::uint64_t set) {
  for (std::uint64_t s = set; s; s &= s - 1)
    if (g[std::countr_zero(s)] & set) return false;
  return true;
}

/// Largest independent set by scanning all 2^N subsets (N <= 20). Also
/// returns the lexicographically least sorted index list among the maxima.
inline std::pair<std::size_t, std::vector<std::size_t>> mis_by_subsets(const Graph& g) {
  const std::size_t n = g.size();
  std::size_t best = 0;
  std::vector<std::size_t> witness;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    const auto k = static_cast<std::size_t>(std::popcount(s));
    if (k < best || !independent(g, s)) continue;
    std::vector<std::size_t> v;
    for (std::uint64_t t = s; t; t &= t - 1) v.push_back(static_cast<std::size_t>(std::countr_zero(t)));
    if (k > best || v < witness) {
      best = k;
      witness = std::move(v);
    }
  }
  return {best, witness};
}

/// Include/exclude recursion on the lowest candidate; for N <= 64.
inline std::size_t mis_recursive(const Graph& g, std::uint64_t cand, std::size_t cur = 0, std::size_t best = 0) {
  if (!cand) return std::max(cur, best);
  if (cur + static_cast<std::size_t>(std::popcount(cand)) <= best) return best;
  const int v = std::countr_zero(cand);
  best = mis_recursive(g, cand & ~(g[v] | (std::uint64_t{1} << v)), cur + 1, best);
  return mis_recursive(g, cand & ~(std::uint64_t{1} << v), cur, best);
}

inline std::size_t mis(const Graph& g) {
  const std::uint64_t all = g.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.size()) - 1;
  return mis_recursive(g, all);
}

/// Binary Hamming confusability graph: words at distance below d.
inline Graph hamming_graph(int n, int d) {
  const std::size_t size = std::size_t{1} << n;
  Graph g(size, 0);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j)
      if (i != j && std::popcount(i ^ j) < d) g[i] |= std::uint64_t{1} << j;
  return g;
}

inline double binary_kl(double a, double b) {
  double r = 0.0;
  if (a > 0) r += a * std::log(a / b);
  if (a < 1) r += (1 - a) * std::log((1 - a) / (1 - b));
  return r;
}

inline double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace ref
