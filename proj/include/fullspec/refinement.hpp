// Color-refinement oracles: 1-WL on nodes and Local 2-GNN on ordered node
// pairs. HASH is realized as injective canonical relabeling: each round's
// signatures are numbered by first appearance under a fixed traversal order
// (node order, or row-major pair order), which realizes a perfect hash.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "fullspec/common.hpp"
#include "fullspec/graph.hpp"

namespace fullspec {

struct Coloring {
  std::vector<int> colors;
  int round = 0;

  int num_classes() const {
    return colors.empty() ? 0 : 1 + *std::max_element(colors.begin(),
                                                      colors.end());
  }

  std::map<int, int> histogram() const {
    std::map<int, int> h;
    for (int c : colors) ++h[c];
    return h;
  }
};

using NodeColoring = Coloring;
using PairColoring = Coloring;  // n^2 entries, pair (u, v) at index u*n + v

struct RefinementResult {
  Coloring stable;
  std::vector<Coloring> history;  // history[t] = coloring after t rounds
  int stabilization_round = 0;

  // Colors after k rounds; the partition is constant once stabilized.
  const Coloring& at_round(int k) const {
    const int idx = std::min<int>(k, static_cast<int>(history.size()) - 1);
    return history[idx];
  }
};

// (1_{u=v}, 1_{(u,v) in E}); simple graphs have no self-loops, so the
// diagonal atomic type is always (1, 0).
inline std::pair<int, int> atp(const Graph& g, int u, int v) {
  if (u < 0 || v < 0 || u >= g.n || v >= g.n)
    throw DomainError("atp: vertex out of range");
  return {u == v ? 1 : 0, g.has_edge(u, v) ? 1 : 0};
}

namespace detail {

// Float initial labels are quantized to 12 decimal digits so that they enter
// the color dictionary with a documented equivalence.
inline std::int64_t quantize_label(double x) {
  return static_cast<std::int64_t>(std::llround(x * 1e12));
}

template <typename Key>
std::vector<int> canonicalize(const std::vector<Key>& signatures) {
  std::map<Key, int> ids;
  std::vector<int> colors(signatures.size());
  for (std::size_t i = 0; i < signatures.size(); ++i) {
    auto [it, inserted] =
        ids.emplace(signatures[i], static_cast<int>(ids.size()));
    colors[i] = it->second;
  }
  return colors;
}

inline bool same_partition(const std::vector<int>& a,
                           const std::vector<int>& b) {
  // Canonical first-appearance ids make equal partitions literally equal.
  return a == b;
}

inline std::vector<int> initial_colors(const Graph& g,
                                       const std::optional<std::vector<double>>&
                                           init) {
  if (init) {
    if (static_cast<int>(init->size()) != g.n)
      throw DimensionError("initial labels: dimension mismatch");
    std::vector<std::int64_t> q(g.n);
    for (int i = 0; i < g.n; ++i) q[i] = quantize_label((*init)[i]);
    return canonicalize(q);
  }
  if (g.labels) return canonicalize(*g.labels);
  return std::vector<int>(g.n, 0);
}

}  // namespace detail

// 1-WL: refine (own color, sorted multiset of neighbor colors) until the
// partition stabilizes or max_rounds is reached.
inline RefinementResult wl1_refine(
    const Graph& g, const std::optional<std::vector<double>>& init,
    int max_rounds) {
  if (max_rounds < 0) throw DomainError("max_rounds must be non-negative");
  auto adj = g.adjacency_lists();
  RefinementResult res;
  std::vector<int> colors = detail::initial_colors(g, init);
  res.history.push_back({colors, 0});
  for (int round = 1; round <= max_rounds; ++round) {
    std::vector<std::pair<int, std::vector<int>>> sig(g.n);
    for (int v = 0; v < g.n; ++v) {
      std::vector<int> neigh;
      neigh.reserve(adj[v].size());
      for (int u : adj[v]) neigh.push_back(colors[u]);
      std::sort(neigh.begin(), neigh.end());
      sig[v] = {colors[v], std::move(neigh)};
    }
    std::vector<int> next = detail::canonicalize(sig);
    const bool stable = detail::same_partition(next, colors);
    colors = std::move(next);
    res.history.push_back({colors, round});
    if (stable) {
      res.stabilization_round = round - 1;
      res.stable = {colors, round};
      return res;
    }
  }
  res.stabilization_round = max_rounds;
  res.stable = res.history.back();
  return res;
}

// Local 2-GNN on ordered pairs: initialization (l(u), l(v), atp(u, v)),
// update HASH(own, {{color(w, v) : w in N(u)}}, {{color(u, w) : w in N(v)}}).
inline RefinementResult local2_refine(
    const Graph& g, const std::optional<std::vector<double>>& init,
    int max_rounds) {
  if (max_rounds < 0) throw DomainError("max_rounds must be non-negative");
  const int n = g.n;
  auto adj = g.adjacency_lists();
  std::vector<int> node0 = detail::initial_colors(g, init);

  std::vector<std::tuple<int, int, int, int>> sig0;
  sig0.reserve(static_cast<std::size_t>(n) * n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      auto [eq, ed] = atp(g, u, v);
      sig0.emplace_back(node0[u], node0[v], eq, ed);
    }
  std::vector<int> colors = detail::canonicalize(sig0);

  RefinementResult res;
  res.history.push_back({colors, 0});
  for (int round = 1; round <= max_rounds; ++round) {
    std::vector<std::tuple<int, std::vector<int>, std::vector<int>>> sig(
        static_cast<std::size_t>(n) * n);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        std::vector<int> from_u, from_v;
        from_u.reserve(adj[u].size());
        from_v.reserve(adj[v].size());
        for (int w : adj[u]) from_u.push_back(colors[w * n + v]);
        for (int w : adj[v]) from_v.push_back(colors[u * n + w]);
        std::sort(from_u.begin(), from_u.end());
        std::sort(from_v.begin(), from_v.end());
        sig[u * n + v] = {colors[u * n + v], std::move(from_u),
                          std::move(from_v)};
      }
    std::vector<int> next = detail::canonicalize(sig);
    const bool stable = detail::same_partition(next, colors);
    colors = std::move(next);
    res.history.push_back({colors, round});
    if (stable) {
      res.stabilization_round = round - 1;
      res.stable = {colors, round};
      return res;
    }
  }
  res.stabilization_round = max_rounds;
  res.stable = res.history.back();
  return res;
}

enum class RefinementMode { Wl1, Local2 };

// Stable color histograms compared on the disjoint union, which realizes a
// hash shared by both graphs.
inline bool distinguishable(const Graph& g1, const Graph& g2,
                            RefinementMode mode) {
  if (g1.n != g2.n) return true;
  Graph u = disjoint_union(g1, g2);
  // Labels survive the union only when both graphs carry them; otherwise run
  // on uniform initial colors.
  const int rounds = mode == RefinementMode::Wl1
                         ? u.n + 1
                         : u.n * u.n + 1;
  if (mode == RefinementMode::Wl1) {
    auto res = wl1_refine(u, std::nullopt, rounds);
    std::map<int, int> h1, h2;
    for (int i = 0; i < g1.n; ++i) ++h1[res.stable.colors[i]];
    for (int i = 0; i < g2.n; ++i) ++h2[res.stable.colors[g1.n + i]];
    return h1 != h2;
  }
  auto res = local2_refine(u, std::nullopt, rounds);
  std::map<int, int> h1, h2;
  const int n = u.n;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int c = res.stable.colors[a * n + b];
      const bool in1 = a < g1.n && b < g1.n;
      const bool in2 = a >= g1.n && b >= g1.n;
      if (in1) ++h1[c];
      if (in2) ++h2[c];
    }
  return h1 != h2;
}

}  // namespace fullspec
