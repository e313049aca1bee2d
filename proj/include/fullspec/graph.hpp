// Undirected simple graphs: construction, Laplacians, labeled-graph metrics,
// block-model generation, Cartesian products, and edge-list parsing.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fullspec/common.hpp"

namespace fullspec {

enum class LaplacianKind { Combinatorial, SymmetricNormalized };

struct Graph {
  int n = 0;
  // Unordered edges stored as (u, v) with u < v, sorted, duplicate-free.
  std::vector<std::pair<int, int>> edges;
  // Optional per-node class ids (1-based in files; stored as given).
  std::optional<std::vector<int>> labels;

  int num_edges() const { return static_cast<int>(edges.size()); }

  bool has_edge(int u, int v) const {
    if (u == v) return false;
    auto e = std::minmax(u, v);
    return std::binary_search(edges.begin(), edges.end(),
                              std::make_pair(e.first, e.second));
  }

  std::vector<std::vector<int>> adjacency_lists() const {
    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : edges) {
      adj[u].push_back(v);
      adj[v].push_back(u);
    }
    return adj;
  }

  std::vector<int> degrees() const {
    std::vector<int> deg(n, 0);
    for (auto [u, v] : edges) {
      ++deg[u];
      ++deg[v];
    }
    return deg;
  }
};

inline Graph make_graph(int n, std::vector<std::pair<int, int>> edges,
                        std::optional<std::vector<int>> labels = std::nullopt) {
  Graph g;
  g.n = n;
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw DomainError("edge endpoint out of range");
    if (u == v) throw DomainError("self-loop rejected");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.edges = std::move(edges);
  if (labels) {
    if (static_cast<int>(labels->size()) != n)
      throw DomainError("label count does not match vertex count");
    g.labels = std::move(labels);
  }
  return g;
}

struct Partition {
  std::vector<int> class_of;  // 0-based class index per node
  std::vector<int> sizes;     // n_a per class, all positive

  int num_classes() const { return static_cast<int>(sizes.size()); }
  int n() const { return static_cast<int>(class_of.size()); }

  std::vector<std::vector<int>> members() const {
    std::vector<std::vector<int>> m(sizes.size());
    for (int i = 0; i < n(); ++i) m[class_of[i]].push_back(i);
    return m;
  }

  // Classes numbered by first appearance of each distinct label.
  static Partition from_labels(const std::vector<int>& labels) {
    Partition p;
    p.class_of.resize(labels.size());
    std::map<int, int> id;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      auto [it, inserted] = id.emplace(labels[i], static_cast<int>(id.size()));
      if (inserted) p.sizes.push_back(0);
      p.class_of[i] = it->second;
      ++p.sizes[it->second];
    }
    return p;
  }

  static Partition from_graph(const Graph& g) {
    if (!g.labels) throw DomainError("graph carries no labels");
    return from_labels(*g.labels);
  }

  static Partition from_sizes(const std::vector<int>& sizes) {
    Partition p;
    p.sizes = sizes;
    for (std::size_t a = 0; a < sizes.size(); ++a) {
      if (sizes[a] <= 0) throw DomainError("class sizes must be positive");
      p.class_of.insert(p.class_of.end(), sizes[a], static_cast<int>(a));
    }
    return p;
  }
};

// --- edge-list text format: "u v" or "u v label", '#' comments -------------

struct LoadResult {
  Graph graph;
  // Original file id of each vertex; identity when the input had no gaps.
  std::vector<long> original_ids;
  bool remapped = false;
};

inline LoadResult load_edge_list(const std::string& text) {
  struct RawEdge {
    long u, v;
  };
  std::vector<RawEdge> raw;
  std::map<long, std::optional<int>> label_of;  // per original id
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool any_label = false, any_unlabeled_line = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r\n") == std::string::npos)
      continue;  // blank or comment-only line
    std::istringstream ls(line);
    long u, v;
    if (!(ls >> u) || !(ls >> v))
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected two vertex ids");
    if (u < 0 || v < 0)
      throw DomainError("line " + std::to_string(lineno) +
                        ": negative vertex id");
    if (u == v)
      throw DomainError("line " + std::to_string(lineno) + ": self-loop");
    long lab;
    bool has_lab = static_cast<bool>(ls >> lab);
    std::string rest;
    if (ls >> rest)
      throw ParseError("line " + std::to_string(lineno) +
                       ": trailing tokens");
    if (has_lab) {
      // The third column labels the first-column vertex; the second vertex
      // picks its label up from rows where it appears first.
      any_label = true;
      auto& su = label_of[u];
      if (su && *su != static_cast<int>(lab))
        throw DomainError("line " + std::to_string(lineno) +
                          ": conflicting label for vertex " +
                          std::to_string(u));
      su = static_cast<int>(lab);
      label_of.try_emplace(v);
    } else {
      any_unlabeled_line = true;
      label_of.try_emplace(u);
      label_of.try_emplace(v);
    }
    raw.push_back({u, v});
  }
  if (any_label && any_unlabeled_line)
    throw ParseError("mixed labeled and unlabeled lines");

  // Compact ids to dense 0-based order (reported remap).
  std::map<long, int> remap;
  for (const auto& e : raw) {
    remap.try_emplace(e.u);
    remap.try_emplace(e.v);
  }
  int next = 0;
  for (auto& [orig, dense] : remap) dense = next++;

  LoadResult out;
  out.graph.n = next;
  std::vector<std::pair<int, int>> edges;
  edges.reserve(raw.size());
  for (const auto& e : raw) {
    int u = remap[e.u], v = remap[e.v];
    if (u > v) std::swap(u, v);
    edges.emplace_back(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  out.graph.edges = std::move(edges);
  out.original_ids.resize(next);
  for (auto& [orig, dense] : remap) {
    out.original_ids[dense] = orig;
    out.remapped = out.remapped || orig != dense;
  }
  if (any_label) {
    std::vector<int> labels(next);
    for (auto& [orig, dense] : remap) {
      const auto& slot = label_of[orig];
      if (!slot)
        throw DomainError("vertex " + std::to_string(orig) +
                          " has no label while others do");
      labels[dense] = *slot;
    }
    out.graph.labels = std::move(labels);
  }
  return out;
}

// --- Laplacians -------------------------------------------------------------

inline Eigen::MatrixXd adjacency_matrix(const Graph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.n, g.n);
  for (auto [u, v] : g.edges) a(u, v) = a(v, u) = 1.0;
  return a;
}

// D - A, or I - D^{-1/2} A D^{-1/2} with the isolated-node convention
// D^{-1/2}_{ii} = 0 (so isolated nodes carry L_ii = 1 via the identity).
inline Eigen::MatrixXd laplacian(const Graph& g, LaplacianKind kind) {
  Eigen::MatrixXd a = adjacency_matrix(g);
  Eigen::VectorXd deg = a.rowwise().sum();
  if (kind == LaplacianKind::Combinatorial) {
    Eigen::MatrixXd l = -a;
    l.diagonal() += deg;
    return l;
  }
  Eigen::VectorXd dinv = deg.unaryExpr(
      [](double d) { return d > 0.0 ? 1.0 / std::sqrt(d) : 0.0; });
  Eigen::MatrixXd l =
      -(dinv.asDiagonal() * a * dinv.asDiagonal());
  l.diagonal().array() += 1.0;
  return l;
}

// --- labeled-graph metrics and generators -----------------------------------

// Fraction of edges joining differently labeled endpoints.
inline double edge_homophily(const Graph& g) {
  if (!g.labels) throw DomainError("edge_homophily requires node labels");
  if (g.edges.empty()) throw DomainError("edge_homophily requires edges");
  long cross = 0;
  for (auto [u, v] : g.edges) cross += (*g.labels)[u] != (*g.labels)[v];
  return static_cast<double>(cross) / static_cast<double>(g.edges.size());
}

struct GeneratedGraph {
  Graph graph;
  double realized_h = 0.0;
  double p_intra = 0.0;
  double p_inter = 0.0;
};

// Two-parameter stochastic block model solved from (target_h, avg_degree):
// expected cross-edge fraction equals target_h, expected mean degree equals
// avg_degree. Per-pair Bernoulli sampling, so no multi-edges arise.
inline GeneratedGraph generate_class_graph(const Partition& partition,
                                           double target_h, double avg_degree,
                                           std::uint64_t seed) {
  if (target_h < 0.0 || target_h > 1.0)
    throw DomainError("target_h must lie in [0, 1]");
  if (avg_degree <= 0.0) throw DomainError("avg_degree must be positive");
  const int n = partition.n();
  const int k = partition.num_classes();
  double pairs_intra = 0.0;
  for (int a = 0; a < k; ++a) {
    double na = partition.sizes[a];
    pairs_intra += na * (na - 1.0) / 2.0;
  }
  double pairs_inter = 0.0;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      pairs_inter +=
          static_cast<double>(partition.sizes[a]) * partition.sizes[b];

  if (k == 1 && target_h != 0.0)
    throw DomainError("single-class partition requires target_h = 0");

  const double target_edges = n * avg_degree / 2.0;
  const double p_intra =
      pairs_intra > 0.0 ? (1.0 - target_h) * target_edges / pairs_intra : 0.0;
  const double p_inter =
      pairs_inter > 0.0 ? target_h * target_edges / pairs_inter : 0.0;
  if (p_intra > 1.0 || p_inter > 1.0)
    throw DomainError("infeasible (target_h, avg_degree) for these sizes");
  if (pairs_intra == 0.0 && target_h < 1.0 && k > 1)
    throw DomainError("all classes are singletons; only target_h = 1 feasible");

  Rng rng = make_rng(seed);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      double p = partition.class_of[u] == partition.class_of[v] ? p_intra
                                                                : p_inter;
      if (uniform_real(rng, 0.0, 1.0) < p) edges.emplace_back(u, v);
    }
  }
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = partition.class_of[i] + 1;
  GeneratedGraph out;
  out.graph = make_graph(n, std::move(edges), std::move(labels));
  out.p_intra = p_intra;
  out.p_inter = p_inter;
  out.realized_h = out.graph.edges.empty() ? 0.0 : edge_homophily(out.graph);
  return out;
}

// G square G on V x V: (u,v) ~ (u',v') iff (u=u' and v~v') or (v=v' and u~u').
// Vertex (u, v) is indexed as u*n + v.
inline Graph cartesian_product(const Graph& g) {
  const int n = g.n;
  std::vector<std::pair<int, int>> edges;
  edges.reserve(2 * static_cast<std::size_t>(n) * g.edges.size());
  for (int u = 0; u < n; ++u)
    for (auto [v, w] : g.edges) edges.emplace_back(u * n + v, u * n + w);
  for (int v = 0; v < n; ++v)
    for (auto [u, w] : g.edges) edges.emplace_back(u * n + v, w * n + v);
  return make_graph(n * n, std::move(edges));
}

// --- small named graphs and random generators (test/CLI plumbing) ----------

inline Graph path_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return make_graph(n, std::move(e));
}

inline Graph cycle_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return make_graph(n, std::move(e));
}

inline Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return make_graph(n, std::move(e));
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<std::pair<int, int>> e = a.edges;
  for (auto [u, v] : b.edges) e.emplace_back(u + a.n, v + a.n);
  std::optional<std::vector<int>> labels;
  if (a.labels && b.labels) {
    labels = *a.labels;
    labels->insert(labels->end(), b.labels->begin(), b.labels->end());
  }
  return make_graph(a.n + b.n, std::move(e), std::move(labels));
}

// 3-regular asymmetric graph on 12 vertices (LCF [-5,-2,-4,2,5,-2,2,5,-2,-5,4,2]).
inline Graph frucht_graph() {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < 12; ++i) e.emplace_back(i, (i + 1) % 12);
  const int lcf[12] = {-5, -2, -4, 2, 5, -2, 2, 5, -2, -5, 4, 2};
  for (int i = 0; i < 12; ++i) e.emplace_back(i, ((i + lcf[i]) % 12 + 12) % 12);
  return make_graph(12, std::move(e));
}

inline Graph relabel(const Graph& g, const std::vector<int>& perm) {
  std::vector<std::pair<int, int>> e;
  e.reserve(g.edges.size());
  for (auto [u, v] : g.edges) e.emplace_back(perm[u], perm[v]);
  std::optional<std::vector<int>> labels;
  if (g.labels) {
    labels.emplace(g.n);
    for (int i = 0; i < g.n; ++i) (*labels)[perm[i]] = (*g.labels)[i];
  }
  return make_graph(g.n, std::move(e), std::move(labels));
}

inline int component_count(const Graph& g) {
  auto adj = g.adjacency_lists();
  std::vector<char> seen(g.n, 0);
  int components = 0;
  for (int root = 0; root < g.n; ++root) {
    if (seen[root]) continue;
    ++components;
    std::vector<int> stack{root};
    seen[root] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : adj[u])
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
    }
  }
  return components;
}

inline bool is_connected(const Graph& g) {
  return g.n == 0 || component_count(g) == 1;
}

inline Graph gnp_graph(int n, double p, Rng& rng,
                       std::optional<std::vector<int>> labels = std::nullopt) {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (uniform_real(rng, 0.0, 1.0) < p) e.emplace_back(u, v);
  return make_graph(n, std::move(e), std::move(labels));
}

inline Graph random_connected_graph(int n, double p, Rng& rng) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Graph g = gnp_graph(n, p, rng);
    if (is_connected(g)) return g;
  }
  throw NumericError("failed to sample a connected graph");
}

}  // namespace fullspec
