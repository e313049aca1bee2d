// Constructive and falsification harnesses for the expressivity results:
// universality interpolation on node-pair signals, the Local 2-GNN upper
// bound for bivariate polynomial filters, the separating-polynomial lower
// bound, and the node-level 1-WL bound for univariate filters.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fullspec/filters.hpp"
#include "fullspec/refinement.hpp"

namespace fullspec {

// Stacked pairwise labels: row (u*n + v) is (l(u), l(v), 1_{u=v}, 1_{(u,v) in E}).
struct PairLabelMatrix {
  Eigen::MatrixXd values;  // n^2 x (2 d_node + 2)
  int n = 0;

  // Channel c viewed as an n x n pair signal with entry (u, v) at row u*n+v.
  Eigen::MatrixXd channel(int c) const {
    Eigen::MatrixXd m(n, n);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) m(u, v) = values(u * n + v, c);
    return m;
  }
};

inline PairLabelMatrix pair_label_matrix(const Graph& g,
                                         const Eigen::MatrixXd& node_labels) {
  if (node_labels.rows() != g.n)
    throw DimensionError("pair_label_matrix: label rows must match n");
  const int d = static_cast<int>(node_labels.cols());
  PairLabelMatrix out;
  out.n = g.n;
  out.values.resize(static_cast<long>(g.n) * g.n, 2 * d + 2);
  for (int u = 0; u < g.n; ++u)
    for (int v = 0; v < g.n; ++v) {
      long row = static_cast<long>(u) * g.n + v;
      out.values.block(row, 0, 1, d) = node_labels.row(u);
      out.values.block(row, d, 1, d) = node_labels.row(v);
      auto [eq, ed] = atp(g, u, v);
      out.values(row, 2 * d) = eq;
      out.values(row, 2 * d + 1) = ed;
    }
  return out;
}

// --- universality interpolation -------------------------------------------------

namespace detail {

// Monomial coefficients of the Lagrange basis polynomial over the given nodes.
inline std::vector<double> lagrange_monomial(const Eigen::VectorXd& nodes,
                                             int a) {
  std::vector<double> c{1.0};
  for (int k = 0; k < nodes.size(); ++k) {
    if (k == a) continue;
    const double denom = nodes(a) - nodes(k);
    std::vector<double> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i] += c[i] * (-nodes(k)) / denom;
      next[i + 1] += c[i] / denom;
    }
    c = std::move(next);
  }
  return c;
}

}  // namespace detail

// Bivariate Lagrange interpolation over the eigenvalue grid: returns q with
// the operator property  q(L (x) I, I (x) L) e = target. Preconditions: a
// simple spectrum, and every spectral coefficient (U^T e U)_{ij} nonzero.
inline BivariatePoly universal_interpolate(const Spectrum& s,
                                           const PairSignal& e,
                                           const PairSignal& target,
                                           double coeff_tol = 1e-9) {
  const int n = s.n();
  if (e.rows() != n || e.cols() != n || target.rows() != n ||
      target.cols() != n)
    throw DimensionError("universal_interpolate: dimension mismatch");
  for (int i = 0; i + 1 < n; ++i)
    if (s.eigenvalues(i + 1) - s.eigenvalues(i) <= s.default_tol())
      throw PreconditionError(
          "repeated eigenvalues: lambda_" + std::to_string(i) +
          " and lambda_" + std::to_string(i + 1) + " collide");
  Eigen::MatrixXd c = pair_gft(s, e);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(c(i, j)) <= coeff_tol)
        throw PreconditionError("vanishing spectral coefficient at (" +
                                std::to_string(i) + ", " + std::to_string(j) +
                                ")");
  Eigen::MatrixXd yhat = pair_gft(s, target);
  // Required scale on coefficient (i, j) is yhat/c; the operator applies
  // q(lambda_j, lambda_i) there, so the (s, t) grid value at (a, b) is the
  // required scale at (row b, column a).
  std::vector<std::vector<double>> lag(n);
  for (int a = 0; a < n; ++a)
    lag[a] = detail::lagrange_monomial(s.eigenvalues, a);
  BivariatePoly q;
  q.coeff = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double m = yhat(i, j) / c(i, j);
      const auto& ls = lag[j];  // s-side: column eigenvalue
      const auto& lt = lag[i];  // t-side: row eigenvalue
      for (std::size_t p = 0; p < ls.size(); ++p)
        for (std::size_t t = 0; t < lt.size(); ++t)
          q.coeff(p, t) += m * ls[p] * lt[t];
    }
  return q;
}

// --- randomized theorem harnesses ------------------------------------------------

inline BivariatePoly random_total_degree_poly(int max_total_degree, Rng& rng) {
  BivariatePoly q;
  q.coeff = Eigen::MatrixXd::Zero(max_total_degree + 1, max_total_degree + 1);
  for (int i = 0; i <= max_total_degree; ++i)
    for (int j = 0; j <= max_total_degree - i; ++j)
      q.coeff(i, j) = uniform_real(rng, -1.0, 1.0);
  q.total_degree_cap = max_total_degree;
  return q;
}

struct BoundViolation {
  int trial = 0;
  int color = 0;
  long pair_a = 0, pair_b = 0;
  double spread = 0.0;
};

struct BoundReport {
  std::string theorem;
  int degree = 0;
  int trials = 0;
  int color_rounds = 0;
  LaplacianKind kind = LaplacianKind::Combinatorial;
  double max_within_class_spread = 0.0;
  std::vector<BoundViolation> violations;

  bool passed() const { return violations.empty(); }
};

inline constexpr double kRowEqualityRel = 1e-8;
inline constexpr double kRowEqualityAbs = 1e-12;

// Equal Local 2-GNN colors must force equal filtered rows of
// p(L (x) I, I (x) L) (pair labels) W, for random p of total degree <= K and
// random W. Round-K colors pin the combinatorial coefficients (own degree and
// unit off-diagonals); the degree-normalized operator also draws on neighbor
// degrees, which the refinement only encodes one round later, so that variant
// is checked at round K + 1.
inline BoundReport check_order2_bound(
    const Graph& g, int max_total_degree, int trials, std::uint64_t seed,
    LaplacianKind kind = LaplacianKind::Combinatorial) {
  if (max_total_degree < 0 || trials < 1)
    throw DomainError("check_order2_bound: K >= 0 and trials >= 1 required");
  BoundReport report;
  report.theorem = "local2-upper-bound";
  report.degree = max_total_degree;
  report.trials = trials;
  report.kind = kind;
  report.color_rounds =
      kind == LaplacianKind::SymmetricNormalized ? max_total_degree + 1
                                                 : max_total_degree;

  const int n = g.n;
  Eigen::MatrixXd l = laplacian(g, kind);
  std::vector<double> init(n, 0.0);
  if (g.labels)
    for (int i = 0; i < n; ++i) init[i] = (*g.labels)[i];
  Eigen::MatrixXd node_labels(n, 1);
  for (int i = 0; i < n; ++i) node_labels(i, 0) = init[i];
  PairLabelMatrix pl = pair_label_matrix(g, node_labels);
  auto refinement =
      local2_refine(g, std::vector<double>(init), report.color_rounds);
  const auto& colors = refinement.at_round(report.color_rounds).colors;

  const int d = static_cast<int>(pl.values.cols());
  const int d_out = 2;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = make_rng(derive_seed(seed, trial));
    BivariatePoly p = random_total_degree_poly(max_total_degree, rng);
    Eigen::MatrixXd w(d, d_out);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d_out; ++j) w(i, j) = normal(rng);
    Eigen::MatrixXd lw = pl.values * w;  // n^2 x d_out
    Eigen::MatrixXd filtered(static_cast<long>(n) * n, d_out);
    for (int c = 0; c < d_out; ++c) {
      Eigen::MatrixXd chan(n, n);
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) chan(u, v) = lw(u * n + v, c);
      Eigen::MatrixXd out = apply_bivariate_poly(l, p, chan);
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) filtered(u * n + v, c) = out(u, v);
    }
    const double scale = std::max(1.0, filtered.cwiseAbs().maxCoeff());
    std::map<int, long> representative;
    for (long pr = 0; pr < static_cast<long>(n) * n; ++pr) {
      auto [it, inserted] = representative.emplace(colors[pr], pr);
      if (inserted) continue;
      const double spread =
          (filtered.row(pr) - filtered.row(it->second)).cwiseAbs().maxCoeff();
      report.max_within_class_spread =
          std::max(report.max_within_class_spread, spread);
      if (spread > kRowEqualityAbs + kRowEqualityRel * scale)
        report.violations.push_back(
            {trial, colors[pr], it->second, pr, spread});
    }
  }
  return report;
}

// Univariate spectral GNN Z = sum_t alpha_t L~^t (X W) against K+1 rounds of
// 1-WL: equal node colors must force equal Z rows.
inline BoundReport check_wl1_bound(const Graph& g, int degree, int trials,
                                   std::uint64_t seed) {
  if (degree < 0 || trials < 1)
    throw DomainError("check_wl1_bound: K >= 0 and trials >= 1 required");
  BoundReport report;
  report.theorem = "wl1-upper-bound";
  report.degree = degree;
  report.trials = trials;
  report.color_rounds = degree + 1;
  report.kind = LaplacianKind::SymmetricNormalized;

  const int n = g.n;
  Eigen::MatrixXd l = laplacian(g, LaplacianKind::SymmetricNormalized);
  std::vector<double> init(n, 0.0);
  if (g.labels)
    for (int i = 0; i < n; ++i) init[i] = (*g.labels)[i];
  Eigen::MatrixXd x(n, 1);
  for (int i = 0; i < n; ++i) x(i, 0) = init[i];
  auto refinement = wl1_refine(g, std::vector<double>(init), degree + 1);
  const auto& colors = refinement.at_round(degree + 1).colors;

  const int d_out = 2;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng = make_rng(derive_seed(seed, trial));
    std::vector<double> alpha(degree + 1);
    for (double& a : alpha) a = uniform_real(rng, -1.0, 1.0);
    Eigen::MatrixXd w(1, d_out);
    for (int j = 0; j < d_out; ++j) w(0, j) = normal(rng);
    UnivariatePoly p = UnivariatePoly::monomial(alpha);
    Eigen::MatrixXd z = p.apply(l, Eigen::MatrixXd(x * w));
    const double scale = std::max(1.0, z.cwiseAbs().maxCoeff());
    std::map<int, int> representative;
    for (int v = 0; v < n; ++v) {
      auto [it, inserted] = representative.emplace(colors[v], v);
      if (inserted) continue;
      const double spread =
          (z.row(v) - z.row(it->second)).cwiseAbs().maxCoeff();
      report.max_within_class_spread =
          std::max(report.max_within_class_spread, spread);
      if (spread > kRowEqualityAbs + kRowEqualityRel * scale)
        report.violations.push_back({trial, colors[v], it->second, v, spread});
    }
  }
  return report;
}

// --- separating polynomial (lower bound) -----------------------------------------

struct SeparatingConstruction {
  BivariatePoly poly;
  Eigen::VectorXd weight;           // the accepted W (d x 1)
  Eigen::MatrixXd filtered;         // n x n realized pair values
  std::vector<int> stable_colors;   // stable Local 2-GNN colors, row-major
  int stable_classes = 0;
  int value_classes = 0;
  bool refines = false;             // equal values imply equal stable colors
  bool has_multi_class = false;
  // Strictness of the refinement wherever the coloring is non-discrete.
  bool strictness_ok = false;
  int resample_attempts = 0;
};

inline constexpr int kWeightResampleCap = 64;

// Builds (q, W) whose filtered pair values induce a partition refining the
// stable Local 2-GNN coloring: per stable class t the targets take distinct
// values inside the interval [t, t + 0.5].
inline SeparatingConstruction construct_separating_poly(const Graph& g,
                                                        const Spectrum& s,
                                                        const PairLabelMatrix&
                                                            labels,
                                                        std::uint64_t seed,
                                                        double coeff_tol =
                                                            1e-6) {
  const int n = g.n;
  if (labels.n != n || s.n() != n)
    throw DimensionError("construct_separating_poly: dimension mismatch");

  std::vector<double> init(n, 0.0);
  if (g.labels)
    for (int i = 0; i < n; ++i) init[i] = (*g.labels)[i];
  auto refinement = local2_refine(g, std::vector<double>(init), n * n + 1);
  const auto& stable = refinement.stable.colors;

  SeparatingConstruction out;
  out.stable_colors = stable;
  out.stable_classes = refinement.stable.num_classes();

  const int d = static_cast<int>(labels.values.cols());
  Rng rng = make_rng(seed);
  PairSignal eps;
  bool accepted = false;
  for (int attempt = 0; attempt < kWeightResampleCap; ++attempt) {
    ++out.resample_attempts;
    Eigen::VectorXd w(d);
    for (int i = 0; i < d; ++i) w(i) = normal(rng);
    Eigen::VectorXd lw = labels.values * w;
    Eigen::MatrixXd chan(n, n);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) chan(u, v) = lw(u * n + v);
    if (pair_gft(s, chan).cwiseAbs().minCoeff() > coeff_tol) {
      eps = chan;
      out.weight = w;
      accepted = true;
      break;
    }
  }
  if (!accepted)
    throw PreconditionError(
        "no weight vector with fully supported spectral coefficients after " +
        std::to_string(kWeightResampleCap) + " attempts");

  // Distinct targets inside disjoint per-class intervals [t, t + 0.5].
  std::map<int, int> class_size, class_seen;
  for (int c : stable) ++class_size[c];
  Eigen::MatrixXd target(n, n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      const int c = stable[u * n + v];
      const int pos = class_seen[c]++;
      target(u, v) = c + 0.5 * (pos + 1) / (class_size[c] + 1);
    }

  out.poly = universal_interpolate(s, eps, target);
  out.filtered = apply_bivariate_poly(reconstruct(s), out.poly, eps);

  // Partition the realized values; the class spacing is >= 0.5 / (n^2 + 1),
  // far above the interpolation error.
  const double value_tol = 0.05 / (n * n + 1);
  std::vector<std::pair<double, long>> order;
  order.reserve(static_cast<std::size_t>(n) * n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      order.emplace_back(out.filtered(u, v), static_cast<long>(u) * n + v);
  std::sort(order.begin(), order.end());
  out.refines = true;
  out.value_classes = 1;
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (order[i].first - order[i - 1].first > value_tol)
      ++out.value_classes;
    else if (stable[order[i].second] != stable[order[i - 1].second])
      out.refines = false;
  }
  out.has_multi_class =
      std::any_of(class_size.begin(), class_size.end(),
                  [](const auto& kv) { return kv.second >= 2; });
  out.strictness_ok =
      out.refines &&
      (!out.has_multi_class || out.value_classes > out.stable_classes);
  return out;
}

}  // namespace fullspec
