// Classwise feature model and its analytic mean-regression loss, Reynolds
// averaging onto the classwise-equivariant commutant, the closed-form optimal
// convolution with its high-dimensional asymptotics, near-diagonal spectral
// energy, and the rank obstruction showing diagonal-spectral filters with
// vanishing cross-class entries collapse to a multiple of the identity.
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "fullspec/graph.hpp"
#include "fullspec/spectral.hpp"

namespace fullspec {

// Isotropic-trace class model: means on the unit sphere, per-class covariance
// (tau_a / d) I so that the total variance per class is tau_a.
struct ClassModel {
  std::vector<int> sizes;   // n_a
  Eigen::MatrixXd means;    // k x d, unit rows
  std::vector<double> taus; // tau_a > 0
  std::uint64_t seed = 0;

  int k() const { return static_cast<int>(sizes.size()); }
  int dim() const { return static_cast<int>(means.cols()); }
  int n() const { return std::accumulate(sizes.begin(), sizes.end(), 0); }

  int class_of(int node) const {
    int a = 0, off = sizes[0];
    while (node >= off) off += sizes[++a];
    return a;
  }

  std::vector<int> offsets() const {
    std::vector<int> off(sizes.size() + 1, 0);
    for (std::size_t a = 0; a < sizes.size(); ++a)
      off[a + 1] = off[a] + sizes[a];
    return off;
  }
};

inline ClassModel sample_model(const std::vector<int>& sizes, int dim,
                               const std::vector<double>& taus,
                               std::uint64_t seed) {
  if (dim < 1) throw DomainError("feature dimension must be at least 1");
  if (sizes.size() != taus.size())
    throw DomainError("sizes and taus must have equal length");
  for (int s : sizes)
    if (s <= 0) throw DomainError("class sizes must be positive");
  for (double t : taus)
    if (t <= 0.0) throw DomainError("taus must be positive");
  ClassModel m;
  m.sizes = sizes;
  m.taus = taus;
  m.seed = seed;
  m.means.resize(sizes.size(), dim);
  Rng rng = make_rng(seed);
  for (int a = 0; a < m.k(); ++a) {
    for (int j = 0; j < dim; ++j) m.means(a, j) = normal(rng);
    m.means.row(a) /= m.means.row(a).norm();
  }
  return m;
}

inline Eigen::MatrixXd sample_features(const ClassModel& m,
                                       std::uint64_t seed) {
  Eigen::MatrixXd x(m.n(), m.dim());
  Rng rng = make_rng(seed);
  auto off = m.offsets();
  for (int a = 0; a < m.k(); ++a) {
    const double sd = std::sqrt(m.taus[a] / m.dim());
    for (int i = off[a]; i < off[a + 1]; ++i)
      for (int j = 0; j < m.dim(); ++j)
        x(i, j) = m.means(a, j) + normal(rng, 0.0, sd);
  }
  return x;
}

// Analytic classwise mean-regression loss: for each node p of class a,
// squared bias || sum_b (row-sum of C_{p,V_b}) m_b - m_a ||^2 plus variance
// sum_b tau_b ||C_{p,V_b}||^2, averaged within classes.
inline double loss(const Eigen::MatrixXd& c, const ClassModel& m) {
  const int n = m.n();
  if (c.rows() != n || c.cols() != n)
    throw DimensionError("loss: convolution size must match model");
  auto off = m.offsets();
  double total = 0.0;
  for (int a = 0; a < m.k(); ++a) {
    double class_sum = 0.0;
    for (int p = off[a]; p < off[a + 1]; ++p) {
      Eigen::VectorXd mean_out = Eigen::VectorXd::Zero(m.dim());
      double variance = 0.0;
      for (int b = 0; b < m.k(); ++b) {
        const auto row = c.row(p).segment(off[b], m.sizes[b]);
        mean_out += row.sum() * m.means.row(b).transpose();
        variance += m.taus[b] * row.squaredNorm();
      }
      class_sum +=
          (mean_out - m.means.row(a).transpose()).squaredNorm() + variance;
    }
    total += class_sum / m.sizes[a];
  }
  return total;
}

// --- classwise-equivariant convolutions ---------------------------------------

// C = sum_a (alpha_a I_a + beta_a J_a) + sum_{a != b} gamma_ab J_ab.
// Singleton classes carry s_a = alpha_a + beta_a with alpha_a fixed at 0.
struct EquivariantConv {
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;
  Eigen::MatrixXd gamma;  // k x k, diagonal unused (zero)

  Eigen::MatrixXd assemble(const ClassModel& m) const {
    const int k = m.k();
    if (alpha.size() != k || beta.size() != k || gamma.rows() != k ||
        gamma.cols() != k)
      throw DimensionError("EquivariantConv: coefficient size mismatch");
    auto off = m.offsets();
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(m.n(), m.n());
    for (int a = 0; a < k; ++a) {
      c.block(off[a], off[a], m.sizes[a], m.sizes[a]).setConstant(beta(a));
      c.block(off[a], off[a], m.sizes[a], m.sizes[a]).diagonal().array() +=
          alpha(a);
      for (int b = 0; b < k; ++b)
        if (b != a)
          c.block(off[a], off[b], m.sizes[a], m.sizes[b])
              .setConstant(gamma(a, b));
    }
    return c;
  }
};

// Closed-form loss on the commutant: per class a the per-node quadratic
// || u_a + M_{-a} gamma_a ||^2 + tau_a ((alpha_a + beta_a)^2 + (n_a - 1) beta_a^2)
// + gamma_a^T D_{-a} gamma_a with u_a = (alpha_a + n_a beta_a - 1) m_a.
inline double loss_equivariant(const EquivariantConv& conv,
                               const ClassModel& m) {
  const int k = m.k();
  double total = 0.0;
  for (int a = 0; a < k; ++a) {
    Eigen::VectorXd bias = (conv.alpha(a) + m.sizes[a] * conv.beta(a) - 1.0) *
                           m.means.row(a).transpose();
    double gamma_var = 0.0;
    for (int b = 0; b < k; ++b) {
      if (b == a) continue;
      bias += conv.gamma(a, b) * m.sizes[b] * m.means.row(b).transpose();
      gamma_var += m.taus[b] * m.sizes[b] * conv.gamma(a, b) * conv.gamma(a, b);
    }
    const double ab = conv.alpha(a) + conv.beta(a);
    total += bias.squaredNorm() +
             m.taus[a] * (ab * ab + (m.sizes[a] - 1) * conv.beta(a) *
                                        conv.beta(a)) +
             gamma_var;
  }
  return total;
}

// Group average over independent within-class permutations, computed in
// closed form: diagonal blocks average to alpha I + beta J, off-diagonal
// blocks to constant gamma J.
inline Eigen::MatrixXd reynolds_average(const Eigen::MatrixXd& c,
                                        const Partition& partition) {
  const int n = partition.n();
  if (c.rows() != n || c.cols() != n)
    throw DimensionError("reynolds_average: size mismatch");
  auto members = partition.members();
  Eigen::MatrixXd out(n, n);
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = 0; b < members.size(); ++b) {
      if (a == b) {
        const auto& va = members[a];
        const int na = static_cast<int>(va.size());
        double diag = 0.0, offd = 0.0;
        for (int p : va) diag += c(p, p);
        diag /= na;
        if (na > 1) {
          for (int p : va)
            for (int q : va)
              if (p != q) offd += c(p, q);
          offd /= static_cast<double>(na) * (na - 1);
        }
        for (int p : va)
          for (int q : va) out(p, q) = p == q ? diag : offd;
      } else {
        double mean = 0.0;
        for (int p : members[a])
          for (int q : members[b]) mean += c(p, q);
        mean /= static_cast<double>(members[a].size()) * members[b].size();
        for (int p : members[a])
          for (int q : members[b]) out(p, q) = mean;
      }
    }
  }
  return out;
}

// Extracts commutant coefficients from an already-equivariant matrix.
inline EquivariantConv equivariant_coefficients(const Eigen::MatrixXd& c,
                                                const ClassModel& m) {
  auto off = m.offsets();
  const int k = m.k();
  EquivariantConv conv;
  conv.alpha = Eigen::VectorXd::Zero(k);
  conv.beta = Eigen::VectorXd::Zero(k);
  conv.gamma = Eigen::MatrixXd::Zero(k, k);
  for (int a = 0; a < k; ++a) {
    const double diag = c(off[a], off[a]);
    const double offd =
        m.sizes[a] > 1 ? c(off[a], off[a] + 1) : 0.0;
    if (m.sizes[a] > 1) {
      conv.beta(a) = offd;
      conv.alpha(a) = diag - offd;
    } else {
      conv.beta(a) = diag;  // singleton: s_a with alpha_a = 0
    }
    for (int b = 0; b < k; ++b)
      if (b != a) conv.gamma(a, b) = c(off[a], off[b]);
  }
  return conv;
}

// --- closed-form optimal convolution --------------------------------------------

struct OptimalConvolution {
  EquivariantConv coefficients;
  Eigen::MatrixXd matrix;
  std::vector<double> class_gain;  // A_a per class
};

// Per class a: h_a = M_{-a}^T m_a, solve the SPD system (G_{-a} + D_{-a}),
// A_a = ||m_a||^2 - h_a^T (G+D)^{-1} h_a, then beta_a = A_a / (n_a A_a + tau_a)
// and gamma_a = tau_a / (n_a A_a + tau_a) (G+D)^{-1} h_a; alpha_a = 0.
inline OptimalConvolution optimal_convolution(const ClassModel& m) {
  const int k = m.k();
  OptimalConvolution out;
  out.coefficients.alpha = Eigen::VectorXd::Zero(k);
  out.coefficients.beta = Eigen::VectorXd::Zero(k);
  out.coefficients.gamma = Eigen::MatrixXd::Zero(k, k);
  for (int a = 0; a < k; ++a) {
    std::vector<int> others;
    for (int b = 0; b < k; ++b)
      if (b != a) others.push_back(b);
    double gain = m.means.row(a).squaredNorm();
    Eigen::VectorXd solution;
    if (!others.empty()) {
      Eigen::MatrixXd m_minus(m.dim(), others.size());
      Eigen::VectorXd d_minus(others.size());
      for (std::size_t idx = 0; idx < others.size(); ++idx) {
        m_minus.col(idx) =
            m.sizes[others[idx]] * m.means.row(others[idx]).transpose();
        d_minus(idx) = m.taus[others[idx]] * m.sizes[others[idx]];
      }
      Eigen::MatrixXd system = m_minus.transpose() * m_minus;
      system.diagonal() += d_minus;
      Eigen::VectorXd h = m_minus.transpose() * m.means.row(a).transpose();
      Eigen::LLT<Eigen::MatrixXd> llt(system);
      if (llt.info() != Eigen::Success)
        throw NumericError("cross-class system not positive definite");
      solution = llt.solve(h);
      gain -= h.dot(solution);
    }
    const double denom = m.sizes[a] * gain + m.taus[a];
    out.coefficients.beta(a) = gain / denom;
    if (!others.empty()) {
      Eigen::VectorXd gamma = (m.taus[a] / denom) * solution;
      for (std::size_t idx = 0; idx < others.size(); ++idx)
        out.coefficients.gamma(a, others[idx]) = gamma(idx);
    }
    out.class_gain.push_back(gain);
  }
  out.matrix = out.coefficients.assemble(m);
  return out;
}

// d -> infinity limit of the optimal convolution: block-diagonal with
// constant blocks 1 / (n_a + tau_a).
inline Eigen::MatrixXd limit_convolution(const ClassModel& m) {
  auto off = m.offsets();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(m.n(), m.n());
  for (int a = 0; a < m.k(); ++a)
    c.block(off[a], off[a], m.sizes[a], m.sizes[a])
        .setConstant(1.0 / (m.sizes[a] + m.taus[a]));
  return c;
}

// --- high-dimensional sweep -------------------------------------------------------

struct SweepRow {
  int dim = 0;
  std::uint64_t seed = 0;
  int class_id = 0;
  double beta_err = 0.0;   // |beta_a - 1/(n_a + tau_a)|
  double gamma_max = 0.0;  // max_b |gamma_ab|, 0 when k = 1
};

struct SweepSummary {
  std::vector<int> dims;
  std::vector<double> beta_median;   // over (seed, class) cells per dim
  std::vector<double> gamma_median;  // over per-seed maxima per dim
  bool beta_non_increasing = false;
  bool gamma_non_increasing = false;
  double gamma_shrink_ratio = 0.0;  // first / last median
  // Envelope check against the c sqrt(log d / d) rate fitted at the first dim.
  double rate_constant = 0.0;
  bool rate_envelope_ok = false;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  SweepSummary summary;
};

namespace detail {
inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t half = v.size() / 2;
  return v.size() % 2 ? v[half] : 0.5 * (v[half - 1] + v[half]);
}
}  // namespace detail

inline SweepResult asymptotic_sweep(const std::vector<int>& sizes,
                                    const std::vector<double>& taus,
                                    const std::vector<int>& dims, int seeds,
                                    std::uint64_t base_seed = 0) {
  if (!std::is_sorted(dims.begin(), dims.end()))
    throw DomainError("dims must be ascending");
  if (dims.empty() || seeds < 1)
    throw DomainError("sweep needs dims and at least one seed");
  SweepResult res;
  res.summary.dims = dims;
  const int k = static_cast<int>(sizes.size());
  for (std::size_t di = 0; di < dims.size(); ++di) {
    std::vector<double> beta_cells, gamma_cells;
    for (int s = 0; s < seeds; ++s) {
      const std::uint64_t cell_seed =
          derive_seed(base_seed, di * 1000003ull + s);
      ClassModel model = sample_model(sizes, dims[di], taus, cell_seed);
      OptimalConvolution opt = optimal_convolution(model);
      double gmax = 0.0;
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
          if (b != a) gmax = std::max(gmax, std::abs(opt.coefficients.gamma(a, b)));
      for (int a = 0; a < k; ++a) {
        SweepRow row;
        row.dim = dims[di];
        row.seed = cell_seed;
        row.class_id = a;
        row.beta_err = std::abs(opt.coefficients.beta(a) -
                                1.0 / (sizes[a] + taus[a]));
        row.gamma_max = gmax;
        res.rows.push_back(row);
        beta_cells.push_back(row.beta_err);
      }
      gamma_cells.push_back(gmax);
    }
    res.summary.beta_median.push_back(detail::median(beta_cells));
    res.summary.gamma_median.push_back(detail::median(gamma_cells));
  }
  auto& sm = res.summary;
  sm.beta_non_increasing = true;
  sm.gamma_non_increasing = true;
  for (std::size_t i = 1; i < dims.size(); ++i) {
    sm.beta_non_increasing &= sm.beta_median[i] <= sm.beta_median[i - 1];
    sm.gamma_non_increasing &= sm.gamma_median[i] <= sm.gamma_median[i - 1];
  }
  sm.gamma_shrink_ratio =
      sm.gamma_median.back() > 0.0
          ? sm.gamma_median.front() / sm.gamma_median.back()
          : std::numeric_limits<double>::infinity();
  auto rate = [](int d) { return std::sqrt(std::log(double(d)) / d); };
  sm.rate_constant = sm.gamma_median.front() / rate(dims.front());
  sm.rate_envelope_ok = true;
  for (std::size_t i = 0; i < dims.size(); ++i)
    sm.rate_envelope_ok &=
        sm.gamma_median[i] <= 1.5 * sm.rate_constant * rate(dims[i]);
  return res;
}

// --- near-diagonal spectral energy -------------------------------------------------

// E_C(delta) = sum_{|lambda_i - lambda_j| <= delta} W_ij / sum W_ij with
// W = (U^T C U)^2 entrywise.
inline std::vector<std::pair<double, double>> near_diagonal_energy(
    const Eigen::MatrixXd& c, const Spectrum& s,
    const std::vector<double>& deltas) {
  if (c.rows() != s.n() || c.cols() != s.n())
    throw DimensionError("near_diagonal_energy: size mismatch");
  if (deltas.empty()) throw DomainError("delta grid must be non-empty");
  Eigen::MatrixXd w = (s.u().transpose() * c * s.u()).array().square();
  const double total = w.sum();
  if (total <= 0.0)
    throw DomainError("near-diagonal energy undefined for zero operator");
  std::vector<std::pair<double, double>> curve;
  for (double delta : deltas) {
    double acc = 0.0;
    for (int i = 0; i < s.n(); ++i)
      for (int j = 0; j < s.n(); ++j)
        if (std::abs(s.eigenvalues(i) - s.eigenvalues(j)) <= delta)
          acc += w(i, j);
    curve.emplace_back(delta, acc / total);
  }
  return curve;
}

// --- spectral obstruction ------------------------------------------------------------

struct SpectralObstruction {
  std::vector<int> activating_list;          // greedily chosen vertices
  std::vector<std::vector<int>> supports;    // S_i per listed vertex
  int stacked_rank = 0;
  int rank_target = 0;                       // n - 1
  int kernel_dim = 0;                        // of the cross-class constraints
  bool kernel_is_ones = false;
  bool verdict = false;
  // Eigenvalue-group structure and whether the kernel directions are constant
  // within each group (relevant for degenerate spectra).
  std::vector<int> multiplicities;
  bool kernel_constant_per_eigenspace = false;
};

// Builds the deleted-row matrices M_i = U_{-i} diag(u_1(i), ..., u_n(i)),
// runs the greedy column-activating selection (ties broken by smallest vertex
// id), stacks M_I, and checks rank(M_I) = n - 1 together with the constraint
// kernel being span{1} for the induced partition (activating vertices as
// singletons, remainder as one class).
inline SpectralObstruction spectral_obstruction(const Graph& g,
                                                const Spectrum& s,
                                                double tol = 1e-8) {
  if (!is_connected(g))
    throw PreconditionError("spectral obstruction requires a connected graph");
  const int n = s.n();
  if (g.n != n) throw DimensionError("graph and spectrum sizes differ");
  SpectralObstruction out;
  out.rank_target = n - 1;

  std::vector<std::vector<int>> support(n);
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < n; ++l)
      if (std::abs(s.eigenvectors(i, l)) > tol) support[i].push_back(l);

  std::vector<char> covered(n, 0);
  int covered_count = 0;
  while (covered_count < n) {
    int best = -1, best_gain = 0;
    for (int i = 0; i < n; ++i) {
      int gain = 0;
      for (int l : support[i]) gain += !covered[l];
      if (gain > best_gain) {
        best_gain = gain;
        best = i;
      }
    }
    if (best < 0)
      throw NumericError("no vertex activates the remaining columns");
    out.activating_list.push_back(best);
    out.supports.push_back(support[best]);
    for (int l : support[best])
      if (!covered[l]) {
        covered[l] = 1;
        ++covered_count;
      }
  }

  const int rows_per_block = n - 1;
  Eigen::MatrixXd stacked(
      static_cast<long>(out.activating_list.size()) * rows_per_block, n);
  for (std::size_t b = 0; b < out.activating_list.size(); ++b) {
    const int i = out.activating_list[b];
    int r = 0;
    for (int row = 0; row < n; ++row) {
      if (row == i) continue;
      for (int l = 0; l < n; ++l)
        stacked(b * rows_per_block + r, l) =
            s.eigenvectors(row, l) * s.eigenvectors(i, l);
      ++r;
    }
  }
  {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked);
    const auto& sv = svd.singularValues();
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > tol * sv(0)) ++out.stacked_rank;
  }

  // Cross-class constraint map for the induced (K+1)-partition.
  std::vector<int> cls(n, static_cast<int>(out.activating_list.size()));
  for (std::size_t t = 0; t < out.activating_list.size(); ++t)
    cls[out.activating_list[t]] = static_cast<int>(t);
  std::vector<std::pair<int, int>> cross;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (cls[i] != cls[j]) cross.emplace_back(i, j);
  Eigen::MatrixXd t_map(cross.size(), n);
  for (std::size_t r = 0; r < cross.size(); ++r)
    for (int l = 0; l < n; ++l)
      t_map(r, l) =
          s.eigenvectors(cross[r].first, l) * s.eigenvectors(cross[r].second, l);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(t_map, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank_t = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++rank_t;
  out.kernel_dim = n - rank_t;
  if (out.kernel_dim == 1) {
    Eigen::VectorXd kernel = svd.matrixV().col(n - 1);
    out.kernel_is_ones =
        std::abs(std::abs(kernel.dot(Eigen::VectorXd::Ones(n))) / std::sqrt(n) -
                 1.0) < 1e-6;
  }
  out.verdict = out.stacked_rank == out.rank_target && out.kernel_dim == 1 &&
                out.kernel_is_ones;

  // Per-eigenspace report for degenerate spectra.
  const double group_tol = s.default_tol();
  std::vector<std::pair<int, int>> groups;
  int start = 0;
  while (start < n) {
    int end = start + 1;
    while (end < n && s.eigenvalues(end) - s.eigenvalues(end - 1) <= group_tol)
      ++end;
    groups.emplace_back(start, end);
    out.multiplicities.push_back(end - start);
    start = end;
  }
  if (out.kernel_dim >= 1) {
    out.kernel_constant_per_eigenspace = true;
    for (int kd = 0; kd < out.kernel_dim; ++kd) {
      Eigen::VectorXd kernel = svd.matrixV().col(n - 1 - kd);
      for (auto [b, e] : groups) {
        for (int l = b + 1; l < e; ++l)
          if (std::abs(kernel(l) - kernel(b)) > 1e-6)
            out.kernel_constant_per_eigenspace = false;
      }
    }
  }
  return out;
}

// Frobenius distance from C to span{E_lambda}: project with
// c_lambda = tr(E_lambda C) / m_lambda and measure the residual.
inline double distance_to_spectral_subspace(const Eigen::MatrixXd& c,
                                            const Spectrum& s,
                                            double group_tol) {
  if (c.rows() != s.n() || c.cols() != s.n())
    throw DimensionError("distance_to_spectral_subspace: size mismatch");
  Eigen::MatrixXd residual = c;
  for (const auto& p : eigenspace_projectors(s, group_tol)) {
    const double coeff = (p.projector.cwiseProduct(c)).sum() / p.multiplicity;
    residual -= coeff * p.projector;
  }
  return residual.norm();
}

inline double distance_to_spectral_subspace(const Eigen::MatrixXd& c,
                                            const Spectrum& s) {
  return distance_to_spectral_subspace(c, s, s.default_tol());
}

}  // namespace fullspec
