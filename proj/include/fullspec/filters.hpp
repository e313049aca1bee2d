// Bivariate spectral filters on node-pair signals: tabulated responses applied
// through the eigenbasis, polynomial filters applied through matrix
// recurrences, tensor decomposition of coefficient matrices, low-rank
// application, and the rank-1 convolution layer.
//
// Orientation (pinned by the dense Kronecker oracle, column-stacking vec):
// the monomial s^p t^q induces the operator e -> L^q e L^p, i.e. the s-side
// acts on the column index and the t-side on the row index. Consequently a
// response g scales the coefficient (U^T e U)_{ij} by g(lambda_j, lambda_i).
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "fullspec/polynomial.hpp"
#include "fullspec/spectral.hpp"

namespace fullspec {

// Coefficient matrix A with A(i, j) = coefficient of s^i t^j.
struct BivariatePoly {
  Eigen::MatrixXd coeff;
  std::optional<int> total_degree_cap;

  int max_degree() const { return static_cast<int>(coeff.rows()) - 1; }

  void validate() const {
    if (coeff.rows() == 0 || coeff.rows() != coeff.cols())
      throw DomainError("coefficient matrix must be square and non-empty");
    if (total_degree_cap) {
      for (int i = 0; i <= max_degree(); ++i)
        for (int j = 0; j <= max_degree(); ++j)
          if (i + j > *total_degree_cap && coeff(i, j) != 0.0)
            throw DomainError("total degree cap violated");
    }
  }

  static BivariatePoly constant(double c) {
    BivariatePoly q;
    q.coeff = Eigen::MatrixXd::Constant(1, 1, c);
    return q;
  }

  // Nested Horner evaluation.
  double operator()(double s, double t) const {
    double acc = 0.0;
    for (int i = max_degree(); i >= 0; --i) {
      double inner = 0.0;
      for (int j = max_degree(); j >= 0; --j) inner = inner * t + coeff(i, j);
      acc = acc * s + inner;
    }
    return acc;
  }
};

// G with (i, j) entry g(lambda_i, lambda_j).
struct TabulatedBivariateResponse {
  Eigen::MatrixXd values;
};

inline TabulatedBivariateResponse tabulate(const BivariatePoly& q,
                                           const Spectrum& s) {
  q.validate();
  TabulatedBivariateResponse g;
  g.values.resize(s.n(), s.n());
  for (int i = 0; i < s.n(); ++i)
    for (int j = 0; j < s.n(); ++j)
      g.values(i, j) = q(s.eigenvalues(i), s.eigenvalues(j));
  return g;
}

// Route through the eigenbasis: U ((G^T) .* (U^T e U)) U^T. The transpose
// places g(lambda_j, lambda_i) on coefficient (i, j), matching the operator
// q(L (x) I, I (x) L) on column-stacked signals.
inline PairSignal apply_full_spectrum_eigen(const Spectrum& s,
                                            const TabulatedBivariateResponse& g,
                                            const PairSignal& e) {
  if (g.values.rows() != s.n() || g.values.cols() != s.n() ||
      e.rows() != s.n() || e.cols() != s.n())
    throw DimensionError("apply_full_spectrum_eigen: dimension mismatch");
  Eigen::MatrixXd ehat = pair_gft(s, e);
  return pair_igft(s, g.values.transpose().cwiseProduct(ehat));
}

// Route through matrix polynomials: sum_pq a_pq L^q e L^p with the L^p e
// products cached; never materializes an n^2 x n^2 operator.
inline PairSignal apply_bivariate_poly(const Eigen::MatrixXd& l,
                                       const BivariatePoly& q,
                                       const PairSignal& e) {
  q.validate();
  if (l.rows() != l.cols() || e.rows() != l.rows() || e.cols() != l.cols())
    throw DimensionError("apply_bivariate_poly: dimension mismatch");
  const int deg = q.max_degree();
  // cache e L^p for p = 0..deg
  std::vector<Eigen::MatrixXd> right(deg + 1);
  right[0] = e;
  for (int p = 1; p <= deg; ++p) right[p] = right[p - 1] * l;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(l.rows(), l.cols());
  for (int p = 0; p <= deg; ++p) {
    // Horner in L on the left over the t-exponent q.
    Eigen::MatrixXd acc = q.coeff(p, deg) * right[p];
    for (int j = deg - 1; j >= 0; --j) acc = l * acc + q.coeff(p, j) * right[p];
    out += acc;
  }
  return out;
}

// Dense oracle q(L (x) I, I (x) L) = sum_pq a_pq L^p (x) L^q; guarded size.
inline Eigen::MatrixXd bivariate_operator_dense(const Eigen::MatrixXd& l,
                                                const BivariatePoly& q) {
  q.validate();
  const int n = static_cast<int>(l.rows());
  if (n > kDenseKroneckerGuard)
    throw DomainError("dense bivariate operator guarded at n = 32");
  const int deg = q.max_degree();
  std::vector<Eigen::MatrixXd> pow(deg + 1);
  pow[0] = Eigen::MatrixXd::Identity(n, n);
  for (int p = 1; p <= deg; ++p) pow[p] = pow[p - 1] * l;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n * n, n * n);
  for (int p = 0; p <= deg; ++p)
    for (int j = 0; j <= deg; ++j)
      if (q.coeff(p, j) != 0.0) out += q.coeff(p, j) * kron_dense(pow[p], pow[j]);
  return out;
}

// --- tensor decomposition ------------------------------------------------------

struct TensorDecomposition {
  // Operator sum_r f_r(L) (x) h_r(L), acting as e -> sum_r h_r(L) e f_r(L).
  std::vector<std::pair<UnivariatePoly, UnivariatePoly>> pairs;

  int rank() const { return static_cast<int>(pairs.size()); }
};

// Truncated SVD of the coefficient matrix: exact when S >= rank(A), otherwise
// the best rank-S approximation in Frobenius norm.
inline TensorDecomposition tensor_decompose(const BivariatePoly& q, int rank) {
  q.validate();
  if (rank < 1) throw DomainError("rank must be at least 1");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      q.coeff, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const int terms = std::min<int>(rank, static_cast<int>(q.coeff.rows()));
  TensorDecomposition t;
  for (int r = 0; r < terms; ++r) {
    const double scale = std::sqrt(svd.singularValues()(r));
    Eigen::VectorXd f = scale * svd.matrixU().col(r);
    Eigen::VectorXd h = scale * svd.matrixV().col(r);
    t.pairs.emplace_back(
        UnivariatePoly::monomial({f.data(), f.data() + f.size()}),
        UnivariatePoly::monomial({h.data(), h.data() + h.size()}));
  }
  return t;
}

inline Eigen::MatrixXd coefficient_matrix(const TensorDecomposition& t) {
  int size = 0;
  for (const auto& [f, h] : t.pairs)
    size = std::max({size, f.degree() + 1, h.degree() + 1});
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(size, size);
  for (const auto& [f, h] : t.pairs) {
    auto fc = f.monomial_coeffs();
    auto hc = h.monomial_coeffs();
    for (std::size_t i = 0; i < fc.size(); ++i)
      for (std::size_t j = 0; j < hc.size(); ++j) a(i, j) += fc[i] * hc[j];
  }
  return a;
}

// sum_r h_r(L) e f_r(L); each polynomial applied by its recurrence, so the
// cost stays O(S K) matrix products.
inline PairSignal apply_rank_s(const TensorDecomposition& t,
                               const Eigen::MatrixXd& l, const PairSignal& e) {
  if (l.rows() != l.cols() || e.rows() != l.rows() || e.cols() != l.cols())
    throw DimensionError("apply_rank_s: dimension mismatch");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(l.rows(), l.cols());
  for (const auto& [f, h] : t.pairs) {
    // e f(L) = (f(L) e^T)^T since f(L) is symmetric in L's algebra.
    Eigen::MatrixXd ef = f.apply(l, Eigen::MatrixXd(e.transpose())).transpose();
    out += h.apply(l, ef);
  }
  return out;
}

// --- rank-1 convolution layer ---------------------------------------------------

// sigma(h(L) e f(L) H W) computed as H1 = f(L) H, H2 = e H1, H3 = h(L) H2,
// out = sigma(H3 W).
inline Eigen::MatrixXd rank1_layer(
    const Eigen::MatrixXd& l, const UnivariatePoly& f, const UnivariatePoly& h,
    const PairSignal& e, const Eigen::MatrixXd& features,
    const Eigen::MatrixXd& weight,
    const std::function<double(double)>& sigma = nullptr) {
  if (e.rows() != l.rows() || e.cols() != l.cols() ||
      features.rows() != l.rows() || weight.rows() != features.cols())
    throw DimensionError("rank1_layer: dimension chain mismatch");
  Eigen::MatrixXd h1 = f.apply(l, features);
  Eigen::MatrixXd h2 = e * h1;
  Eigen::MatrixXd h3 = h.apply(l, h2);
  Eigen::MatrixXd out = h3 * weight;
  if (sigma) out = out.unaryExpr(sigma);
  return out;
}

// --- diagonal embedding (classical filtering as a subfamily) --------------------

// sum_i xhat_i u_i u_i^T
inline PairSignal diag_embed(const Spectrum& s, const Eigen::VectorXd& x) {
  if (x.size() != s.n()) throw DimensionError("diag_embed: dimension mismatch");
  Eigen::VectorXd xhat = gft(s, x);
  return s.u() * xhat.asDiagonal() * s.u().transpose();
}

// sum_ij (u_i^T H u_j) u_i
inline Eigen::VectorXd project_pair(const Spectrum& s, const PairSignal& h) {
  if (h.rows() != s.n() || h.cols() != s.n())
    throw DimensionError("project_pair: dimension mismatch");
  Eigen::MatrixXd b = pair_gft(s, h);
  return s.u() * b.rowwise().sum();
}

}  // namespace fullspec
