// Symmetric eigendecomposition, graph Fourier transforms on node and
// node-pair signals, and Kronecker-operator algebra.
//
// Orientation convention, pinned against the dense Kronecker oracle with
// column-stacking vec: (B^T (x) A) vec(X) = vec(A X B), so the left factor of
// a Kronecker product acts on the column index of a node-pair signal.
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "fullspec/common.hpp"
#include "fullspec/graph.hpp"

namespace fullspec {

// An n x n node-pair signal, identified with its column-stacked vectorization.
using PairSignal = Eigen::MatrixXd;

inline Eigen::VectorXd vec(const Eigen::MatrixXd& x) {
  return Eigen::Map<const Eigen::VectorXd>(x.data(), x.size());
}

inline Eigen::MatrixXd unvec(const Eigen::VectorXd& v, int rows, int cols) {
  if (v.size() != static_cast<long>(rows) * cols)
    throw DimensionError("unvec: size mismatch");
  return Eigen::Map<const Eigen::MatrixXd>(v.data(), rows, cols);
}

// Guard for dense pair-domain materializations: n^4 entries beyond this blow
// up oracle runtimes quadratically.
inline constexpr int kDenseKroneckerGuard = 32;

inline Eigen::MatrixXd kron_dense(const Eigen::MatrixXd& a,
                                  const Eigen::MatrixXd& b) {
  if (a.rows() > kDenseKroneckerGuard || b.rows() > kDenseKroneckerGuard)
    throw DomainError("dense Kronecker materialization guarded at n = 32");
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// (B^T (x) A) vec(X) = vec(A X B) without materializing the product.
inline Eigen::MatrixXd kron_apply(const Eigen::MatrixXd& a,
                                  const Eigen::MatrixXd& b,
                                  const Eigen::MatrixXd& x) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || x.rows() != x.cols() ||
      a.rows() != x.rows() || b.rows() != x.rows())
    throw DimensionError("kron_apply: square matrices of equal size required");
  return a * x * b;
}

struct Spectrum {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // orthonormal columns
  LaplacianKind source_kind = LaplacianKind::Combinatorial;

  int n() const { return static_cast<int>(eigenvalues.size()); }
  const Eigen::MatrixXd& u() const { return eigenvectors; }

  double default_tol() const {
    double lmax = n() > 0 ? std::abs(eigenvalues(n() - 1)) : 0.0;
    return 1e-8 * std::max(1.0, lmax);
  }
};

// Dense symmetric eigendecomposition with a deterministic sign convention:
// the first entry of each eigenvector that is nonzero (relative to the
// column's largest magnitude) is made positive.
inline Spectrum eigendecompose(const Eigen::MatrixXd& l, double tol = 1e-10,
                               LaplacianKind kind =
                                   LaplacianKind::Combinatorial) {
  if (l.rows() != l.cols()) throw DimensionError("matrix must be square");
  if ((l - l.transpose()).cwiseAbs().maxCoeff() > tol)
    throw DomainError("matrix is not symmetric within tolerance");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      0.5 * (l + l.transpose()));
  if (solver.info() != Eigen::Success)
    throw NumericError("eigensolver failed to converge");
  Spectrum s;
  s.eigenvalues = solver.eigenvalues();
  s.eigenvectors = solver.eigenvectors();
  s.source_kind = kind;
  for (int j = 0; j < s.eigenvectors.cols(); ++j) {
    auto col = s.eigenvectors.col(j);
    const double thresh = 1e-12 * col.cwiseAbs().maxCoeff();
    for (int i = 0; i < col.size(); ++i) {
      if (std::abs(col(i)) > thresh) {
        if (col(i) < 0.0) s.eigenvectors.col(j) = -col;
        break;
      }
    }
  }
  return s;
}

inline Spectrum eigendecompose(const Graph& g, LaplacianKind kind,
                               double tol = 1e-10) {
  return eigendecompose(laplacian(g, kind), tol, kind);
}

// --- Fourier transforms ------------------------------------------------------

inline Eigen::VectorXd gft(const Spectrum& s, const Eigen::VectorXd& x) {
  if (x.size() != s.n()) throw DimensionError("gft: dimension mismatch");
  return s.u().transpose() * x;
}

inline Eigen::VectorXd igft(const Spectrum& s, const Eigen::VectorXd& xhat) {
  if (xhat.size() != s.n()) throw DimensionError("igft: dimension mismatch");
  return s.u() * xhat;
}

// Coefficient matrix U^T e U, equal to unvec((U (x) U)^T vec(e)) but never
// materializing U (x) U.
inline Eigen::MatrixXd pair_gft(const Spectrum& s, const PairSignal& e) {
  if (e.rows() != s.n() || e.cols() != s.n())
    throw DimensionError("pair_gft: dimension mismatch");
  return s.u().transpose() * e * s.u();
}

inline PairSignal pair_igft(const Spectrum& s, const Eigen::MatrixXd& ehat) {
  if (ehat.rows() != s.n() || ehat.cols() != s.n())
    throw DimensionError("pair_igft: dimension mismatch");
  return s.u() * ehat * s.u().transpose();
}

// --- Kronecker sum L (x) I + I (x) L -----------------------------------------

class KronSum {
 public:
  explicit KronSum(Eigen::MatrixXd l) : l_(std::move(l)) {
    if (l_.rows() != l_.cols()) throw DimensionError("KronSum: square matrix");
  }

  PairSignal apply(const PairSignal& e) const {
    if (e.rows() != l_.rows() || e.cols() != l_.cols())
      throw DimensionError("KronSum::apply: dimension mismatch");
    return e * l_ + l_ * e;
  }

  Eigen::MatrixXd dense() const {
    const int n = static_cast<int>(l_.rows());
    if (n > kDenseKroneckerGuard)
      throw DomainError("KronSum dense materialization guarded at n = 32");
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    return kron_dense(l_, id) + kron_dense(id, l_);
  }

  const Eigen::MatrixXd& matrix() const { return l_; }

 private:
  Eigen::MatrixXd l_;
};

inline KronSum kron_sum(const Eigen::MatrixXd& l) { return KronSum(l); }

// --- eigenspace projectors ----------------------------------------------------

struct EigenspaceProjector {
  double eigenvalue = 0.0;   // representative (mean of the grouped values)
  Eigen::MatrixXd projector; // E_lambda = U_lambda U_lambda^T
  int multiplicity = 0;
};

// Groups eigenvalues whose consecutive gaps are within group_tol and returns
// the basis-independent projectors E_lambda with sum E_lambda = I.
inline std::vector<EigenspaceProjector> eigenspace_projectors(
    const Spectrum& s, double group_tol) {
  if (group_tol <= 0.0) throw DomainError("group_tol must be positive");
  std::vector<EigenspaceProjector> out;
  const int n = s.n();
  int start = 0;
  while (start < n) {
    int end = start + 1;
    while (end < n &&
           s.eigenvalues(end) - s.eigenvalues(end - 1) <= group_tol)
      ++end;
    EigenspaceProjector p;
    p.multiplicity = end - start;
    p.eigenvalue = s.eigenvalues.segment(start, p.multiplicity).mean();
    auto cols = s.eigenvectors.middleCols(start, p.multiplicity);
    p.projector = cols * cols.transpose();
    out.push_back(std::move(p));
    start = end;
  }
  return out;
}

inline std::vector<EigenspaceProjector> eigenspace_projectors(
    const Spectrum& s) {
  return eigenspace_projectors(s, s.default_tol());
}

inline bool is_simple_spectrum(const Spectrum& s, double gap_tol) {
  if (gap_tol <= 0.0) throw DomainError("gap_tol must be positive");
  for (int i = 0; i + 1 < s.n(); ++i)
    if (s.eigenvalues(i + 1) - s.eigenvalues(i) <= gap_tol) return false;
  return true;
}

inline bool is_simple_spectrum(const Spectrum& s) {
  return is_simple_spectrum(s, s.default_tol());
}

inline Eigen::MatrixXd reconstruct(const Spectrum& s) {
  return s.u() * s.eigenvalues.asDiagonal() * s.u().transpose();
}

// SVD rank with a relative singular-value cutoff.
inline int numerical_rank(const Eigen::MatrixXd& a, double cutoff = 1e-10) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff * sv(0)) ++r;
  return r;
}

}  // namespace fullspec
