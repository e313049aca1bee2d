// Univariate spectral filters in monomial, Chebyshev, Chebyshev-interpolated,
// and Bernstein bases, applied either through a Spectrum or through matrix
// recurrences that never require an eigendecomposition.
#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "fullspec/spectral.hpp"

namespace fullspec {

enum class PolyBasis { Monomial, Chebyshev, ChebyshevInterp, Bernstein };

// For rescaled bases the spectral domain [a, b] maps affinely to the basis'
// reference interval; the default covers normalized Laplacians.
struct UnivariatePoly {
  PolyBasis basis = PolyBasis::Monomial;
  // Length degree+1. For ChebyshevInterp these are the filter values at the
  // Chebyshev nodes of the mapped domain rather than basis coefficients.
  std::vector<double> coeffs;
  std::array<double, 2> spectral_domain{0.0, 2.0};

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  static UnivariatePoly monomial(std::vector<double> c) {
    return UnivariatePoly{PolyBasis::Monomial, std::move(c), {0.0, 2.0}};
  }
  static UnivariatePoly constant(double c) { return monomial({c}); }

  void check_domain() const {
    if (coeffs.empty()) throw DomainError("polynomial needs coefficients");
    if (basis != PolyBasis::Monomial &&
        !(spectral_domain[1] > spectral_domain[0]))
      throw DomainError("rescaled basis needs a non-degenerate domain");
  }

  // Affine map of lambda onto the basis reference interval.
  double mapped(double lambda) const {
    const double a = spectral_domain[0], b = spectral_domain[1];
    if (basis == PolyBasis::Bernstein) return (lambda - a) / (b - a);
    return (2.0 * lambda - (a + b)) / (b - a);
  }

  double operator()(double lambda) const;
  Eigen::MatrixXd apply(const Eigen::MatrixXd& l,
                        const Eigen::MatrixXd& x) const;
  Eigen::VectorXd apply(const Eigen::MatrixXd& l,
                        const Eigen::VectorXd& x) const {
    return Eigen::VectorXd(apply(l, Eigen::MatrixXd(x)));
  }

  // Exact conversion to monomial coefficients in the raw lambda variable.
  std::vector<double> monomial_coeffs() const;
};

namespace detail {

// Chebyshev coefficients from values at the K+1 Chebyshev nodes
// x_j = cos(pi (j + 1/2) / (K+1)): gamma_k = (2 - [k=0])/(K+1) sum_j f_j T_k(x_j).
inline std::vector<double> cheb_interp_to_cheb(const std::vector<double>& f) {
  const int m = static_cast<int>(f.size());
  std::vector<double> gamma(m, 0.0);
  for (int k = 0; k < m; ++k) {
    double acc = 0.0;
    for (int j = 0; j < m; ++j)
      acc += f[j] * std::cos(k * std::numbers::pi * (j + 0.5) / m);
    gamma[k] = (k == 0 ? 1.0 : 2.0) * acc / m;
  }
  return gamma;
}

inline std::vector<double> polymul(const std::vector<double>& a,
                                   const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

inline void polyaxpy(std::vector<double>& acc, double c,
                     const std::vector<double>& p) {
  if (acc.size() < p.size()) acc.resize(p.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) acc[i] += c * p[i];
}

}  // namespace detail

inline double UnivariatePoly::operator()(double lambda) const {
  check_domain();
  switch (basis) {
    case PolyBasis::Monomial: {
      double y = 0.0;
      for (int k = degree(); k >= 0; --k) y = y * lambda + coeffs[k];
      return y;
    }
    case PolyBasis::Chebyshev:
    case PolyBasis::ChebyshevInterp: {
      const std::vector<double> gamma =
          basis == PolyBasis::Chebyshev ? coeffs
                                        : detail::cheb_interp_to_cheb(coeffs);
      const double x = mapped(lambda);
      double tprev = 1.0, t = x, y = gamma[0];
      if (degree() >= 1) y += gamma[1] * t;
      for (int k = 2; k <= degree(); ++k) {
        double tnext = 2.0 * x * t - tprev;
        y += gamma[k] * tnext;
        tprev = t;
        t = tnext;
      }
      return y;
    }
    case PolyBasis::Bernstein: {
      // de Casteljau on the mapped variable.
      const double x = mapped(lambda);
      std::vector<double> b = coeffs;
      for (int r = 1; r <= degree(); ++r)
        for (int i = 0; i + r <= degree(); ++i)
          b[i] = (1.0 - x) * b[i] + x * b[i + 1];
      return b[0];
    }
  }
  throw DomainError("unknown basis");
}

inline Eigen::MatrixXd UnivariatePoly::apply(const Eigen::MatrixXd& l,
                                             const Eigen::MatrixXd& x) const {
  check_domain();
  if (l.rows() != l.cols() || l.rows() != x.rows())
    throw DimensionError("polynomial apply: dimension mismatch");
  const double a = spectral_domain[0], b = spectral_domain[1];
  switch (basis) {
    case PolyBasis::Monomial: {
      Eigen::MatrixXd y = coeffs[degree()] * x;
      for (int k = degree() - 1; k >= 0; --k) y = l * y + coeffs[k] * x;
      return y;
    }
    case PolyBasis::Chebyshev:
    case PolyBasis::ChebyshevInterp: {
      const std::vector<double> gamma =
          basis == PolyBasis::Chebyshev ? coeffs
                                        : detail::cheb_interp_to_cheb(coeffs);
      auto mapped_apply = [&](const Eigen::MatrixXd& v) -> Eigen::MatrixXd {
        return (2.0 / (b - a)) * (l * v) - ((a + b) / (b - a)) * v;
      };
      Eigen::MatrixXd tprev = x;
      Eigen::MatrixXd y = gamma[0] * x;
      if (degree() == 0) return y;
      Eigen::MatrixXd t = mapped_apply(x);
      y += gamma[1] * t;
      for (int k = 2; k <= degree(); ++k) {
        Eigen::MatrixXd tnext = 2.0 * mapped_apply(t) - tprev;
        y += gamma[k] * tnext;
        tprev = std::move(t);
        t = std::move(tnext);
      }
      return y;
    }
    case PolyBasis::Bernstein: {
      auto mapped_apply = [&](const Eigen::MatrixXd& v) -> Eigen::MatrixXd {
        return (l * v - a * v) / (b - a);
      };
      std::vector<Eigen::MatrixXd> w(coeffs.size());
      for (std::size_t i = 0; i < coeffs.size(); ++i) w[i] = coeffs[i] * x;
      for (int r = 1; r <= degree(); ++r)
        for (int i = 0; i + r <= degree(); ++i)
          w[i] = w[i] - mapped_apply(w[i]) + mapped_apply(w[i + 1]);
      return w[0];
    }
  }
  throw DomainError("unknown basis");
}

inline std::vector<double> UnivariatePoly::monomial_coeffs() const {
  check_domain();
  const double a = spectral_domain[0], b = spectral_domain[1];
  switch (basis) {
    case PolyBasis::Monomial:
      return coeffs;
    case PolyBasis::Chebyshev:
    case PolyBasis::ChebyshevInterp: {
      const std::vector<double> gamma =
          basis == PolyBasis::Chebyshev ? coeffs
                                        : detail::cheb_interp_to_cheb(coeffs);
      // T_k in the raw variable via the recurrence on polynomial coefficients.
      const std::vector<double> affine{-(a + b) / (b - a), 2.0 / (b - a)};
      std::vector<double> tprev{1.0}, t = affine;
      std::vector<double> acc{gamma[0]};
      if (degree() >= 1) detail::polyaxpy(acc, gamma[1], t);
      for (int k = 2; k <= degree(); ++k) {
        std::vector<double> tnext = detail::polymul(affine, t);
        for (double& c : tnext) c *= 2.0;
        detail::polyaxpy(tnext, -1.0, tprev);
        detail::polyaxpy(acc, gamma[k], tnext);
        tprev = std::move(t);
        t = std::move(tnext);
      }
      acc.resize(coeffs.size(), 0.0);
      return acc;
    }
    case PolyBasis::Bernstein: {
      const int deg = degree();
      const std::vector<double> xpoly{-a / (b - a), 1.0 / (b - a)};
      const std::vector<double> one_minus{1.0 + a / (b - a), -1.0 / (b - a)};
      std::vector<double> acc{0.0};
      for (int k = 0; k <= deg; ++k) {
        double binom = 1.0;
        for (int i = 0; i < k; ++i) binom = binom * (deg - i) / (i + 1);
        std::vector<double> term{binom * coeffs[k]};
        for (int i = 0; i < k; ++i) term = detail::polymul(term, xpoly);
        for (int i = 0; i < deg - k; ++i)
          term = detail::polymul(term, one_minus);
        detail::polyaxpy(acc, 1.0, term);
      }
      acc.resize(coeffs.size(), 0.0);
      return acc;
    }
  }
  throw DomainError("unknown basis");
}

// Gershgorin upper bound on the largest Laplacian eigenvalue; keeps the
// polynomial backends free of eigendecompositions.
inline double gershgorin_bound(const Eigen::MatrixXd& l) {
  double bound = 0.0;
  for (int i = 0; i < l.rows(); ++i)
    bound = std::max(bound,
                     l(i, i) + (l.row(i).cwiseAbs().sum() - std::abs(l(i, i))));
  return bound;
}

inline std::array<double, 2> default_spectral_domain(const Eigen::MatrixXd& l,
                                                     LaplacianKind kind) {
  if (kind == LaplacianKind::SymmetricNormalized) return {0.0, 2.0};
  return {0.0, std::max(gershgorin_bound(l), 1e-12)};
}

// --- applying a univariate response ------------------------------------------

// A response is either a polynomial (applicable with only L) or a tabulated
// per-eigenvalue vector (requires a Spectrum).
struct UnivariateResponse {
  std::optional<UnivariatePoly> poly;
  std::optional<Eigen::VectorXd> tabulated;

  static UnivariateResponse from_poly(UnivariatePoly p) {
    return {std::move(p), std::nullopt};
  }
  static UnivariateResponse from_values(Eigen::VectorXd v) {
    return {std::nullopt, std::move(v)};
  }
};

// Eigen backend: U (g_lambda .* U^T x).
inline Eigen::VectorXd apply_univariate(const Spectrum& s,
                                        const Eigen::VectorXd& g_lambda,
                                        const Eigen::VectorXd& x) {
  if (g_lambda.size() != s.n() || x.size() != s.n())
    throw DimensionError("apply_univariate: dimension mismatch");
  return s.u() * (g_lambda.cwiseProduct(s.u().transpose() * x));
}

inline Eigen::VectorXd apply_univariate(const Spectrum& s,
                                        const UnivariatePoly& g,
                                        const Eigen::VectorXd& x) {
  Eigen::VectorXd g_lambda(s.n());
  for (int i = 0; i < s.n(); ++i) g_lambda(i) = g(s.eigenvalues(i));
  return apply_univariate(s, g_lambda, x);
}

inline Eigen::VectorXd apply_univariate(const Spectrum& s,
                                        const UnivariateResponse& g,
                                        const Eigen::VectorXd& x) {
  if (g.tabulated) return apply_univariate(s, *g.tabulated, x);
  if (g.poly) return apply_univariate(s, *g.poly, x);
  throw DomainError("empty response");
}

// Polynomial backend: p(L) x through the basis recurrence.
inline Eigen::VectorXd apply_univariate(const Eigen::MatrixXd& l,
                                        const UnivariatePoly& g,
                                        const Eigen::VectorXd& x) {
  return g.apply(l, x);
}

inline Eigen::VectorXd apply_univariate(const Eigen::MatrixXd& l,
                                        const UnivariateResponse& g,
                                        const Eigen::VectorXd& x) {
  if (g.tabulated)
    throw PreconditionError(
        "tabulated response needs a Spectrum, not a bare matrix");
  if (g.poly) return g.poly->apply(l, x);
  throw DomainError("empty response");
}

}  // namespace fullspec
