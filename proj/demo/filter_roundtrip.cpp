// Walks a bivariate filter through its three equivalent application routes
// on a small ring graph and prints the agreement.
#include <cstdio>

#include "fullspec/fullspec.hpp"

using namespace fullspec;

int main() {
  Graph g = cycle_graph(5);
  Eigen::MatrixXd l = laplacian(g, LaplacianKind::SymmetricNormalized);
  Spectrum s = eigendecompose(l, 1e-10, LaplacianKind::SymmetricNormalized);

  // q(s, t) = 1 + s t - 0.5 s^2
  BivariatePoly q;
  q.coeff = Eigen::MatrixXd::Zero(3, 3);
  q.coeff(0, 0) = 1.0;
  q.coeff(1, 1) = 1.0;
  q.coeff(2, 0) = -0.5;

  Rng rng = make_rng(7);
  Eigen::MatrixXd eps(5, 5);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) eps(i, j) = normal(rng);

  Eigen::MatrixXd via_eigen = apply_full_spectrum_eigen(s, tabulate(q, s), eps);
  Eigen::MatrixXd via_poly = apply_bivariate_poly(l, q, eps);
  Eigen::MatrixXd via_dense =
      unvec(bivariate_operator_dense(l, q) * vec(eps), 5, 5);

  std::printf("eigen vs poly : %.3e\n",
              (via_eigen - via_poly).cwiseAbs().maxCoeff());
  std::printf("eigen vs dense: %.3e\n",
              (via_eigen - via_dense).cwiseAbs().maxCoeff());

  auto decomposition = tensor_decompose(q, numerical_rank(q.coeff));
  Eigen::MatrixXd via_rank = apply_rank_s(decomposition, l, eps);
  std::printf("rank-%d tensor route vs poly: %.3e\n", decomposition.rank(),
              (via_rank - via_poly).cwiseAbs().maxCoeff());
  return 0;
}
