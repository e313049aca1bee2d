#include <catch2/catch_amalgamated.hpp>

#include "fullspec/graph.hpp"
#include "fullspec/spectral.hpp"

using namespace fullspec;

namespace {

Eigen::MatrixXd random_matrix(int rows, int cols, Rng& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = normal(rng);
  return m;
}

}  // namespace

TEST_CASE("eigendecomposition") {
  SECTION("P2 combinatorial eigenvalues (0, 2)") {
    auto s = eigendecompose(path_graph(2), LaplacianKind::Combinatorial);
    CHECK(std::abs(s.eigenvalues(0)) < 1e-14);
    CHECK(std::abs(s.eigenvalues(1) - 2.0) < 1e-14);
  }
  SECTION("P3 combinatorial eigenvalues (0, 1, 3)") {
    auto s = eigendecompose(path_graph(3), LaplacianKind::Combinatorial);
    Eigen::VectorXd expected(3);
    expected << 0, 1, 3;
    CHECK((s.eigenvalues - expected).cwiseAbs().maxCoeff() < 1e-12);
  }
  SECTION("K3 normalized eigenvalues (0, 1.5, 1.5)") {
    auto s = eigendecompose(complete_graph(3),
                            LaplacianKind::SymmetricNormalized);
    Eigen::VectorXd expected(3);
    expected << 0, 1.5, 1.5;
    CHECK((s.eigenvalues - expected).cwiseAbs().maxCoeff() < 1e-12);
  }
  SECTION("non-symmetric input rejected") {
    Eigen::MatrixXd m(2, 2);
    m << 0, 1, 0, 0;
    CHECK_THROWS_AS(eigendecompose(m), DomainError);
  }
  SECTION("spectrum invariants on random graphs") {
    Rng rng = make_rng(3);
    for (int trial = 0; trial < 8; ++trial) {
      Graph g = gnp_graph(7, 0.5, rng);
      Eigen::MatrixXd l = laplacian(g, LaplacianKind::Combinatorial);
      auto s = eigendecompose(l);
      Eigen::MatrixXd gram = s.u().transpose() * s.u();
      CHECK((gram - Eigen::MatrixXd::Identity(7, 7)).norm() < 1e-10);
      const double rel =
          (reconstruct(s) - l).norm() / std::max(1.0, l.norm());
      CHECK(rel < 1e-9);
      for (int i = 0; i + 1 < 7; ++i)
        CHECK(s.eigenvalues(i) <= s.eigenvalues(i + 1));
    }
  }
  SECTION("deterministic sign convention: first nonzero entry positive") {
    Rng rng = make_rng(4);
    Graph g = random_connected_graph(6, 0.5, rng);
    auto s = eigendecompose(g, LaplacianKind::Combinatorial);
    for (int j = 0; j < 6; ++j) {
      const double thresh =
          1e-12 * s.eigenvectors.col(j).cwiseAbs().maxCoeff();
      for (int i = 0; i < 6; ++i) {
        if (std::abs(s.eigenvectors(i, j)) > thresh) {
          CHECK(s.eigenvectors(i, j) > 0.0);
          break;
        }
      }
    }
  }
}

TEST_CASE("graph Fourier transform") {
  Rng rng = make_rng(10);
  Graph g = random_connected_graph(5, 0.6, rng);
  auto s = eigendecompose(g, LaplacianKind::Combinatorial);
  SECTION("first eigenvector maps to e_1") {
    Eigen::VectorXd xhat = gft(s, s.eigenvectors.col(0));
    CHECK(std::abs(xhat(0) - 1.0) < 1e-12);
    CHECK(xhat.tail(4).cwiseAbs().maxCoeff() < 1e-12);
  }
  SECTION("zero maps to zero") {
    CHECK(gft(s, Eigen::VectorXd::Zero(5)).cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("round trip on random vectors") {
    for (int trial = 0; trial < 5; ++trial) {
      Eigen::VectorXd x = random_matrix(5, 1, rng);
      CHECK((igft(s, gft(s, x)) - x).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SECTION("dimension mismatch rejected") {
    CHECK_THROWS_AS(gft(s, Eigen::VectorXd::Zero(4)), DimensionError);
  }
}

TEST_CASE("pair-domain Fourier transform") {
  Rng rng = make_rng(20);
  Graph g = random_connected_graph(4, 0.7, rng);
  auto s = eigendecompose(g, LaplacianKind::Combinatorial);
  SECTION("eigengraph u_i u_j^T maps to e_i e_j^T") {
    for (int i : {0, 2})
      for (int j : {1, 3}) {
        Eigen::MatrixXd e =
            s.eigenvectors.col(i) * s.eigenvectors.col(j).transpose();
        Eigen::MatrixXd ehat = pair_gft(s, e);
        Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(4, 4);
        expected(i, j) = 1.0;
        CHECK((ehat - expected).cwiseAbs().maxCoeff() < 1e-12);
      }
  }
  SECTION("identity signal has identity coefficients") {
    CHECK((pair_gft(s, Eigen::MatrixXd::Identity(4, 4)) -
           Eigen::MatrixXd::Identity(4, 4))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
  SECTION("agrees with the materialized (U x U)^T vec oracle") {
    Eigen::MatrixXd uu = kron_dense(s.u(), s.u());
    for (int trial = 0; trial < 5; ++trial) {
      Eigen::MatrixXd e = random_matrix(4, 4, rng);
      Eigen::VectorXd direct = uu.transpose() * vec(e);
      CHECK((vec(pair_gft(s, e)) - direct).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SECTION("round trip") {
    Eigen::MatrixXd e = random_matrix(4, 4, rng);
    CHECK((pair_igft(s, pair_gft(s, e)) - e).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("kronecker apply") {
  Rng rng = make_rng(30);
  SECTION("identities return X") {
    Eigen::MatrixXd x = random_matrix(4, 4, rng);
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(4, 4);
    CHECK((kron_apply(id, id, x) - x).cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("matches materialized (B^T x A) vec(X) on random 5x5 triples") {
    for (int trial = 0; trial < 6; ++trial) {
      Eigen::MatrixXd a = random_matrix(5, 5, rng);
      Eigen::MatrixXd b = random_matrix(5, 5, rng);
      Eigen::MatrixXd x = random_matrix(5, 5, rng);
      Eigen::VectorXd direct = kron_dense(b.transpose(), a) * vec(x);
      CHECK((vec(kron_apply(a, b, x)) - direct).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SECTION("rank-1 algebra: A = u v^T, B = I, X = I gives u v^T") {
    Eigen::VectorXd u = random_matrix(4, 1, rng);
    Eigen::VectorXd v = random_matrix(4, 1, rng);
    Eigen::MatrixXd a = u * v.transpose();
    Eigen::MatrixXd id = Eigen::MatrixXd::Identity(4, 4);
    CHECK((kron_apply(a, id, id) - a).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("kronecker sum operator") {
  SECTION("P2 dense form equals the C4 Laplacian exactly") {
    Eigen::MatrixXd l = laplacian(path_graph(2), LaplacianKind::Combinatorial);
    Eigen::MatrixXd c4 = laplacian(cartesian_product(path_graph(2)),
                                   LaplacianKind::Combinatorial);
    CHECK((kron_sum(l).dense() - c4).cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("eigengraph action: (lambda_i + lambda_j) u_i u_j^T") {
    Rng rng = make_rng(40);
    Graph g = random_connected_graph(5, 0.5, rng);
    Eigen::MatrixXd l = laplacian(g, LaplacianKind::Combinatorial);
    auto s = eigendecompose(l);
    KronSum op(l);
    for (int i : {0, 3})
      for (int j : {1, 4}) {
        Eigen::MatrixXd e =
            s.eigenvectors.col(i) * s.eigenvectors.col(j).transpose();
        Eigen::MatrixXd expected = (s.eigenvalues(i) + s.eigenvalues(j)) * e;
        CHECK((op.apply(e) - expected).cwiseAbs().maxCoeff() < 1e-10);
      }
  }
  SECTION("zero matrix gives the zero operator") {
    KronSum op(Eigen::MatrixXd::Zero(3, 3));
    Eigen::MatrixXd e = Eigen::MatrixXd::Random(3, 3);
    CHECK(op.apply(e).cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("dense materialization guarded beyond n = 32") {
    KronSum op(Eigen::MatrixXd::Zero(33, 33));
    CHECK_THROWS_AS(op.dense(), DomainError);
  }
  SECTION("spectrum equals pairwise eigenvalue sums (n <= 8)") {
    Rng rng = make_rng(50);
    Graph g = gnp_graph(6, 0.5, rng);
    Eigen::MatrixXd l = laplacian(g, LaplacianKind::Combinatorial);
    auto s = eigendecompose(l);
    Eigen::VectorXd dense_eigs =
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(kron_sum(l).dense())
            .eigenvalues();
    std::vector<double> sums;
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        sums.push_back(s.eigenvalues(i) + s.eigenvalues(j));
    std::sort(sums.begin(), sums.end());
    for (int i = 0; i < 36; ++i)
      CHECK(std::abs(dense_eigs(i) - sums[i]) < 1e-9);
  }
}

TEST_CASE("eigenspace projectors") {
  SECTION("K3 normalized: multiplicities (1, 2)") {
    auto s = eigendecompose(complete_graph(3),
                            LaplacianKind::SymmetricNormalized);
    auto projectors = eigenspace_projectors(s);
    REQUIRE(projectors.size() == 2);
    CHECK(projectors[0].multiplicity == 1);
    CHECK(projectors[1].multiplicity == 2);
  }
  SECTION("simple spectrum gives n rank-one projectors") {
    auto s = eigendecompose(path_graph(3), LaplacianKind::Combinatorial);
    auto projectors = eigenspace_projectors(s);
    REQUIRE(projectors.size() == 3);
    for (const auto& p : projectors) {
      CHECK(p.multiplicity == 1);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(p.projector);
      CHECK(svd.singularValues()(0) == Catch::Approx(1.0).margin(1e-10));
      CHECK(svd.singularValues()(1) < 1e-10);
    }
  }
  SECTION("projector identities and spectral resolution on random graphs") {
    Rng rng = make_rng(60);
    for (int trial = 0; trial < 5; ++trial) {
      Graph g = gnp_graph(4 + trial, 0.5, rng);
      Eigen::MatrixXd l = laplacian(g, LaplacianKind::Combinatorial);
      auto s = eigendecompose(l);
      auto projectors = eigenspace_projectors(s);
      Eigen::MatrixXd sum_e = Eigen::MatrixXd::Zero(g.n, g.n);
      Eigen::MatrixXd resolution = Eigen::MatrixXd::Zero(g.n, g.n);
      for (const auto& p : projectors) {
        CHECK((p.projector * p.projector - p.projector).norm() < 1e-9);
        CHECK((p.projector - p.projector.transpose()).norm() < 1e-9);
        sum_e += p.projector;
        resolution += p.eigenvalue * p.projector;
      }
      CHECK((sum_e - Eigen::MatrixXd::Identity(g.n, g.n)).norm() < 1e-9);
      CHECK((resolution - l).norm() < 1e-9);
    }
  }
}

TEST_CASE("zero eigenvalue multiplicity equals the component count") {
  Rng rng = make_rng(80);
  for (int trial = 0; trial < 6; ++trial) {
    Graph g = gnp_graph(9, 0.2, rng);
    auto s = eigendecompose(g, LaplacianKind::Combinatorial);
    int zero_multiplicity = 0;
    for (int i = 0; i < s.n(); ++i)
      if (std::abs(s.eigenvalues(i)) < 1e-9) ++zero_multiplicity;
    CHECK(zero_multiplicity == component_count(g));
  }
}

TEST_CASE("simple spectrum predicate") {
  SECTION("P3 is simple (gaps 1 and 2)") {
    auto s = eigendecompose(path_graph(3), LaplacianKind::Combinatorial);
    CHECK(is_simple_spectrum(s));
  }
  SECTION("K3 normalized is not simple") {
    auto s = eigendecompose(complete_graph(3),
                            LaplacianKind::SymmetricNormalized);
    CHECK_FALSE(is_simple_spectrum(s));
  }
  SECTION("single vertex is vacuously simple") {
    auto s = eigendecompose(make_graph(1, {}), LaplacianKind::Combinatorial);
    CHECK(is_simple_spectrum(s));
  }
}

TEST_CASE("vec and kronecker identities") {
  Rng rng = make_rng(70);
  SECTION("unvec(vec(X)) = X exactly") {
    Eigen::MatrixXd x = random_matrix(6, 6, rng);
    CHECK((unvec(vec(x), 6, 6) - x).cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("v (x) u = vec(u v^T) within 1e-14 on random vectors") {
    for (int n : {3, 9, 16}) {
      Eigen::VectorXd u = random_matrix(n, 1, rng);
      Eigen::VectorXd v = random_matrix(n, 1, rng);
      Eigen::VectorXd lhs = kron_dense(v, u);
      Eigen::VectorXd rhs = vec(u * v.transpose());
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
  SECTION("pair_gft is diagonal on span{u_i u_i^T}") {
    Graph g = random_connected_graph(5, 0.6, rng);
    auto s = eigendecompose(g, LaplacianKind::Combinatorial);
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(5, 5);
    Eigen::VectorXd weights = random_matrix(5, 1, rng);
    for (int i = 0; i < 5; ++i)
      e += weights(i) * s.eigenvectors.col(i) *
           s.eigenvectors.col(i).transpose();
    Eigen::MatrixXd ehat = pair_gft(s, e);
    Eigen::MatrixXd offdiag = ehat;
    offdiag.diagonal().setZero();
    CHECK(offdiag.cwiseAbs().maxCoeff() < 1e-10);
    CHECK((ehat.diagonal() - weights).cwiseAbs().maxCoeff() < 1e-10);
  }
}
