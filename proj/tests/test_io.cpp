#include <catch2/catch_amalgamated.hpp>

#include "fullspec/csv.hpp"
#include "fullspec/json_io.hpp"

using namespace fullspec;

TEST_CASE("matrix CSV") {
  SECTION("17-digit output round-trips exactly") {
    Eigen::MatrixXd m(2, 3);
    m << 1.0 / 3.0, -2.718281828459045, 0.0, 1e-17, 123456.789, -0.1;
    Eigen::MatrixXd back = matrix_from_csv(matrix_to_csv(m));
    REQUIRE(back.rows() == 2);
    REQUIRE(back.cols() == 3);
    CHECK((back - m).cwiseAbs().maxCoeff() == 0.0);
  }
  SECTION("bad cells report their line") {
    try {
      matrix_from_csv("1,2\n3,oops\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
  }
  SECTION("ragged rows rejected") {
    CHECK_THROWS_AS(matrix_from_csv("1,2\n3\n"), ParseError);
  }
}

TEST_CASE("graph JSON") {
  Graph g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}}, std::vector<int>{1, 1, 2, 2});
  Json j = graph_to_json(g);
  CHECK(j["n"] == 4);
  CHECK(j["edges"].size() == 3);
  Graph back = graph_from_json(j);
  CHECK(back.n == g.n);
  CHECK(back.edges == g.edges);
  CHECK(back.labels == g.labels);

  Graph unlabeled = path_graph(2);
  Json j2 = graph_to_json(unlabeled);
  CHECK(j2["labels"].is_null());
  CHECK_FALSE(graph_from_json(j2).labels.has_value());
}

TEST_CASE("filter JSON") {
  SECTION("bivariate coefficients round-trip") {
    BivariatePoly q;
    q.coeff = Eigen::MatrixXd::Zero(3, 3);
    q.coeff(0, 0) = 0.25;
    q.coeff(2, 1) = -1.5;
    q.total_degree_cap = 3;
    BivariatePoly back = bivariate_from_json(bivariate_to_json(q));
    CHECK((back.coeff - q.coeff).cwiseAbs().maxCoeff() == 0.0);
    CHECK(back.total_degree_cap == q.total_degree_cap);
  }
  SECTION("tensor decomposition serializes its pairs") {
    BivariatePoly q;
    q.coeff = Eigen::MatrixXd::Zero(2, 2);
    q.coeff(1, 0) = q.coeff(0, 1) = 1.0;
    Json j = tensor_to_json(tensor_decompose(q, 2));
    CHECK(j["S"] == 2);
    CHECK(j["pairs"].size() == 2);
    CHECK(j["pairs"][0]["f"]["basis"] == "monomial");
  }
}

TEST_CASE("coloring JSON") {
  auto res = wl1_refine(path_graph(4), std::nullopt, 6);
  Json j = coloring_to_json(res.stable);
  CHECK(j["colors"].size() == 4);
  int total = 0;
  for (auto& [color, count] : j["histogram"].items())
    total += count.get<int>();
  CHECK(total == 4);
}

TEST_CASE("bound report JSON") {
  Graph g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}},
                       std::vector<int>{1, 1, 2, 2});
  auto report = check_order2_bound(g, 1, 3, 7);
  Json j = bound_report_to_json(report, "p4-labeled");
  CHECK(j["theorem"] == "local2-upper-bound");
  CHECK(j["graph_id"] == "p4-labeled");
  CHECK(j["K"] == 1);
  CHECK(j["trials"] == 3);
  CHECK(j["violations"].is_array());
}

TEST_CASE("obstruction JSON") {
  Graph g = path_graph(3);
  auto s = eigendecompose(g, LaplacianKind::Combinatorial);
  Json j = obstruction_to_json(spectral_obstruction(g, s));
  CHECK(j["verdict"] == true);
  CHECK(j["K"] == 1);
  CHECK(j["stacked_rank"] == 2);
}
