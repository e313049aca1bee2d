#include <catch2/catch_amalgamated.hpp>

#include "fullspec/graph.hpp"
#include "fullspec/refinement.hpp"

using namespace fullspec;

namespace {

// partition b refines partition a: equal b-colors imply equal a-colors
bool refines(const std::vector<int>& b, const std::vector<int>& a) {
  std::map<int, int> image;
  for (std::size_t i = 0; i < b.size(); ++i) {
    auto [it, inserted] = image.emplace(b[i], a[i]);
    if (!inserted && it->second != a[i]) return false;
  }
  return true;
}

std::vector<int> random_permutation(int n, Rng& rng) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = n - 1; i > 0; --i) {
    int j = static_cast<int>(rng() % (i + 1));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

}  // namespace

TEST_CASE("atomic types") {
  Graph g = path_graph(3);
  CHECK(atp(g, 1, 1) == std::pair<int, int>{1, 0});
  CHECK(atp(g, 0, 1) == std::pair<int, int>{0, 1});
  CHECK(atp(g, 1, 0) == std::pair<int, int>{0, 1});
  CHECK(atp(g, 0, 2) == std::pair<int, int>{0, 0});
  CHECK_THROWS_AS(atp(g, 0, 3), DomainError);
}

TEST_CASE("1-WL refinement") {
  SECTION("regular unlabeled graphs stabilize on a single color") {
    for (const Graph& g : {cycle_graph(6), complete_graph(4), frucht_graph()}) {
      auto res = wl1_refine(g, std::nullopt, g.n + 1);
      CHECK(res.stable.num_classes() == 1);
    }
  }
  SECTION("frucht graph: single stable color despite asymmetry") {
    Graph f = frucht_graph();
    REQUIRE(f.n == 12);
    REQUIRE(f.num_edges() == 18);
    for (int d : f.degrees()) REQUIRE(d == 3);
    auto res = wl1_refine(f, std::nullopt, 20);
    CHECK(res.stable.num_classes() == 1);
  }
  SECTION("discrete initial labels are already stable at round 0") {
    Graph g = complete_graph(3);
    auto res = wl1_refine(g, std::vector<double>{1.0, 2.0, 3.0}, 10);
    CHECK(res.stable.num_classes() == 3);
    CHECK(res.stabilization_round == 0);
    CHECK(res.history[0].num_classes() == 3);
  }
  SECTION("path P4 separates endpoints from the middle") {
    auto res = wl1_refine(path_graph(4), std::nullopt, 8);
    const auto& c = res.stable.colors;
    CHECK(c[0] == c[3]);
    CHECK(c[1] == c[2]);
    CHECK(c[0] != c[1]);
  }
  SECTION("monotone refinement and stabilization within n rounds") {
    Rng rng = make_rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      Graph g = gnp_graph(9, 0.35, rng);
      auto res = wl1_refine(g, std::nullopt, g.n + 2);
      CHECK(res.stabilization_round <= g.n);
      for (std::size_t t = 1; t < res.history.size(); ++t)
        CHECK(refines(res.history[t].colors, res.history[t - 1].colors));
    }
  }
  SECTION("permutation invariance") {
    Rng rng = make_rng(6);
    Graph g = gnp_graph(8, 0.4, rng);
    auto base = wl1_refine(g, std::nullopt, 12);
    auto perm = random_permutation(8, rng);
    auto mapped = wl1_refine(relabel(g, perm), std::nullopt, 12);
    for (int u = 0; u < 8; ++u)
      for (int v = 0; v < 8; ++v)
        CHECK((base.stable.colors[u] == base.stable.colors[v]) ==
              (mapped.stable.colors[perm[u]] == mapped.stable.colors[perm[v]]));
  }
  SECTION("float labels are quantized at 12 decimal digits") {
    Graph g = path_graph(2);
    auto merged = wl1_refine(g, std::vector<double>{1.0, 1.0 + 1e-14}, 2);
    CHECK(merged.history[0].num_classes() == 1);
    auto split = wl1_refine(g, std::vector<double>{1.0, 1.0 + 1e-11}, 2);
    CHECK(split.history[0].num_classes() == 2);
  }
}

TEST_CASE("local 2-GNN refinement") {
  SECTION("single vertex has one pair and one color") {
    auto res = local2_refine(make_graph(1, {}), std::nullopt, 3);
    CHECK(res.stable.colors == std::vector<int>{0});
  }
  SECTION("P2 stable partition separates diagonal from off-diagonal") {
    auto res = local2_refine(path_graph(2), std::nullopt, 6);
    const auto& c = res.stable.colors;  // pairs (0,0),(0,1),(1,0),(1,1)
    CHECK(c[0] == c[3]);
    CHECK(c[1] == c[2]);
    CHECK(c[0] != c[1]);
  }
  SECTION("C6 and 2xC3: same 1-WL histograms, different pair histograms") {
    Graph c6 = cycle_graph(6);
    Graph two_c3 = disjoint_union(cycle_graph(3), cycle_graph(3));
    CHECK_FALSE(distinguishable(c6, two_c3, RefinementMode::Wl1));
    CHECK(distinguishable(c6, two_c3, RefinementMode::Local2));
  }
  SECTION("monotone refinement and recorded stabilization") {
    Rng rng = make_rng(7);
    for (int trial = 0; trial < 5; ++trial) {
      Graph g = gnp_graph(6, 0.4, rng);
      auto res = local2_refine(g, std::nullopt, g.n * g.n + 1);
      CHECK(res.stabilization_round <= g.n * g.n);
      for (std::size_t t = 1; t < res.history.size(); ++t)
        CHECK(refines(res.history[t].colors, res.history[t - 1].colors));
    }
  }
  SECTION("permutation invariance on ordered pairs") {
    Rng rng = make_rng(8);
    Graph g = gnp_graph(6, 0.5, rng);
    auto base = local2_refine(g, std::nullopt, 40);
    auto perm = random_permutation(6, rng);
    auto mapped = local2_refine(relabel(g, perm), std::nullopt, 40);
    const int n = 6;
    auto pc = [&](const std::vector<int>& c, int u, int v) {
      return c[u * n + v];
    };
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b)
            CHECK((pc(base.stable.colors, u, v) ==
                   pc(base.stable.colors, a, b)) ==
                  (pc(mapped.stable.colors, perm[u], perm[v]) ==
                   pc(mapped.stable.colors, perm[a], perm[b])));
  }
  SECTION("diagonal stable pair colors refine stable 1-WL colors") {
    Rng rng = make_rng(9);
    for (int trial = 0; trial < 8; ++trial) {
      const int n = 5 + static_cast<int>(rng() % 8);
      Graph g = gnp_graph(n, 0.4, rng);
      auto pair_res = local2_refine(g, std::nullopt, n * n + 1);
      auto node_res = wl1_refine(g, std::nullopt, n + 1);
      std::vector<int> diag(n);
      for (int u = 0; u < n; ++u) diag[u] = pair_res.stable.colors[u * n + u];
      CHECK(refines(diag, node_res.stable.colors));
    }
  }
}

TEST_CASE("distinguishability") {
  SECTION("isomorphic copies are indistinguishable in both modes") {
    Rng rng = make_rng(10);
    Graph g = gnp_graph(7, 0.45, rng);
    Graph h = relabel(g, random_permutation(7, rng));
    CHECK_FALSE(distinguishable(g, h, RefinementMode::Wl1));
    CHECK_FALSE(distinguishable(g, h, RefinementMode::Local2));
  }
  SECTION("different sizes are trivially distinguishable") {
    CHECK(distinguishable(path_graph(3), path_graph(4), RefinementMode::Wl1));
    CHECK(
        distinguishable(path_graph(3), path_graph(4), RefinementMode::Local2));
  }
}
