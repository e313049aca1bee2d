// JSON serialization for graphs, filters, colorings, and reports.
#pragma once

#include <json.hpp>

#include "fullspec/expressivity.hpp"
#include "fullspec/filters.hpp"
#include "fullspec/graph.hpp"
#include "fullspec/heterophily.hpp"
#include "fullspec/refinement.hpp"

namespace fullspec {

using Json = nlohmann::json;

// {n, edges: [[u, v], ...], labels: [..] | null}
inline Json graph_to_json(const Graph& g) {
  Json j;
  j["n"] = g.n;
  j["edges"] = Json::array();
  for (auto [u, v] : g.edges) j["edges"].push_back({u, v});
  if (g.labels)
    j["labels"] = *g.labels;
  else
    j["labels"] = nullptr;
  return j;
}

inline Graph graph_from_json(const Json& j) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges"))
    edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  std::optional<std::vector<int>> labels;
  if (j.contains("labels") && !j.at("labels").is_null())
    labels = j.at("labels").get<std::vector<int>>();
  return make_graph(j.at("n").get<int>(), std::move(edges), std::move(labels));
}

// {K, coeff_matrix: [[...]]}
inline Json bivariate_to_json(const BivariatePoly& q) {
  Json j;
  j["K"] = q.max_degree();
  j["coeff_matrix"] = Json::array();
  for (int i = 0; i < q.coeff.rows(); ++i) {
    Json row = Json::array();
    for (int jj = 0; jj < q.coeff.cols(); ++jj) row.push_back(q.coeff(i, jj));
    j["coeff_matrix"].push_back(row);
  }
  if (q.total_degree_cap) j["total_degree_cap"] = *q.total_degree_cap;
  return j;
}

inline BivariatePoly bivariate_from_json(const Json& j) {
  BivariatePoly q;
  const auto& rows = j.at("coeff_matrix");
  const int size = static_cast<int>(rows.size());
  q.coeff.resize(size, size);
  for (int i = 0; i < size; ++i)
    for (int jj = 0; jj < size; ++jj)
      q.coeff(i, jj) = rows.at(i).at(jj).get<double>();
  if (j.contains("total_degree_cap"))
    q.total_degree_cap = j.at("total_degree_cap").get<int>();
  q.validate();
  return q;
}

inline const char* basis_name(PolyBasis b) {
  switch (b) {
    case PolyBasis::Monomial: return "monomial";
    case PolyBasis::Chebyshev: return "chebyshev";
    case PolyBasis::ChebyshevInterp: return "chebyshev-interpolated";
    case PolyBasis::Bernstein: return "bernstein";
  }
  return "unknown";
}

inline Json univariate_to_json(const UnivariatePoly& p) {
  return Json{{"basis", basis_name(p.basis)},
              {"coeffs", p.coeffs},
              {"domain", {p.spectral_domain[0], p.spectral_domain[1]}}};
}

// {S, pairs: [{f: {...}, h: {...}}, ...]}
inline Json tensor_to_json(const TensorDecomposition& t) {
  Json j;
  j["S"] = t.rank();
  j["pairs"] = Json::array();
  for (const auto& [f, h] : t.pairs)
    j["pairs"].push_back(
        {{"f", univariate_to_json(f)}, {"h", univariate_to_json(h)}});
  return j;
}

// {round, colors: [...], histogram: {color: count}}
inline Json coloring_to_json(const Coloring& c) {
  Json j;
  j["round"] = c.round;
  j["colors"] = c.colors;
  Json hist = Json::object();
  for (auto [color, count] : c.histogram())
    hist[std::to_string(color)] = count;
  j["histogram"] = hist;
  return j;
}

// {theorem, graph_id, K, trials, violations: [...], max_spread}
inline Json bound_report_to_json(const BoundReport& r,
                                 const std::string& graph_id) {
  Json j;
  j["theorem"] = r.theorem;
  j["graph_id"] = graph_id;
  j["K"] = r.degree;
  j["trials"] = r.trials;
  j["max_spread"] = r.max_within_class_spread;
  j["violations"] = Json::array();
  for (const auto& v : r.violations)
    j["violations"].push_back({{"trial", v.trial},
                               {"color", v.color},
                               {"pair_a", v.pair_a},
                               {"pair_b", v.pair_b},
                               {"spread", v.spread}});
  return j;
}

inline Json obstruction_to_json(const SpectralObstruction& o) {
  Json j;
  j["activating_list"] = o.activating_list;
  j["K"] = o.activating_list.size();
  j["block_supports"] = o.supports;
  j["stacked_rank"] = o.stacked_rank;
  j["rank_target"] = o.rank_target;
  j["kernel_dim"] = o.kernel_dim;
  j["kernel_is_ones"] = o.kernel_is_ones;
  j["multiplicities"] = o.multiplicities;
  j["kernel_constant_per_eigenspace"] = o.kernel_constant_per_eigenspace;
  j["verdict"] = o.verdict;
  return j;
}

}  // namespace fullspec
