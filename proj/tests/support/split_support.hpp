#pragma once

#include "ksw/splitdirac.hpp"

#include "support/generators.hpp"

#include <functional>
#include <string>
#include <utility>
#include <vector>

// Builders and oracles shared by the split Dirac unit tests and the acceptance suite.
namespace ksw::testing::split {

inline WeightedDigraph make(std::vector<std::string> labels, std::vector<std::pair<int, int>> es) {
  std::vector<Edge> edges;
  for (auto [s, d] : es) edges.push_back({std::size_t(s), std::size_t(d), Rational(1), std::nullopt});
  return WeightedDigraph(std::move(labels), std::move(edges));
}

inline Operator id(const CliffordRep& rep) { return Operator::Identity(rep.dim(), rep.dim()); }

// Vectorial structure with gamma+ = rho(v_e) and gamma- fixed by the partner relation.
inline SplitDiracStructure vectorial(const WeightedDigraph& g, const CliffordRep& rep, const std::vector<Operator>& h,
                              const std::vector<Eigen::VectorXd>& v) {
  std::vector<Operator> gp, gm;
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    gp.push_back(rep.vector(v[e]));
    gm.push_back(gamma_minus_partner(rep, h[e], gp.back()));
  }
  return build_split(g, rep, h, gp, gm);
}

inline SplitDiracStructure flat_vectorial(const WeightedDigraph& g, const CliffordRep& rep) {
  return vectorial(g, rep, std::vector<Operator>(g.num_edges(), id(rep)),
                   std::vector<Eigen::VectorXd>(g.num_edges(), Eigen::VectorXd::Unit(rep.n, 0)));
}

inline Eigen::MatrixXd random_generator(std::mt19937_64& rng, int n, double scale) {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      w(a, b) = uniform(rng, -scale, scale);
      w(b, a) = -w(a, b);
    }
  return w;
}

inline Eigen::VectorXd random_future(std::mt19937_64& rng, int n) {
  Eigen::VectorXd v(n);
  double spatial = 0.0;
  for (int k = 1; k < n; ++k) {
    v(k) = uniform(rng, -1, 1);
    spatial += v(k) * v(k);
  }
  v(0) = std::sqrt(spatial) + uniform(rng, 0.3, 1.5);
  return v;
}

inline SplitDiracStructure boost_triangle(double rapidity) {
  auto rep = build_clifford(4);
  auto g = make({"1", "2", "3"}, {{0, 1}, {1, 2}, {2, 0}});
  std::vector<Operator> h{spin_lift(boost_matrix(4, 1, rapidity), rep), id(rep), id(rep)};
  return vectorial(g, rep, h, std::vector<Eigen::VectorXd>(3, Eigen::VectorXd::Unit(4, 0)));
}

inline SplitDiracStructure rotation_triangle(double angle) {
  auto rep = build_clifford(4);
  auto g = make({"1", "2", "3"}, {{0, 1}, {1, 2}, {2, 0}});
  std::vector<Operator> h{spin_lift(rotation_matrix(4, 1, 2, angle), rep), id(rep), id(rep)};
  return vectorial(g, rep, h, std::vector<Eigen::VectorXd>(3, Eigen::VectorXd::Unit(4, 0)));
}

// n = 4 structure with flat connection and gamma+ = a rho(e0) + b chi rho(e0) per edge.
inline SplitDiracStructure n4_typed(const WeightedDigraph& g, const std::vector<EdgeCausalType>& types) {
  auto rep = build_clifford(4);
  Eigen::VectorXd e0 = Eigen::VectorXd::Unit(4, 0), zero = Eigen::VectorXd::Zero(4);
  std::vector<Operator> h(g.num_edges(), id(rep)), gp, gm;
  for (auto t : types) {
    Operator x;
    switch (t) {
      case EdgeCausalType::TimelikeFuture: x = rep.vector(e0); break;
      case EdgeCausalType::TimelikePast: x = -rep.vector(e0); break;
      case EdgeCausalType::SigmaPlus: x = rep.pseudovector(e0); break;
      case EdgeCausalType::SigmaMinus: x = -rep.pseudovector(e0); break;
      default: x = rep.vector(Eigen::VectorXd::Unit(4, 1)); break;
    }
    gp.push_back(x);
    gm.push_back(gamma_minus_partner(rep, id(rep), x));
  }
  return build_split(g, rep, h, gp, gm);
}

// Independent directed-cycle test by three-colour DFS.
inline bool has_directed_cycle(const WeightedDigraph& g) {
  std::vector<int> colour(g.num_vertices(), 0);
  std::function<bool(std::size_t)> visit = [&](std::size_t v) {
    colour[v] = 1;
    for (std::size_t e : g.incident(v)) {
      if (g.edge(e).src != v) continue;
      std::size_t w = g.edge(e).dst;
      if (colour[w] == 1 || (colour[w] == 0 && visit(w))) return true;
    }
    colour[v] = 2;
    return false;
  };
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (colour[v] == 0 && visit(v)) return true;
  return false;
}

}  // namespace ksw::testing::split
