#pragma once

#include "ksw/graphs.hpp"
#include "ksw/spectral.hpp"
#include "ksw/wick.hpp"

#include <optional>
#include <vector>

namespace ksw {

// State space: functions on the split graph, basis index 2e for (e,-) and 2e+1 for (e,+),
// where e- is the source and e+ the target of edge e.
inline Eigen::Index split_index(std::size_t edge, int sign) {
  return static_cast<Eigen::Index>(2 * edge + (sign > 0 ? 1 : 0));
}

constexpr double kTripleDefaultPhase = 0.0;
constexpr double kSpacetimeDefaultPhase = -1.5707963267948966;  // -pi/2

// pi(a) for a function a on the vertices.
Operator vertex_multiplication(const WeightedDigraph& g, const Vector& a);
// Algebra of vertex functions, basis = vertex indicators. Throws on isolated vertices (pi would not be faithful).
AlgebraRep vertex_algebra(const WeightedDigraph& g);

struct CanonicalTriple {
  WeightedDigraph graph;
  SpectralTriple triple;
};

// D = (1/delta)[[0,e^{it}],[e^{-it},0]], J = diag(e^{it}, e^{-it}) o cc, chi = diag(-1,1) per edge; KO 0.
CanonicalTriple build_canonical_triple(const WeightedDigraph& g);

// sup_e |a(e+) - a(e-)| / delta_e.
double lipschitz_constant(const WeightedDigraph& g, const Eigen::VectorXd& a);

struct ConnesDistance {
  std::optional<Rational> distance;  // nullopt means +infinity
  // An optimal 1-Lipschitz function (a(i) = 0) when the distance is finite.
  std::vector<Rational> witness;
};

// Exact supremum of |a(i) - a(j)| over real a with |a(e+) - a(e-)| <= delta_e (Bellman-Ford on the constraints).
ConnesDistance connes_distance(const CanonicalTriple& t, std::size_t i, std::size_t j);

struct CanonicalSpacetime {
  WeightedDigraph graph;
  SpectralSpacetime spacetime;
  // Distinguished form: blocks [[0, i e^{it}], [-i e^{-it}, 0]].
  Operator omega;
};

// Reverses every edge whose sign is -1, so the result has all signs +1.
WeightedDigraph reorient(const WeightedDigraph& g, const std::vector<int>& sigma);

// Per edge: j = omega_e, D = (i/delta)[[0,e^{it}],[e^{-it},0]], J = [[0,-1],[1,0]] o cc, chi = diag(-1,1); KO 2.
CanonicalSpacetime build_canonical_spacetime(const WeightedDigraph& g);

// The block omega_e for phase t.
Operator omega_block(double theta);
// (+)_e sigma_e omega_e(theta_e) with the triple's phases; default signs +1.
Operator canonical_distinguished_form(const CanonicalTriple& t, const std::vector<int>& sigma = {});

// Coefficients x_e with beta = (+)_e x_e omega_e; throws std::invalid_argument when beta is outside this family.
std::vector<double> edge_coefficients(const CanonicalSpacetime& s, const Operator& beta, double tol = kPredicateTol);
// (+)_e x_e omega_e
Operator form_from_coefficients(const CanonicalSpacetime& s, const std::vector<double>& x);
// [D, pi(f)] for real f; equals i[D, pi(-i f)].
Operator exact_canonical_form(const CanonicalSpacetime& s, const Eigen::VectorXd& f);

// sum of eps * x_e * delta_e along the path, eps = +1 with the orientation and -1 against.
double path_integral(const CanonicalSpacetime& s, const Operator& beta, const std::vector<std::size_t>& path,
                     double tol = kPredicateTol);

struct MoreraReport {
  bool exact = false;
  std::vector<std::vector<std::size_t>> cycles;
  std::vector<double> cycle_integrals;
  // Real potential f (zero at each component root) with beta = [D, pi(f)], when exact.
  std::optional<Eigen::VectorXd> potential;
  double potential_residual = 0.0;
};

MoreraReport morera_exactness(const CanonicalSpacetime& s, const Operator& beta, double tol = kPredicateTol);

struct CanonicalCausality {
  bool stably_causal = false;
  // Time function f(v) = 1 + position in the topological order.
  std::vector<Rational> potential;
  Operator beta;
  OrientationReport orientation;
  // Closed directed cycle when not stably causal.
  std::vector<std::size_t> cycle;
};

CanonicalCausality stable_causality_canonical(const CanonicalSpacetime& s, double tol = kPredicateTol);

}  // namespace ksw
