#pragma once

#include "ksw/clifford.hpp"
#include "ksw/fourier_motzkin.hpp"
#include "ksw/graphs.hpp"
#include "ksw/spectral.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace ksw {

// Spinor fibres over the split graph. Block (e,-) sits over the source of e, (e,+) over the target;
// block index 2e+{0,1} as in the canonical module, each block of size rep.dim().
struct SplitDiracStructure {
  WeightedDigraph graph;  // edge weights are the lengths delta_e
  CliffordRep rep;
  std::vector<Operator> h_plus;       // S_{e-} -> S_{e+}
  std::vector<Operator> gamma_plus;   // acts on S_{e+}
  std::vector<Operator> gamma_minus;  // acts on S_{e-}

  Eigen::Index fibre() const { return rep.dim(); }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(2 * graph.num_edges()) * fibre(); }
  std::size_t num_edges() const { return graph.num_edges(); }
  Eigen::Index offset(std::size_t e, int sign) const;
  Operator h_minus(std::size_t e) const;
  double delta(std::size_t e) const;
  // Chirality and charge conjugation on the fibre over (e, sign). For n = 0 these depend on the sign.
  Operator chi_at(int sign) const;
  AntilinearOperator J_at(int sign) const;
};

// Throws std::invalid_argument on shape mismatches or a singular h.
SplitDiracStructure build_split(const WeightedDigraph& graph, const CliffordRep& rep, std::vector<Operator> h_plus,
                                std::vector<Operator> gamma_plus, std::vector<Operator> gamma_minus);

// gamma^- fixed by gamma^+ through J gamma^+ J^{-1} = -h^+ gamma^- h^- (sign flipped for a scalar fibre).
Operator gamma_minus_partner(const CliffordRep& rep, const Operator& h_plus, const Operator& gamma_plus);

// Block-diagonal pi(a) for a section a given per vertex (each an element of the fibre algebra).
Operator section_multiplication(const SplitDiracStructure& s, const std::vector<Operator>& a);
// Even Clifford sections, basis = (vertex, even basis element).
AlgebraRep even_section_algebra(const SplitDiracStructure& s);
SpectralSpacetime to_spacetime(const SplitDiracStructure& s);

struct ConnectionReport {
  bool metric = false;
  bool spin_preserving = false;
  bool orientation_preserving = false;
  bool clifford = false;
  double metric_residual = 0.0;
  double spin_residual = 0.0;
  double orientation_residual = 0.0;
  double clifford_residual = 0.0;
  // Lambda_e with h rho(v) h^{-1} = rho(Lambda_e v), when the edge is Clifford.
  std::vector<std::optional<Eigen::MatrixXd>> levi_civita;
};

ConnectionReport connection_properties(const SplitDiracStructure& s, double tol = kPredicateTol);

struct Theorem6Report : Report {
  bool vectorial = false;  // every gamma is a vector
  bool complete = false;   // vectorial, and the vectors at each vertex span it
  int ko_dim = 0;
  int epsilon = 0;
  int epsilon2 = 0;
};

// Named checks: gamma_self_adjoint, gamma_odd, gamma_partner, gamma_nonvanishing, metric, spin_preserving,
// orientation_preserving, axioms, ko_signs. Details list the offending edges as "src->dst".
Theorem6Report verify_theorem6(const SplitDiracStructure& s, double tol = kPredicateTol);

// beta blocks: (e,+) <- Gamma^+ h^+, (e,-) <- Gamma^- h^-, with Gamma^+ = -h^+ (J Gamma^- J^{-1}) h^-.
struct SplitOrientation {
  TimeOrientationForm form;
  std::vector<Operator> gamma_plus;
  OrientationReport report;
};

// Throws std::invalid_argument if some Gamma^- is not Krein-positive or not J-imaginary.
SplitOrientation orientation_form_family(const SplitDiracStructure& s, const std::vector<Operator>& gamma_minus,
                                         double tol = kPredicateTol);

struct HolonomyGenerator {
  std::vector<std::size_t> loop;  // closed vertex path at the basepoint
  Operator hol;                   // spinor holonomy, first step applied first
  Eigen::MatrixXd lorentz;        // vector action of hol
};

// Spinor transport along a vertex path (consecutive vertices must be adjacent).
Operator path_transport(const SplitDiracStructure& s, const std::vector<std::size_t>& path);
// One generator per fundamental cycle. Throws std::invalid_argument on a disconnected graph or a non-Clifford connection.
std::vector<HolonomyGenerator> holonomy_generators(const SplitDiracStructure& s, std::size_t basepoint,
                                                   double tol = kPredicateTol);

enum class ReconstructVerdict { Reconstructible, NotReconstructible, CriterionUnavailable };
std::string to_string(ReconstructVerdict v);

struct SplitReconstructibility {
  ReconstructVerdict verdict = ReconstructVerdict::CriterionUnavailable;
  std::string reason;
  // Parallel future timelike field per vertex, when found.
  std::vector<Eigen::VectorXd> parallel_field;
  std::optional<TimeOrientationForm> form;
  std::size_t fixed_dimension = 0;
  double max_norm_in_fixed = 0.0;  // max of g(u,u) over unit u in the fixed subspace
  // Operator-level cross-check: the candidate form passes (Reconstructible) or fails (otherwise).
  bool cross_validated = false;
  double operator_residual = 0.0;
};

SplitReconstructibility check_reconstructible_split(const SplitDiracStructure& s, double tol = kPredicateTol);

enum class EdgeCausalType { TimelikeFuture, TimelikePast, SigmaPlus, SigmaMinus, Other };
std::string to_string(EdgeCausalType t);

struct EdgeClassification {
  EdgeCausalType type = EdgeCausalType::Other;
  Eigen::VectorXd v;  // vector part of gamma^+
  Eigen::VectorXd w;  // pseudovector part: gamma^+ = rho(v) + chi rho(w)
  // Decisively outside the closed cone (as opposed to near its boundary).
  bool excluded = false;
  std::string note;
};

EdgeClassification classify_edge(const SplitDiracStructure& s, std::size_t e, double tol = kPredicateTol);

struct CausalPotential {
  std::vector<Rational> f;
  std::vector<Rational> h;
};

enum class CausalVerdict { StablyCausal, NotStablyCausal, Indeterminate };
std::string to_string(CausalVerdict v);

struct N4Causality {
  CausalVerdict verdict = CausalVerdict::Indeterminate;
  std::string rule;
  std::vector<EdgeClassification> edges;
  // Strict rows over (f_0..f_{V-1}, h_0..h_{V-1}), two per classified edge.
  std::vector<RationalRow> rows;
  std::vector<std::size_t> row_edge;
  std::optional<CausalPotential> potential;
  std::optional<std::vector<Rational>> certificate;
  std::vector<std::size_t> timelike_loop;
  std::string note;
};

// Rows for one edge of known type (empty for Other).
std::vector<RationalRow> causal_rows(const WeightedDigraph& g, std::size_t e, EdgeCausalType t);
// Edgewise check of the strict inequalities.
bool check_causal_potential(const WeightedDigraph& g, const std::vector<EdgeCausalType>& types,
                            const CausalPotential& p);
// Throws std::invalid_argument unless n = 4.
N4Causality n4_stable_causality(const SplitDiracStructure& s, double tol = kPredicateTol);

// Discretised Dirac operator on the vertex spinor bundle.
struct MvsData {
  WeightedDigraph graph;            // weights are the lengths l_e
  CliffordRep rep;
  std::vector<Operator> gamma_in;   // gamma_e at t(e)
  std::vector<Operator> gamma_out;  // gamma_{e-bar} at s(e)
  std::vector<Operator> holonomy;   // Hol(e): S_{s(e)} -> S_{t(e)}
};

// Throws std::invalid_argument on missing or misshaped data.
Operator build_mvs_dirac(const MvsData& m);
// gamma^+ = gamma_e, gamma^- = -gamma_{e-bar}, h^+ = Hol(e), delta = l.
SplitDiracStructure mvs_split_structure(const MvsData& m);

// i(phi)(e,+) = phi(t(e)), i(phi)(e,-) = phi(s(e)).
Operator graph_embedding(const SplitDiracStructure& s);
// Average over the split blocks sitting over each vertex. Throws on isolated vertices.
Operator averaging_projection(const SplitDiracStructure& s);

struct DiagramReport : Report {
  std::vector<std::size_t> degrees;
  // Per vertex: least-squares k_v with (Pi D i)_v = k_v Dtilde_v; nullopt where both rows vanish.
  std::vector<std::optional<cplx>> vertex_factors;
  std::vector<double> vertex_residuals;
  bool regular = false;
  bool uniform = false;             // all defined factors agree
  std::optional<cplx> factor;       // the common factor, when uniform
  std::vector<cplx> expected;       // -i d_v / 2
  double expected_residual = 0.0;   // ||Pi D i - K Dtilde|| with K the expected factors
  double reciprocal_residual = 0.0; // ||K Pi D i - Dtilde||
};

// Checks: pi_i_identity, i_pi_projector, per_vertex_proportional, uniform_factor, expected_factor
// (Pi D i = K Dtilde) and expected_factor_reciprocal (Dtilde = K Pi D i), K = -i d_v / 2.
DiagramReport check_commuting_diagram(const SplitDiracStructure& s, const Operator& dtilde,
                                      double tol = kPredicateTol);

}  // namespace ksw
