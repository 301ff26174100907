#pragma once

#include "ksw/clifford.hpp"
#include "ksw/kreinlin.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ksw {

// Span of operators with an orthonormal (Frobenius) basis.
class OperatorSpan {
 public:
  explicit OperatorSpan(Eigen::Index dim = 0) : dim_(dim) {}

  // Adds X if it is independent of the current span; returns whether it was added.
  bool add(const Operator& X, double tol = kPredicateTol);
  std::size_t size() const { return basis_.size(); }
  Eigen::Index dim() const { return dim_; }
  const std::vector<Operator>& basis() const { return basis_; }
  // ||X - P X|| / ||X||, zero for X = 0.
  double residual(const Operator& X) const;
  bool contains(const Operator& X, double tol = kPredicateTol) const { return residual(X) <= tol; }
  Operator project(const Operator& X) const;

 private:
  Eigen::Index dim_;
  std::vector<Operator> basis_;
};

struct SpanCoefficients {
  Vector coefficients;
  double residual = 0.0;
};

// Image pi(A) of a finite-dimensional algebra, given through a basis.
class AlgebraRep {
 public:
  AlgebraRep() = default;
  // Throws std::invalid_argument if the basis is dependent, misses the unit or is not multiplicatively closed.
  AlgebraRep(std::vector<Operator> basis, std::vector<std::string> labels, double tol = kPredicateTol);

  const std::vector<Operator>& basis() const { return basis_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t size() const { return basis_.size(); }
  Eigen::Index dim() const { return basis_.empty() ? 0 : basis_.front().rows(); }
  const OperatorSpan& span() const { return span_; }

  Operator element(const Vector& coefficients) const;
  // Least-squares coefficients of X against the basis.
  SpanCoefficients coordinates(const Operator& X) const;

 private:
  std::vector<Operator> basis_;
  std::vector<std::string> labels_;
  OperatorSpan span_;
};

struct SpectralData {
  KreinSpace space = KreinSpace::hilbert(1);
  AlgebraRep algebra;
  Operator D;
  AntilinearOperator J;
  Operator chi;
  int ko_dim = 0;

  Eigen::Index dim() const { return space.dim(); }
};

struct SpectralSpacetime : SpectralData {
  Signature signature = Signature::Antilorentzian;
};

// Euclidean triple; `space` holds the positive-definite Hilbert form (identity by default).
struct SpectralTriple : SpectralData {};

struct Check {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  std::string detail;
};

struct Report {
  std::vector<Check> checks;

  bool passed() const;
  const Check* find(const std::string& name) const;
  std::vector<std::string> failures() const;
  void add(std::string name, bool ok, double residual, std::string detail = {});
  // Pass iff residual <= tol.
  void add_residual(std::string name, double residual, double tol, std::string detail = {});
};

// Throws std::invalid_argument when the claimed KO dimension is absent from the table.
Report verify_axioms(const SpectralSpacetime& s, double tol = kPredicateTol);
Report verify_axioms(const SpectralTriple& t, double tol = kPredicateTol);

struct OneFormBasis {
  OperatorSpan span;
  const std::vector<Operator>& basis() const { return span.basis(); }
  std::size_t size() const { return span.size(); }
};

OneFormBasis one_form_basis(const SpectralData& s, double tol = kPredicateTol);
// Worst relative residual of a * w and w * a against the span, over basis pairs.
double bimodule_residual(const SpectralData& s, const OneFormBasis& omega);

// Real basis of {beta in Omega^1 : beta self-adjoint for `space`, J beta J^{-1} = -beta}.
std::vector<Operator> self_adjoint_imaginary_forms(const OneFormBasis& omega, const KreinSpace& space,
                                                   const AntilinearOperator& J, double tol = kPredicateTol);

struct TimeOrientationForm {
  Operator beta;
  // Algebra coefficients of delta with beta = i[D, pi(delta)].
  std::optional<Vector> potential;
};

struct OrientationReport : Report {
  bool normalized = false;
  double positivity_margin = 0.0;
};

// Gram matrix of <.,.>_beta: j beta^{-1} (antilorentzian) or j beta^{-1} chi (lorentzian).
Operator beta_gram(const SpectralSpacetime& s, const Operator& beta);
OrientationReport verify_time_orientation(const SpectralSpacetime& s, const TimeOrientationForm& f,
                                          const OneFormBasis* omega = nullptr, double tol = kPredicateTol);

// i[D, pi(delta)]
Operator exact_form(const SpectralData& s, const Vector& delta);
std::optional<Vector> is_exact(const SpectralData& s, const Operator& beta, double tol = kPredicateTol);

struct ReconstructibilityReport : Report {
  double worst_residual = 0.0;
};

ReconstructibilityReport check_reconstructibility(const SpectralSpacetime& s, const TimeOrientationForm& f,
                                                  double tol = kPredicateTol);

// pi^o(a) = J pi(a)^x J^{-1}
Operator right_representation(const SpectralData& s, const Operator& pi_a);

struct OrderReport {
  double order0_residual = 0.0;
  double order1_residual = 0.0;
  bool order0 = false;
  bool order1 = false;
  // Per supplied form: relative size of [beta, pi(a)] over the basis.
  std::vector<double> form_commutator_residuals;
};

OrderReport order_conditions(const SpectralData& s, const std::vector<Operator>& forms = {},
                             double tol = kPredicateTol);

Report unitary_equivalence_check(const SpectralSpacetime& s1, const SpectralSpacetime& s2, const Operator& U,
                                 const std::vector<TimeOrientationForm>& forms = {}, double tol = kPredicateTol);

// Does pi(A) contain pi(a)^x for every basis element? Returns the worst residual.
double cross_closure_residual(const SpectralData& s);

// The two-point family: j = r[[0,e^{it}],[e^{-it},0]], D = b[[0,e^{it}],[-e^{-it},0]],
// chi = diag(-1,1), J = [[0,-1],[1,0]] o cc, KO dim 2.
SpectralSpacetime build_c2_spacetime(double b, double theta, double r);
// Admissible forms [[0,lambda],[mu,0]] written in the theta = 0 frame and rotated to theta.
Operator c2_form(double lambda, double mu, double theta);
// The rejected branch J = e^{ik} o cc (epsilon'' = +1), with D = [[0,b],[c,0]] and theta = 0.
SpectralSpacetime build_c2_even_branch(double b, double c, double k, double r);

// S^0: D = b[[0,1],[1,0]], chi = diag(1,-1), J = e^{ik} o cc, KO 0.
SpectralTriple build_s0_triple(double b, double k);
// S^6: same D and chi, J = e^{i phi}[[0,1],[1,0]] o cc, KO 6.
SpectralTriple build_s6_triple(double b, double phi);

}  // namespace ksw
