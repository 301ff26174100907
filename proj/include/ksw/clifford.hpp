#pragma once

#include "ksw/kreinlin.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ksw {

enum class Signature { Antilorentzian, Lorentzian, Euclidean };

std::string to_string(Signature s);
Signature parse_signature(const std::string& s);

struct KOSignEntry {
  Signature signature = Signature::Antilorentzian;
  int metric_dim_mod8 = 0;
  int ko_dim_mod8 = 0;
  int epsilon = 1;
  int epsilon2 = 1;  // epsilon''
  int kappa = 1;
};

const std::vector<KOSignEntry>& ko_table(Signature s);
std::optional<KOSignEntry> ko_by_dimension(Signature s, int ko_dim);
std::optional<KOSignEntry> ko_by_metric(Signature s, int metric_dim);

// Irreducible representation of the complex Clifford algebra of diag(+1,-1,...,-1).
struct CliffordRep {
  int n = 0;
  std::vector<Operator> gamma;
  Operator chi;
  KreinSpace space = KreinSpace::hilbert(1);  // j = gamma^0
  AntilinearOperator J;
  KOSignEntry signs;

  Eigen::Index dim() const { return chi.rows(); }
  double metric(int mu) const { return mu == 0 ? 1.0 : -1.0; }
  // rho(v) = sum_mu v_mu gamma^mu
  Operator vector(const Eigen::VectorXd& v) const;
  // chi rho(w)
  Operator pseudovector(const Eigen::VectorXd& w) const;
  // Products of an even number of distinct generators, in index order, identity first.
  std::vector<Operator> even_basis() const;
};

// Throws std::invalid_argument unless n is even and 2 <= n <= 8.
CliffordRep build_clifford(int n);
// One-dimensional fibre (n = 0) used for the scalar split structure.
CliffordRep scalar_clifford();

struct VectorPart {
  Vector coefficients;
  double residual = 0.0;  // relative Frobenius residual
};

VectorPart vector_part(const Operator& a, const CliffordRep& rep);
// Real coefficients of a; throws if the imaginary parts or residual exceed tol.
Eigen::VectorXd real_vector_part(const Operator& a, const CliffordRep& rep, double tol = kPredicateTol);

double minkowski(const Eigen::VectorXd& a, const Eigen::VectorXd& b);
bool is_future_timelike(const Eigen::VectorXd& v, const CliffordRep& rep, double tol = kPredicateTol);
cplx normalized_trace(const Operator& a, const CliffordRep& rep);

// exp(1/4 omega_{mu nu} gamma^mu gamma^nu) for a real antisymmetric omega.
Operator spin_exponential(const Eigen::MatrixXd& omega, const CliffordRep& rep);
// Adjoint action on vectors: h rho(v) h^{-1} = rho(Lambda v). Residual measures failure.
Eigen::MatrixXd lorentz_action(const Operator& h, const CliffordRep& rep, double* residual = nullptr);
// Spin lift of a proper orthochronous Lorentz matrix with deterministic sign.
Operator spin_lift(const Eigen::MatrixXd& lambda, const CliffordRep& rep);

Eigen::MatrixXd boost_matrix(int n, int axis, double rapidity);
Eigen::MatrixXd rotation_matrix(int n, int axis1, int axis2, double angle);

}  // namespace ksw
