#pragma once

#include <Eigen/Dense>

#include <complex>
#include <string>

namespace ksw {

using cplx = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Relative tolerance for predicates (hermiticity, positivity, span membership).
inline constexpr double kPredicateTol = 1e-9;
// Tolerance for algebraic identities on well-conditioned inputs.
inline constexpr double kIdentityTol = 1e-12;

// ||a - b||_F / max(1, ||a||_F, ||b||_F)
double rel_diff(const Operator& a, const Operator& b);
// ||a||_F / max(1, scale)
double rel_norm(const Operator& a, double scale);
Operator commutator(const Operator& a, const Operator& b);
Operator anticommutator(const Operator& a, const Operator& b);

// x -> m * conj(x).
class AntilinearOperator {
 public:
  AntilinearOperator() = default;
  explicit AntilinearOperator(Operator m);

  static AntilinearOperator conjugation(Eigen::Index dim);

  const Operator& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

  Vector apply(const Vector& x) const;
  AntilinearOperator inverse() const;

 private:
  Operator m_;
};

// Composition rules. Two antilinear factors give a linear operator.
Operator operator*(const AntilinearOperator& a, const AntilinearOperator& b);
AntilinearOperator operator*(const AntilinearOperator& a, const Operator& b);
AntilinearOperator operator*(const Operator& a, const AntilinearOperator& b);
AntilinearOperator operator*(cplx s, const AntilinearOperator& a);
AntilinearOperator operator-(const AntilinearOperator& a);

// J A J^{-1}
Operator conjugate_by(const AntilinearOperator& J, const Operator& A);
double rel_diff(const AntilinearOperator& a, const AntilinearOperator& b);

// Finite Krein space: (x, y) = <x, j y>.
class KreinSpace {
 public:
  // Throws std::invalid_argument unless j is square, hermitian and invertible.
  explicit KreinSpace(Operator j, double tol = kPredicateTol);

  static KreinSpace hilbert(Eigen::Index dim);

  Eigen::Index dim() const { return j_.rows(); }
  const Operator& form() const { return j_; }
  const Operator& form_inverse() const { return jinv_; }

  cplx product(const Vector& x, const Vector& y) const;
  // True when the form is positive definite.
  bool is_definite(double tol = kPredicateTol) const;

 private:
  Operator j_;
  Operator jinv_;
};

// A^x = j^{-1} A^dagger j.
Operator krein_adjoint(const Operator& A, const KreinSpace& k);
// Defined by (Jx, y) = conj((x, J^x y)).
AntilinearOperator antilinear_adjoint(const AntilinearOperator& J, const KreinSpace& k);

struct PositivityReport {
  bool positive = false;
  bool hermitian = false;
  double hermiticity_residual = 0.0;
  // Smallest eigenvalue of the hermitized j*B relative to its spectral radius.
  double margin = 0.0;
};

PositivityReport krein_positivity(const Operator& B, const KreinSpace& k, double tol = kPredicateTol);
bool is_krein_positive(const Operator& B, const KreinSpace& k, double tol = kPredicateTol);

// beta A^x beta^{-1}; throws on singular beta.
Operator star_beta_adjoint(const Operator& A, const Operator& beta, const KreinSpace& k);

struct JacobsonReport {
  bool hypothesis_holds = false;
  double hypothesis_residual = 0.0;
  // max_k |tr([A,B]^k)| / ||[A,B]||^k over k = 1..dim
  double max_trace_residual = 0.0;
  bool nilpotent = false;
  // [A,B] invertible while the hypothesis holds: impossible by the lemma.
  bool contradiction = false;
};

JacobsonReport jacobson_nilpotency(const Operator& A, const Operator& B, double tol = kPredicateTol);

bool is_hermitian(const Operator& A, double tol = kPredicateTol);
Operator hermitian_part(const Operator& A);
// Smallest singular value over largest.
double inverse_condition(const Operator& A);
bool is_invertible(const Operator& A, double tol = kPredicateTol);

// Orthonormal basis (columns) of ker A; singular values below tol * max(1, sigma_max) count as zero.
Operator null_space(const Operator& A, double tol = kPredicateTol);
Eigen::MatrixXd null_space(const Eigen::MatrixXd& A, double tol = kPredicateTol);
// Column-major vectorisation helpers.
Vector vectorize(const Operator& A);
Operator unvectorize(const Vector& v, Eigen::Index rows);

}  // namespace ksw
