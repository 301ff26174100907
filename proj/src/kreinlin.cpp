#include "ksw/kreinlin.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ksw {

double rel_diff(const Operator& a, const Operator& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("rel_diff: shape mismatch");
  double scale = std::max({1.0, a.norm(), b.norm()});
  return (a - b).norm() / scale;
}

double rel_norm(const Operator& a, double scale) { return a.norm() / std::max(1.0, scale); }

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }
Operator anticommutator(const Operator& a, const Operator& b) { return a * b + b * a; }

AntilinearOperator::AntilinearOperator(Operator m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("AntilinearOperator: matrix must be square");
}

AntilinearOperator AntilinearOperator::conjugation(Eigen::Index dim) {
  return AntilinearOperator(Operator::Identity(dim, dim));
}

Vector AntilinearOperator::apply(const Vector& x) const { return m_ * x.conjugate(); }

AntilinearOperator AntilinearOperator::inverse() const {
  Eigen::FullPivLU<Operator> lu(m_);
  if (!lu.isInvertible()) throw std::invalid_argument("AntilinearOperator: singular");
  // J^{-1} y = conj(m^{-1} y)
  return AntilinearOperator(lu.inverse().conjugate());
}

Operator operator*(const AntilinearOperator& a, const AntilinearOperator& b) {
  return a.matrix() * b.matrix().conjugate();
}

AntilinearOperator operator*(const AntilinearOperator& a, const Operator& b) {
  return AntilinearOperator(a.matrix() * b.conjugate());
}

AntilinearOperator operator*(const Operator& a, const AntilinearOperator& b) {
  return AntilinearOperator(a * b.matrix());
}

AntilinearOperator operator*(cplx s, const AntilinearOperator& a) { return AntilinearOperator(s * a.matrix()); }

AntilinearOperator operator-(const AntilinearOperator& a) { return AntilinearOperator(-a.matrix()); }

Operator conjugate_by(const AntilinearOperator& J, const Operator& A) { return (J * A) * J.inverse(); }

double rel_diff(const AntilinearOperator& a, const AntilinearOperator& b) { return rel_diff(a.matrix(), b.matrix()); }

bool is_hermitian(const Operator& A, double tol) {
  if (A.rows() != A.cols()) return false;
  return rel_diff(A, A.adjoint()) <= tol;
}

Operator hermitian_part(const Operator& A) { return 0.5 * (A + A.adjoint()); }

double inverse_condition(const Operator& A) {
  if (A.size() == 0) return 1.0;
  Eigen::JacobiSVD<Operator> svd(A);
  const auto& s = svd.singularValues();
  double smax = s(0);
  if (smax == 0.0) return 0.0;
  return s(s.size() - 1) / smax;
}

bool is_invertible(const Operator& A, double tol) { return A.rows() == A.cols() && inverse_condition(A) > tol; }

KreinSpace::KreinSpace(Operator j, double tol) : j_(std::move(j)) {
  if (j_.rows() != j_.cols() || j_.rows() == 0) throw std::invalid_argument("KreinSpace: form must be square and nonempty");
  if (!is_hermitian(j_, tol)) throw std::invalid_argument("KreinSpace: form is not hermitian");
  if (!is_invertible(j_, tol)) throw std::invalid_argument("KreinSpace: form is singular");
  jinv_ = j_.inverse();
}

KreinSpace KreinSpace::hilbert(Eigen::Index dim) { return KreinSpace(Operator::Identity(dim, dim)); }

cplx KreinSpace::product(const Vector& x, const Vector& y) const { return x.dot(j_ * y); }

bool KreinSpace::is_definite(double tol) const {
  Eigen::SelfAdjointEigenSolver<Operator> es(hermitian_part(j_));
  const auto& ev = es.eigenvalues();
  return ev.minCoeff() > tol * ev.cwiseAbs().maxCoeff();
}

static void check_dim(const Operator& A, const KreinSpace& k, const char* what) {
  if (A.rows() != k.dim() || A.cols() != k.dim()) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

Operator krein_adjoint(const Operator& A, const KreinSpace& k) {
  check_dim(A, k, "krein_adjoint");
  return k.form_inverse() * A.adjoint() * k.form();
}

AntilinearOperator antilinear_adjoint(const AntilinearOperator& J, const KreinSpace& k) {
  check_dim(J.matrix(), k, "antilinear_adjoint");
  // (Jx, y) = x^T m^dagger j y and conj((x, N conj y)) = x^T conj(j) conj(N) y.
  return AntilinearOperator(k.form_inverse() * J.matrix().transpose() * k.form().conjugate());
}

PositivityReport krein_positivity(const Operator& B, const KreinSpace& k, double tol) {
  check_dim(B, k, "is_krein_positive");
  PositivityReport r;
  Operator jb = k.form() * B;
  double scale = std::max(1.0, jb.norm());
  r.hermiticity_residual = (jb - jb.adjoint()).norm() / scale;
  r.hermitian = r.hermiticity_residual <= tol;
  Eigen::SelfAdjointEigenSolver<Operator> es(hermitian_part(jb));
  const auto& ev = es.eigenvalues();
  double radius = ev.cwiseAbs().maxCoeff();
  r.margin = radius > 0 ? ev.minCoeff() / radius : 0.0;
  r.positive = r.hermitian && r.margin > tol;
  return r;
}

bool is_krein_positive(const Operator& B, const KreinSpace& k, double tol) { return krein_positivity(B, k, tol).positive; }

Operator star_beta_adjoint(const Operator& A, const Operator& beta, const KreinSpace& k) {
  check_dim(beta, k, "star_beta_adjoint");
  Eigen::FullPivLU<Operator> lu(beta);
  if (!lu.isInvertible()) throw std::invalid_argument("star_beta_adjoint: singular beta");
  return beta * krein_adjoint(A, k) * lu.inverse();
}

JacobsonReport jacobson_nilpotency(const Operator& A, const Operator& B, double tol) {
  if (A.rows() != A.cols() || B.rows() != A.rows() || B.cols() != A.cols())
    throw std::invalid_argument("jacobson_nilpotency: dimension mismatch");
  JacobsonReport r;
  Operator c = commutator(A, B);
  double scale = std::max({1.0, A.norm(), B.norm()});
  r.hypothesis_residual = commutator(c, A).norm() / (scale * scale * scale);
  r.hypothesis_holds = r.hypothesis_residual <= tol;
  double cn = c.norm();
  const Eigen::Index n = A.rows();
  if (cn == 0.0) {
    r.nilpotent = true;
    return r;
  }
  Operator p = Operator::Identity(n, n);
  double pw = 1.0;
  for (Eigen::Index k = 1; k <= n; ++k) {
    p = p * c;
    pw *= cn;
    r.max_trace_residual = std::max(r.max_trace_residual, std::abs(p.trace()) / pw);
  }
  r.nilpotent = p.norm() / pw <= tol;
  r.contradiction = r.hypothesis_holds && is_invertible(c, tol);
  return r;
}

}  // namespace ksw

namespace ksw {

namespace {

template <class Mat>
Mat null_space_impl(const Mat& A, double tol) {
  const Eigen::Index n = A.cols();
  if (A.rows() == 0) return Mat::Identity(n, n);
  Eigen::BDCSVD<Mat> svd(A, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  double cutoff = tol * std::max(1.0, s.size() ? s(0) : 0.0);
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > cutoff) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

}  // namespace

Operator null_space(const Operator& A, double tol) { return null_space_impl(A, tol); }
Eigen::MatrixXd null_space(const Eigen::MatrixXd& A, double tol) { return null_space_impl(A, tol); }

Vector vectorize(const Operator& A) { return Eigen::Map<const Vector>(A.data(), A.size()); }

Operator unvectorize(const Vector& v, Eigen::Index rows) {
  return Eigen::Map<const Operator>(v.data(), rows, v.size() / rows);
}

}  // namespace ksw
