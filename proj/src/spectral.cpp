#include "ksw/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ksw {

namespace {

const cplx I(0.0, 1.0);

}  // namespace

bool OperatorSpan::add(const Operator& X, double tol) {
  if (dim_ == 0) dim_ = X.rows();
  if (X.rows() != dim_ || X.cols() != dim_) throw std::invalid_argument("OperatorSpan: dimension mismatch");
  double norm = X.norm();
  if (norm == 0.0) return false;
  Operator r = X;
  // Two passes of modified Gram-Schmidt.
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& q : basis_) r -= (q.adjoint() * r).trace() * q;
  double rn = r.norm();
  if (rn <= tol * norm) return false;
  basis_.push_back(r / rn);
  return true;
}

Operator OperatorSpan::project(const Operator& X) const {
  Operator p = Operator::Zero(X.rows(), X.cols());
  for (const auto& q : basis_) p += (q.adjoint() * X).trace() * q;
  return p;
}

double OperatorSpan::residual(const Operator& X) const {
  double n = X.norm();
  if (n == 0.0) return 0.0;
  if (basis_.empty()) return 1.0;
  return (X - project(X)).norm() / n;
}

AlgebraRep::AlgebraRep(std::vector<Operator> basis, std::vector<std::string> labels, double tol)
    : basis_(std::move(basis)), labels_(std::move(labels)) {
  if (basis_.empty()) throw std::invalid_argument("AlgebraRep: empty basis");
  if (labels_.empty())
    for (std::size_t k = 0; k < basis_.size(); ++k) labels_.push_back("a" + std::to_string(k));
  if (labels_.size() != basis_.size()) throw std::invalid_argument("AlgebraRep: label count mismatch");
  const Eigen::Index d = basis_.front().rows();
  span_ = OperatorSpan(d);
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    if (basis_[k].rows() != d || basis_[k].cols() != d) throw std::invalid_argument("AlgebraRep: dimension mismatch");
    if (!span_.add(basis_[k], tol))
      throw std::invalid_argument("AlgebraRep: basis element '" + labels_[k] + "' is dependent (representation not faithful)");
  }
  if (!span_.contains(Operator::Identity(d, d), tol)) throw std::invalid_argument("AlgebraRep: unit not in span");
  for (const auto& a : basis_)
    for (const auto& b : basis_)
      if (!span_.contains(a * b, tol)) throw std::invalid_argument("AlgebraRep: span not closed under multiplication");
}

Operator AlgebraRep::element(const Vector& c) const {
  if (static_cast<std::size_t>(c.size()) != basis_.size()) throw std::invalid_argument("AlgebraRep: coefficient size mismatch");
  Operator out = Operator::Zero(dim(), dim());
  for (std::size_t k = 0; k < basis_.size(); ++k) out += c(static_cast<Eigen::Index>(k)) * basis_[k];
  return out;
}

SpanCoefficients AlgebraRep::coordinates(const Operator& X) const {
  const Eigen::Index d = dim();
  Operator cols(d * d, static_cast<Eigen::Index>(basis_.size()));
  for (std::size_t k = 0; k < basis_.size(); ++k) cols.col(static_cast<Eigen::Index>(k)) = vectorize(basis_[k]);
  Eigen::CompleteOrthogonalDecomposition<Operator> cod(cols);
  SpanCoefficients out;
  out.coefficients = cod.solve(vectorize(X));
  out.residual = (element(out.coefficients) - X).norm() / std::max(1e-300, X.norm());
  if (X.norm() == 0.0) out.residual = 0.0;
  return out;
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* Report::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<std::string> Report::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.passed) out.push_back(c.name);
  return out;
}

void Report::add(std::string name, bool ok, double residual, std::string detail) {
  checks.push_back({std::move(name), ok, residual, std::move(detail)});
}

void Report::add_residual(std::string name, double residual, double tol, std::string detail) {
  add(std::move(name), residual <= tol, residual, std::move(detail));
}

namespace {

void check_shapes(const SpectralData& s) {
  const Eigen::Index d = s.dim();
  auto sq = [d](const Operator& m) { return m.rows() == d && m.cols() == d; };
  if (!sq(s.D) || !sq(s.chi) || !sq(s.J.matrix()) || s.algebra.dim() != d)
    throw std::invalid_argument("spectral structure: inconsistent dimensions");
}

Report verify_common(const SpectralData& s, const KOSignEntry& signs, int chi_adjoint_sign, double tol) {
  check_shapes(s);
  Report r;
  const Eigen::Index d = s.dim();
  const Operator id = Operator::Identity(d, d);
  r.add_residual("D_self_adjoint", rel_diff(krein_adjoint(s.D, s.space), s.D), tol);
  r.add_residual("chi_squared", rel_diff(s.chi * s.chi, id), tol);
  double comm = 0.0;
  for (const auto& a : s.algebra.basis()) comm = std::max(comm, rel_norm(commutator(a, s.chi), a.norm()));
  r.add_residual("chi_commutes_algebra", comm, tol);
  r.add_residual("chi_anticommutes_D", rel_norm(anticommutator(s.chi, s.D), s.D.norm()), tol);
  r.add_residual("chi_adjoint", rel_diff(krein_adjoint(s.chi, s.space), double(chi_adjoint_sign) * s.chi), tol,
                 chi_adjoint_sign < 0 ? "chi^x = -chi" : "chi^* = chi");
  r.add_residual("J_squared", rel_diff(s.J * s.J, double(signs.epsilon) * id), tol,
                 "epsilon = " + std::to_string(signs.epsilon));
  r.add_residual("J_commutes_D", rel_diff(s.J * s.D, s.D * s.J), tol);
  r.add_residual("J_chi", rel_diff(s.J * s.chi, cplx(signs.epsilon2) * (s.chi * s.J)), tol,
                 "epsilon'' = " + std::to_string(signs.epsilon2));
  r.add_residual("J_adjoint_J", rel_diff(antilinear_adjoint(s.J, s.space) * s.J, double(signs.kappa) * id), tol,
                 "kappa = " + std::to_string(signs.kappa));
  return r;
}

}  // namespace

Report verify_axioms(const SpectralSpacetime& s, double tol) {
  if (s.signature == Signature::Euclidean) throw std::invalid_argument("verify_axioms: spacetime with Euclidean signature");
  auto signs = ko_by_dimension(s.signature, s.ko_dim);
  if (!signs)
    throw std::invalid_argument("verify_axioms: KO dimension " + std::to_string(s.ko_dim) + " not in the " +
                                to_string(s.signature) + " table");
  return verify_common(s, *signs, -1, tol);
}

Report verify_axioms(const SpectralTriple& t, double tol) {
  auto signs = ko_by_dimension(Signature::Euclidean, t.ko_dim);
  if (!signs) throw std::invalid_argument("verify_axioms: KO dimension " + std::to_string(t.ko_dim) + " not in the euclidean table");
  Report r = verify_common(t, *signs, +1, tol);
  r.add("hilbert_form_positive", t.space.is_definite(tol), 0.0);
  return r;
}

OneFormBasis one_form_basis(const SpectralData& s, double tol) {
  check_shapes(s);
  OneFormBasis out{OperatorSpan(s.dim())};
  const auto& basis = s.algebra.basis();
  std::vector<Operator> comms;
  for (const auto& b : basis) comms.push_back(commutator(s.D, b));
  double scale = 0.0;
  for (const auto& c : comms) scale = std::max(scale, c.norm());
  for (const auto& a : basis)
    for (const auto& c : comms) {
      if (c.norm() <= tol * std::max(1.0, scale)) continue;
      Operator w = a * c;
      if (w.norm() <= tol * std::max(1.0, scale) * a.norm()) continue;
      out.span.add(w, tol);
    }
  return out;
}

double bimodule_residual(const SpectralData& s, const OneFormBasis& omega) {
  double worst = 0.0;
  for (const auto& a : s.algebra.basis())
    for (const auto& w : omega.basis()) {
      worst = std::max(worst, omega.span.residual(a * w));
      worst = std::max(worst, omega.span.residual(w * a));
    }
  return worst;
}

std::vector<Operator> self_adjoint_imaginary_forms(const OneFormBasis& omega, const KreinSpace& space,
                                                   const AntilinearOperator& J, double tol) {
  const auto& B = omega.basis();
  const Eigen::Index m = static_cast<Eigen::Index>(B.size());
  if (m == 0) return {};
  const Eigen::Index d = space.dim();
  const Eigen::Index rows = 4 * d * d;
  // Real parameters (x_k, y_k) with beta = sum (x_k + i y_k) B_k.
  Eigen::MatrixXd sys(rows, 2 * m);
  auto column = [&](const Operator& X) {
    Operator adj = krein_adjoint(X, space) - X;
    Operator imag = conjugate_by(J, X) + X;
    Eigen::VectorXd col(rows);
    Vector a = vectorize(adj), b = vectorize(imag);
    col << a.real(), a.imag(), b.real(), b.imag();
    return col;
  };
  for (Eigen::Index k = 0; k < m; ++k) {
    sys.col(2 * k) = column(B[k]);
    sys.col(2 * k + 1) = column(I * B[k]);
  }
  Eigen::MatrixXd ker = null_space(sys, tol);
  std::vector<Operator> out;
  for (Eigen::Index c = 0; c < ker.cols(); ++c) {
    Operator X = Operator::Zero(d, d);
    for (Eigen::Index k = 0; k < m; ++k) X += cplx(ker(2 * k, c), ker(2 * k + 1, c)) * B[k];
    out.push_back(X);
  }
  return out;
}

Operator beta_gram(const SpectralSpacetime& s, const Operator& beta) {
  Eigen::FullPivLU<Operator> lu(beta);
  if (!lu.isInvertible()) throw std::invalid_argument("beta_gram: singular beta");
  Operator binv = lu.inverse();
  if (s.signature == Signature::Lorentzian) return s.space.form() * binv * s.chi;
  return s.space.form() * binv;
}

OrientationReport verify_time_orientation(const SpectralSpacetime& s, const TimeOrientationForm& f,
                                          const OneFormBasis* omega, double tol) {
  check_shapes(s);
  OrientationReport r;
  const Operator& beta = f.beta;
  if (beta.rows() != s.dim() || beta.cols() != s.dim()) throw std::invalid_argument("verify_time_orientation: dimension mismatch");
  OneFormBasis local;
  if (!omega) {
    local = one_form_basis(s, tol);
    omega = &local;
  }
  r.add_residual("one_form", omega->span.residual(beta), tol);
  r.add_residual("krein_self_adjoint", rel_diff(krein_adjoint(beta, s.space), beta), tol);
  r.add_residual("imaginary", rel_norm(conjugate_by(s.J, beta) + beta, beta.norm()), tol);
  if (is_invertible(beta, tol)) {
    Operator gram = beta_gram(s, beta);
    // <.,.>_beta = (., X .) with X = beta^{-1} (or beta^{-1} chi); positivity of j X.
    Operator X = s.space.form_inverse() * gram;
    auto pos = krein_positivity(X, s.space, tol);
    r.positivity_margin = pos.margin;
    r.add("positive", pos.positive, pos.hermiticity_residual, "margin " + std::to_string(pos.margin));
  } else {
    r.add("positive", false, 1.0, "singular beta");
  }
  if (f.potential) {
    r.add_residual("potential", rel_diff(exact_form(s, *f.potential), beta), tol);
  }
  r.normalized = rel_diff(beta * beta, Operator::Identity(s.dim(), s.dim())) <= tol;
  return r;
}

Operator exact_form(const SpectralData& s, const Vector& delta) { return I * commutator(s.D, s.algebra.element(delta)); }

std::optional<Vector> is_exact(const SpectralData& s, const Operator& beta, double tol) {
  check_shapes(s);
  const auto& basis = s.algebra.basis();
  const Eigen::Index d = s.dim();
  Operator cols(d * d, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k)
    cols.col(static_cast<Eigen::Index>(k)) = vectorize(Operator(I * commutator(s.D, basis[k])));
  Eigen::CompleteOrthogonalDecomposition<Operator> cod(cols);
  cod.setThreshold(1e-12);
  Vector delta = cod.solve(vectorize(beta));
  double res = (exact_form(s, delta) - beta).norm() / std::max(1.0, beta.norm());
  if (res > tol) return std::nullopt;
  return delta;
}

ReconstructibilityReport check_reconstructibility(const SpectralSpacetime& s, const TimeOrientationForm& f, double tol) {
  ReconstructibilityReport r;
  // Independence is enforced by AlgebraRep; re-check for reporting.
  r.add("faithful", s.algebra.span().size() == s.algebra.size(), 0.0);
  if (!is_invertible(f.beta, tol)) {
    r.add("twisted_adjoint_closed", false, 1.0, "singular beta");
    r.worst_residual = 1.0;
    return r;
  }
  double worst = 0.0;
  for (const auto& a : s.algebra.basis()) worst = std::max(worst, s.algebra.span().residual(star_beta_adjoint(a, f.beta, s.space)));
  r.worst_residual = worst;
  r.add_residual("twisted_adjoint_closed", worst, tol);
  return r;
}

Operator right_representation(const SpectralData& s, const Operator& pi_a) {
  return conjugate_by(s.J, krein_adjoint(pi_a, s.space));
}

OrderReport order_conditions(const SpectralData& s, const std::vector<Operator>& forms, double tol) {
  check_shapes(s);
  OrderReport r;
  const auto& basis = s.algebra.basis();
  std::vector<Operator> right;
  for (const auto& a : basis) right.push_back(right_representation(s, a));
  for (const auto& a : basis) {
    Operator da = commutator(s.D, a);
    for (const auto& b : right) {
      r.order0_residual = std::max(r.order0_residual, commutator(a, b).norm() / std::max(1e-300, a.norm() * b.norm()));
      double scale = std::max(1.0, s.D.norm()) * a.norm() * b.norm();
      r.order1_residual = std::max(r.order1_residual, commutator(da, b).norm() / std::max(1e-300, scale));
    }
  }
  r.order0 = r.order0_residual <= tol;
  r.order1 = r.order1_residual <= tol;
  for (const auto& beta : forms) {
    double worst = 0.0;
    for (const auto& a : basis) worst = std::max(worst, commutator(beta, a).norm() / std::max(1e-300, beta.norm() * a.norm()));
    r.form_commutator_residuals.push_back(worst);
  }
  return r;
}

Report unitary_equivalence_check(const SpectralSpacetime& s1, const SpectralSpacetime& s2, const Operator& U,
                                 const std::vector<TimeOrientationForm>& forms, double tol) {
  if (U.rows() != s1.dim() || U.cols() != s2.dim() || s1.dim() != s2.dim())
    throw std::invalid_argument("unitary_equivalence_check: dimension mismatch");
  Eigen::FullPivLU<Operator> lu(U);
  if (!lu.isInvertible()) throw std::invalid_argument("unitary_equivalence_check: singular U");
  Operator Uinv = lu.inverse();
  Report r;
  // U^x U = 1 with U^x = j1^{-1} U^dagger j2.
  Operator ux = s1.space.form_inverse() * U.adjoint() * s2.space.form();
  r.add_residual("krein_unitary", rel_diff(ux * U, Operator::Identity(s1.dim(), s1.dim())), tol);
  double alg = s1.algebra.size() == s2.algebra.size() ? 0.0 : 1.0;
  for (const auto& a : s1.algebra.basis()) alg = std::max(alg, s2.algebra.span().residual(U * a * Uinv));
  r.add_residual("algebra", alg, tol);
  r.add_residual("dirac", rel_diff(U * s1.D * Uinv, s2.D), tol);
  r.add_residual("charge_conjugation", rel_diff(U * s1.J * Uinv, s2.J), tol);
  r.add_residual("chirality", rel_diff(U * s1.chi * Uinv, s2.chi), tol);
  if (!forms.empty()) {
    auto omega2 = one_form_basis(s2, tol);
    bool ok = true;
    double worst = 0.0;
    for (const auto& f : forms) {
      TimeOrientationForm g{U * f.beta * Uinv, std::nullopt};
      auto rep = verify_time_orientation(s2, g, &omega2, tol);
      ok = ok && rep.passed();
      for (const auto& c : rep.checks) worst = std::max(worst, c.residual);
    }
    r.add("forms", ok, worst);
  }
  return r;
}

double cross_closure_residual(const SpectralData& s) {
  double worst = 0.0;
  for (const auto& a : s.algebra.basis()) worst = std::max(worst, s.algebra.span().residual(krein_adjoint(a, s.space)));
  return worst;
}

namespace {

AlgebraRep diagonal_c2() {
  Operator e1 = Operator::Zero(2, 2), e2 = Operator::Zero(2, 2);
  e1(0, 0) = 1;
  e2(1, 1) = 1;
  return AlgebraRep({e1, e2}, {"e1", "e2"});
}

}  // namespace

SpectralSpacetime build_c2_spacetime(double b, double theta, double r) {
  if (b == 0.0) throw std::invalid_argument("build_c2_spacetime: b must be nonzero");
  if (!(r > 0.0)) throw std::invalid_argument("build_c2_spacetime: r must be positive");
  const cplx ph = std::exp(I * theta);
  Operator j(2, 2), D(2, 2), chi(2, 2), M(2, 2);
  j << 0, r * ph, r * std::conj(ph), 0;
  D << 0, b * ph, -b * std::conj(ph), 0;
  chi << -1, 0, 0, 1;
  M << 0, -1, 1, 0;
  SpectralSpacetime s;
  s.space = KreinSpace(j);
  s.algebra = diagonal_c2();
  s.D = D;
  s.J = AntilinearOperator(M);
  s.chi = chi;
  s.ko_dim = 2;
  s.signature = Signature::Antilorentzian;
  return s;
}

Operator c2_form(double lambda, double mu, double theta) {
  Operator beta(2, 2);
  beta << 0, lambda * std::exp(I * theta), mu * std::exp(-I * theta), 0;
  return beta;
}

SpectralSpacetime build_c2_even_branch(double b, double c, double k, double r) {
  Operator j(2, 2), D(2, 2), chi(2, 2);
  j << 0, r, r, 0;
  D << 0, b, c, 0;
  chi << -1, 0, 0, 1;
  SpectralSpacetime s;
  s.space = KreinSpace(j);
  s.algebra = diagonal_c2();
  s.D = D;
  s.J = AntilinearOperator(std::exp(I * k) * Operator::Identity(2, 2));
  s.chi = chi;
  s.ko_dim = 0;
  s.signature = Signature::Antilorentzian;
  return s;
}

SpectralTriple build_s0_triple(double b, double k) {
  Operator D(2, 2), chi(2, 2);
  D << 0, b, b, 0;
  chi << 1, 0, 0, -1;
  SpectralTriple t;
  t.space = KreinSpace::hilbert(2);
  t.algebra = diagonal_c2();
  t.D = D;
  t.J = AntilinearOperator(std::exp(I * k) * Operator::Identity(2, 2));
  t.chi = chi;
  t.ko_dim = 0;
  return t;
}

SpectralTriple build_s6_triple(double b, double phi) {
  SpectralTriple t = build_s0_triple(b, 0.0);
  Operator X(2, 2);
  X << 0, 1, 1, 0;
  t.J = AntilinearOperator(std::exp(I * phi) * X);
  t.ko_dim = 6;
  return t;
}

}  // namespace ksw
