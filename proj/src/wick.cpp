#include "ksw/wick.hpp"

#include <cmath>

namespace ksw {

namespace {

const cplx I(0.0, 1.0);

int rotated_ko(int n) { return ((2 - n) % 8 + 8) % 8; }

Operator fix_sign(Operator w) {
  for (Eigen::Index r = 0; r < w.rows(); ++r)
    for (Eigen::Index c = 0; c < w.cols(); ++c) {
      cplx z = w(r, c);
      if (std::abs(z) < 1e-8) continue;
      double key = std::abs(z.imag()) > 1e-8 ? z.imag() : z.real();
      return key < 0 ? Operator(-w) : w;
    }
  return w;
}

}  // namespace

std::string to_string(WickDirection d) { return d == WickDirection::ToEuclidean ? "to_euclidean" : "to_antilorentzian"; }

std::string to_string(WickErrorKind k) {
  switch (k) {
    case WickErrorKind::NotNormalized: return "NotNormalized";
    case WickErrorKind::NotReconstructible: return "NotReconstructible";
    case WickErrorKind::NotAnOrientation: return "NotAnOrientation";
    case WickErrorKind::NotSelfAdjoint: return "NotSelfAdjoint";
    case WickErrorKind::FailsNec12: return "FailsNec12";
  }
  return "unknown";
}

WickError::WickError(WickErrorKind kind, std::string condition, const std::string& message)
    : std::runtime_error(to_string(kind) + " (" + condition + "): " + message), kind_(kind), condition_(std::move(condition)) {}

Operator wick_dirac(const Operator& D, const Operator& w) {
  return cplx(0.5, -0.5) * D + cplx(0.5, 0.5) * (w * D * w);
}

Operator inverse_wick_dirac(const Operator& D, const Operator& w) {
  return cplx(0.5, 0.5) * D + cplx(0.5, -0.5) * (w * D * w);
}

EuclideanRotation to_euclidean(const SpectralSpacetime& s, const TimeOrientationForm& f, double tol) {
  if (s.signature != Signature::Antilorentzian)
    throw std::invalid_argument("to_euclidean: only antilorentzian spacetimes are rotated");
  const Eigen::Index d = s.dim();
  const Operator& beta = f.beta;
  auto orient = verify_time_orientation(s, f, nullptr, tol);
  if (!orient.passed()) {
    auto fails = orient.failures();
    throw WickError(WickErrorKind::NotAnOrientation, fails.front(), "beta is not a positive time-orientation form");
  }
  WickCertificate cert;
  cert.direction = WickDirection::ToEuclidean;
  cert.form = beta;
  cert.normalized_residual = rel_diff(beta * beta, Operator::Identity(d, d));
  cert.normalized = cert.normalized_residual <= tol;
  if (!cert.normalized) throw WickError(WickErrorKind::NotNormalized, "involution", "beta^2 != 1");
  auto rec = check_reconstructibility(s, f, tol);
  if (!rec.passed()) throw WickError(WickErrorKind::NotReconstructible, "twisted_adjoint_closed", "pi(A) is not *_beta-closed");
  cert.imaginary_residual = orient.find("imaginary")->residual;
  cert.imaginary = true;

  EuclideanRotation out;
  SpectralTriple& t = out.triple;
  // beta^{-1} = beta once beta^2 = 1 is certified.
  Operator h = s.space.form() * beta;
  t.space = KreinSpace(hermitian_part(h), tol);
  t.algebra = s.algebra;
  t.D = inverse_wick_dirac(s.D, beta);
  t.J = beta * s.J;
  t.chi = -s.chi;
  t.ko_dim = rotated_ko(s.ko_dim);
  // The spacetime Dirac operator is recovered from D_beta by the forward rotation, so beta is a one-form for it.
  cert.membership_residual = one_form_basis(t, tol).span.residual(beta);
  cert.membership = cert.membership_residual <= tol;
  out.certificate = cert;
  return out;
}

AntilorentzianRotation to_antilorentzian(const SpectralTriple& t, const Operator& omega, double tol) {
  const Eigen::Index d = t.dim();
  if (omega.rows() != d || omega.cols() != d) throw std::invalid_argument("to_antilorentzian: dimension mismatch");
  double sa = rel_diff(krein_adjoint(omega, t.space), omega);
  if (sa > tol) throw WickError(WickErrorKind::NotSelfAdjoint, "self_adjoint", "omega is not self-adjoint");
  auto omega_d = one_form_basis(t, tol);
  if (!omega_d.span.contains(omega, tol))
    throw WickError(WickErrorKind::FailsNec12, "one_form", "omega is not a one-form of the triple");

  WickCertificate cert;
  cert.direction = WickDirection::ToAntilorentzian;
  cert.form = omega;
  cert.imaginary_residual = rel_norm(conjugate_by(t.J, omega) + omega, omega.norm());
  cert.imaginary = cert.imaginary_residual <= tol;
  cert.normalized_residual = rel_diff(omega * omega, Operator::Identity(d, d));
  cert.normalized = cert.normalized_residual <= tol;
  if (!cert.imaginary) throw WickError(WickErrorKind::FailsNec12, "imaginary", "J omega J^{-1} != -omega");
  if (!cert.normalized) throw WickError(WickErrorKind::FailsNec12, "involution", "omega^2 != 1");

  AntilorentzianRotation out;
  SpectralSpacetime& s = out.spacetime;
  s.signature = Signature::Antilorentzian;
  s.space = KreinSpace(hermitian_part(t.space.form() * omega), tol);
  s.algebra = t.algebra;
  s.D = wick_dirac(t.D, omega);
  s.J = omega * t.J;
  s.chi = -t.chi;
  s.ko_dim = rotated_ko(t.ko_dim);
  cert.membership_residual = one_form_basis(s, tol).span.residual(omega);
  cert.membership = cert.membership_residual <= tol;
  if (!cert.membership) throw WickError(WickErrorKind::FailsNec12, "membership", "omega is not a one-form of D_omega");
  out.form = {omega, is_exact(s, omega, tol)};
  out.certificate = cert;
  return out;
}

DistinguishedFormSearch find_distinguished_form(const SpectralTriple& t, double tol) {
  DistinguishedFormSearch out;
  const Eigen::Index d = t.dim();
  auto omega = one_form_basis(t, tol);
  auto forms = self_adjoint_imaginary_forms(omega, t.space, t.J, tol);
  if (forms.empty()) {
    out.proven_absent = true;
    out.note = "every self-adjoint one-form commutes with J; no imaginary involution exists";
    return out;
  }
  std::vector<Operator> candidates = forms;
  for (std::size_t a = 0; a < forms.size(); ++a)
    for (std::size_t b = a + 1; b < forms.size(); ++b) {
      candidates.push_back(forms[a] + forms[b]);
      candidates.push_back(forms[a] - forms[b]);
    }
  const Operator id = Operator::Identity(d, d);
  for (const auto& X : candidates) {
    Operator sq = X * X;
    cplx lambda = sq.trace() / double(d);
    if (lambda.real() <= tol || std::abs(lambda.imag()) > tol * std::abs(lambda)) continue;
    if (rel_diff(sq, lambda * id) > tol) continue;
    Operator w = fix_sign(X / std::sqrt(lambda.real()));
    try {
      to_antilorentzian(t, w, tol);
      out.omega = w;
      out.note = "involution found among " + std::to_string(candidates.size()) + " candidates";
      return out;
    } catch (const WickError&) {
    }
  }
  out.note = "none found among " + std::to_string(candidates.size()) + " candidates (search is not exhaustive)";
  return out;
}

}  // namespace ksw
