#pragma once

#include "ksw/spectral.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace ksw {

enum class WickDirection { ToEuclidean, ToAntilorentzian };
std::string to_string(WickDirection d);

struct WickCertificate {
  WickDirection direction = WickDirection::ToEuclidean;
  Operator form;
  bool normalized = false;  // form^2 = 1
  bool imaginary = false;   // J form J^{-1} = -form
  bool membership = false;  // form lies in the one-forms of the rotated Dirac operator
  double normalized_residual = 0.0;
  double imaginary_residual = 0.0;
  double membership_residual = 0.0;

  bool valid() const { return normalized && imaginary && membership; }
};

enum class WickErrorKind { NotNormalized, NotReconstructible, NotAnOrientation, NotSelfAdjoint, FailsNec12 };
std::string to_string(WickErrorKind k);

class WickError : public std::runtime_error {
 public:
  // `condition` names the failed check (e.g. "imaginary", "involution", "membership").
  WickError(WickErrorKind kind, std::string condition, const std::string& message);
  WickErrorKind kind() const { return kind_; }
  const std::string& condition() const { return condition_; }

 private:
  WickErrorKind kind_;
  std::string condition_;
};

struct EuclideanRotation {
  SpectralTriple triple;
  WickCertificate certificate;
};

struct AntilorentzianRotation {
  SpectralSpacetime spacetime;
  TimeOrientationForm form;
  WickCertificate certificate;
};

// (1 - i)/2 D + (1 + i)/2 w D w for an involution w.
Operator wick_dirac(const Operator& D, const Operator& w);
// Inverse of wick_dirac: (1 + i)/2 D + (1 - i)/2 w D w.
Operator inverse_wick_dirac(const Operator& D, const Operator& w);

// Hilbert form j beta^{-1}, D_beta = inverse_wick_dirac(D, beta), J_beta = beta J, chi_beta = -chi, KO 2 - n.
EuclideanRotation to_euclidean(const SpectralSpacetime& s, const TimeOrientationForm& f, double tol = kPredicateTol);

// Krein form h omega, D_omega = wick_dirac(D, omega), J_omega = omega J, chi_omega = -chi, KO 2 - n.
AntilorentzianRotation to_antilorentzian(const SpectralTriple& t, const Operator& omega, double tol = kPredicateTol);

struct DistinguishedFormSearch {
  std::optional<Operator> omega;
  // True only when the self-adjoint imaginary one-forms reduce to {0}, which rules out any involution.
  bool proven_absent = false;
  std::string note;
};

// Bounded search over self-adjoint J-imaginary one-forms for an involution passing to_antilorentzian.
// Candidates: each basis element, then sums and differences of basis pairs, each rescaled when X^2 is a positive
// multiple of the identity. The sign is fixed so the first sizeable entry (row-major) has positive imaginary part
// (positive real part if it is real).
DistinguishedFormSearch find_distinguished_form(const SpectralTriple& t, double tol = kPredicateTol);

}  // namespace ksw
