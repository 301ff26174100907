#include "ksw/wick.hpp"

#include "support/generators.hpp"

#include <doctest.h>

#include <numbers>

using namespace ksw;
using ksw::testing::make_rng;
using ksw::testing::uniform;

namespace {

const cplx I(0.0, 1.0);
constexpr double kPi = std::numbers::pi;

Operator sigma_y() {
  Operator m(2, 2);
  m << 0, -I, I, 0;
  return m;
}

WickErrorKind kind_of(auto&& fn, std::string* condition = nullptr) {
  try {
    fn();
  } catch (const WickError& e) {
    if (condition) *condition = e.condition();
    return e.kind();
  }
  FAIL("expected a WickError");
  return WickErrorKind::FailsNec12;
}

void check_same(const SpectralData& a, const SpectralData& b, double tol) {
  CHECK(rel_diff(a.space.form(), b.space.form()) < tol);
  CHECK(rel_diff(a.D, b.D) < tol);
  CHECK(rel_diff(a.J, b.J) < tol);
  CHECK(rel_diff(a.chi, b.chi) < tol);
  REQUIRE(a.algebra.size() == b.algebra.size());
  for (std::size_t k = 0; k < a.algebra.size(); ++k) CHECK(rel_diff(a.algebra.basis()[k], b.algebra.basis()[k]) < tol);
  CHECK(a.ko_dim == b.ko_dim);
}

}  // namespace

TEST_CASE("two-point spacetime at theta = -pi/2 rotates onto S0") {
  auto rng = make_rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    double b = uniform(rng, 0.3, 2.5);
    auto s = build_c2_spacetime(b, -kPi / 2, 1.0);
    auto rot = to_euclidean(s, {c2_form(1, 1, -kPi / 2), std::nullopt});
    CHECK(rot.certificate.valid());
    auto s0 = build_s0_triple(b, -kPi / 2);
    check_same(rot.triple, s0, 1e-12);
    CHECK(verify_axioms(rot.triple, 1e-10).passed());
  }
}

TEST_CASE("round trip from the spacetime side") {
  auto rng = make_rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    double theta = uniform(rng, -kPi, kPi);
    auto s = build_c2_spacetime(uniform(rng, 0.3, 2.5) * (trial % 2 ? -1 : 1), theta, uniform(rng, 0.3, 2.5));
    Operator beta = c2_form(1, 1, theta);
    auto e = to_euclidean(s, {beta, std::nullopt});
    CHECK(e.triple.ko_dim == 0);
    CHECK(verify_axioms(e.triple, 1e-10).passed());
    auto back = to_antilorentzian(e.triple, beta);
    CHECK(back.certificate.valid());
    check_same(back.spacetime, s, 1e-12);
    CHECK(verify_axioms(back.spacetime, 1e-10).passed());
    // The right representation survives the rotation.
    for (const auto& a : s.algebra.basis())
      CHECK(rel_diff(right_representation(s, a), right_representation(e.triple, a)) < 1e-12);
  }
}

TEST_CASE("S0 is of WAL type") {
  auto rng = make_rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    double b = uniform(rng, 0.3, 2.5);
    auto t = build_s0_triple(b, uniform(rng, -kPi, kPi));
    auto found = find_distinguished_form(t);
    REQUIRE(found.omega);
    CHECK_FALSE(found.proven_absent);
    Operator expected(2, 2);
    expected << 0, I, -I, 0;
    CHECK(rel_diff(*found.omega, expected) < 1e-12);

    for (double sign : {1.0, -1.0}) {
      auto rot = to_antilorentzian(t, sign * expected);
      CHECK(rot.certificate.valid());
      CHECK(rel_diff(rot.spacetime.D, -I * t.D) < 1e-12);
      CHECK(rot.spacetime.ko_dim == 2);
      CHECK(verify_axioms(rot.spacetime, 1e-10).passed());
      CHECK(verify_time_orientation(rot.spacetime, rot.form).passed());
      // Back again.
      auto e = to_euclidean(rot.spacetime, rot.form);
      check_same(e.triple, t, 1e-12);
    }
  }
}

TEST_CASE("S6 is not of WAL type") {
  auto rng = make_rng(44);
  for (int trial = 0; trial < 10; ++trial) {
    auto t = build_s6_triple(uniform(rng, 0.3, 2.5), uniform(rng, -kPi, kPi));
    auto found = find_distinguished_form(t);
    CHECK_FALSE(found.omega);
    CHECK(found.proven_absent);
    // Every self-adjoint one-form commutes with J.
    auto omega = one_form_basis(t);
    for (const auto& w : omega.basis()) {
      Operator x = w + krein_adjoint(w, t.space);
      Operator y = I * (w - krein_adjoint(w, t.space));
      for (const Operator& h : {x, y}) {
        if (h.norm() < 1e-12) continue;
        CHECK(rel_diff(conjugate_by(t.J, h), h) < 1e-12);
        std::string cond;
        CHECK(kind_of([&] { to_antilorentzian(t, h / std::sqrt((h * h).trace().real() / 2)); }, &cond) ==
              WickErrorKind::FailsNec12);
        CHECK(cond == "imaginary");
      }
    }
  }
}

TEST_CASE("precondition failures are named") {
  auto s = build_c2_spacetime(1.0, 0.4, 1.5);
  CHECK(kind_of([&] { to_euclidean(s, {2.0 * c2_form(1, 1, 0.4), std::nullopt}); }) == WickErrorKind::NotNormalized);
  CHECK(kind_of([&] { to_euclidean(s, {c2_form(1, 2, 0.4), std::nullopt}); }) == WickErrorKind::NotAnOrientation);

  auto t = build_s0_triple(1.0, 0.0);
  std::string cond;
  CHECK(kind_of([&] { to_antilorentzian(t, Operator::Zero(2, 2)); }, &cond) == WickErrorKind::FailsNec12);
  CHECK(cond == "involution");
  Operator skew(2, 2);
  skew << 0, 1, -1, 0;
  CHECK(kind_of([&] { to_antilorentzian(t, skew); }) == WickErrorKind::NotSelfAdjoint);
  CHECK(kind_of([&] { to_antilorentzian(t, Operator::Identity(2, 2)); }, &cond) == WickErrorKind::FailsNec12);
  CHECK(cond == "one_form");
}

TEST_CASE("KO bookkeeping under rotation") {
  for (int n : {0, 2, 4, 6}) {
    auto a = ko_by_dimension(Signature::Antilorentzian, n);
    REQUIRE(a);
    auto e = ko_by_dimension(Signature::Euclidean, ((2 - n) % 8 + 8) % 8);
    REQUIRE(e);
    CHECK(e->epsilon == -a->epsilon);
    CHECK(e->epsilon2 == -a->epsilon2);
    CHECK(e->kappa == -a->kappa);
  }
}

TEST_CASE("the rotated Dirac maps are mutually inverse") {
  auto rng = make_rng(45);
  for (int trial = 0; trial < 20; ++trial) {
    Operator D = ksw::testing::random_operator(rng, 4);
    Operator w = Operator::Identity(4, 4);
    w(1, 1) = w(3, 3) = -1;
    Operator U = ksw::testing::random_invertible(rng, 4);
    w = U * w * U.inverse();
    CHECK(rel_diff(inverse_wick_dirac(wick_dirac(D, w), w), D) < 1e-12);
    CHECK(rel_diff(wick_dirac(inverse_wick_dirac(D, w), w), D) < 1e-12);
  }
}
