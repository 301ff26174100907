#include "ksw/clifford.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

namespace ksw {

std::string to_string(Signature s) {
  switch (s) {
    case Signature::Antilorentzian: return "antilorentzian";
    case Signature::Lorentzian: return "lorentzian";
    case Signature::Euclidean: return "euclidean";
  }
  return "unknown";
}

Signature parse_signature(const std::string& s) {
  if (s == "antilorentzian") return Signature::Antilorentzian;
  if (s == "lorentzian") return Signature::Lorentzian;
  if (s == "euclidean") return Signature::Euclidean;
  throw std::invalid_argument("unknown signature '" + s + "'");
}

const std::vector<KOSignEntry>& ko_table(Signature s) {
  using S = Signature;
  static const std::vector<KOSignEntry> anti{
      {S::Antilorentzian, 0, 2, -1, -1, -1},
      {S::Antilorentzian, 2, 0, 1, 1, -1},
      {S::Antilorentzian, 4, 6, 1, -1, -1},
      {S::Antilorentzian, 6, 4, -1, 1, -1},
  };
  static const std::vector<KOSignEntry> lor{
      {S::Lorentzian, 0, 6, 1, -1, 1},
      {S::Lorentzian, 2, 0, 1, 1, -1},
      {S::Lorentzian, 4, 2, -1, -1, 1},
      {S::Lorentzian, 6, 4, -1, 1, -1},
  };
  // Wick image of the antilorentzian table: KO dim 2 - k, all three signs flipped.
  static const std::vector<KOSignEntry> eucl = [] {
    std::vector<KOSignEntry> out;
    for (const auto& e : anti)
      out.push_back({S::Euclidean, e.metric_dim_mod8, ((2 - e.ko_dim_mod8) % 8 + 8) % 8, -e.epsilon, -e.epsilon2, -e.kappa});
    return out;
  }();
  switch (s) {
    case S::Antilorentzian: return anti;
    case S::Lorentzian: return lor;
    case S::Euclidean: return eucl;
  }
  return anti;
}

std::optional<KOSignEntry> ko_by_dimension(Signature s, int ko_dim) {
  int k = ((ko_dim % 8) + 8) % 8;
  for (const auto& e : ko_table(s))
    if (e.ko_dim_mod8 == k) return e;
  return std::nullopt;
}

std::optional<KOSignEntry> ko_by_metric(Signature s, int metric_dim) {
  int m = ((metric_dim % 8) + 8) % 8;
  for (const auto& e : ko_table(s))
    if (e.metric_dim_mod8 == m) return e;
  return std::nullopt;
}

Operator CliffordRep::vector(const Eigen::VectorXd& v) const {
  if (v.size() != n) throw std::invalid_argument("CliffordRep::vector: expected " + std::to_string(n) + " coefficients");
  Operator out = Operator::Zero(dim(), dim());
  for (int mu = 0; mu < n; ++mu) out += v(mu) * gamma[mu];
  return out;
}

Operator CliffordRep::pseudovector(const Eigen::VectorXd& w) const { return chi * vector(w); }

std::vector<Operator> CliffordRep::even_basis() const {
  std::vector<Operator> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) % 2) continue;
    Operator p = Operator::Identity(dim(), dim());
    for (int mu = 0; mu < n; ++mu)
      if (mask & (1u << mu)) p = p * gamma[mu];
    out.push_back(p);
  }
  return out;
}

namespace {

const cplx I(0.0, 1.0);

Operator pauli(int k) {
  Operator s(2, 2);
  if (k == 1) s << 0, 1, 1, 0;
  if (k == 2) s << 0, -I, I, 0;
  if (k == 3) s << 1, 0, 0, -1;
  return s;
}

// Antilinear M with M conj(gamma^mu) M^{-1} = -gamma^mu for every mu.
AntilinearOperator solve_charge_conjugation(const std::vector<Operator>& gamma) {
  const Eigen::Index d = gamma.front().rows();
  const Operator id = Operator::Identity(d, d);
  Operator system(static_cast<Eigen::Index>(gamma.size()) * d * d, d * d);
  for (std::size_t mu = 0; mu < gamma.size(); ++mu) {
    Operator block = Eigen::kroneckerProduct(gamma[mu].conjugate().transpose(), id).eval() +
                     Eigen::kroneckerProduct(id, gamma[mu]).eval();
    system.middleRows(static_cast<Eigen::Index>(mu) * d * d, d * d) = block;
  }
  Operator ker = null_space(system, 1e-10);
  if (ker.cols() != 1) throw std::logic_error("charge conjugation is not unique up to scale");
  Operator m = unvectorize(ker.col(0), d);
  cplx c = (m * m.conjugate())(0, 0);
  m /= std::sqrt(std::abs(c));
  // Fix the remaining phase: first sizeable entry real positive.
  for (Eigen::Index k = 0; k < m.size(); ++k) {
    cplx z = m.data()[k];
    if (std::abs(z) > 1e-8) {
      m *= std::conj(z) / std::abs(z);
      break;
    }
  }
  return AntilinearOperator(m);
}

}  // namespace

CliffordRep build_clifford(int n) {
  if (n % 2 != 0) throw std::invalid_argument("build_clifford: odd n is not supported");
  if (n < 2 || n > 8) throw std::invalid_argument("build_clifford: n must satisfy 2 <= n <= 8");
  std::vector<Operator> g{pauli(1), I * pauli(2)};
  for (int m = 2; m < n; m += 2) {
    const Eigen::Index d = g.front().rows();
    std::vector<Operator> next;
    for (const auto& x : g) next.push_back(Eigen::kroneckerProduct(x, pauli(3)).eval());
    Operator id = Operator::Identity(d, d);
    next.push_back(Eigen::kroneckerProduct(id, Operator(I * pauli(1))).eval());
    next.push_back(Eigen::kroneckerProduct(id, Operator(I * pauli(2))).eval());
    g = std::move(next);
  }
  CliffordRep rep;
  rep.n = n;
  rep.gamma = g;
  const Eigen::Index d = g.front().rows();
  Operator prod = Operator::Identity(d, d);
  for (const auto& x : g) prod = prod * x;
  Operator sq = prod * prod;
  rep.chi = (rel_diff(sq, Operator::Identity(d, d)) < 1e-12) ? prod : Operator(I * prod);
  rep.space = KreinSpace(g[0]);
  rep.J = solve_charge_conjugation(g);
  rep.signs = *ko_by_metric(Signature::Antilorentzian, n);
  return rep;
}

CliffordRep scalar_clifford() {
  CliffordRep rep;
  rep.n = 0;
  rep.chi = Operator::Identity(1, 1);
  rep.space = KreinSpace::hilbert(1);
  rep.J = AntilinearOperator::conjugation(1);
  rep.signs = *ko_by_metric(Signature::Antilorentzian, 0);
  return rep;
}

VectorPart vector_part(const Operator& a, const CliffordRep& rep) {
  if (a.rows() != rep.dim() || a.cols() != rep.dim()) throw std::invalid_argument("vector_part: dimension mismatch");
  VectorPart out;
  out.coefficients = Vector::Zero(rep.n);
  Operator rest = a;
  const double d = static_cast<double>(rep.dim());
  for (int mu = 0; mu < rep.n; ++mu) {
    // gamma^mu is unitary and the generators are trace-orthogonal.
    out.coefficients(mu) = (rep.gamma[mu].adjoint() * a).trace() / d;
    rest -= out.coefficients(mu) * rep.gamma[mu];
  }
  out.residual = rest.norm() / std::max(1.0, a.norm());
  return out;
}

Eigen::VectorXd real_vector_part(const Operator& a, const CliffordRep& rep, double tol) {
  auto vp = vector_part(a, rep);
  double scale = std::max(1.0, vp.coefficients.norm());
  if (vp.residual > tol || vp.coefficients.imag().norm() > tol * scale)
    throw std::invalid_argument("real_vector_part: operator is not a real vector");
  return vp.coefficients.real();
}

double minkowski(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) throw std::invalid_argument("minkowski: size mismatch");
  double s = 0.0;
  for (Eigen::Index mu = 0; mu < a.size(); ++mu) s += (mu == 0 ? 1.0 : -1.0) * a(mu) * b(mu);
  return s;
}

bool is_future_timelike(const Eigen::VectorXd& v, const CliffordRep& rep, double tol) {
  double scale = std::max(1e-300, v.squaredNorm());
  if (minkowski(v, v) <= tol * scale) return false;
  return is_krein_positive(rep.vector(v), rep.space, tol);
}

cplx normalized_trace(const Operator& a, const CliffordRep& rep) {
  if (a.rows() != rep.dim()) throw std::invalid_argument("normalized_trace: dimension mismatch");
  return a.trace() / static_cast<double>(rep.dim());
}

Operator spin_exponential(const Eigen::MatrixXd& omega, const CliffordRep& rep) {
  if (omega.rows() != rep.n || omega.cols() != rep.n) throw std::invalid_argument("spin_exponential: shape mismatch");
  Operator b = Operator::Zero(rep.dim(), rep.dim());
  for (int mu = 0; mu < rep.n; ++mu)
    for (int nu = 0; nu < rep.n; ++nu) b += 0.25 * omega(mu, nu) * rep.gamma[mu] * rep.gamma[nu];
  return b.exp();
}

Eigen::MatrixXd lorentz_action(const Operator& h, const CliffordRep& rep, double* residual) {
  Eigen::FullPivLU<Operator> lu(h);
  if (!lu.isInvertible()) throw std::invalid_argument("lorentz_action: singular transport");
  Operator hinv = lu.inverse();
  Eigen::MatrixXd lambda(rep.n, rep.n);
  double worst = 0.0;
  for (int mu = 0; mu < rep.n; ++mu) {
    auto vp = vector_part(h * rep.gamma[mu] * hinv, rep);
    double scale = std::max(1.0, vp.coefficients.norm());
    worst = std::max({worst, vp.residual, vp.coefficients.imag().norm() / scale});
    lambda.col(mu) = vp.coefficients.real();
  }
  if (residual) *residual = worst;
  return lambda;
}

Operator spin_lift(const Eigen::MatrixXd& lambda, const CliffordRep& rep) {
  if (lambda.rows() != rep.n || lambda.cols() != rep.n) throw std::invalid_argument("spin_lift: shape mismatch");
  const Eigen::Index d = rep.dim();
  const Operator id = Operator::Identity(d, d);
  // h gamma^mu - rho(Lambda e_mu) h = 0
  Operator system(rep.n * d * d, d * d);
  for (int mu = 0; mu < rep.n; ++mu) {
    Operator image = rep.vector(lambda.col(mu));
    system.middleRows(mu * d * d, d * d) =
        Eigen::kroneckerProduct(rep.gamma[mu].transpose(), id).eval() - Eigen::kroneckerProduct(id, image).eval();
  }
  Operator ker = null_space(system, 1e-9);
  if (ker.cols() != 1) throw std::invalid_argument("spin_lift: matrix is not a Lorentz transformation");
  Operator h = unvectorize(ker.col(0), d);
  cplx c = (krein_adjoint(h, rep.space) * h)(0, 0);
  if (std::abs(c.imag()) > 1e-8 * std::abs(c) || c.real() <= 0)
    throw std::invalid_argument("spin_lift: matrix is not orthochronous");
  h /= std::sqrt(c.real());
  // Phase so that h commutes with J.
  Operator x = h * rep.J.matrix();
  Operator y = rep.J.matrix() * h.conjugate();
  cplx ratio = (x.adjoint() * y).trace() / x.squaredNorm();
  h *= std::exp(I * 0.5 * std::arg(ratio));
  if (rel_diff(h * rep.chi, rep.chi * h) > 1e-9) throw std::invalid_argument("spin_lift: matrix is not proper");
  cplx tr = h.trace();
  bool flip = false;
  if (std::abs(tr.real()) > 1e-9 * h.norm()) {
    flip = tr.real() < 0;
  } else {
    // First sizeable entry in row-major order.
    for (Eigen::Index k = 0; k < d * d; ++k) {
      cplx z = h(k / d, k % d);
      if (std::abs(z) > 1e-9) {
        flip = (std::abs(z.real()) > 1e-9 ? z.real() : z.imag()) < 0;
        break;
      }
    }
  }
  return flip ? Operator(-h) : h;
}

Eigen::MatrixXd boost_matrix(int n, int axis, double rapidity) {
  if (axis <= 0 || axis >= n) throw std::invalid_argument("boost_matrix: bad axis");
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  m(0, 0) = m(axis, axis) = std::cosh(rapidity);
  m(0, axis) = m(axis, 0) = std::sinh(rapidity);
  return m;
}

Eigen::MatrixXd rotation_matrix(int n, int a, int b, double angle) {
  if (a <= 0 || b <= 0 || a >= n || b >= n || a == b) throw std::invalid_argument("rotation_matrix: bad axes");
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  m(a, a) = m(b, b) = std::cos(angle);
  m(a, b) = -std::sin(angle);
  m(b, a) = std::sin(angle);
  return m;
}

}  // namespace ksw
