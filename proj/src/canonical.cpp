#include "ksw/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ksw {

namespace {

const cplx I(0.0, 1.0);

Eigen::Index state_dim(const WeightedDigraph& g) { return static_cast<Eigen::Index>(2 * g.num_edges()); }

Operator block_sum(const WeightedDigraph& g, auto&& block) {
  const Eigen::Index d = state_dim(g);
  Operator out = Operator::Zero(d, d);
  for (std::size_t e = 0; e < g.num_edges(); ++e) out.block(split_index(e, -1), split_index(e, -1), 2, 2) = block(e);
  return out;
}

Operator offdiag(cplx upper, cplx lower) {
  Operator m = Operator::Zero(2, 2);
  m(0, 1) = upper;
  m(1, 0) = lower;
  return m;
}

}  // namespace

Operator vertex_multiplication(const WeightedDigraph& g, const Vector& a) {
  if (static_cast<std::size_t>(a.size()) != g.num_vertices()) throw std::invalid_argument("vertex_multiplication: size mismatch");
  return block_sum(g, [&](std::size_t e) {
    Operator m = Operator::Zero(2, 2);
    m(0, 0) = a(static_cast<Eigen::Index>(g.edge(e).src));
    m(1, 1) = a(static_cast<Eigen::Index>(g.edge(e).dst));
    return m;
  });
}

AlgebraRep vertex_algebra(const WeightedDigraph& g) {
  std::vector<Operator> basis;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (g.degree(v) == 0) throw std::invalid_argument("vertex '" + g.label(v) + "' is isolated; the representation is not faithful");
    Vector a = Vector::Zero(static_cast<Eigen::Index>(g.num_vertices()));
    a(static_cast<Eigen::Index>(v)) = 1.0;
    basis.push_back(vertex_multiplication(g, a));
  }
  return AlgebraRep(std::move(basis), g.labels());
}

CanonicalTriple build_canonical_triple(const WeightedDigraph& g) {
  CanonicalTriple out{g, {}};
  SpectralTriple& t = out.triple;
  t.space = KreinSpace::hilbert(state_dim(g));
  t.algebra = vertex_algebra(g);
  t.D = block_sum(g, [&](std::size_t e) {
    cplx p = std::exp(I * g.phase_or(e, kTripleDefaultPhase));
    double inv = 1.0 / to_double(g.edge(e).weight);
    return offdiag(inv * p, inv * std::conj(p));
  });
  t.J = AntilinearOperator(block_sum(g, [&](std::size_t e) {
    cplx p = std::exp(I * g.phase_or(e, kTripleDefaultPhase));
    Operator m = Operator::Zero(2, 2);
    m(0, 0) = p;
    m(1, 1) = std::conj(p);
    return m;
  }));
  t.chi = block_sum(g, [](std::size_t) {
    Operator m = Operator::Zero(2, 2);
    m(0, 0) = -1;
    m(1, 1) = 1;
    return m;
  });
  t.ko_dim = 0;
  return out;
}

double lipschitz_constant(const WeightedDigraph& g, const Eigen::VectorXd& a) {
  double best = 0.0;
  for (const auto& e : g.edges())
    best = std::max(best, std::abs(a(static_cast<Eigen::Index>(e.dst)) - a(static_cast<Eigen::Index>(e.src))) / to_double(e.weight));
  return best;
}

ConnesDistance connes_distance(const CanonicalTriple& t, std::size_t i, std::size_t j) {
  const auto& g = t.graph;
  const std::size_t n = g.num_vertices();
  if (i >= n || j >= n) throw std::invalid_argument("connes_distance: unknown vertex");
  // Constraints a(v) - a(u) <= delta and a(u) - a(v) <= delta; the maximal a with a(i) = 0 is the
  // shortest-path potential from i.
  std::vector<std::optional<Rational>> dist(n);
  dist[i] = Rational(0);
  for (std::size_t round = 0; round + 1 < n; ++round) {
    bool changed = false;
    for (const auto& e : g.edges()) {
      for (auto [u, v] : {std::pair{e.src, e.dst}, std::pair{e.dst, e.src}}) {
        if (!dist[u]) continue;
        Rational cand = *dist[u] + e.weight;
        if (!dist[v] || cand < *dist[v]) {
          dist[v] = cand;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  ConnesDistance out;
  if (!dist[j]) return out;
  out.distance = *dist[j];
  out.witness.reserve(n);
  for (std::size_t v = 0; v < n; ++v) out.witness.push_back(dist[v] ? *dist[v] : Rational(0));
  return out;
}

WeightedDigraph reorient(const WeightedDigraph& g, const std::vector<int>& sigma) {
  if (sigma.empty()) return g;
  if (sigma.size() != g.num_edges()) throw std::invalid_argument("reorient: one sign per edge required");
  WeightedDigraph out = g;
  for (std::size_t e = 0; e < sigma.size(); ++e) {
    if (sigma[e] == -1)
      out = out.with_edge_reversed(e);
    else if (sigma[e] != 1)
      throw std::invalid_argument("reorient: signs must be +1 or -1");
  }
  return out;
}

Operator omega_block(double theta) {
  cplx p = std::exp(I * theta);
  return offdiag(I * p, -I * std::conj(p));
}

CanonicalSpacetime build_canonical_spacetime(const WeightedDigraph& g) {
  CanonicalSpacetime out{g, {}, {}};
  SpectralSpacetime& s = out.spacetime;
  s.signature = Signature::Antilorentzian;
  out.omega = block_sum(g, [&](std::size_t e) { return omega_block(g.phase_or(e, kSpacetimeDefaultPhase)); });
  s.space = KreinSpace(out.omega);
  s.algebra = vertex_algebra(g);
  s.D = block_sum(g, [&](std::size_t e) {
    cplx p = std::exp(I * g.phase_or(e, kSpacetimeDefaultPhase));
    cplx c = I / to_double(g.edge(e).weight);
    return offdiag(c * p, c * std::conj(p));
  });
  s.J = AntilinearOperator(block_sum(g, [](std::size_t) { return offdiag(-1.0, 1.0); }));
  s.chi = block_sum(g, [](std::size_t) {
    Operator m = Operator::Zero(2, 2);
    m(0, 0) = -1;
    m(1, 1) = 1;
    return m;
  });
  s.ko_dim = 2;
  return out;
}

Operator canonical_distinguished_form(const CanonicalTriple& t, const std::vector<int>& sigma) {
  const auto& g = t.graph;
  if (!sigma.empty() && sigma.size() != g.num_edges()) throw std::invalid_argument("distinguished form: one sign per edge required");
  return block_sum(g, [&](std::size_t e) {
    double s = sigma.empty() ? 1.0 : double(sigma[e]);
    return Operator(s * omega_block(g.phase_or(e, kTripleDefaultPhase)));
  });
}

std::vector<double> edge_coefficients(const CanonicalSpacetime& s, const Operator& beta, double tol) {
  const auto& g = s.graph;
  const Eigen::Index d = state_dim(g);
  if (beta.rows() != d || beta.cols() != d) throw std::invalid_argument("edge_coefficients: dimension mismatch");
  std::vector<double> x(g.num_edges());
  Operator rebuilt = Operator::Zero(d, d);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    Eigen::Index k = split_index(e, -1);
    Operator w = s.omega.block(k, k, 2, 2);
    cplx c = (w.adjoint() * beta.block(k, k, 2, 2)).trace() / (w.adjoint() * w).trace();
    if (std::abs(c.imag()) > tol * std::max(1.0, std::abs(c)))
      throw std::invalid_argument("edge_coefficients: complex coefficient on edge " + std::to_string(e));
    x[e] = c.real();
    rebuilt.block(k, k, 2, 2) = x[e] * w;
  }
  if (rel_diff(rebuilt, beta) > tol) throw std::invalid_argument("edge_coefficients: form is not a real combination of the omega blocks");
  return x;
}

Operator form_from_coefficients(const CanonicalSpacetime& s, const std::vector<double>& x) {
  if (x.size() != s.graph.num_edges()) throw std::invalid_argument("form_from_coefficients: size mismatch");
  return block_sum(s.graph, [&](std::size_t e) {
    Eigen::Index k = split_index(e, -1);
    return Operator(x[e] * s.omega.block(k, k, 2, 2));
  });
}

Operator exact_canonical_form(const CanonicalSpacetime& s, const Eigen::VectorXd& f) {
  return commutator(s.spacetime.D, vertex_multiplication(s.graph, f.cast<cplx>()));
}

double path_integral(const CanonicalSpacetime& s, const Operator& beta, const std::vector<std::size_t>& path, double tol) {
  auto x = edge_coefficients(s, beta, tol);
  const auto& g = s.graph;
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    auto e = g.edge_between(path[k], path[k + 1]);
    if (!e) throw std::invalid_argument("path_integral: vertices " + g.label(path[k]) + " and " + g.label(path[k + 1]) + " are not adjacent");
    double eps = g.edge(*e).src == path[k] ? 1.0 : -1.0;
    total += eps * x[*e] * to_double(g.edge(*e).weight);
  }
  return total;
}

MoreraReport morera_exactness(const CanonicalSpacetime& s, const Operator& beta, double tol) {
  const auto& g = s.graph;
  auto x = edge_coefficients(s, beta, tol);
  MoreraReport r;
  r.cycles = fundamental_cycles(g);
  r.exact = true;
  for (const auto& c : r.cycles) {
    double integral = path_integral(s, beta, c, tol);
    double scale = 0.0;
    for (std::size_t k = 0; k + 1 < c.size(); ++k) {
      auto e = *g.edge_between(c[k], c[k + 1]);
      scale += std::abs(x[e]) * to_double(g.edge(e).weight);
    }
    r.cycle_integrals.push_back(integral);
    if (std::abs(integral) > tol * std::max(1.0, scale)) r.exact = false;
  }
  if (!r.exact) return r;
  // Integrate along the spanning forest from each root.
  auto forest = spanning_forest(g);
  Eigen::VectorXd f = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.num_vertices()));
  std::vector<std::size_t> order(g.num_vertices());
  for (std::size_t v = 0; v < order.size(); ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return forest.depth[a] < forest.depth[b]; });
  for (std::size_t v : order) {
    if (!forest.parent_edge[v]) continue;
    std::size_t e = *forest.parent_edge[v];
    std::size_t p = forest.parent[v];
    double eps = g.edge(e).src == p ? 1.0 : -1.0;
    f(static_cast<Eigen::Index>(v)) = f(static_cast<Eigen::Index>(p)) + eps * x[e] * to_double(g.edge(e).weight);
  }
  r.potential_residual = rel_diff(exact_canonical_form(s, f), beta);
  if (r.potential_residual > tol) r.exact = false;
  r.potential = f;
  return r;
}

CanonicalCausality stable_causality_canonical(const CanonicalSpacetime& s, double tol) {
  const auto& g = s.graph;
  CanonicalCausality out;
  auto w = acyclicity_witness(g);
  if (!w.acyclic) {
    out.cycle = w.sequence;
    return out;
  }
  out.potential.assign(g.num_vertices(), Rational(0));
  Eigen::VectorXd f(static_cast<Eigen::Index>(g.num_vertices()));
  for (std::size_t k = 0; k < w.sequence.size(); ++k) {
    out.potential[w.sequence[k]] = Rational(static_cast<long long>(k + 1));
    f(static_cast<Eigen::Index>(w.sequence[k])) = double(k + 1);
  }
  out.beta = exact_canonical_form(s, f);
  TimeOrientationForm form{out.beta, Vector(-I * f.cast<cplx>())};
  out.orientation = verify_time_orientation(s.spacetime, form, nullptr, tol);
  out.stably_causal = out.orientation.passed();
  return out;
}

}  // namespace ksw
