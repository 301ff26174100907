// Acceptance suite: one PASS/FAIL line per criterion, each at its own tolerance.
// Exit status is 0 iff the set of failing criteria equals the --expect-fail set.

#include "ksw/canonical.hpp"
#include "ksw/io.hpp"
#include "ksw/splitdirac.hpp"
#include "ksw/wick.hpp"

#include "support/generators.hpp"
#include "support/split_support.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>

using namespace ksw;
using ksw::testing::make_rng;
using ksw::testing::random_graph;
using ksw::testing::uniform;
using ksw::testing::uniform_int;
namespace sp = ksw::testing::split;

namespace {

const cplx I(0.0, 1.0);
constexpr double kPi = std::numbers::pi;
std::string g_data_dir = KSW_DATA_DIR;

struct Verdict {
  bool passed = true;
  std::ostringstream detail;

  // Records a failed condition; the first few are kept in the detail line.
  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (passed || failures < 3) detail << (detail.tellp() > 0 ? "; " : "") << what;
    passed = false;
    ++failures;
  }
  int failures = 0;
};

std::string fixture(const std::string& name) { return g_data_dir + "/" + name; }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

// Independent oracles ---------------------------------------------------------------------------

// All-pairs shortest paths on the undirected graph (Floyd-Warshall over exact rationals).
std::vector<std::vector<std::optional<Rational>>> floyd_warshall(const WeightedDigraph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<std::optional<Rational>>> d(n, std::vector<std::optional<Rational>>(n));
  for (std::size_t v = 0; v < n; ++v) d[v][v] = Rational(0);
  for (const auto& e : g.edges())
    for (auto [a, b] : {std::pair{e.src, e.dst}, std::pair{e.dst, e.src}})
      if (!d[a][b] || e.weight < *d[a][b]) d[a][b] = e.weight;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] && d[k][j] && (!d[i][j] || *d[i][k] + *d[k][j] < *d[i][j])) d[i][j] = *d[i][k] + *d[k][j];
  return d;
}

bool is_directed_cycle(const WeightedDigraph& g, const std::vector<std::size_t>& cycle) {
  if (cycle.size() < 2 || cycle.front() != cycle.back()) return false;
  for (std::size_t k = 0; k + 1 < cycle.size(); ++k) {
    auto e = g.edge_between(cycle[k], cycle[k + 1]);
    if (!e || g.edge(*e).src != cycle[k]) return false;
  }
  return true;
}

// Dimension of {beta in span(basis) : beta^x = beta, J beta J^{-1} = -beta}, over the reals.
int imaginary_form_dimension(const std::vector<Operator>& basis, const KreinSpace& k, const AntilinearOperator& J) {
  if (basis.empty()) return 0;
  const Eigen::Index d = basis.front().rows();
  const Eigen::Index rows = 4 * d * d;
  Eigen::MatrixXd m(rows, 2 * static_cast<Eigen::Index>(basis.size()));
  for (std::size_t c = 0; c < basis.size(); ++c)
    for (int part = 0; part < 2; ++part) {
      Operator w = part == 0 ? basis[c] : Operator(I * basis[c]);
      Operator a = w - krein_adjoint(w, k);
      Operator b = conjugate_by(J, w) + w;
      Eigen::VectorXd col(rows);
      for (Eigen::Index r = 0; r < d * d; ++r) {
        col(r) = a(r).real();
        col(d * d + r) = a(r).imag();
        col(2 * d * d + r) = b(r).real();
        col(3 * d * d + r) = b(r).imag();
      }
      m.col(static_cast<Eigen::Index>(2 * c + part)) = col;
    }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-10);
  return static_cast<int>(m.cols() - lu.rank());
}

double worst_five(const SpectralData& a, const SpectralData& b) {
  double alg = 0.0;
  for (std::size_t k = 0; k < std::min(a.algebra.size(), b.algebra.size()); ++k)
    alg = std::max(alg, rel_diff(a.algebra.basis()[k], b.algebra.basis()[k]));
  if (a.algebra.size() != b.algebra.size()) alg = 1.0;
  return std::max({rel_diff(a.space.form(), b.space.form()), rel_diff(a.D, b.D), rel_diff(a.J, b.J),
                   rel_diff(a.chi, b.chi), alg});
}

// Criteria --------------------------------------------------------------------------------------

Verdict c2_classification() {
  Verdict v;
  const double tol = 1e-10;
  auto rng = make_rng(1001);
  auto signs = ko_by_dimension(Signature::Antilorentzian, 2);
  v.require(signs && signs->epsilon == -1 && signs->epsilon2 == -1 && signs->kappa == -1, "KO 2 signs");
  int family = 0;
  for (int trial = 0; trial < 40; ++trial) {
    double b = uniform(rng, 0.2, 3), theta = uniform(rng, -kPi, kPi), r = uniform(rng, 0.2, 3);
    auto s = build_c2_spacetime(b, theta, r);
    v.require(s.ko_dim == 2, "family KO dimension");
    v.require(verify_axioms(s, tol).passed(), "axioms at trial " + std::to_string(trial));
    v.require(imaginary_form_dimension(one_form_basis(s, tol).basis(), s.space, s.J) == 1,
              "family time-orientation space");
    ++family;
  }
  for (int trial = 0; trial < 40; ++trial) {
    double b = uniform(rng, 0.2, 3), c = uniform(rng, 0.2, 3) * (trial % 2 ? 1 : -1);
    auto s = build_c2_even_branch(b, c, uniform(rng, -kPi, kPi), uniform(rng, 0.2, 3));
    auto omega = one_form_basis(s, tol);
    v.require(imaginary_form_dimension(omega.basis(), s.space, s.J) == 0, "even branch admits an imaginary form");
    v.require(self_adjoint_imaginary_forms(omega, s.space, s.J, tol).empty(), "library finds an even-branch form");
  }
  // File fixtures agree with the builders.
  for (const char* name : {"c2.json", "c2_quarter.json"}) {
    auto in = io::structure_from_json(io::read_json(fixture(name)));
    const auto& s = std::get<SpectralSpacetime>(in.data);
    v.require(verify_axioms(s, tol).passed() && s.ko_dim == 2, std::string(name) + " axioms");
  }
  if (v.passed) v.detail << family << " family members pass at KO signs (-1,-1,-1); 40 even-branch members admit no orientation";
  return v;
}

Verdict wal_dichotomy() {
  Verdict v;
  const double tol = 1e-12;
  auto rng = make_rng(1002);
  Operator expected(2, 2);
  expected << 0, I, -I, 0;
  for (int trial = 0; trial < 10; ++trial) {
    auto t = build_s0_triple(uniform(rng, 0.3, 2.5), uniform(rng, -kPi, kPi));
    auto found = find_distinguished_form(t);
    v.require(found.omega.has_value(), "S0: no form");
    if (!found.omega) continue;
    v.require(std::min(rel_diff(*found.omega, expected), rel_diff(*found.omega, -expected)) <= tol, "S0: omega");
    for (double sign : {1.0, -1.0}) {
      auto rot = to_antilorentzian(t, sign * expected);
      v.require(rot.certificate.valid(), "S0: rotation certificate");
      v.require(rel_diff(rot.spacetime.D, -I * t.D) <= tol, "S0: D_omega = -iD");
      v.require(worst_five(to_euclidean(rot.spacetime, rot.form).triple, t) <= tol, "S0: round trip");
    }
  }
  for (int trial = 0; trial < 10; ++trial) {
    auto t = build_s6_triple(uniform(rng, 0.3, 2.5), uniform(rng, -kPi, kPi));
    auto found = find_distinguished_form(t);
    v.require(!found.omega && found.proven_absent, "S6: form found");
    // Commutation proof: every self-adjoint one-form commutes with J, so none is imaginary.
    auto omega = one_form_basis(t);
    for (const auto& w : omega.basis()) {
      Operator x = w + krein_adjoint(w, t.space), y = I * (w - krein_adjoint(w, t.space));
      for (const Operator& h : {x, y})
        if (h.norm() > tol) v.require(rel_diff(conjugate_by(t.J, h), h) <= tol, "S6: self-adjoint form anticommutes");
    }
  }
  if (v.passed) v.detail << "S0: omega = +-[[0,i],[-i,0]], D_omega = -iD; S6: none (all self-adjoint forms commute with J)";
  return v;
}

Verdict connes_distance_suite() {
  Verdict v;
  auto rng = make_rng(1003);
  int pairs = 0;
  for (int trial = 0; trial < 50; ++trial) {
    auto g = random_graph(rng, 10, 20, trial % 5 != 0);
    auto t = build_canonical_triple(g);
    auto oracle = floyd_warshall(g);
    for (std::size_t i = 0; i < g.num_vertices(); ++i)
      for (std::size_t j = 0; j < g.num_vertices(); ++j) {
        auto c = connes_distance(t, i, j);
        v.require(c.distance.has_value() == oracle[i][j].has_value(), "finiteness mismatch");
        if (c.distance && oracle[i][j]) v.require(*c.distance == *oracle[i][j], "distance mismatch");
        ++pairs;
      }
  }
  if (v.passed) v.detail << pairs << " vertex pairs on 50 graphs agree exactly";
  return v;
}

Verdict stable_causality_suite() {
  Verdict v;
  auto left = build_canonical_spacetime(io::graph_from_json(io::read_json(fixture("fig2_left.json"))));
  auto right = build_canonical_spacetime(io::graph_from_json(io::read_json(fixture("fig2_right.json"))));
  auto l = stable_causality_canonical(left);
  auto r = stable_causality_canonical(right);
  v.require(!l.stably_causal && is_directed_cycle(left.graph, l.cycle), "left orientation");
  v.require(r.stably_causal, "right orientation");
  const auto& g = right.graph;
  std::vector<std::size_t> loop{g.index_of("1"), g.index_of("4"), g.index_of("3"), g.index_of("1")};
  double integral = path_integral(right, right.omega, loop);
  v.require(integral == -1.0, "omega' integral on (1,4,3,1) = " + fmt(integral));

  auto rng = make_rng(1004);
  int causal = 0;
  for (int trial = 0; trial < 50; ++trial) {
    auto base = random_graph(rng, 8, 14, trial % 2 == 0);
    std::vector<int> sigma;
    for (std::size_t e = 0; e < base.num_edges(); ++e) sigma.push_back(uniform_int(rng, 0, 1) ? 1 : -1);
    auto og = reorient(base, sigma);
    auto res = stable_causality_canonical(build_canonical_spacetime(og));
    bool acyclic = !sp::has_directed_cycle(og);
    v.require(res.stably_causal == acyclic, "verdict disagrees with cycle detection");
    if (res.stably_causal) {
      ++causal;
      for (const auto& e : og.edges()) v.require(res.potential[e.dst] > res.potential[e.src], "potential not increasing");
    } else {
      v.require(is_directed_cycle(og, res.cycle), "reported cycle is not directed");
    }
  }
  if (v.passed) v.detail << "both four-vertex orientations reproduced, loop integral -1; 50 orientations agree (" << causal << " causal)";
  return v;
}

Verdict morera_suite() {
  Verdict v;
  const double tol = 1e-10;
  auto rng = make_rng(1005);
  int done = 0;
  while (done < 100) {
    auto g = random_graph(rng, 8, 16, done % 3 != 0);
    if (fundamental_cycles(g).empty()) continue;
    auto s = build_canonical_spacetime(g);
    Eigen::VectorXd f(static_cast<Eigen::Index>(g.num_vertices()));
    for (auto& x : f) x = uniform(rng, -3, 3);
    Operator beta = exact_canonical_form(s, f);
    for (const auto& c : fundamental_cycles(g))
      v.require(std::abs(path_integral(s, beta, c)) <= tol, "nonzero cycle integral of an exact form");
    auto m = morera_exactness(s, beta);
    v.require(m.exact && m.potential, "exact form rejected");
    if (m.potential) {
      auto comps = connected_components(g);
      for (std::size_t a = 0; a < g.num_vertices(); ++a)
        for (std::size_t b = 0; b < g.num_vertices(); ++b)
          if (comps[a] == comps[b]) {
            double got = (*m.potential)(Eigen::Index(a)) - (*m.potential)(Eigen::Index(b));
            double want = f(Eigen::Index(a)) - f(Eigen::Index(b));
            v.require(std::abs(got - want) <= tol * (1 + std::abs(want)), "potential differs beyond a constant");
          }
    }
    auto cyc = fundamental_cycles(g).front();
    auto x = edge_coefficients(s, beta);
    x[*g.edge_between(cyc[0], cyc[1])] += 0.25;
    v.require(!morera_exactness(s, form_from_coefficients(s, x)).exact, "perturbed form still exact");
    ++done;
  }
  if (v.passed) v.detail << "100 exact forms recovered up to constants; 100 perturbed forms rejected";
  return v;
}

Verdict wick_round_trip_suite() {
  Verdict v;
  const double tol = 1e-12;
  auto check = [&](const SpectralSpacetime& s, const Operator& beta, const std::string& name) {
    auto eu = to_euclidean(s, {beta, std::nullopt});
    v.require(eu.triple.ko_dim == ((2 - s.ko_dim) % 8 + 8) % 8, name + ": KO forward");
    auto back = to_antilorentzian(eu.triple, beta);
    v.require(back.spacetime.ko_dim == ((2 - eu.triple.ko_dim) % 8 + 8) % 8, name + ": KO back");
    double res = worst_five(back.spacetime, s);
    v.require(res <= tol, name + ": residual " + fmt(res));
  };
  for (const char* file : {"c2.json", "c2_quarter.json"}) {
    auto in = io::structure_from_json(io::read_json(fixture(file)));
    check(std::get<SpectralSpacetime>(in.data), *in.orientation, file);
  }
  auto rng = make_rng(1006);
  for (int trial = 0; trial < 10; ++trial) {
    auto g = random_graph(rng, 7, 12, trial % 2 == 0);
    std::vector<double> phases;
    for (std::size_t e = 0; e < g.num_edges(); ++e) phases.push_back(uniform(rng, -kPi, kPi));
    g = g.with_phases(phases);
    auto s = build_canonical_spacetime(g);
    check(s.spacetime, s.omega, "canonical " + std::to_string(trial));
    // Triple side: canonical triple -> antilorentzian -> back.
    auto t = build_canonical_triple(g);
    std::vector<int> sigma;
    for (std::size_t e = 0; e < g.num_edges(); ++e) sigma.push_back(uniform_int(rng, 0, 1) ? 1 : -1);
    auto al = to_antilorentzian(t.triple, canonical_distinguished_form(t, sigma));
    v.require(al.spacetime.ko_dim == 2, "triple side KO forward");
    auto eu = to_euclidean(al.spacetime, al.form);
    v.require(eu.triple.ko_dim == 0, "triple side KO back");
    v.require(worst_five(eu.triple, t.triple) <= tol, "triple side round trip");
  }
  if (v.passed) v.detail << "2 two-point and 10 canonical spacetimes return within 1e-12; KO 2 <-> 0 both ways";
  return v;
}

Verdict split_structure_suite() {
  Verdict v;
  auto rng = make_rng(1007);
  for (int trial = 0; trial < 20; ++trial) {
    int n = trial % 2 ? 4 : 2;
    auto rep = build_clifford(n);
    auto g = random_graph(rng, n == 4 ? 4 : 6, n == 4 ? 5 : 8, trial % 3 != 0);
    std::vector<Operator> h;
    std::vector<Eigen::VectorXd> u;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      h.push_back(spin_exponential(sp::random_generator(rng, n, 1.0), rep));
      u.push_back(sp::random_future(rng, n));
    }
    auto r = verify_theorem6(sp::vectorial(g, rep, h, u));
    v.require(r.passed(), "random structure " + std::to_string(trial) + " fails");
    v.require(r.epsilon == rep.signs.epsilon && r.epsilon2 == rep.signs.epsilon2, "measured signs differ");
  }
  auto rep = build_clifford(4);
  auto base = sp::flat_vectorial(sp::make({"a", "b", "c"}, {{0, 1}, {1, 2}}), rep);
  Operator one = sp::id(rep);
  auto mutate = [&](const std::string& name, const std::function<void(SplitDiracStructure&)>& change, bool refit) {
    auto s = base;
    change(s);
    if (refit) s.gamma_minus[0] = gamma_minus_partner(rep, s.h_plus[0], s.gamma_plus[0]);
    auto r = verify_theorem6(s);
    const Check* c = r.find(name);
    v.require(c && !c->passed && c->detail.find("a->b") != std::string::npos && !r.passed(), "mutation " + name);
  };
  mutate("metric", [&](auto& s) { s.h_plus[0] = 2.0 * one; }, true);
  mutate("spin_preserving", [&](auto& s) { s.h_plus[0] = I * one; }, true);
  mutate("orientation_preserving", [&](auto& s) { s.h_plus[0] = I * rep.gamma[0]; }, true);
  mutate("gamma_odd", [&](auto& s) { s.gamma_plus[0] = one; }, true);
  mutate("gamma_partner", [&](auto& s) { s.gamma_minus[0] = -s.gamma_minus[0]; }, false);
  mutate("gamma_nonvanishing",
         [&](auto& s) { s.gamma_plus[0] = rep.vector(Eigen::VectorXd::Unit(4, 0)) * 0.5 * (one + rep.chi); }, true);
  if (v.passed) v.detail << "20 random structures pass with matching signs; 6 mutations fail by name";
  return v;
}

Verdict holonomy_reconstruction_suite() {
  Verdict v;
  auto boost = io::split_from_json(io::read_json(fixture("boost_triangle.json")));
  auto rot = io::split_from_json(io::read_json(fixture("rotation_triangle.json")));
  auto rb = check_reconstructible_split(boost);
  v.require(rb.verdict == ReconstructVerdict::NotReconstructible && rb.cross_validated, "boost triangle");
  auto rr = check_reconstructible_split(rot);
  v.require(rr.verdict == ReconstructVerdict::Reconstructible && rr.cross_validated, "rotation triangle");
  for (const auto& u : rr.parallel_field)
    v.require(std::abs(u(0) - 1.0) <= 1e-9 && u.tail(u.size() - 1).norm() <= 1e-9, "field off the time axis");
  auto rng = make_rng(1008);
  auto rep = build_clifford(2);
  for (int trial = 0; trial < 15; ++trial) {
    auto g = random_graph(rng, 6, 9, true);
    std::vector<Operator> h;
    std::vector<Eigen::VectorXd> u;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      h.push_back(spin_exponential(sp::random_generator(rng, 2, 1.5), rep));
      u.push_back(sp::random_future(rng, 2));
    }
    auto r = check_reconstructible_split(sp::vectorial(g, rep, h, u));
    v.require(r.verdict == ReconstructVerdict::Reconstructible && r.cross_validated, "n = 2 structure");
  }
  if (v.passed) v.detail << "boost: not reconstructible; rotation: u = e0; 15 n = 2 structures reconstructible; all cross-validated";
  return v;
}

Verdict n4_causality_suite() {
  Verdict v;
  auto mixed = io::split_from_json(io::read_json(fixture("mixed4.json")));
  auto m = n4_stable_causality(mixed);
  v.require(m.verdict == CausalVerdict::NotStablyCausal && m.certificate, "mixed graph not certified");
  if (m.certificate) {
    // The combination sum y_i r_i must vanish identically with y >= 0, y != 0.
    const auto& y = *m.certificate;
    std::vector<Rational> sum(m.rows.empty() ? 0 : m.rows.front().size(), Rational(0));
    bool nonneg = true, nonzero = false;
    for (std::size_t i = 0; i < y.size(); ++i) {
      nonneg = nonneg && y[i] >= 0;
      nonzero = nonzero || y[i] != 0;
      for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += y[i] * m.rows[i][k];
    }
    bool zero = std::all_of(sum.begin(), sum.end(), [](const Rational& x) { return x == 0; });
    v.require(nonneg && nonzero && zero, "certificate does not give 0 > 0");
  }
  auto file = io::read_json(fixture("figsc.json"));
  auto sc = io::split_from_json(file);
  auto r = n4_stable_causality(sc);
  v.require(r.verdict == CausalVerdict::StablyCausal && r.potential, "figsc infeasible");
  std::vector<EdgeCausalType> types;
  for (const auto& c : r.edges) types.push_back(c.type);
  CausalPotential labelled{{2, 1, 1, 0, 0}, {3, -3, 0, 3, 0}};
  v.require(check_causal_potential(sc.graph, types, labelled), "labelled values fail");
  if (r.potential) v.require(check_causal_potential(sc.graph, types, *r.potential), "solver potential fails");

  auto rng = make_rng(1009);
  auto rep = build_clifford(4);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = random_graph(rng, 6, 8, false);
    std::vector<Operator> h;
    std::vector<Eigen::VectorXd> u;
    std::vector<int> sigma;
    for (std::size_t e = 0; e < g.num_edges(); ++e) {
      h.push_back(spin_exponential(sp::random_generator(rng, 4, 0.6), rep));
      sigma.push_back(uniform_int(rng, 0, 1) ? 1 : -1);
      u.push_back(double(sigma.back()) * sp::random_future(rng, 4));
    }
    auto res = n4_stable_causality(sp::vectorial(g, rep, h, u));
    bool expected = !sp::has_directed_cycle(reorient(g, sigma));
    v.require(res.verdict == (expected ? CausalVerdict::StablyCausal : CausalVerdict::NotStablyCausal),
              "random instance " + std::to_string(trial));
    auto fm = solve_strict_homogeneous(res.rows, 2 * g.num_vertices());
    v.require(fm.feasible == expected, "elimination disagrees on instance " + std::to_string(trial));
  }
  if (v.passed) v.detail << "mixed graph certified infeasible; figsc feasible with labelled and solver potentials; 30 random agree";
  return v;
}

Verdict mvs_diagram() {
  Verdict v;
  const double tol = 1e-12;
  auto flat = io::mvs_from_json(io::read_json(fixture("mvs_flat.json")));
  auto split = mvs_split_structure(flat);
  Operator dtilde = build_mvs_dirac(flat);
  Operator lhs = averaging_projection(split) * to_spacetime(split).D * graph_embedding(split);
  Operator rhs = -I * dtilde;
  double entrywise = (lhs - rhs).cwiseAbs().maxCoeff();
  auto rf = check_commuting_diagram(split, dtilde);
  std::string observed = rf.factor ? "(" + fmt(rf.factor->real()) + "," + fmt(rf.factor->imag()) + ")" : "none";
  v.require(entrywise <= tol, "Pi D i - (-i) Dtilde max entry " + fmt(entrywise) + ", observed factor " + observed);
  auto nonreg = io::mvs_from_json(io::read_json(fixture("mvs_nonregular.json")));
  auto rn = check_commuting_diagram(mvs_split_structure(nonreg), build_mvs_dirac(nonreg));
  v.require(!rn.regular && !rn.uniform, "non-regular graph not flagged");
  if (v.passed) v.detail << "flat lattice matches -i Dtilde; non-regular graph flagged";
  return v;
}

Verdict negative_facts() {
  Verdict v;
  const double margin = 1e-6;
  int causal_examples = 0, closure_examples = 0, closed = 0;
  auto causal_check = [&](const SpectralSpacetime& s, const Operator& beta, const Vector& delta) {
    auto order = order_conditions(s, {beta});
    v.require(order.order1_residual > margin, "order-1 condition holds");
    Operator pd = s.algebra.element(delta);
    v.require(rel_diff(star_beta_adjoint(pd, beta, s.space), krein_adjoint(pd, s.space)) > margin,
              "pi(delta)^{*beta} equals pi(delta)^x");
    ++causal_examples;
  };
  int closed_branching = 0;
  auto closure_check = [&](const WeightedDigraph& g, const SpectralSpacetime& s) {
    ++closure_examples;
    if (cross_closure_residual(s) > margin) return;
    ++closed;
    for (std::size_t u = 0; u < g.num_vertices(); ++u)
      if (g.degree(u) >= 2) {
        ++closed_branching;
        break;
      }
  };


  auto rng = make_rng(1011);
  for (int trial = 0; trial < 20; ++trial) {
    double theta = uniform(rng, -kPi, kPi);
    auto s = build_c2_spacetime(uniform(rng, 0.5, 2), theta, uniform(rng, 0.5, 2));
    Operator beta = c2_form(1.0, 1.0, theta);
    auto delta = is_exact(s, beta);
    v.require(delta.has_value(), "two-point form not exact");
    if (delta) causal_check(s, beta, *delta);
  }
  std::vector<WeightedDigraph> graphs{io::graph_from_json(io::read_json(fixture("fig2_right.json"))),
                                      io::graph_from_json(io::read_json(fixture("fig2_left.json"))),
                                      io::graph_from_json(io::read_json(fixture("minimal.json")))};
  for (int trial = 0; trial < 30; ++trial) graphs.push_back(random_graph(rng, 8, 14, trial % 2 == 0));
  for (const auto& g : graphs) {
    auto s = build_canonical_spacetime(g);
    closure_check(g, s.spacetime);
    auto res = stable_causality_canonical(s);
    if (!res.stably_causal) continue;
    Vector delta(static_cast<Eigen::Index>(g.num_vertices()));
    for (std::size_t k = 0; k < g.num_vertices(); ++k) delta(Eigen::Index(k)) = -I * to_double(res.potential[k]);
    causal_check(s.spacetime, res.beta, delta);
  }
  v.require(closed_branching == 0, std::to_string(closed_branching) + " graphs with a branch vertex are x-closed");
  v.require(closed == 0, std::to_string(closed) + " of " + std::to_string(closure_examples) +
                             " canonical spacetimes are x-closed, all without a vertex of degree >= 2");
  if (v.passed) v.detail << causal_examples << " stably causal examples and " << closure_examples << " x-closure checks";
  else v.detail << " [order-1 and twisted-adjoint facts hold on " << causal_examples << " stably causal examples]";
  return v;
}

Verdict jacobson_suite() {
  Verdict v;
  auto rng = make_rng(1012);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    // A = S (+)_i (lambda_i + N_i) S^{-1}, B = S (+)_i (c_i diag(0..k) + p_i(N_i)) S^{-1}:
    // [A, B] = S (+)_i c_i N_i S^{-1} commutes with A.
    int blocks = uniform_int(rng, 1, 3);
    std::vector<int> sizes;
    int d = 0;
    // The first block has size >= 2 so that [A, B] != 0.
    for (int b = 0; b < blocks; ++b) d += sizes.emplace_back(uniform_int(rng, b == 0 ? 2 : 1, 4));
    Operator A = Operator::Zero(d, d), B = Operator::Zero(d, d);
    int at = 0;
    for (int k : sizes) {
      cplx lambda(uniform(rng, -2, 2), uniform(rng, -2, 2)), c(uniform(rng, -2, 2), uniform(rng, -2, 2));
      Operator N = Operator::Zero(k, k);
      for (int r = 0; r + 1 < k; ++r) N(r, r + 1) = 1;
      Operator p = Operator::Zero(k, k), power = Operator::Identity(k, k);
      for (int q = 0; q < k; ++q) {
        p += cplx(uniform(rng, -1, 1), uniform(rng, -1, 1)) * power;
        power = power * N;
      }
      Operator diag = Operator::Zero(k, k);
      for (int r = 0; r < k; ++r) diag(r, r) = double(r);
      A.block(at, at, k, k) = lambda * Operator::Identity(k, k) + N;
      B.block(at, at, k, k) = c * diag + p;
      at += k;
    }
    Operator S = ksw::testing::random_invertible(rng, d);
    Operator Si = S.inverse();
    auto r = jacobson_nilpotency(S * A * Si, S * B * Si, 1e-9);
    v.require(r.hypothesis_holds, "constructed pair violates [A,[A,B]] = 0");
    v.require(r.max_trace_residual <= 1e-9, "trace " + fmt(r.max_trace_residual));
    worst = std::max(worst, r.max_trace_residual);
  }
  if (v.passed) v.detail << "100 pairs, worst |tr([A,B]^k)| / ||[A,B]||^k = " << fmt(worst);
  return v;
}

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds, 0 for none
  std::function<Verdict()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance suite"};
  std::vector<int> expect_fail;
  app.add_option("--expect-fail", expect_fail, "criteria known to fail");
  app.add_option("--data-dir", g_data_dir, "fixture directory");
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {1, "two-point classification", 1.0, c2_classification},
      {2, "WAL dichotomy", 0.0, wal_dichotomy},
      {3, "Connes distance equals geodesic distance", 5.0, connes_distance_suite},
      {4, "stable causality equals acyclicity", 0.0, stable_causality_suite},
      {5, "Morera exactness", 0.0, morera_suite},
      {6, "Wick round trip", 0.0, wick_round_trip_suite},
      {7, "split Dirac verifier", 10.0, split_structure_suite},
      {8, "reconstructibility from holonomy", 0.0, holonomy_reconstruction_suite},
      {9, "n = 4 stable causality", 10.0, n4_causality_suite},
      {10, "averaging diagram", 0.0, mvs_diagram},
      {11, "negative structural facts", 0.0, negative_facts},
      {12, "Jacobson nilpotency", 0.0, jacobson_suite},
  };

  const std::set<int> expected(expect_fail.begin(), expect_fail.end());
  std::set<int> failed;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0) v.require(secs < c.time_limit, "runtime over " + fmt(c.time_limit) + " s");
    if (!v.passed) failed.insert(c.id);
    std::string tag = v.passed ? (expected.count(c.id) ? " (unexpected pass)" : "") : (expected.count(c.id) ? " (expected)" : "");
    std::printf("%s %2d %s: %s [%.2f s]%s\n", v.passed ? "PASS" : "FAIL", c.id, c.name, v.detail.str().c_str(), secs,
                tag.c_str());
  }
  std::printf("%zu/%zu criteria pass\n", criteria.size() - failed.size(), criteria.size());
  return failed == expected ? 0 : 1;
}
