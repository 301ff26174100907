#include "ksw/splitdirac.hpp"

#include "ksw/canonical.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <functional>
#include <limits>
#include <tuple>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ksw {

namespace {

const cplx I(0.0, 1.0);

std::string edge_name(const WeightedDigraph& g, std::size_t e) {
  return g.label(g.edge(e).src) + "->" + g.label(g.edge(e).dst);
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

Operator zeros(Eigen::Index d) { return Operator::Zero(d, d); }

// Endpoint of the split block (e, sign).
std::size_t endpoint(const WeightedDigraph& g, std::size_t e, int sign) {
  return sign > 0 ? g.edge(e).dst : g.edge(e).src;
}

Operator inverse(const Operator& h) { return Eigen::FullPivLU<Operator>(h).inverse(); }

// Block operator with blocks (e,+)<-(e,-) = plus[e] and (e,-)<-(e,+) = minus[e].
Operator off_diagonal(const SplitDiracStructure& s, const std::vector<Operator>& plus,
                      const std::vector<Operator>& minus) {
  Operator out = zeros(s.dim());
  const Eigen::Index d = s.fibre();
  for (std::size_t e = 0; e < s.num_edges(); ++e) {
    out.block(s.offset(e, +1), s.offset(e, -1), d, d) = plus[e];
    out.block(s.offset(e, -1), s.offset(e, +1), d, d) = minus[e];
  }
  return out;
}

Operator split_dirac_operator(const SplitDiracStructure& s) {
  std::vector<Operator> plus, minus;
  for (std::size_t e = 0; e < s.num_edges(); ++e) {
    double inv = 1.0 / s.delta(e);
    plus.push_back(-inv * s.gamma_plus[e] * s.h_plus[e]);
    minus.push_back(inv * s.gamma_minus[e] * s.h_minus(e));
  }
  return off_diagonal(s, plus, minus);
}

Operator split_krein_form(const SplitDiracStructure& s) {
  std::vector<Operator> plus, minus;
  const Operator& j = s.rep.space.form();
  for (std::size_t e = 0; e < s.num_edges(); ++e) {
    plus.push_back(j * s.h_plus[e]);
    minus.push_back(j * s.h_minus(e));
  }
  return off_diagonal(s, plus, minus);
}

bool is_vector(const Operator& a, const CliffordRep& rep, double tol, Eigen::VectorXd* out) {
  auto vp = vector_part(a, rep);
  double scale = std::max(1.0, vp.coefficients.norm());
  if (vp.residual > tol || vp.coefficients.imag().norm() > tol * scale) return false;
  if (vp.coefficients.norm() <= tol) return false;
  if (out) *out = vp.coefficients.real();
  return true;
}

// Lorentz transformation carrying vectors along a spinor transport.
Eigen::MatrixXd vector_transport(const SplitDiracStructure& s, const Operator& h, double tol) {
  double res = 0.0;
  Eigen::MatrixXd lambda = lorentz_action(h, s.rep, &res);
  if (res > tol) throw std::invalid_argument("vector_transport: connection is not Clifford");
  return lambda;
}

std::vector<std::size_t> loop_at(const WeightedDigraph& g, const SpanningForest& f, std::size_t base,
                                 const std::vector<std::size_t>& cycle) {
  std::vector<std::size_t> loop = tree_path(g, f, base, cycle.front());
  loop.insert(loop.end(), cycle.begin() + 1, cycle.end());
  auto back = tree_path(g, f, cycle.back(), base);
  loop.insert(loop.end(), back.begin() + 1, back.end());
  return loop;
}

std::vector<HolonomyGenerator> generators_in_component(const SplitDiracStructure& s, std::size_t base,
                                                       const SpanningForest& f, double tol) {
  std::vector<HolonomyGenerator> out;
  for (const auto& cyc : fundamental_cycles(s.graph)) {
    if (f.root[cyc.front()] != f.root[base]) continue;
    HolonomyGenerator g;
    g.loop = loop_at(s.graph, f, base, cyc);
    g.hol = path_transport(s, g.loop);
    g.lorentz = vector_transport(s, g.hol, tol);
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

// ---- structure -------------------------------------------------------------------------------

Eigen::Index SplitDiracStructure::offset(std::size_t e, int sign) const { return split_index(e, sign) * fibre(); }

Operator SplitDiracStructure::h_minus(std::size_t e) const { return inverse(h_plus.at(e)); }

double SplitDiracStructure::delta(std::size_t e) const { return to_double(graph.edge(e).weight); }

Operator SplitDiracStructure::chi_at(int sign) const {
  if (rep.n == 0) return double(sign > 0 ? 1 : -1) * Operator::Identity(1, 1);
  return rep.chi;
}

AntilinearOperator SplitDiracStructure::J_at(int sign) const {
  if (rep.n == 0) return cplx(sign > 0 ? 1.0 : -1.0) * rep.J;
  return rep.J;
}

SplitDiracStructure build_split(const WeightedDigraph& graph, const CliffordRep& rep, std::vector<Operator> h_plus,
                                std::vector<Operator> gamma_plus, std::vector<Operator> gamma_minus) {
  const std::size_t m = graph.num_edges();
  if (h_plus.size() != m || gamma_plus.size() != m || gamma_minus.size() != m)
    throw std::invalid_argument("build_split: one h, gamma+ and gamma- per edge required");
  const Eigen::Index d = rep.dim();
  for (std::size_t e = 0; e < m; ++e) {
    for (const Operator* a : {&h_plus[e], &gamma_plus[e], &gamma_minus[e]})
      if (a->rows() != d || a->cols() != d)
        throw std::invalid_argument("build_split: operator on edge " + edge_name(graph, e) + " has the wrong shape");
    if (!is_invertible(h_plus[e]))
      throw std::invalid_argument("build_split: singular transport on edge " + edge_name(graph, e));
  }
  return SplitDiracStructure{graph, rep, std::move(h_plus), std::move(gamma_plus), std::move(gamma_minus)};
}

Operator gamma_minus_partner(const CliffordRep& rep, const Operator& h_plus, const Operator& gamma_plus) {
  // With a scalar fibre the two endpoint real structures differ by a sign, which flips the relation.
  const double sign = rep.n == 0 ? 1.0 : -1.0;
  return sign * inverse(h_plus) * conjugate_by(rep.J, gamma_plus) * h_plus;
}

Operator section_multiplication(const SplitDiracStructure& s, const std::vector<Operator>& a) {
  if (a.size() != s.graph.num_vertices()) throw std::invalid_argument("section_multiplication: one value per vertex");
  Operator out = zeros(s.dim());
  const Eigen::Index d = s.fibre();
  for (std::size_t e = 0; e < s.num_edges(); ++e)
    for (int sign : {-1, 1}) out.block(s.offset(e, sign), s.offset(e, sign), d, d) = a[endpoint(s.graph, e, sign)];
  return out;
}

AlgebraRep even_section_algebra(const SplitDiracStructure& s) {
  const auto& g = s.graph;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (g.degree(v) == 0) throw std::invalid_argument("even_section_algebra: isolated vertex " + g.label(v));
  auto even = s.rep.n == 0 ? std::vector<Operator>{Operator::Identity(1, 1)} : s.rep.even_basis();
  std::vector<Operator> basis;
  std::vector<std::string> labels;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    for (std::size_t k = 0; k < even.size(); ++k) {
      std::vector<Operator> a(g.num_vertices(), zeros(s.fibre()));
      a[v] = even[k];
      basis.push_back(section_multiplication(s, a));
      labels.push_back(g.label(v) + ":" + std::to_string(k));
    }
  return AlgebraRep(std::move(basis), std::move(labels));
}

SpectralSpacetime to_spacetime(const SplitDiracStructure& s) {
  SpectralSpacetime out;
  Operator j = split_krein_form(s);
  if (!is_hermitian(j))
    throw std::invalid_argument("to_spacetime: the Krein product is not hermitian (connection is not metric)");
  out.space = KreinSpace(j);
  out.algebra = even_section_algebra(s);
  out.D = split_dirac_operator(s);
  out.chi = zeros(s.dim());
  const Eigen::Index d = s.fibre();
  Operator jm = zeros(s.dim());
  for (std::size_t e = 0; e < s.num_edges(); ++e) {
    for (int sign : {-1, 1}) out.chi.block(s.offset(e, sign), s.offset(e, sign), d, d) = s.chi_at(sign);
    jm.block(s.offset(e, +1), s.offset(e, -1), d, d) = s.h_plus[e] * s.J_at(-1).matrix();
    jm.block(s.offset(e, -1), s.offset(e, +1), d, d) = s.h_minus(e) * s.J_at(+1).matrix();
  }
  out.J = AntilinearOperator(jm);
  out.ko_dim = s.rep.signs.ko_dim_mod8;
  out.signature = Signature::Antilorentzian;
  return out;
}

// ---- connection ------------------------------------------------------------------------------

ConnectionReport connection_properties(const SplitDiracStructure& s, double tol) {
  ConnectionReport r;
  r.metric = r.spin_preserving = r.orientation_preserving = r.clifford = true;
  const Operator& j = s.rep.space.form();
  for (std::size_t e = 0; e < s.num_edges(); ++e) {
    const Operator& h = s.h_plus[e];
    double m = rel_diff(h.adjoint() * j * h, j);
    double sp = rel_diff(h * s.rep.J, s.rep.J * h);
    double o = rel_diff(h * s.rep.chi, s.rep.chi * h);
    double c = 0.0;
    Eigen::MatrixXd lambda = lorentz_action(h, s.rep, &c);
    r.metric_residual = std::max(r.metric_residual, m);
    r.spin_residual = std::max(r.spin_residual, sp);
    r.orientation_residual = std::max(r.orientation_residual, o);
    r.clifford_residual = std::max(r.clifford_residual, c);
    r.metric = r.metric && m <= tol;
    r.spin_preserving = r.spin_preserving && sp <= tol;
    r.orientation_preserving = r.orientation_preserving && o <= tol;
    r.clifford = r.clifford && c <= tol;
    r.levi_civita.push_back(c <= tol ? std::optional<Eigen::MatrixXd>(lambda) : std::nullopt);
  }
  return r;
}

// ---- Structure and connection checks ------------------------------------------------------

Theorem6Report verify_theorem6(const SplitDiracStructure& s, double tol) {
  Theorem6Report r;
  r.ko_dim = s.rep.signs.ko_dim_mod8;
  const auto& g = s.graph;
  const auto& rep = s.rep;

  if (rep.n > 0) {
    std::vector<std::string> not_sa, not_odd, not_partner, vanishing, not_metric, not_spin, not_orient;
    double r_sa = 0, r_odd = 0, r_partner = 0, r_nv = 0, r_m = 0, r_sp = 0, r_o = 0;
    const Operator id = Operator::Identity(s.fibre(), s.fibre());
    const Operator left = 0.5 * (id + rep.chi), right = 0.5 * (id - rep.chi);
    for (std::size_t e = 0; e < s.num_edges(); ++e) {
      const std::string name = edge_name(g, e);
      double sa = 0, odd = 0, nv = 1.0;
      for (const Operator* gm : {&s.gamma_plus[e], &s.gamma_minus[e]}) {
        sa = std::max(sa, rel_diff(krein_adjoint(*gm, rep.space), *gm));
        odd = std::max(odd, rel_norm(anticommutator(rep.chi, *gm), gm->norm()));
        double scale = std::max(gm->norm(), 1e-300);
        nv = std::min({nv, (*gm * left).norm() / scale, (*gm * right).norm() / scale});
      }
      double partner_res = rel_diff(conjugate_by(rep.J, s.gamma_plus[e]), -s.h_plus[e] * s.gamma_minus[e] * s.h_minus(e));
      const Operator& h = s.h_plus[e];
      double m = rel_diff(h.adjoint() * rep.space.form() * h, rep.space.form());
      double sp = rel_diff(h * rep.J, rep.J * h);
      double o = rel_diff(h * rep.chi, rep.chi * h);
      if (sa > tol) not_sa.push_back(name);
      if (odd > tol) not_odd.push_back(name);
      if (partner_res > tol) not_partner.push_back(name);
      if (nv <= tol) vanishing.push_back(name);
      if (m > tol) not_metric.push_back(name);
      if (sp > tol) not_spin.push_back(name);
      if (o > tol) not_orient.push_back(name);
      r_sa = std::max(r_sa, sa);
      r_odd = std::max(r_odd, odd);
      r_partner = std::max(r_partner, partner_res);
      r_nv = std::max(r_nv, nv <= tol ? 1.0 - nv : 0.0);
      r_m = std::max(r_m, m);
      r_sp = std::max(r_sp, sp);
      r_o = std::max(r_o, o);
    }
    r.add("gamma_self_adjoint", not_sa.empty(), r_sa, join(not_sa));
    r.add("gamma_odd", not_odd.empty(), r_odd, join(not_odd));
    r.add("gamma_partner", not_partner.empty(), r_partner, join(not_partner));
    r.add("gamma_nonvanishing", vanishing.empty(), r_nv, join(vanishing));
    r.add("metric", not_metric.empty(), r_m, join(not_metric));
    r.add("spin_preserving", not_spin.empty(), r_sp, join(not_spin));
    r.add("orientation_preserving", not_orient.empty(), r_o, join(not_orient));

    // Vectorial / complete.
    r.vectorial = true;
    std::vector<std::vector<Eigen::VectorXd>> at_vertex(g.num_vertices());
    for (std::size_t e = 0; e < s.num_edges() && r.vectorial; ++e)
      for (int sign : {-1, 1}) {
        Eigen::VectorXd v;
        if (!is_vector(sign > 0 ? s.gamma_plus[e] : s.gamma_minus[e], rep, tol, &v)) {
          r.vectorial = false;
          break;
        }
        at_vertex[endpoint(g, e, sign)].push_back(v);
      }
    r.complete = r.vectorial;
    for (std::size_t v = 0; v < g.num_vertices() && r.complete; ++v) {
      Eigen::MatrixXd m(rep.n, at_vertex[v].size());
      for (std::size_t k = 0; k < at_vertex[v].size(); ++k) m.col(k) = at_vertex[v][k];
      Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
      lu.setThreshold(tol);
      r.complete = !at_vertex[v].empty() && lu.rank() == rep.n;
    }
  } else {
    r.add("scalar_fibre", true, 0.0, "n = 0: the connection and gamma conditions reduce to the canonical spacetime");
  }

  try {
    SpectralSpacetime st = to_spacetime(s);
    Report ax = verify_axioms(st, tol);
    r.add("axioms", ax.passed(), 0.0, join(ax.failures()));
    const Operator id = Operator::Identity(st.dim(), st.dim());
    Operator j2 = st.J * st.J;
    Operator jchi = (st.J * st.chi).matrix();
    Operator chij = (st.chi * st.J).matrix();
    r.epsilon = (j2 - id).norm() <= (j2 + id).norm() ? 1 : -1;
    r.epsilon2 = (jchi - chij).norm() <= (jchi + chij).norm() ? 1 : -1;
    double res = std::max(rel_diff(j2, double(r.epsilon) * id), rel_diff(jchi, double(r.epsilon2) * chij));
    bool ok = res <= tol && r.epsilon == rep.signs.epsilon && r.epsilon2 == rep.signs.epsilon2;
    std::ostringstream os;
    os << "epsilon " << r.epsilon << ", epsilon'' " << r.epsilon2;
    r.add("ko_signs", ok, res, os.str());
  } catch (const std::invalid_argument& ex) {
    r.add("axioms", false, 1.0, ex.what());
    r.add("ko_signs", false, 1.0, "not computed");
  }
  return r;
}

SplitOrientation orientation_form_family(const SplitDiracStructure& s, const std::vector<Operator>& gamma_minus,
                                         double tol) {
  if (s.rep.n == 0) throw std::invalid_argument("orientation_form_family: scalar fibre, use the canonical forms");
  if (gamma_minus.size() != s.num_edges()) throw std::invalid_argument("orientation_form_family: one Gamma per edge");
  SplitOrientation out;
  std::vector<Operator> plus, minus;
  for (std::size_t e = 0; e < s.num_edges(); ++e) {
    const Operator& gm = gamma_minus[e];
    if (gm.rows() != s.fibre() || gm.cols() != s.fibre())
      throw std::invalid_argument("orientation_form_family: wrong shape on edge " + edge_name(s.graph, e));
    if (!is_krein_positive(gm, s.rep.space, tol))
      throw std::invalid_argument("orientation_form_family: Gamma on edge " + edge_name(s.graph, e) +
                                  " is not Krein-positive");
    if (rel_norm(conjugate_by(s.rep.J, gm) + gm, gm.norm()) > tol)
      throw std::invalid_argument("orientation_form_family: Gamma on edge " + edge_name(s.graph, e) +
                                  " is not J-imaginary");
    Operator gp = -s.h_plus[e] * conjugate_by(s.rep.J, gm) * s.h_minus(e);
    out.gamma_plus.push_back(gp);
    plus.push_back(gp * s.h_plus[e]);
    minus.push_back(gm * s.h_minus(e));
  }
  out.form.beta = off_diagonal(s, plus, minus);
  SpectralSpacetime st = to_spacetime(s);
  out.form.potential = is_exact(st, out.form.beta, tol);
  out.report = verify_time_orientation(st, out.form, nullptr, tol);
  return out;
}

// ---- holonomy -------------------------------------------------------------------------------

Operator path_transport(const SplitDiracStructure& s, const std::vector<std::size_t>& path) {
  if (path.empty()) throw std::invalid_argument("path_transport: empty path");
  Operator h = Operator::Identity(s.fibre(), s.fibre());
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    auto e = s.graph.edge_between(path[k], path[k + 1]);
    if (!e) throw std::invalid_argument("path_transport: consecutive vertices are not adjacent");
    bool forward = s.graph.edge(*e).src == path[k];
    h = (forward ? s.h_plus[*e] : s.h_minus(*e)) * h;
  }
  return h;
}

std::vector<HolonomyGenerator> holonomy_generators(const SplitDiracStructure& s, std::size_t basepoint, double tol) {
  if (basepoint >= s.graph.num_vertices()) throw std::invalid_argument("holonomy_generators: unknown vertex");
  auto comp = connected_components(s.graph);
  if (std::any_of(comp.begin(), comp.end(), [](std::size_t c) { return c != 0; }))
    throw std::invalid_argument("holonomy_generators: graph is disconnected");
  return generators_in_component(s, basepoint, spanning_forest(s.graph), tol);
}

// ---- Reconstructibility through holonomy ------------------------------------------------

std::string to_string(ReconstructVerdict v) {
  switch (v) {
    case ReconstructVerdict::Reconstructible: return "reconstructible";
    case ReconstructVerdict::NotReconstructible: return "not_reconstructible";
    case ReconstructVerdict::CriterionUnavailable: return "criterion_unavailable";
  }
  return "?";
}

SplitReconstructibility check_reconstructible_split(const SplitDiracStructure& s, double tol) {
  SplitReconstructibility out;
  const auto& rep = s.rep;
  const auto& g = s.graph;
  if (rep.n == 0) throw std::invalid_argument("check_reconstructible_split: scalar fibre, use the canonical module");
  const int n = rep.n;
  Eigen::VectorXd e0 = Eigen::VectorXd::Unit(n, 0);

  auto cross_check = [&](const std::vector<Eigen::VectorXd>& field) {
    std::vector<Operator> gm;
    for (std::size_t e = 0; e < s.num_edges(); ++e) gm.push_back(rep.vector(field[g.edge(e).src]));
    auto fam = orientation_form_family(s, gm, tol);
    auto rr = check_reconstructibility(to_spacetime(s), fam.form, tol);
    out.operator_residual = rr.worst_residual;
    return std::make_pair(fam, rr.passed() && fam.report.passed());
  };

  if (n == 2) {
    out.verdict = ReconstructVerdict::Reconstructible;
    out.reason = "n = 2: every positive orientation form is reconstructible";
    std::vector<Eigen::VectorXd> field(g.num_vertices(), e0);
    auto [fam, ok] = cross_check(field);
    out.form = fam.form;
    out.cross_validated = ok;
    return out;
  }

  auto conn = connection_properties(s, tol);
  if (!conn.clifford) {
    out.verdict = ReconstructVerdict::CriterionUnavailable;
    out.reason = "criterion unavailable: n > 2 and the connection is not Clifford";
    return out;
  }

  auto forest = spanning_forest(g);
  std::vector<Eigen::VectorXd> field(g.num_vertices());
  std::vector<std::size_t> roots;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    if (forest.root[v] == v) roots.push_back(v);
  out.max_norm_in_fixed = std::numeric_limits<double>::infinity();
  std::size_t fixed_dim = static_cast<std::size_t>(n);
  for (std::size_t root : roots) {
    auto gens = generators_in_component(s, root, forest, tol);
    Eigen::MatrixXd stacked(static_cast<Eigen::Index>(gens.size()) * n, n);
    for (std::size_t k = 0; k < gens.size(); ++k)
      stacked.middleRows(static_cast<Eigen::Index>(k) * n, n) = gens[k].lorentz - Eigen::MatrixXd::Identity(n, n);
    Eigen::MatrixXd fixed =
        gens.empty() ? Eigen::MatrixXd::Identity(n, n) : null_space(stacked, std::max(tol, 1e-9));
    fixed_dim = std::min<std::size_t>(fixed_dim, static_cast<std::size_t>(fixed.cols()));
    double best = -std::numeric_limits<double>::infinity();
    Eigen::VectorXd u;
    if (fixed.cols() > 0) {
      Eigen::MatrixXd eta = Eigen::MatrixXd::Identity(n, n);
      for (int mu = 1; mu < n; ++mu) eta(mu, mu) = -1.0;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(fixed.transpose() * eta * fixed);
      best = es.eigenvalues()(es.eigenvalues().size() - 1);
      u = fixed * es.eigenvectors().col(es.eigenvalues().size() - 1);
    }
    out.max_norm_in_fixed = std::min(out.max_norm_in_fixed, best);
    if (!(best > tol)) {
      out.verdict = ReconstructVerdict::NotReconstructible;
      out.fixed_dimension = fixed_dim;
      std::ostringstream os;
      os << "the holonomy at " << g.label(root) << " fixes no timelike vector (fixed subspace of dimension "
         << fixed.cols() << ")";
      out.reason = os.str();
      out.parallel_field.clear();
      // The naive constant family must fail at operator level.
      auto [fam, ok] = cross_check(std::vector<Eigen::VectorXd>(g.num_vertices(), e0));
      out.cross_validated = !ok;
      return out;
    }
    u /= std::sqrt(minkowski(u, u));
    if (u(0) < 0) u = -u;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      if (forest.root[v] != root) continue;
      field[v] = vector_transport(s, path_transport(s, tree_path(g, forest, root, v)), tol) * u;
    }
  }
  out.fixed_dimension = fixed_dim;
  out.verdict = ReconstructVerdict::Reconstructible;
  out.reason = "parallel future timelike field found";
  out.parallel_field = field;
  auto [fam, ok] = cross_check(field);
  out.form = fam.form;
  out.cross_validated = ok;
  return out;
}

// ---- n = 4 causality -------------------------------------------------------------------------

std::string to_string(EdgeCausalType t) {
  switch (t) {
    case EdgeCausalType::TimelikeFuture: return "timelike_future";
    case EdgeCausalType::TimelikePast: return "timelike_past";
    case EdgeCausalType::SigmaPlus: return "sigma_plus";
    case EdgeCausalType::SigmaMinus: return "sigma_minus";
    case EdgeCausalType::Other: return "other";
  }
  return "?";
}

std::string to_string(CausalVerdict v) {
  switch (v) {
    case CausalVerdict::StablyCausal: return "stably_causal";
    case CausalVerdict::NotStablyCausal: return "not_stably_causal";
    case CausalVerdict::Indeterminate: return "indeterminate";
  }
  return "?";
}

namespace {

enum class Cone { Future, Past, Boundary, Outside };

Cone cone_of(const Eigen::VectorXd& u, double tol) {
  double scale = u.squaredNorm();
  if (scale <= tol * tol) return Cone::Outside;
  double q = minkowski(u, u);
  if (q > tol * scale) return u(0) > 0 ? Cone::Future : Cone::Past;
  if (q < -tol * scale) return Cone::Outside;
  return Cone::Boundary;
}

}  // namespace

EdgeClassification classify_edge(const SplitDiracStructure& s, std::size_t e, double tol) {
  if (s.rep.n != 4) throw std::invalid_argument("classify_edge: n = 4 required");
  EdgeClassification c;
  const Operator& gp = s.gamma_plus.at(e);
  auto vp = vector_part(gp, s.rep);
  auto wp = vector_part(s.rep.chi * gp, s.rep);
  double scale = std::max(1.0, gp.norm());
  Operator rest = gp - s.rep.vector(vp.coefficients.real()) - s.rep.pseudovector(wp.coefficients.real());
  c.v = vp.coefficients.real();
  c.w = wp.coefficients.real();
  if (rest.norm() > tol * scale) {
    c.excluded = true;
    c.note = "gamma+ is not a real vector plus pseudovector";
    return c;
  }
  Cone a = cone_of(c.v + c.w, tol), b = cone_of(c.v - c.w, tol);
  using T = EdgeCausalType;
  if (a == Cone::Future && b == Cone::Future)
    c.type = T::TimelikeFuture;
  else if (a == Cone::Past && b == Cone::Past)
    c.type = T::TimelikePast;
  else if (a == Cone::Future && b == Cone::Past)
    c.type = T::SigmaPlus;
  else if (a == Cone::Past && b == Cone::Future)
    c.type = T::SigmaMinus;
  else if (a == Cone::Outside || b == Cone::Outside) {
    c.excluded = true;
    c.note = std::string("v") + (a == Cone::Outside ? "+" : "-") + "w is not timelike";
  } else {
    c.note = "v+w or v-w lies within tolerance of the light cone";
  }
  return c;
}

std::vector<RationalRow> causal_rows(const WeightedDigraph& g, std::size_t e, EdgeCausalType t) {
  const std::size_t nv = g.num_vertices();
  const auto& ed = g.edge(e);
  // r1 = df + sh, r2 = df - sh
  RationalRow r1(2 * nv, Rational(0)), r2(2 * nv, Rational(0));
  r1[ed.dst] += 1;
  r1[ed.src] -= 1;
  r2[ed.dst] += 1;
  r2[ed.src] -= 1;
  r1[nv + ed.dst] += 1;
  r1[nv + ed.src] += 1;
  r2[nv + ed.dst] -= 1;
  r2[nv + ed.src] -= 1;
  auto neg = [](RationalRow r) {
    for (auto& x : r) x = -x;
    return r;
  };
  switch (t) {
    case EdgeCausalType::TimelikeFuture: return {r1, r2};
    case EdgeCausalType::TimelikePast: return {neg(r1), neg(r2)};
    case EdgeCausalType::SigmaPlus: return {r1, neg(r2)};
    case EdgeCausalType::SigmaMinus: return {neg(r1), r2};
    case EdgeCausalType::Other: return {};
  }
  return {};
}

bool check_causal_potential(const WeightedDigraph& g, const std::vector<EdgeCausalType>& types,
                            const CausalPotential& p) {
  const std::size_t nv = g.num_vertices();
  if (types.size() != g.num_edges() || p.f.size() != nv || p.h.size() != nv) return false;
  std::vector<Rational> x(p.f);
  x.insert(x.end(), p.h.begin(), p.h.end());
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    if (types[e] == EdgeCausalType::Other) return false;
    if (!verify_solution(causal_rows(g, e, types[e]), x)) return false;
  }
  return true;
}

N4Causality n4_stable_causality(const SplitDiracStructure& s, double tol) {
  if (s.rep.n != 4) throw std::invalid_argument("n4_stable_causality: n = 4 required");
  const auto& g = s.graph;
  const std::size_t nv = g.num_vertices();
  N4Causality out;
  std::vector<EdgeCausalType> types;
  bool any_other = false, any_excluded = false;
  for (std::size_t e = 0; e < s.num_edges(); ++e) {
    out.edges.push_back(classify_edge(s, e, tol));
    const auto& c = out.edges.back();
    types.push_back(c.type);
    if (c.type == EdgeCausalType::Other) {
      any_other = true;
      any_excluded = any_excluded || c.excluded;
      continue;
    }
    for (auto& row : causal_rows(g, e, c.type)) {
      out.rows.push_back(std::move(row));
      out.row_edge.push_back(e);
    }
  }

  if (any_excluded) {
    out.verdict = CausalVerdict::NotStablyCausal;
    out.rule = "non-timelike edge";
    for (std::size_t e = 0; e < out.edges.size(); ++e)
      if (out.edges[e].excluded) {
        out.note = "edge " + edge_name(g, e) + ": " + out.edges[e].note + ", so no Gamma on it can be positive";
        break;
      }
    return out;
  }
  if (any_other) {
    out.verdict = CausalVerdict::Indeterminate;
    out.rule = "boundary edge";
    for (std::size_t e = 0; e < out.edges.size(); ++e)
      if (out.edges[e].type == EdgeCausalType::Other) {
        out.note = "edge " + edge_name(g, e) + ": " + out.edges[e].note;
        break;
      }
    return out;
  }

  auto all_of_type = [&](auto pred) { return std::all_of(types.begin(), types.end(), pred); };
  auto timelike = [](EdgeCausalType t) {
    return t == EdgeCausalType::TimelikeFuture || t == EdgeCausalType::TimelikePast;
  };

  if (all_of_type(timelike)) {
    out.rule = "all edges timelike";
    std::vector<int> sigma;
    for (auto t : types) sigma.push_back(t == EdgeCausalType::TimelikeFuture ? 1 : -1);
    WeightedDigraph induced = reorient(g, sigma);
    auto w = acyclicity_witness(induced);
    if (w.acyclic) {
      CausalPotential p{std::vector<Rational>(nv), std::vector<Rational>(nv, Rational(0))};
      for (std::size_t k = 0; k < w.sequence.size(); ++k) p.f[w.sequence[k]] = Rational(static_cast<long>(k));
      out.potential = p;
      out.verdict = CausalVerdict::StablyCausal;
    } else {
      out.timelike_loop = w.sequence;
      std::vector<Rational> y(out.rows.size(), Rational(0));
      for (std::size_t k = 0; k + 1 < w.sequence.size(); ++k) {
        std::size_t e = *g.edge_between(w.sequence[k], w.sequence[k + 1]);
        for (std::size_t i = 0; i < out.rows.size(); ++i)
          if (out.row_edge[i] == e) y[i] += 1;
      }
      out.certificate = y;
      out.verdict = CausalVerdict::NotStablyCausal;
      out.note = "timelike loop";
    }
    return out;
  }
  for (auto [t, sign, name] : {std::tuple{EdgeCausalType::SigmaPlus, 1, "all edges of type +sigma"},
                               std::tuple{EdgeCausalType::SigmaMinus, -1, "all edges of type -sigma"}}) {
    if (all_of_type([t = t](EdgeCausalType x) { return x == t; })) {
      out.rule = name;
      out.potential = CausalPotential{std::vector<Rational>(nv, Rational(0)), std::vector<Rational>(nv, Rational(sign))};
      out.verdict = CausalVerdict::StablyCausal;
      return out;
    }
  }

  out.rule = "Fourier-Motzkin";
  auto fm = solve_strict_homogeneous(out.rows, 2 * nv);
  if (fm.feasible) {
    const auto& x = *fm.solution;
    out.potential = CausalPotential{std::vector<Rational>(x.begin(), x.begin() + static_cast<long>(nv)),
                                    std::vector<Rational>(x.begin() + static_cast<long>(nv), x.end())};
    out.verdict = CausalVerdict::StablyCausal;
  } else {
    out.certificate = fm.certificate;
    out.verdict = CausalVerdict::NotStablyCausal;
  }
  return out;
}

// ---- discretised Dirac operator --------------------------------------------------------------

Operator build_mvs_dirac(const MvsData& m) {
  const auto& g = m.graph;
  const std::size_t ne = g.num_edges();
  if (m.gamma_in.size() != ne || m.gamma_out.size() != ne || m.holonomy.size() != ne)
    throw std::invalid_argument("build_mvs_dirac: gamma and holonomy data required for every edge");
  const Eigen::Index d = m.rep.dim();
  Operator out = Operator::Zero(static_cast<Eigen::Index>(g.num_vertices()) * d,
                                static_cast<Eigen::Index>(g.num_vertices()) * d);
  for (std::size_t e = 0; e < ne; ++e) {
    for (const Operator* a : {&m.gamma_in[e], &m.gamma_out[e], &m.holonomy[e]})
      if (a->rows() != d || a->cols() != d)
        throw std::invalid_argument("build_mvs_dirac: wrong shape on edge " + edge_name(g, e));
    const Eigen::Index s = static_cast<Eigen::Index>(g.edge(e).src) * d;
    const Eigen::Index t = static_cast<Eigen::Index>(g.edge(e).dst) * d;
    const cplx c = I / (2.0 * to_double(g.edge(e).weight));
    out.block(t, s, d, d) += c * m.gamma_in[e] * m.holonomy[e];
    out.block(s, t, d, d) += c * m.gamma_out[e] * inverse(m.holonomy[e]);
  }
  return out;
}

SplitDiracStructure mvs_split_structure(const MvsData& m) {
  std::vector<Operator> gm;
  for (const auto& x : m.gamma_out) gm.push_back(-x);
  return build_split(m.graph, m.rep, m.holonomy, m.gamma_in, gm);
}

Operator graph_embedding(const SplitDiracStructure& s) {
  const Eigen::Index d = s.fibre();
  Operator out = Operator::Zero(s.dim(), static_cast<Eigen::Index>(s.graph.num_vertices()) * d);
  for (std::size_t e = 0; e < s.num_edges(); ++e)
    for (int sign : {-1, 1})
      out.block(s.offset(e, sign), static_cast<Eigen::Index>(endpoint(s.graph, e, sign)) * d, d, d).setIdentity();
  return out;
}

Operator averaging_projection(const SplitDiracStructure& s) {
  const Eigen::Index d = s.fibre();
  Operator out = Operator::Zero(static_cast<Eigen::Index>(s.graph.num_vertices()) * d, s.dim());
  for (std::size_t v = 0; v < s.graph.num_vertices(); ++v)
    if (s.graph.degree(v) == 0) throw std::invalid_argument("averaging_projection: isolated vertex " + s.graph.label(v));
  for (std::size_t e = 0; e < s.num_edges(); ++e)
    for (int sign : {-1, 1}) {
      std::size_t v = endpoint(s.graph, e, sign);
      out.block(static_cast<Eigen::Index>(v) * d, s.offset(e, sign), d, d) =
          Operator::Identity(d, d) / static_cast<double>(s.graph.degree(v));
    }
  return out;
}

DiagramReport check_commuting_diagram(const SplitDiracStructure& s, const Operator& dtilde, double tol) {
  const auto& g = s.graph;
  const Eigen::Index d = s.fibre();
  const Eigen::Index nd = static_cast<Eigen::Index>(g.num_vertices()) * d;
  if (dtilde.rows() != nd || dtilde.cols() != nd)
    throw std::invalid_argument("check_commuting_diagram: Dtilde does not act on the vertex spinor space");
  DiagramReport r;
  Operator i = graph_embedding(s), pi = averaging_projection(s);
  Operator lhs = pi * split_dirac_operator(s) * i;
  r.add_residual("pi_i_identity", rel_diff(pi * i, Operator::Identity(nd, nd)), tol);
  Operator p = i * pi;
  r.add_residual("i_pi_projector", rel_diff(p * p, p), tol);

  double worst = 0.0;
  Operator expected_rhs = Operator::Zero(nd, nd);
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    const Eigen::Index o = static_cast<Eigen::Index>(v) * d;
    r.degrees.push_back(g.degree(v));
    Operator pv = lhs.middleRows(o, d), tv = dtilde.middleRows(o, d);
    double scale = std::max({1.0, pv.norm(), tv.norm()});
    cplx expected = -I * static_cast<double>(g.degree(v)) / 2.0;
    r.expected.push_back(expected);
    expected_rhs.middleRows(o, d) = expected * tv;
    if (tv.norm() <= tol * scale) {
      r.vertex_factors.push_back(std::nullopt);
      r.vertex_residuals.push_back(pv.norm() / scale);
    } else {
      cplx k = (tv.adjoint() * pv).trace() / tv.squaredNorm();
      r.vertex_factors.push_back(k);
      r.vertex_residuals.push_back((pv - k * tv).norm() / scale);
    }
    worst = std::max(worst, r.vertex_residuals.back());
  }
  r.add_residual("per_vertex_proportional", worst, tol);

  r.regular = std::adjacent_find(r.degrees.begin(), r.degrees.end(), std::not_equal_to<>()) == r.degrees.end();
  r.uniform = true;
  std::optional<cplx> common;
  double spread = 0.0;
  std::vector<std::string> mismatched;
  for (std::size_t v = 0; v < r.vertex_factors.size(); ++v) {
    if (!r.vertex_factors[v]) continue;
    if (!common) {
      common = r.vertex_factors[v];
      continue;
    }
    double dev = std::abs(*r.vertex_factors[v] - *common) / std::max(1.0, std::abs(*common));
    spread = std::max(spread, dev);
    if (dev > tol) mismatched.push_back(g.label(v));
  }
  r.uniform = mismatched.empty();
  if (r.uniform) r.factor = common.value_or(cplx(0.0));
  r.add("uniform_factor", r.uniform, spread, mismatched.empty() ? "" : "differs at " + join(mismatched));
  r.expected_residual = rel_diff(lhs, expected_rhs);
  std::ostringstream os;
  if (r.factor) os << "observed factor " << r.factor->real() << (r.factor->imag() < 0 ? "" : "+") << r.factor->imag() << "i";
  r.add_residual("expected_factor", r.expected_residual, tol, os.str());
  // Dtilde = k_v Pi D i with the same k_v.
  Operator scaled = lhs;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    scaled.middleRows(static_cast<Eigen::Index>(v) * d, d) *= r.expected[v];
  r.reciprocal_residual = rel_diff(scaled, dtilde);
  r.add_residual("expected_factor_reciprocal", r.reciprocal_residual, tol);
  return r;
}

}  // namespace ksw
