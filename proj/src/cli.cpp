#include "ksw/cli.hpp"

#include "ksw/canonical.hpp"
#include "ksw/wick.hpp"

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>

#ifndef KSW_DEFAULT_DATA_DIR
#define KSW_DEFAULT_DATA_DIR "data"
#endif

namespace ksw::cli {

namespace {

using io::Json;
const cplx I(0.0, 1.0);

// Three significant digits keep residuals stable across platforms.
double round3(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return std::strtod(buf, nullptr);
}



// Rounded to three significant digits with roundoff below 1e-12 shown as zero.
double chop(double x) { return std::abs(x) < 1e-12 ? 0.0 : round3(x); }

Json complex_json(cplx z) { return Json::array({chop(z.real()), chop(z.imag())}); }

Json report_json(const Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json item{{"name", c.name}, {"passed", c.passed}, {"residual", round3(c.residual)}};
    if (!c.detail.empty()) item["detail"] = c.detail;
    checks.push_back(item);
  }
  return Json{{"passed", r.passed()}, {"checks", checks}};
}

Json labels(const WeightedDigraph& g, const std::vector<std::size_t>& vs) {
  Json out = Json::array();
  for (auto v : vs) out.push_back(g.label(v));
  return out;
}

Json vertex_values(const WeightedDigraph& g, const std::vector<Rational>& values) {
  Json out = Json::array();
  for (std::size_t v = 0; v < values.size(); ++v) out.push_back({g.label(v), to_string(values[v])});
  return out;
}

Json rounded(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(chop(v(k)));
  return out;
}

Json rounded(const Eigen::MatrixXd& m) {
  Json out = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(rounded(Eigen::VectorXd(m.row(r).transpose())));
  return out;
}

Json ko_json(int ko) {
  Json out{{"ko_dim", ko}};
  for (Signature s : {Signature::Antilorentzian, Signature::Euclidean})
    if (auto e = ko_by_dimension(s, ko)) {
      out["signs"] = Json{{"table", to_string(s)}, {"epsilon", e->epsilon}, {"epsilon2", e->epsilon2},
                          {"kappa", e->kappa}};
      break;
    }
  return out;
}

Outcome guarded(const std::function<Outcome()>& fn) {
  try {
    return fn();
  } catch (const io::InputError& ex) {
    return {2, Json{{"error", ex.what()}, {"pointer", ex.pointer()}}};
  } catch (const WickError& ex) {
    return {2, Json{{"error", ex.what()}, {"kind", to_string(ex.kind())}, {"condition", ex.condition()}}};
  } catch (const std::exception& ex) {
    return {2, Json{{"error", ex.what()}}};
  }
}

std::string data_path(const Options& o, const std::string& file) {
  std::string dir = o.data_dir.empty() ? default_data_dir() : o.data_dir;
  return dir + "/" + file;
}

WeightedDigraph oriented(const WeightedDigraph& g, const Options& o) {
  if (!o.sigma.empty() && o.sigma.size() != g.num_edges())
    throw io::InputError("", "--sigma needs one sign per edge (" + std::to_string(g.num_edges()) + ")");
  return reorient(g, o.sigma);
}

// Euclidean rotation followed by the inverse rotation, compared with the input.
Json round_trip(const SpectralSpacetime& s, const TimeOrientationForm& f, double tol, bool* ok) {
  auto eu = to_euclidean(s, f, tol);
  auto back = to_antilorentzian(eu.triple, f.beta, tol);
  const auto& b = back.spacetime;
  double alg = 0.0;
  for (std::size_t k = 0; k < s.algebra.size(); ++k)
    alg = std::max(alg, rel_diff(s.algebra.basis()[k], b.algebra.basis()[k]));
  Json res{{"krein_form", round3(rel_diff(b.space.form(), s.space.form()))},
           {"dirac", round3(rel_diff(b.D, s.D))},
           {"charge_conjugation", round3(rel_diff(b.J, s.J))},
           {"chirality", round3(rel_diff(b.chi, s.chi))},
           {"algebra", round3(alg)}};
  auto axioms = verify_axioms(eu.triple, tol);
  bool good = eu.certificate.valid() && axioms.passed() && b.ko_dim == s.ko_dim;
  for (const auto& [k, v] : res.items()) good = good && v.get<double>() <= 1e-12;
  *ok = good;
  return Json{{"euclidean", {{"ko", ko_json(eu.triple.ko_dim)}, {"axioms", report_json(axioms)},
                             {"certificate_valid", eu.certificate.valid()}}},
              {"round_trip_residuals", res},
              {"ko_after_round_trip", b.ko_dim}};
}

Json orientation_json(const OrientationReport& r) {
  Json out = report_json(r);
  out["normalized"] = r.normalized;
  out["positivity_margin"] = round3(r.positivity_margin);
  return out;
}

Json split_echo(const SplitDiracStructure& s) {
  return Json{{"n", s.rep.n}, {"fibre", s.fibre()}, {"dim", s.dim()}, {"vertices", s.graph.num_vertices()},
              {"edges", s.graph.num_edges()}, {"ko", ko_json(s.rep.signs.ko_dim_mod8)}};
}

Outcome split_verify(const SplitDiracStructure& s, const Options& o) {
  auto r = verify_theorem6(s, o.tolerance);
  auto conn = connection_properties(s, o.tolerance);
  Json rep = report_json(r);
  rep["vectorial"] = r.vectorial;
  rep["complete"] = r.complete;
  rep["epsilon"] = r.epsilon;
  rep["epsilon2"] = r.epsilon2;
  Json c{{"metric", conn.metric}, {"spin_preserving", conn.spin_preserving},
         {"orientation_preserving", conn.orientation_preserving}, {"clifford", conn.clifford}};
  return {r.passed() ? 0 : 1, Json{{"command", "split verify"}, {"structure", split_echo(s)}, {"checks", rep},
                                   {"connection", c}}};
}

Json reconstruct_json(const SplitDiracStructure& s, const SplitReconstructibility& r) {
  Json field = Json::array();
  for (std::size_t v = 0; v < r.parallel_field.size(); ++v)
    field.push_back({s.graph.label(v), rounded(r.parallel_field[v])});
  return Json{{"verdict", to_string(r.verdict)}, {"reason", r.reason}, {"parallel_field", field},
              {"fixed_dimension", r.fixed_dimension}, {"cross_validated", r.cross_validated}};
}

Outcome split_reconstruct(const SplitDiracStructure& s, const Options& o) {
  auto r = check_reconstructible_split(s, o.tolerance);
  int code = r.verdict == ReconstructVerdict::Reconstructible      ? 0
             : r.verdict == ReconstructVerdict::NotReconstructible ? 1
                                                                   : 2;
  if (!r.cross_validated && code != 2) code = 2;
  return {code, Json{{"command", "reconstruct"}, {"structure", split_echo(s)}, {"result", reconstruct_json(s, r)}}};
}

Json causality_json(const SplitDiracStructure& s, const N4Causality& r) {
  Json edges = Json::array();
  for (std::size_t e = 0; e < r.edges.size(); ++e) {
    const auto& ed = s.graph.edge(e);
    Json item{{"edge", s.graph.label(ed.src) + "->" + s.graph.label(ed.dst)}, {"type", to_string(r.edges[e].type)}};
    if (!r.edges[e].note.empty()) item["note"] = r.edges[e].note;
    edges.push_back(item);
  }
  Json out{{"verdict", to_string(r.verdict)}, {"rule", r.rule}, {"edges", edges}};
  if (r.potential)
    out["potential"] = Json{{"f", vertex_values(s.graph, r.potential->f)}, {"h", vertex_values(s.graph, r.potential->h)}};
  if (r.certificate) {
    Json cert = Json::array();
    for (std::size_t i = 0; i < r.certificate->size(); ++i) {
      if ((*r.certificate)[i] == 0) continue;
      const auto& ed = s.graph.edge(r.row_edge[i]);
      cert.push_back({{"row", i},
                      {"edge", s.graph.label(ed.src) + "->" + s.graph.label(ed.dst)},
                      {"multiplier", to_string((*r.certificate)[i])}});
    }
    out["certificate"] = cert;
    out["certificate_valid"] = verify_certificate(r.rows, *r.certificate);
  }
  if (!r.timelike_loop.empty()) out["timelike_loop"] = labels(s.graph, r.timelike_loop);
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

Outcome split_causality(const SplitDiracStructure& s, const Options& o) {
  auto r = n4_stable_causality(s, o.tolerance);
  int code = r.verdict == CausalVerdict::StablyCausal ? 0 : r.verdict == CausalVerdict::NotStablyCausal ? 1 : 2;
  return {code, Json{{"command", "split causality"}, {"structure", split_echo(s)}, {"result", causality_json(s, r)}}};
}

Json diagram_json(const WeightedDigraph& g, const DiagramReport& r) {
  Json factors = Json::array();
  for (std::size_t v = 0; v < r.vertex_factors.size(); ++v) {
    Json item{{"vertex", g.label(v)}, {"degree", r.degrees[v]}, {"expected", complex_json(r.expected[v])}};
    item["factor"] = r.vertex_factors[v] ? complex_json(*r.vertex_factors[v]) : Json(nullptr);
    factors.push_back(item);
  }
  Json out = report_json(r);
  out["regular"] = r.regular;
  out["uniform"] = r.uniform;
  out["factor"] = r.factor ? complex_json(*r.factor) : Json(nullptr);
  out["vertices"] = factors;
  return out;
}

bool diagram_commutes(const DiagramReport& r) {
  for (const char* name : {"pi_i_identity", "i_pi_projector", "per_vertex_proportional", "uniform_factor",
                           "expected_factor_reciprocal"})
    if (!r.find(name)->passed) return false;
  return true;
}

template <class T>
const T& expect(const io::Loaded& l, const std::string& what) {
  if (auto p = std::get_if<T>(&l)) return *p;
  throw io::InputError("/kind", "expected a " + what + " file");
}

// ---- demos ------------------------------------------------------------------------------------

Outcome demo_c2(const Options& o) {
  Json out{{"demo", "c2"}};
  bool ok = true;
  for (const char* file : {"c2.json", "c2_quarter.json"}) {
    auto in = io::structure_from_json(io::read_json(data_path(o, file)));
    const auto& s = std::get<SpectralSpacetime>(in.data);
    auto ax = verify_axioms(s, o.tolerance);
    TimeOrientationForm f{*in.orientation, is_exact(s, *in.orientation, o.tolerance)};
    auto orient = verify_time_orientation(s, f, nullptr, o.tolerance);
    ok = ok && ax.passed() && orient.passed() && s.ko_dim == 2;
    out[file] = Json{{"ko", ko_json(s.ko_dim)}, {"axioms", report_json(ax)}, {"orientation", orientation_json(orient)}};
  }
  {
    auto in = io::structure_from_json(io::read_json(data_path(o, "c2_even.json")));
    const auto& s = std::get<SpectralSpacetime>(in.data);
    auto forms = self_adjoint_imaginary_forms(one_form_basis(s, o.tolerance), s.space, s.J, o.tolerance);
    ok = ok && forms.empty();
    out["c2_even.json"] = Json{{"self_adjoint_imaginary_forms", forms.size()},
                               {"time_orientation_possible", !forms.empty()}};
  }
  {
    auto in = io::structure_from_json(io::read_json(data_path(o, "s0.json")));
    const auto& t = std::get<SpectralTriple>(in.data);
    auto search = find_distinguished_form(t, o.tolerance);
    bool found = search.omega.has_value();
    Json item{{"distinguished_form_found", found}};
    if (found) {
      auto al = to_antilorentzian(t, *search.omega, o.tolerance);
      double dres = rel_diff(al.spacetime.D, -I * t.D);
      item["omega"] = io::to_json(*search.omega);
      item["D_omega_equals_minus_iD"] = round3(dres);
      item["certificate_valid"] = al.certificate.valid();
      ok = ok && dres <= 1e-12 && al.certificate.valid();
    }
    ok = ok && found;
    out["s0.json"] = item;
  }
  {
    auto in = io::structure_from_json(io::read_json(data_path(o, "s6.json")));
    const auto& t = std::get<SpectralTriple>(in.data);
    auto search = find_distinguished_form(t, o.tolerance);
    ok = ok && !search.omega && search.proven_absent;
    out["s6.json"] = Json{{"distinguished_form_found", search.omega.has_value()},
                          {"proven_absent", search.proven_absent}, {"note", search.note}};
  }
  out["passed"] = ok;
  return {ok ? 0 : 1, out};
}

Outcome demo_fig2(const Options& o) {
  Json out{{"demo", "fig2"}};
  auto left = build_canonical_spacetime(io::graph_from_json(io::read_json(data_path(o, "fig2_left.json"))));
  auto right = build_canonical_spacetime(io::graph_from_json(io::read_json(data_path(o, "fig2_right.json"))));
  auto l = stable_causality_canonical(left, o.tolerance);
  auto r = stable_causality_canonical(right, o.tolerance);
  const auto& g = right.graph;
  std::vector<std::size_t> loop{g.index_of("1"), g.index_of("4"), g.index_of("3"), g.index_of("1")};
  double integral = path_integral(right, right.omega, loop, o.tolerance);
  out["left"] = Json{{"stably_causal", l.stably_causal}, {"cycle", labels(left.graph, l.cycle)}};
  out["right"] = Json{{"stably_causal", r.stably_causal}, {"potential", vertex_values(g, r.potential)}};
  out["right_loop_integral_1431"] = chop(integral);
  bool identity = true;
  for (std::size_t v = 0; v < g.num_vertices(); ++v)
    identity = identity && to_string(r.potential[v]) == g.label(v);
  bool ok = !l.stably_causal && r.stably_causal && identity && std::abs(integral + 1.0) <= 1e-12;
  out["passed"] = ok;
  return {ok ? 0 : 1, out};
}

Outcome demo_boost_triangle(const Options& o) {
  Json out{{"demo", "boost-triangle"}};
  auto boost = io::split_from_json(io::read_json(data_path(o, "boost_triangle.json")));
  auto rot = io::split_from_json(io::read_json(data_path(o, "rotation_triangle.json")));
  auto t6b = verify_theorem6(boost, o.tolerance), t6r = verify_theorem6(rot, o.tolerance);
  auto rb = check_reconstructible_split(boost, o.tolerance);
  auto rr = check_reconstructible_split(rot, o.tolerance);
  auto gens = holonomy_generators(boost, 0, o.tolerance);
  out["boost"] = Json{{"structure_valid", t6b.passed()}, {"holonomy", gens.empty() ? Json(nullptr) : rounded(gens[0].lorentz)},
                      {"result", reconstruct_json(boost, rb)}};
  out["rotation"] = Json{{"structure_valid", t6r.passed()}, {"result", reconstruct_json(rot, rr)}};
  bool axis = rr.verdict == ReconstructVerdict::Reconstructible;
  for (const auto& u : rr.parallel_field) axis = axis && u.tail(u.size() - 1).norm() <= 1e-9 && u(0) > 0;
  bool ok = t6b.passed() && t6r.passed() && rb.verdict == ReconstructVerdict::NotReconstructible &&
            rb.cross_validated && axis && rr.cross_validated;
  out["passed"] = ok;
  return {ok ? 0 : 1, out};
}

Outcome demo_figsc(const Options& o) {
  Json out{{"demo", "figsc"}};
  Json file = io::read_json(data_path(o, "figsc.json"));
  auto sc = io::split_from_json(file);
  auto mixed = io::split_from_json(io::read_json(data_path(o, "mixed4.json")));
  auto r = n4_stable_causality(sc, o.tolerance);
  auto m = n4_stable_causality(mixed, o.tolerance);
  std::vector<EdgeCausalType> types;
  for (const auto& c : r.edges) types.push_back(c.type);
  CausalPotential labelled;
  for (const auto& x : file.at("labelled_potential").at("f")) labelled.f.push_back(parse_rational(x.get<std::string>()));
  for (const auto& x : file.at("labelled_potential").at("h")) labelled.h.push_back(parse_rational(x.get<std::string>()));
  bool labelled_ok = check_causal_potential(sc.graph, types, labelled);
  bool solver_ok = r.potential && check_causal_potential(sc.graph, types, *r.potential);
  out["figsc"] = causality_json(sc, r);
  out["figsc"]["labelled_potential_verifies"] = labelled_ok;
  out["mixed4"] = causality_json(mixed, m);
  bool ok = r.verdict == CausalVerdict::StablyCausal && labelled_ok && solver_ok &&
            m.verdict == CausalVerdict::NotStablyCausal && m.certificate && verify_certificate(m.rows, *m.certificate);
  out["passed"] = ok;
  return {ok ? 0 : 1, out};
}

Outcome demo_mvs_flat(const Options& o) {
  Json out{{"demo", "mvs-flat"}};
  auto flat = io::mvs_from_json(io::read_json(data_path(o, "mvs_flat.json")));
  auto nonreg = io::mvs_from_json(io::read_json(data_path(o, "mvs_nonregular.json")));
  auto split = mvs_split_structure(flat);
  auto rf = check_commuting_diagram(split, build_mvs_dirac(flat), o.tolerance);
  auto rn = check_commuting_diagram(mvs_split_structure(nonreg), build_mvs_dirac(nonreg), o.tolerance);
  out["flat"] = diagram_json(flat.graph, rf);
  out["flat"]["structure_valid"] = verify_theorem6(split, o.tolerance).passed();
  out["nonregular"] = diagram_json(nonreg.graph, rn);
  bool ok = diagram_commutes(rf) && !rn.uniform && out["flat"]["structure_valid"].get<bool>();
  out["passed"] = ok;
  return {ok ? 0 : 1, out};
}

}  // namespace

std::vector<int> parse_sigma(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "+1" || item == "1" || item == "+")
      out.push_back(1);
    else if (item == "-1" || item == "-")
      out.push_back(-1);
    else
      throw io::InputError("", "--sigma entries must be +1 or -1, got '" + item + "'");
  }
  return out;
}

std::string default_data_dir() {
  if (const char* env = std::getenv("KSW_DATA_DIR")) return env;
  return KSW_DEFAULT_DATA_DIR;
}

Outcome run_verify(const std::string& path, const Options& o) {
  return guarded([&]() -> Outcome {
    auto in = io::load_input(path);
    if (auto g = std::get_if<WeightedDigraph>(&in)) {
      if (o.signature && *o.signature != Signature::Antilorentzian)
        throw io::InputError("", "canonical spacetimes over graphs are antilorentzian");
      auto cs = build_canonical_spacetime(oriented(*g, o));
      auto ax = verify_axioms(cs.spacetime, o.tolerance);
      TimeOrientationForm f{cs.omega, is_exact(cs.spacetime, cs.omega, o.tolerance)};
      auto orient = verify_time_orientation(cs.spacetime, f, nullptr, o.tolerance);
      bool ok = ax.passed() && orient.passed();
      return {ok ? 0 : 1, Json{{"command", "verify"}, {"input", "graph"}, {"dim", cs.spacetime.dim()},
                               {"ko", ko_json(cs.spacetime.ko_dim)}, {"axioms", report_json(ax)},
                               {"distinguished_form", orientation_json(orient)}}};
    }
    if (auto st = std::get_if<io::StructureInput>(&in)) {
      Json out{{"command", "verify"}, {"input", "structure"}};
      bool ok = false;
      if (st->is_spacetime()) {
        auto s = std::get<SpectralSpacetime>(st->data);
        if (o.signature) s.signature = *o.signature;
        auto ax = verify_axioms(s, o.tolerance);
        out["type"] = "spacetime";
        out["signature"] = to_string(s.signature);
        out["dim"] = s.dim();
        out["ko"] = ko_json(s.ko_dim);
        out["axioms"] = report_json(ax);
        ok = ax.passed();
        if (st->orientation) {
          TimeOrientationForm f{*st->orientation, is_exact(s, *st->orientation, o.tolerance)};
          auto orient = verify_time_orientation(s, f, nullptr, o.tolerance);
          out["orientation"] = orientation_json(orient);
          ok = ok && orient.passed();
        }
      } else {
        const auto& t = std::get<SpectralTriple>(st->data);
        auto ax = verify_axioms(t, o.tolerance);
        out["type"] = "triple";
        out["dim"] = t.dim();
        out["ko"] = ko_json(t.ko_dim);
        out["axioms"] = report_json(ax);
        ok = ax.passed();
      }
      return {ok ? 0 : 1, out};
    }
    if (auto s = std::get_if<SplitDiracStructure>(&in)) return split_verify(*s, o);
    throw io::InputError("/kind", "verify accepts graph, structure or split files");
  });
}

Outcome run_distance(const std::string& path, const std::string& from, const std::string& to, const Options& o) {
  return guarded([&]() -> Outcome {
    auto g = expect<WeightedDigraph>(io::load_input(path), "graph");
    std::size_t i, j;
    try {
      i = g.index_of(from);
      j = g.index_of(to);
    } catch (const std::exception&) {
      throw io::InputError("/vertices", "unknown vertex label");
    }
    auto t = build_canonical_triple(g);
    auto c = connes_distance(t, i, j);
    auto d = geodesic_distance(g, i, j);
    auto str = [](const std::optional<Rational>& x) { return x ? to_string(*x) : std::string("inf"); };
    Json out{{"command", "distance"}, {"from", from}, {"to", to}, {"connes", str(c.distance)},
             {"geodesic", str(d)}, {"equal", c.distance == d}};
    if (c.distance) out["witness"] = vertex_values(g, c.witness);
    (void)o;
    return {c.distance == d ? 0 : 1, out};
  });
}

Outcome run_causality(const std::string& path, const Options& o) {
  return guarded([&]() -> Outcome {
    auto in = io::load_input(path);
    if (auto s = std::get_if<SplitDiracStructure>(&in)) return split_causality(*s, o);
    const auto& g0 = expect<WeightedDigraph>(in, "graph or split");
    auto cs = build_canonical_spacetime(oriented(g0, o));
    auto r = stable_causality_canonical(cs, o.tolerance);
    Json out{{"command", "causality"}, {"stably_causal", r.stably_causal}};
    if (r.stably_causal) {
      out["potential"] = vertex_values(cs.graph, r.potential);
      out["orientation"] = orientation_json(r.orientation);
    } else {
      out["cycle"] = labels(cs.graph, r.cycle);
    }
    return {r.stably_causal ? 0 : 1, out};
  });
}

Outcome run_wick(const std::string& path, const Options& o) {
  return guarded([&]() -> Outcome {
    auto in = io::load_input(path);
    Json out{{"command", "wick"}};
    bool ok = false;
    if (auto g = std::get_if<WeightedDigraph>(&in)) {
      auto cs = build_canonical_spacetime(*g);
      Operator form = cs.omega;
      if (!o.sigma.empty()) {
        if (o.sigma.size() != g->num_edges()) throw io::InputError("", "--sigma needs one sign per edge");
        form = form_from_coefficients(cs, std::vector<double>(o.sigma.begin(), o.sigma.end()));
      }
      TimeOrientationForm f{form, is_exact(cs.spacetime, form, o.tolerance)};
      out["direction"] = to_string(WickDirection::ToEuclidean);
      out["ko_in"] = cs.spacetime.ko_dim;
      out["rotation"] = round_trip(cs.spacetime, f, o.tolerance, &ok);
      return {ok ? 0 : 1, out};
    }
    const auto& st = expect<io::StructureInput>(in, "graph or structure");
    if (st.is_spacetime()) {
      const auto& s = std::get<SpectralSpacetime>(st.data);
      if (!st.orientation) throw io::InputError("/orientation", "a spacetime needs an orientation form to rotate");
      TimeOrientationForm f{*st.orientation, is_exact(s, *st.orientation, o.tolerance)};
      out["direction"] = to_string(WickDirection::ToEuclidean);
      out["ko_in"] = s.ko_dim;
      out["rotation"] = round_trip(s, f, o.tolerance, &ok);
      return {ok ? 0 : 1, out};
    }
    const auto& t = std::get<SpectralTriple>(st.data);
    auto search = find_distinguished_form(t, o.tolerance);
    out["direction"] = to_string(WickDirection::ToAntilorentzian);
    out["ko_in"] = t.ko_dim;
    out["distinguished_form_found"] = search.omega.has_value();
    out["proven_absent"] = search.proven_absent;
    if (!search.note.empty()) out["note"] = search.note;
    if (!search.omega) return {search.proven_absent ? 1 : 2, out};
    auto al = to_antilorentzian(t, *search.omega, o.tolerance);
    out["omega"] = io::to_json(*search.omega);
    out["ko_out"] = al.spacetime.ko_dim;
    auto axioms = verify_axioms(al.spacetime, o.tolerance);
    out["axioms"] = report_json(axioms);
    auto back = to_euclidean(al.spacetime, al.form, o.tolerance);
    double res = std::max({rel_diff(back.triple.D, t.D), rel_diff(back.triple.J, t.J), rel_diff(back.triple.chi, t.chi),
                           rel_diff(back.triple.space.form(), t.space.form())});
    out["round_trip_residual"] = round3(res);
    ok = al.certificate.valid() && axioms.passed() && res <= 1e-12;
    return {ok ? 0 : 1, out};
  });
}

Outcome run_split(const std::string& sub, const std::string& path, const Options& o) {
  return guarded([&]() -> Outcome {
    auto in = io::load_input(path);
    const auto& s = expect<SplitDiracStructure>(in, "split");
    if (sub == "verify") return split_verify(s, o);
    if (sub == "reconstruct") return split_reconstruct(s, o);
    if (sub == "causality") return split_causality(s, o);
    throw io::InputError("", "unknown split subcommand '" + sub + "'");
  });
}

Outcome run_reconstruct(const std::string& path, const Options& o) {
  return guarded([&]() -> Outcome {
    auto in = io::load_input(path);
    if (auto s = std::get_if<SplitDiracStructure>(&in)) return split_reconstruct(*s, o);
    const auto& st = expect<io::StructureInput>(in, "split or structure");
    if (!st.is_spacetime() || !st.orientation)
      throw io::InputError("/orientation", "reconstruct needs a spacetime with an orientation form");
    const auto& s = std::get<SpectralSpacetime>(st.data);
    TimeOrientationForm f{*st.orientation, is_exact(s, *st.orientation, o.tolerance)};
    auto r = check_reconstructibility(s, f, o.tolerance);
    return {r.passed() ? 0 : 1, Json{{"command", "reconstruct"}, {"result", report_json(r)}}};
  });
}

Outcome run_mvs_compare(const std::string& path, const Options& o) {
  return guarded([&]() -> Outcome {
    auto in = io::load_input(path);
    const auto& m = expect<MvsData>(in, "mvs");
    auto split = mvs_split_structure(m);
    auto r = check_commuting_diagram(split, build_mvs_dirac(m), o.tolerance);
    Json out{{"command", "mvs-compare"}, {"diagram", diagram_json(m.graph, r)},
             {"structure_checks", report_json(verify_theorem6(split, o.tolerance))}};
    return {diagram_commutes(r) ? 0 : 1, out};
  });
}

const std::vector<std::string>& demo_names() {
  static const std::vector<std::string> names{"c2", "fig2", "boost-triangle", "figsc", "mvs-flat"};
  return names;
}

Outcome run_demo(const std::string& name, const Options& o) {
  return guarded([&]() -> Outcome {
    if (name == "c2") return demo_c2(o);
    if (name == "fig2") return demo_fig2(o);
    if (name == "boost-triangle") return demo_boost_triangle(o);
    if (name == "figsc") return demo_figsc(o);
    if (name == "mvs-flat") return demo_mvs_flat(o);
    throw io::InputError("", "unknown demo '" + name + "'");
  });
}

namespace {

bool scalar_array(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& x : j)
    if (x.is_structured() && !(x.is_array() && std::all_of(x.begin(), x.end(), [](const Json& y) { return y.is_primitive(); })))
      return false;
  return true;
}

void render(const Json& j, int indent, std::ostringstream& os) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_primitive() || scalar_array(v))
        os << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      else {
        os << pad << k << ":\n";
        render(v, indent + 2, os);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_primitive() || scalar_array(v))
        os << pad << "- " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
      else {
        os << pad << "-\n";
        render(v, indent + 2, os);
      }
    }
  } else {
    os << pad << j.dump() << "\n";
  }
}

}  // namespace

std::string render_text(const io::Json& report) {
  std::ostringstream os;
  render(report, 0, os);
  return os.str();
}

}  // namespace ksw::cli
