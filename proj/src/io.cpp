#include "ksw/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace ksw::io {

namespace {

const cplx I(0.0, 1.0);

[[noreturn]] void fail(const std::string& pointer, const std::string& message) { throw InputError(pointer, message); }

const Json& require(const Json& j, const std::string& key, const std::string& pointer) {
  if (!j.is_object()) fail(pointer, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(pointer + "/" + key, "missing field");
  return *it;
}

cplx entry_from_json(const Json& x, const std::string& pointer) {
  if (x.is_number()) return cplx(x.get<double>(), 0.0);
  if (x.is_array() && x.size() == 2 && x[0].is_number() && x[1].is_number())
    return cplx(x[0].get<double>(), x[1].get<double>());
  fail(pointer, "expected a number or an [re, im] pair");
}

std::string label_of(const Json& x, const std::string& pointer) {
  if (x.is_string()) return x.get<std::string>();
  if (x.is_number_integer()) return std::to_string(x.get<long long>());
  fail(pointer, "expected a vertex label");
}

std::vector<std::string> labels_from_json(const Json& j) {
  const Json& vs = require(j, "vertices", "");
  if (!vs.is_array()) fail("/vertices", "expected an array");
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < vs.size(); ++k) labels.push_back(label_of(vs[k], "/vertices/" + std::to_string(k)));
  return labels;
}

const Json& edges_of(const Json& j) {
  const Json& es = require(j, "edges", "");
  if (!es.is_array()) fail("/edges", "expected an array");
  return es;
}

// Graph from the common fields; `weight_key` lists accepted aliases for the edge weight in order.
WeightedDigraph graph_with_weights(const Json& j, const std::vector<std::string>& weight_keys) {
  auto labels = labels_from_json(j);
  const Json& es = edges_of(j);
  std::vector<Edge> edges;
  auto index = [&](const Json& x, const std::string& p) {
    std::string l = label_of(x, p);
    auto it = std::find(labels.begin(), labels.end(), l);
    if (it == labels.end()) fail(p, "unknown vertex '" + l + "'");
    return static_cast<std::size_t>(it - labels.begin());
  };
  for (std::size_t k = 0; k < es.size(); ++k) {
    const std::string p = "/edges/" + std::to_string(k);
    const Json& e = es[k];
    Edge ed;
    ed.src = index(require(e, "src", p), p + "/src");
    ed.dst = index(require(e, "dst", p), p + "/dst");
    ed.weight = 1;
    for (const auto& key : weight_keys)
      if (e.contains(key)) {
        ed.weight = rational_from_json(e[key], p + "/" + key);
        if (ed.weight <= 0) fail(p + "/" + key, "weight must be positive");
        break;
      }
    if (e.contains("phase")) {
      if (!e["phase"].is_number()) fail(p + "/phase", "expected a number");
      ed.phase = e["phase"].get<double>();
    }
    edges.push_back(ed);
  }
  try {
    return WeightedDigraph(std::move(labels), std::move(edges));
  } catch (const std::invalid_argument& ex) {
    fail("/edges", ex.what());
  }
}

CliffordRep rep_from_json(const Json& j) {
  const Json& n = require(j, "n", "");
  if (!n.is_number_integer()) fail("/n", "expected an integer");
  int v = n.get<int>();
  if (v == 0) return scalar_clifford();
  try {
    return build_clifford(v);
  } catch (const std::invalid_argument& ex) {
    fail("/n", ex.what());
  }
}

Operator gamma_from_json(const Json& g, const CliffordRep& rep, const std::string& p) {
  if (!g.is_object()) fail(p, "expected an object");
  if (g.contains("matrix")) {
    Operator m = matrix_from_json(g["matrix"], p + "/matrix");
    if (m.rows() != rep.dim() || m.cols() != rep.dim()) fail(p + "/matrix", "wrong dimension");
    return m;
  }
  if (!g.contains("vector") && !g.contains("pseudovector")) fail(p, "expected vector, pseudovector or matrix");
  Operator out = Operator::Zero(rep.dim(), rep.dim());
  for (const char* key : {"vector", "pseudovector"}) {
    if (!g.contains(key)) continue;
    Eigen::VectorXd v = real_vector_from_json(g[key], p + "/" + key);
    if (v.size() != rep.n) fail(p + "/" + key, "expected " + std::to_string(rep.n) + " components");
    out += std::string(key) == "vector" ? rep.vector(v) : rep.pseudovector(v);
  }
  return out;
}

Operator transport_from_json(const Json& e, const std::string& key, const CliffordRep& rep, const std::string& p) {
  if (!e.contains(key)) return Operator::Identity(rep.dim(), rep.dim());
  const Json& h = e[key];
  const std::string hp = p + "/" + key;
  if (!h.is_object()) fail(hp, "expected an object");
  try {
    if (h.contains("spinor")) {
      Operator m = matrix_from_json(h["spinor"], hp + "/spinor");
      if (m.rows() != rep.dim() || m.cols() != rep.dim()) fail(hp + "/spinor", "wrong dimension");
      return m;
    }
    if (h.contains("lorentz")) {
      Operator m = matrix_from_json(h["lorentz"], hp + "/lorentz");
      if (m.imag().norm() > 0) fail(hp + "/lorentz", "expected a real matrix");
      return spin_lift(m.real(), rep);
    }
    if (h.contains("generator")) {
      Operator m = matrix_from_json(h["generator"], hp + "/generator");
      if (m.imag().norm() > 0) fail(hp + "/generator", "expected a real matrix");
      return spin_exponential(m.real(), rep);
    }
  } catch (const std::invalid_argument& ex) {
    fail(hp, ex.what());
  }
  fail(hp, "expected spinor, lorentz or generator");
}

}  // namespace

InputError::InputError(std::string pointer, const std::string& message)
    : std::runtime_error((pointer.empty() ? std::string("input") : pointer) + ": " + message),
      pointer_(std::move(pointer)) {}

Json to_json(const Operator& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

Json to_json(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(v(k));
  return out;
}

Json rational_json(const Rational& r) { return ksw::to_string(r); }

Operator matrix_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_array() || j.empty()) fail(pointer, "expected a nonempty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array() || j[0].empty()) fail(pointer + "/0", "expected a nonempty row");
  const std::size_t cols = j[0].size();
  Operator m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = pointer + "/" + std::to_string(r);
    if (!j[r].is_array() || j[r].size() != cols) fail(rp, "ragged matrix");
    for (std::size_t c = 0; c < cols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = entry_from_json(j[r][c], rp + "/" + std::to_string(c));
  }
  return m;
}

Eigen::VectorXd real_vector_from_json(const Json& j, const std::string& pointer) {
  if (!j.is_array()) fail(pointer, "expected an array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number()) fail(pointer + "/" + std::to_string(k), "expected a number");
    v(static_cast<Eigen::Index>(k)) = j[k].get<double>();
  }
  return v;
}

Rational rational_from_json(const Json& j, const std::string& pointer) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
  } catch (const std::exception& ex) {
    fail(pointer, ex.what());
  }
  fail(pointer, "expected a rational string such as \"3/2\" or an integer");
}

WeightedDigraph graph_from_json(const Json& j) { return graph_with_weights(j, {"weight"}); }

StructureInput structure_from_json(const Json& j) {
  const std::string type = require(j, "type", "").is_string() ? j["type"].get<std::string>() : "";
  if (type != "spacetime" && type != "triple") fail("/type", "expected \"spacetime\" or \"triple\"");
  SpectralData d;
  d.D = matrix_from_json(require(j, "D", ""), "/D");
  const Eigen::Index n = d.D.rows();
  auto square = [&](const Operator& m, const std::string& p) {
    if (m.rows() != n || m.cols() != n) fail(p, "dimension differs from D");
    return m;
  };
  square(d.D, "/D");
  d.chi = square(matrix_from_json(require(j, "chi", ""), "/chi"), "/chi");
  d.J = AntilinearOperator(square(matrix_from_json(require(j, "J", ""), "/J"), "/J"));
  const Json& ko = require(j, "ko_dim", "");
  if (!ko.is_number_integer()) fail("/ko_dim", "expected an integer");
  d.ko_dim = ko.get<int>();
  try {
    d.space = j.contains("j") ? KreinSpace(square(matrix_from_json(j["j"], "/j"), "/j")) : KreinSpace::hilbert(n);
  } catch (const std::invalid_argument& ex) {
    fail("/j", ex.what());
  }
  const Json& alg = require(j, "algebra", "");
  if (!alg.is_array() || alg.empty()) fail("/algebra", "expected a nonempty array of matrices");
  std::vector<Operator> basis;
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < alg.size(); ++k) {
    const std::string p = "/algebra/" + std::to_string(k);
    basis.push_back(square(matrix_from_json(alg[k], p), p));
    labels.push_back("a" + std::to_string(k));
  }
  try {
    d.algebra = AlgebraRep(std::move(basis), std::move(labels));
  } catch (const std::invalid_argument& ex) {
    fail("/algebra", ex.what());
  }
  StructureInput out;
  if (type == "spacetime") {
    SpectralSpacetime s;
    static_cast<SpectralData&>(s) = d;
    if (j.contains("signature")) {
      try {
        s.signature = parse_signature(j["signature"].get<std::string>());
      } catch (const std::exception& ex) {
        fail("/signature", ex.what());
      }
    }
    out.data = s;
  } else {
    SpectralTriple t;
    static_cast<SpectralData&>(t) = d;
    out.data = t;
  }
  if (j.contains("orientation")) out.orientation = square(matrix_from_json(j["orientation"], "/orientation"), "/orientation");
  return out;
}

SplitDiracStructure split_from_json(const Json& j) {
  auto graph = graph_with_weights(j, {"delta", "weight"});
  auto rep = rep_from_json(j);
  const Json& es = edges_of(j);
  std::vector<Operator> h, gp, gm;
  for (std::size_t k = 0; k < es.size(); ++k) {
    const std::string p = "/edges/" + std::to_string(k);
    const Json& e = es[k];
    h.push_back(transport_from_json(e, "h", rep, p));
    if (!is_invertible(h.back())) fail(p + "/h", "singular transport");
    gp.push_back(gamma_from_json(require(e, "gamma_plus", p), rep, p + "/gamma_plus"));
    if (e.contains("gamma_minus") && !(e["gamma_minus"].is_string() && e["gamma_minus"] == "partner"))
      gm.push_back(gamma_from_json(e["gamma_minus"], rep, p + "/gamma_minus"));
    else
      gm.push_back(gamma_minus_partner(rep, h.back(), gp.back()));
  }
  try {
    return build_split(graph, rep, h, gp, gm);
  } catch (const std::invalid_argument& ex) {
    fail("/edges", ex.what());
  }
}

MvsData mvs_from_json(const Json& j) {
  MvsData m;
  m.graph = graph_with_weights(j, {"length", "weight"});
  m.rep = rep_from_json(j);
  const Json& es = edges_of(j);
  for (std::size_t k = 0; k < es.size(); ++k) {
    const std::string p = "/edges/" + std::to_string(k);
    const Json& e = es[k];
    if (e.contains("tangent")) {
      Eigen::VectorXd t = real_vector_from_json(e["tangent"], p + "/tangent");
      if (t.size() != m.rep.n) fail(p + "/tangent", "expected " + std::to_string(m.rep.n) + " components");
      m.gamma_in.push_back(m.rep.vector(t));
      m.gamma_out.push_back(m.rep.vector(-t));
    } else {
      m.gamma_in.push_back(gamma_from_json(require(e, "gamma_in", p), m.rep, p + "/gamma_in"));
      m.gamma_out.push_back(gamma_from_json(require(e, "gamma_out", p), m.rep, p + "/gamma_out"));
    }
    m.holonomy.push_back(transport_from_json(e, "holonomy", m.rep, p));
  }
  return m;
}

std::string to_string(InputKind k) {
  switch (k) {
    case InputKind::Graph: return "graph";
    case InputKind::Structure: return "structure";
    case InputKind::Split: return "split";
    case InputKind::Mvs: return "mvs";
  }
  return "?";
}

InputKind detect_kind(const Json& j) {
  if (!j.is_object()) fail("", "expected a JSON object");
  if (!j.contains("kind")) return InputKind::Graph;
  const Json& k = j["kind"];
  if (k == "graph") return InputKind::Graph;
  if (k == "structure") return InputKind::Structure;
  if (k == "split") return InputKind::Split;
  if (k == "mvs") return InputKind::Mvs;
  fail("/kind", "unknown kind");
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("", "cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& ex) {
    fail("", std::string("malformed JSON: ") + ex.what());
  }
}

Loaded load_input(const std::string& path, std::optional<InputKind> kind) {
  Json j = read_json(path);
  InputKind found = detect_kind(j);
  if (kind && *kind != found) fail("/kind", "expected a " + to_string(*kind) + " file, found " + to_string(found));
  switch (found) {
    case InputKind::Graph: return graph_from_json(j);
    case InputKind::Structure: return structure_from_json(j);
    case InputKind::Split: return split_from_json(j);
    case InputKind::Mvs: return mvs_from_json(j);
  }
  fail("", "unreachable");
}

}  // namespace ksw::io
