#pragma once

#include "ksw/graphs.hpp"
#include "ksw/spectral.hpp"
#include "ksw/splitdirac.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace ksw::io {

using Json = nlohmann::json;

// Schema violation, located by a JSON pointer.
class InputError : public std::runtime_error {
 public:
  InputError(std::string pointer, const std::string& message);
  const std::string& pointer() const { return pointer_; }

 private:
  std::string pointer_;
};

// Row-major arrays of [re, im] pairs.
Json to_json(const Operator& m);
Json to_json(const Eigen::MatrixXd& m);
Json to_json(const Eigen::VectorXd& v);
Json rational_json(const Rational& r);
// Accepts [re, im] pairs or plain real numbers as entries.
Operator matrix_from_json(const Json& j, const std::string& pointer);
Eigen::VectorXd real_vector_from_json(const Json& j, const std::string& pointer);
Rational rational_from_json(const Json& j, const std::string& pointer);

// {"vertices": [...], "edges": [{"src", "dst", "weight": "p/q", "phase"}]}
WeightedDigraph graph_from_json(const Json& j);

// {"kind": "structure", "type": "spacetime" | "triple", "signature", "ko_dim", "j", "algebra": [...], "D", "J", "chi",
//  "orientation"}; "J" holds the matrix M of x -> M conj(x).
struct StructureInput {
  std::variant<SpectralSpacetime, SpectralTriple> data;
  std::optional<Operator> orientation;
  bool is_spacetime() const { return data.index() == 0; }
};
StructureInput structure_from_json(const Json& j);

// Graph plus {"kind": "split", "n", "edges": [{..., "delta", "h", "gamma_plus", "gamma_minus"}]}.
// h: {"spinor": M} | {"lorentz": real matrix} (spin lift) | {"generator": antisymmetric} (spin exponential); default 1.
// gamma: {"vector": v} and/or {"pseudovector": w} | {"matrix": M}; gamma_minus defaults to the partner fixed by h and J.
SplitDiracStructure split_from_json(const Json& j);

// Graph plus {"kind": "mvs", "n", "edges": [{..., "length", "tangent" | "gamma_in" + "gamma_out", "holonomy"}]}.
MvsData mvs_from_json(const Json& j);

enum class InputKind { Graph, Structure, Split, Mvs };
std::string to_string(InputKind k);
// From the "kind" field; graphs carry none.
InputKind detect_kind(const Json& j);

using Loaded = std::variant<WeightedDigraph, StructureInput, SplitDiracStructure, MvsData>;

// Throws InputError (pointer "" for unreadable files or malformed JSON).
Json read_json(const std::string& path);
Loaded load_input(const std::string& path, std::optional<InputKind> kind = std::nullopt);

}  // namespace ksw::io
