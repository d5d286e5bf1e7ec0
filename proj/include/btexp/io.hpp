#pragma once

#include "btexp/jet.hpp"
#include "btexp/normal_form.hpp"

#include <json.hpp>
#include <string>

namespace btexp {

using Json = nlohmann::ordered_json;

// PiScalar: [{"pi": m, "re": "p/q", "im": "p/q"}, ...] sorted by m.
// Input also accepts a bare integer or a "p/q" string.
Json to_json(const PiScalar& x);
PiScalar piscalar_from_json(const Json& j, const std::string& where = "");

// Jet: {"n": n, "trunc": [P, Q], "terms": [{"alpha": [...], "beta": [...], "c": PiScalar}]}
// with null standing for an unbounded truncation.
Json to_json(const Jet& a);
Jet jet_from_json(const Json& j, const std::string& where = "");

// JetMatrix: {"rows": r, "cols": c, "entries": [[Jet, ...], ...]}
Json to_json(const JetMatrix& m);
JetMatrix jetmatrix_from_json(const Json& j, const std::string& where = "");

// FramedInput: {"n": n, "phi": Jet, "theta": JetMatrix, "f": Jet?, "g": Jet?}
Json to_json(const FramedInput& in);
FramedInput framed_input_from_json(const Json& j, const std::string& where = "");

// NormalFrame: {"n", "lambda": [PiScalar], "phi1", "theta", "f"?, "g"?,
//  "transform": {"gauge": Jet, "linear": [[PiScalar]], "higher": [Jet]}, "approximate"}
Json to_json(const NormalFrame& fr);
NormalFrame normal_frame_from_json(const Json& j, const std::string& where = "");

// Parses text, mapping parse errors to SchemaError with the byte offset.
Json parse_json(const std::string& text, const std::string& source);

} // namespace btexp
