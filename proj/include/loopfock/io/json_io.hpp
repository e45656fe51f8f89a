#pragma once

#include "json.hpp"
#include "loopfock/action/loop_action.hpp"
#include "loopfock/dvr/loop_matrix.hpp"
#include "loopfock/fock/gauss_poly.hpp"
#include "loopfock/semigroup/measured.hpp"

namespace loopfock {

using Json = nlohmann::json;

// Malformed documents raise InvalidArgument naming the offending field.

// {"n": int, "T": int | null, "entries": [[[[exp, "p/q"], ...], ...], ...]}
// T is the common truncation order (null for exact matrices); entries are rows.
Json to_json(const LoopMatrix& g);
LoopMatrix loop_matrix_from_json(const Json& j);

// {"l": int, "g": LoopMatrix, "basis": [["p/q", ...], ...], "scale": "p/q"}
Json to_json(const MeasuredElement& m);
MeasuredElement measured_from_json(const Json& j);

// {"m", "D", "W", "terms": [{"mono": [[depth, coord], ...], "coef": [["p/q", alpha, beta], ...]}, ...]}
Json to_json(const GaussPoly& f);
GaussPoly gauss_poly_from_json(const Json& j);

// {"lambda", "L", "nodes", "probes", "seed"}; absent keys keep the defaults.
Json to_json(const ActionConfig& cfg);
ActionConfig action_config_from_json(const Json& j, ActionConfig base = {});

}  // namespace loopfock
