#pragma once

#include <string>

#include "json.hpp"

#include "hyperlap/hyperfunction.hpp"

namespace hyperlap {

// Builtin text literals:
//   0 | delta(a) | delta(a, b) | heaviside_exp(c, a) | d(u) | d(u, k) | tensor(u, v)
// combined with + and -, and scaled by constant factors such as 2*u or (1+i)*u.
// Scalars follow the expression grammar (i, pi, exp, ...). k is 1-based.
Hyperfunction parse_literal(const std::string& text);

// Constant expression such as "2", "-1+3*i" or "exp(i*pi/4)".
cplx parse_scalar(const std::string& text);

// Cones: {"vertex": [...], "generators": [[...], ...]}. Text forms "[a,inf)", "(-inf,a]",
// "{a}" and "orthant(a,b)" are accepted by parse_cone.
nlohmann::json cone_to_json(const ClosedConicSet& k);
ClosedConicSet cone_from_json(const nlohmann::json& j);
ClosedConicSet parse_cone(const std::string& text);

// {"n": n, "terms": [{"alpha": "+", "coeff": [re, im], "expr": "...", "H": h}], "support": cone}.
// Terms without an expression (quadrature-backed) carry "numeric": true and a description in
// "expr"; such literals are written for the record and cannot be read back.
nlohmann::json literal_to_json(const Hyperfunction& u);
Hyperfunction literal_from_json(const nlohmann::json& j);

nlohmann::json cplx_to_json(cplx v);

}  // namespace hyperlap
