#pragma once

#include <string>

#include "apzeta/real.hpp"

namespace apzeta {

// Evaluate an arithmetic expression at the given precision. Accepts decimal
// and scientific literals, the constants pi, e, gamma, the functions
// log/ln, exp, sqrt, cos, sin, abs, and the operators + - * / ^ with parens.
// Example: "2*pi/log(3)". Throws std::invalid_argument on parse errors.
Real eval_expr(const std::string& text, int bits = 0);

}  // namespace apzeta
