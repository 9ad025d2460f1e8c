#pragma once

#include <string_view>

namespace ewl {

/// Parses an angle in radians. Accepts plain reals ("0.5", "-1e-3") and
/// pi-rational literals: "pi", "-pi", "pi/2", "9pi/16", "3*pi/4", "0.5*pi".
/// A literal k*pi/m evaluates as k * pi / m. Throws ValidationError.
double parse_angle(std::string_view text);

} // namespace ewl
