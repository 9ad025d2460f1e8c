#include "ewl/angle.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <string>

#include "ewl/error.hpp"

namespace ewl {

namespace {

double parse_real(std::string_view s, std::string_view whole) {
    double v = 0.0;
    const auto *end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
        throw ValidationError("cannot parse angle '" + std::string(whole) + "'");
    }
    return v;
}

} // namespace

double parse_angle(std::string_view text) {
    const std::string_view whole = text;
    while (!text.empty() && text.front() == ' ') {
        text.remove_prefix(1);
    }
    while (!text.empty() && text.back() == ' ') {
        text.remove_suffix(1);
    }
    if (text.empty()) {
        throw ValidationError("empty angle");
    }
    const auto pi_pos = text.find("pi");
    if (pi_pos == std::string_view::npos) {
        return parse_real(text, whole);
    }

    double sign = 1.0;
    std::string_view coeff = text.substr(0, pi_pos);
    if (!coeff.empty() && (coeff.front() == '-' || coeff.front() == '+')) {
        sign = coeff.front() == '-' ? -1.0 : 1.0;
        coeff.remove_prefix(1);
    }
    if (!coeff.empty() && coeff.back() == '*') {
        coeff.remove_suffix(1);
        if (coeff.empty()) {
            throw ValidationError("cannot parse angle '" + std::string(whole) + "'");
        }
    }
    const double k = coeff.empty() ? 1.0 : parse_real(coeff, whole);

    std::string_view rest = text.substr(pi_pos + 2);
    double m = 1.0;
    if (!rest.empty()) {
        if (rest.front() != '/') {
            throw ValidationError("cannot parse angle '" + std::string(whole) + "'");
        }
        m = parse_real(rest.substr(1), whole);
        if (m == 0.0) {
            throw ValidationError("zero denominator in angle '" + std::string(whole) + "'");
        }
    }
    return sign * k * std::numbers::pi / m;
}

} // namespace ewl
