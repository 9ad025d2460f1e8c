#pragma once

#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "ewl/protocol.hpp"
#include "ewl/qstate.hpp"

namespace test {

inline constexpr double kPi = std::numbers::pi;

inline ewl::StateVector random_state(int m, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<ewl::Amplitude> a(std::size_t{1} << m);
    double norm = 0.0;
    for (auto &x : a) {
        x = {g(rng), g(rng)};
        norm += std::norm(x);
    }
    for (auto &x : a) {
        x /= std::sqrt(norm);
    }
    return ewl::StateVector::from_amplitudes(std::move(a));
}

inline ewl::UnitaryParams random_params(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> th(0.0, kPi);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * kPi);
    return {th(rng), ang(rng), ang(rng)};
}

inline double max_abs_diff(const ewl::StateVector &a, const ewl::StateVector &b) {
    double d = 0.0;
    for (std::size_t y = 0; y < a.size(); ++y) {
        d = std::max(d, std::abs(a[y] - b[y]));
    }
    return d;
}

} // namespace test
