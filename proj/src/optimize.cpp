#include "ewl/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "ewl/error.hpp"
#include "ewl/kernels.hpp"

namespace ewl::optimize {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kInvPhi = 0.61803398874989484820; // 1/phi

struct LineBest {
    double x;
    double value;
};

// Golden-section search on [a, b]; returns the best evaluated point.
template <class F>
LineBest golden_section(const F &f, double a, double b, double tol,
                        std::size_t &evaluations) {
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    evaluations += 2;
    LineBest best = fc >= fd ? LineBest{c, fc} : LineBest{d, fd};
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
            if (fc > best.value) {
                best = {c, fc};
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
            if (fd > best.value) {
                best = {d, fd};
            }
        }
        ++evaluations;
    }
    return best;
}

using Point = std::array<double, 3>;

UnitaryParams to_params(const Point &x) {
    return {std::clamp(x[0], 0.0, kPi), wrap_angle(x[1]), wrap_angle(x[2])};
}

struct StartResult {
    Point x;
    double value;
    std::size_t evaluations = 0;
};

StartResult refine_from(const std::function<double(const UnitaryParams &)> &f,
                        Point x, double value, const Options3D &opt) {
    StartResult r{x, value, 0};
    const int g = opt.grid_per_dim;
    const std::array<double, 3> h{kPi / (g - 1), kTwoPi / g, kTwoPi / g};
    for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
        const double before = r.value;
        for (std::size_t d = 0; d < 3; ++d) {
            double lo = r.x[d] - h[d];
            double hi = r.x[d] + h[d];
            if (d == 0) {
                lo = std::max(lo, 0.0);
                hi = std::min(hi, kPi);
            }
            auto line = [&](double t) {
                Point y = r.x;
                y[d] = t;
                return f(to_params(y));
            };
            const auto best = golden_section(line, lo, hi, opt.tol, r.evaluations);
            if (best.value > r.value) {
                r.value = best.value;
                r.x[d] = best.x;
            }
        }
        if (r.value - before <= 1e-15 * std::max(1.0, std::abs(r.value))) {
            break;
        }
    }
    const auto p = to_params(r.x);
    r.x = {p.theta, p.alpha, p.beta};
    return r;
}

} // namespace

double wrap_angle(double x) {
    double w = std::fmod(x, kTwoPi);
    if (w < 0.0) {
        w += kTwoPi;
    }
    return w >= kTwoPi ? 0.0 : w;
}

OptResult maximize_1d(const std::function<double(double)> &f, double lo, double hi,
                      const Options1D &options) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        throw ValidationError("invalid interval for maximize_1d");
    }
    if (options.grid_points < 3 || !(options.tol > 0.0)) {
        throw ValidationError("maximize_1d needs >= 3 grid points and tol > 0");
    }
    const auto n = static_cast<std::size_t>(options.grid_points);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    auto grid_x = [&](std::size_t i) {
        return i + 1 == n ? hi : lo + static_cast<double>(i) * step;
    };
    const auto best = kernels::parallel::argmax(n, [&](std::size_t i) { return f(grid_x(i)); });

    OptResult r;
    r.evaluations = n;
    r.grid_best = best.value;
    r.value = best.value;
    r.argmax = {grid_x(best.index)};

    const double a = best.index == 0 ? lo : grid_x(best.index - 1);
    const double b = best.index + 1 == n ? hi : grid_x(best.index + 1);
    const auto line = golden_section(f, a, b, options.tol, r.evaluations);
    if (line.value > r.value) {
        r.value = line.value;
        r.argmax = {line.x};
    }
    return r;
}

OptResult maximize_3d(const std::function<double(const UnitaryParams &)> &f,
                      const Options3D &options) {
    if (options.grid_per_dim < 2 || options.starts < 1 || !(options.tol > 0.0) ||
        options.max_sweeps < 1) {
        throw ValidationError("invalid maximize_3d configuration");
    }
    const auto g = static_cast<std::size_t>(options.grid_per_dim);
    const std::size_t total = g * g * g;
    auto grid_point = [&](std::size_t flat) -> Point {
        const std::size_t k = flat % g;
        const std::size_t j = (flat / g) % g;
        const std::size_t i = flat / (g * g);
        const double theta =
            i + 1 == g ? kPi : static_cast<double>(i) * kPi / static_cast<double>(g - 1);
        return {theta, static_cast<double>(j) * kTwoPi / static_cast<double>(g),
                static_cast<double>(k) * kTwoPi / static_cast<double>(g)};
    };

    std::vector<double> values(total);
    kernels::parallel::evaluate(
        total, [&](std::size_t i) { return f(to_params(grid_point(i))); }, values);
    const auto seeds =
        kernels::top_k(values, static_cast<std::size_t>(options.starts));

    std::vector<StartResult> results(seeds.size());
    const auto count = static_cast<std::int64_t>(seeds.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t s = 0; s < count; ++s) {
        const auto idx = seeds[static_cast<std::size_t>(s)];
        results[static_cast<std::size_t>(s)] =
            refine_from(f, grid_point(idx), values[idx], options);
    }

    OptResult r;
    r.grid_best = values[seeds.front()];
    r.evaluations = total;
    const StartResult *best = nullptr;
    for (const auto &sr : results) {
        r.evaluations += sr.evaluations;
        if (best == nullptr || sr.value > best->value ||
            (sr.value == best->value && sr.x < best->x)) {
            best = &sr;
        }
    }
    r.value = best->value;
    r.argmax = {best->x.begin(), best->x.end()};
    return r;
}

} // namespace ewl::optimize
