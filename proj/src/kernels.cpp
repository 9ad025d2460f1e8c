#include "ewl/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <omp.h>

namespace ewl::kernels {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

inline bool better(double v, std::size_t i, const GridBest &b) {
    return v > b.value || (v == b.value && i < b.index);
}

inline void gate_pair(Amplitude *amps, std::size_t k, int bit,
                      const Gate::Matrix &g) {
    const std::size_t stride = std::size_t{1} << bit;
    const std::size_t i0 = ((k >> bit) << (bit + 1)) | (k & (stride - 1));
    const std::size_t i1 = i0 | stride;
    const Amplitude a0 = amps[i0];
    const Amplitude a1 = amps[i1];
    amps[i0] = g[0][0] * a0 + g[0][1] * a1;
    amps[i1] = g[1][0] * a0 + g[1][1] * a1;
}

inline Amplitude entangled(const Amplitude *in, std::size_t y, std::size_t mask,
                           Amplitude phase) {
    return (in[y] + phase * in[~y & mask]) * kInvSqrt2;
}

} // namespace

namespace serial {

void apply_gate(std::span<Amplitude> amps, int bit, const Gate::Matrix &g) {
    const std::size_t pairs = amps.size() / 2;
    for (std::size_t k = 0; k < pairs; ++k) {
        gate_pair(amps.data(), k, bit, g);
    }
}

void apply_entangler(std::span<const Amplitude> in, std::span<Amplitude> out,
                     bool dagger) {
    const std::size_t mask = in.size() - 1;
    const Amplitude phase{0.0, dagger ? -1.0 : 1.0};
    for (std::size_t y = 0; y < in.size(); ++y) {
        out[y] = entangled(in.data(), y, mask, phase);
    }
}

void evaluate(std::size_t count, const IndexFunction &f, std::span<double> out) {
    for (std::size_t i = 0; i < count; ++i) {
        out[i] = f(i);
    }
}

GridBest argmax(std::size_t count, const IndexFunction &f) {
    GridBest best{0, -std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < count; ++i) {
        const double v = f(i);
        if (better(v, i, best)) {
            best = {i, v};
        }
    }
    return best;
}

double max_value(std::size_t count, const IndexFunction &f) {
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count; ++i) {
        m = std::max(m, f(i));
    }
    return m;
}

double min_value(std::size_t count, const IndexFunction &f) {
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count; ++i) {
        m = std::min(m, f(i));
    }
    return m;
}

} // namespace serial

namespace parallel {

void apply_gate(std::span<Amplitude> amps, int bit, const Gate::Matrix &g) {
    const auto pairs = static_cast<std::int64_t>(amps.size() / 2);
    Amplitude *data = amps.data();
#pragma omp parallel for schedule(static) if (amps.size() >= kParallelThreshold)
    for (std::int64_t k = 0; k < pairs; ++k) {
        gate_pair(data, static_cast<std::size_t>(k), bit, g);
    }
}

void apply_entangler(std::span<const Amplitude> in, std::span<Amplitude> out,
                     bool dagger) {
    const std::size_t mask = in.size() - 1;
    const auto n = static_cast<std::int64_t>(in.size());
    const Amplitude phase{0.0, dagger ? -1.0 : 1.0};
    const Amplitude *src = in.data();
    Amplitude *dst = out.data();
#pragma omp parallel for schedule(static) if (in.size() >= kParallelThreshold)
    for (std::int64_t y = 0; y < n; ++y) {
        dst[y] = entangled(src, static_cast<std::size_t>(y), mask, phase);
    }
}

// Grid callbacks are typically expensive (a full simulation each), so these
// parallelize from the first element.

void evaluate(std::size_t count, const IndexFunction &f, std::span<double> out) {
    const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    }
}

GridBest argmax(std::size_t count, const IndexFunction &f) {
    GridBest best{0, -std::numeric_limits<double>::infinity()};
    const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel
    {
        GridBest local{0, -std::numeric_limits<double>::infinity()};
#pragma omp for schedule(dynamic, 16) nowait
        for (std::int64_t i = 0; i < n; ++i) {
            const auto idx = static_cast<std::size_t>(i);
            const double v = f(idx);
            if (better(v, idx, local)) {
                local = {idx, v};
            }
        }
#pragma omp critical(ewl_argmax_merge)
        if (better(local.value, local.index, best)) {
            best = local;
        }
    }
    return best;
}

double max_value(std::size_t count, const IndexFunction &f) {
    double m = -std::numeric_limits<double>::infinity();
    const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 16) reduction(max : m)
    for (std::int64_t i = 0; i < n; ++i) {
        m = std::max(m, f(static_cast<std::size_t>(i)));
    }
    return m;
}

double min_value(std::size_t count, const IndexFunction &f) {
    double m = std::numeric_limits<double>::infinity();
    const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 16) reduction(min : m)
    for (std::int64_t i = 0; i < n; ++i) {
        m = std::min(m, f(static_cast<std::size_t>(i)));
    }
    return m;
}

} // namespace parallel

std::vector<std::size_t> top_k(std::span<const double> values, std::size_t k) {
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    k = std::min(k, idx.size());
    auto order = [&](std::size_t a, std::size_t b) {
        return values[a] > values[b] || (values[a] == values[b] && a < b);
    };
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k),
                      idx.end(), order);
    idx.resize(k);
    return idx;
}

} // namespace ewl::kernels
