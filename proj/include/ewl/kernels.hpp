/**
 * @file
 * Data-parallel inner loops shared by the library.
 *
 * Every kernel exists twice: `serial::` is the straightforward reference
 * implementation and `parallel::` is the OpenMP version the library calls.
 * Both must produce bit-identical results; the test suite and the benchmark
 * compare them directly.
 */
#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ewl/qstate.hpp"

namespace ewl::kernels {

/// Loops shorter than this run single-threaded even in `parallel::`.
inline constexpr std::size_t kParallelThreshold = std::size_t{1} << 12;

/// Best grid entry. Ordering: larger value wins, ties go to the smaller index.
struct GridBest {
    std::size_t index = 0;
    double value = 0.0;
};

/// Index-to-value callback. Must be safe to call concurrently.
using IndexFunction = std::function<double(std::size_t)>;

namespace serial {

/// In-place 2x2 gate on the qubit at bit position `bit` (0 = LSB).
void apply_gate(std::span<Amplitude> amps, int bit, const Gate::Matrix &g);

/// out[y] = (in[y] + sign * i * in[~y]) / sqrt(2), sign = -1 for dagger.
void apply_entangler(std::span<const Amplitude> in, std::span<Amplitude> out,
                     bool dagger);

void evaluate(std::size_t count, const IndexFunction &f, std::span<double> out);
GridBest argmax(std::size_t count, const IndexFunction &f);
double max_value(std::size_t count, const IndexFunction &f);
double min_value(std::size_t count, const IndexFunction &f);

} // namespace serial

namespace parallel {

void apply_gate(std::span<Amplitude> amps, int bit, const Gate::Matrix &g);
void apply_entangler(std::span<const Amplitude> in, std::span<Amplitude> out,
                     bool dagger);

void evaluate(std::size_t count, const IndexFunction &f, std::span<double> out);
GridBest argmax(std::size_t count, const IndexFunction &f);
double max_value(std::size_t count, const IndexFunction &f);
double min_value(std::size_t count, const IndexFunction &f);

} // namespace parallel

/// Indices of the k largest values, ordered best first (ties: smaller index).
std::vector<std::size_t> top_k(std::span<const double> values, std::size_t k);

} // namespace ewl::kernels
