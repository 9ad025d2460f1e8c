/**
 * @file
 * Deterministic bounded maximization without derivatives.
 *
 * maximize_1d: best point of a uniform grid, then golden-section refinement
 * inside the neighbouring grid cells.
 *
 * maximize_3d: grid scan over theta in [0, pi] x alpha, beta in [0, 2 pi),
 * then coordinate-wise golden-section sweeps from the best `starts` grid
 * points. alpha and beta are periodic; theta is clamped.
 */
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "ewl/protocol.hpp"

namespace ewl::optimize {

struct OptResult {
    std::vector<double> argmax;
    double value = 0.0;
    std::size_t evaluations = 0;
    /// Best value seen during the grid scan; value >= grid_best always.
    double grid_best = 0.0;
};

struct Options1D {
    int grid_points = 257;
    double tol = 1e-8;
};

struct Options3D {
    int grid_per_dim = 33;
    int starts = 8;
    double tol = 1e-8;
    int max_sweeps = 500;
};

/// f must be finite on [lo, hi] and safe to call concurrently.
OptResult maximize_1d(const std::function<double(double)> &f, double lo, double hi,
                      const Options1D &options = {});

/// f must be finite on the parameter box and safe to call concurrently.
OptResult maximize_3d(const std::function<double(const UnitaryParams &)> &f,
                      const Options3D &options = {});

/// Maps any real angle onto [0, 2 pi).
double wrap_angle(double x);

} // namespace ewl::optimize
