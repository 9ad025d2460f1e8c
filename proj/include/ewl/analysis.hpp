/**
 * @file
 * Constructive checks of the three outcome/payoff results for EWL decision
 * problems, plus the closed-form classical optimum of the n-tuple driver.
 *
 * Every `*_verify` / `*_report` function returns a Report whose entries carry
 * the inputs, expected and observed values, and the deviation, so the CLI
 * and the acceptance suite can print or serialize them unchanged.
 */
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "ewl/decision.hpp"
#include "ewl/optimize.hpp"
#include "ewl/protocol.hpp"
#include "ewl/report.hpp"

namespace ewl::analysis {

// --- Pure unitary strategies for mixed strategies (two-stage problem) ---

enum class Prop1Branch { general, diagonal_segment, antidiagonal_segment };

const char *to_string(Prop1Branch b);

struct Prop1Solution {
    UnitaryParams params1;
    bool gate2_is_identity = true;
    Prop1Branch branch = Prop1Branch::general;
};

/// Gate parameters on qubit 1 (qubit 2 gets the identity) reproducing the
/// mixed outcome p00 o00 + p01 o01 + p10 o10 + p11 o11. Angles come from the
/// principal arccos, so alpha and beta lie in [0, pi/2].
Prop1Solution prop1_solve(const std::array<double, 4> &p);

std::array<Gate, 2> prop1_gates(const Prop1Solution &s);

/// Max-norm distance between the EWL outcome of prop1_solve(p) and the
/// classical outcome of the mixed strategy p on the two-stage tree.
double prop1_deviation(const std::array<double, 4> &p);

Report prop1_verify(int sample_count, std::uint64_t seed);

// --- One-parameter EWL realization of the n-tuple tree ---

Report prop2_verify(int n_max, int theta_grid_size);

// --- Strict quantum advantage for the n-tuple driver ---

struct Prop3Params {
    double theta = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double lambda0 = 0.0;
};

/// Explicit strategy and payoff threshold for n >= 2.
Prop3Params prop3_params(int n);

struct Prop3Certificate {
    int n = 0;
    double theta = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double lambda0 = 0.0;
    double delta = 0.0;
    double lambda = 0.0;
    /// Simulated payoff of U(theta, alpha, beta) on all n+1 qubits.
    double quantum_payoff = 0.0;
    /// max(numerical 1D optimum, closed-form optimum).
    double classical_max = 0.0;
    double classical_numeric = 0.0;
    double classical_closed_form = 0.0;

    [[nodiscard]] double margin() const { return quantum_payoff - classical_max; }
    [[nodiscard]] bool dominates() const { return quantum_payoff > classical_max; }
};

inline constexpr double kDefaultDelta = 1.5;

/// lambda = delta * lambda0. For n = 1 the strategy is (pi/2, pi/4, 0) and
/// lambda0 = 2.
Prop3Certificate prop3_verify(int n, double delta = kDefaultDelta);

/// Certificates plus the intermediate inequalities of the dominance argument.
Report prop3_report(const std::vector<int> &ns, const std::vector<double> &deltas);

// --- Classical optimum ---

struct ClassicalOptimum {
    double p = 0.0;
    double value = 0.0;
};

/// argmax over p in [0,1] of (1-p)^n ((lambda-1) p + 1).
ClassicalOptimum classical_max_closed_form(int n, double lambda);

struct DriverOptimum {
    optimize::OptResult classical;
    ClassicalOptimum classical_closed;
    optimize::OptResult quantum;
    /// Direct simulation at quantum.argmax.
    double quantum_simulated = 0.0;
};

DriverOptimum driver_optimum(int n, double lambda,
                             const optimize::Options3D &options3d = {},
                             const optimize::Options1D &options1d = {});

// --- Cross-checks ---

/// payoff_one_param vs simulation vs classical behavioral payoff, n <= n_max.
Report classical_embedding(int n_max, int theta_grid_size);

/// eta_01 = eta_10 over seeded random parameter triples.
Report eta_symmetry(int sample_count, std::uint64_t seed);

/// Imperfect-recall classification and the mixed/behavioral gap on the
/// two-stage tree. When `extra` is given its classification is reported too.
Report recall_report(const std::optional<decision::DecisionProblem> &extra = {});

/// Every printed closed form checked against simulation (n <= n_max).
Report formula_ledger(int n_max, int sample_count, std::uint64_t seed);

/// Regression value of min_b max|O(b) - (o00 + o11)/2| on the two-stage tree.
inline constexpr double kTwoStageGap = 0.25;

} // namespace ewl::analysis
