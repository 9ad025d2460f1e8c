/**
 * @file
 * The EWL protocol: |psi_f> = J^dagger (U_1 (x) ... (x) U_m) J |0...0>, with
 * outcomes or payoffs attached to computational basis states.
 *
 * Direct simulation (final_state / expected_payoff) is the ground truth.
 * The closed-form payoff functions below are independent routes that the
 * test suite checks against it.
 */
#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "ewl/decision.hpp"
#include "ewl/qstate.hpp"

namespace ewl {

/// theta in [0, pi], alpha and beta in [0, 2 pi).
struct UnitaryParams {
    double theta = 0.0;
    double alpha = 0.0;
    double beta = 0.0;

    /// Throws ValidationError when a parameter is outside its range.
    void validate() const;
};

/// U(theta, alpha, beta):
///   U|0> = cos(theta/2) e^{i alpha}|0> + sin(theta/2) e^{i(pi/2 - beta)}|1>
///   U|1> = sin(theta/2) e^{i(pi/2 + beta)}|0> + cos(theta/2) e^{-i alpha}|1>
Gate build_gate(const UnitaryParams &params);

/// A quantum decision problem: payoffs or outcome labels on all 2^m basis states.
class EwlGame {
  public:
    static EwlGame with_payoffs(std::vector<double> payoffs);
    static EwlGame with_labels(std::vector<decision::Label> labels);

    [[nodiscard]] int qubits() const noexcept { return qubits_; }
    [[nodiscard]] bool has_payoffs() const noexcept { return !payoffs_.empty(); }
    [[nodiscard]] const std::vector<double> &payoffs() const noexcept { return payoffs_; }
    [[nodiscard]] const std::vector<decision::Label> &labels() const noexcept {
        return labels_;
    }

  private:
    EwlGame() = default;
    int qubits_ = 0;
    std::vector<double> payoffs_;
    std::vector<decision::Label> labels_;
};

/// n-tuple driver on n+1 qubits: lambda on |1...10>, 1 on |1...1>, 0 elsewhere.
EwlGame driver_game(int n, double lambda);

/// Outcome grouping for the n-tuple tree: a basis state whose leading run of
/// ones has length t <= n carries o{t+1}; |1...1> carries o{n+2}.
/// Labels match decision::n_tuple_outcomes(n).
EwlGame n_tuple_outcome_game(int n);

/// Two qubits with |kl> labelled labels[2k + l].
EwlGame two_stage_game(const std::array<decision::Label, 4> &labels = {"o00", "o01",
                                                                       "o10", "o11"});

StateVector final_state(int qubits, std::span<const Gate> gates);
StateVector final_state(const EwlGame &game, std::span<const Gate> gates);

/// sum_y payoff(y) |<y|psi_f>|^2. Throws for label-valued games.
double expected_payoff(const EwlGame &game, std::span<const Gate> gates);

/// Probability per label, summing the basis states that carry it.
decision::OutcomeDistribution outcome_distribution_ewl(const EwlGame &game,
                                                       std::span<const Gate> gates);

/// Simulated driver payoff with the same U(params) on each of the n+1 qubits.
double simulated_driver_payoff(int n, double lambda, const UnitaryParams &params);

/// <y|psi_f> for U(theta,0,0) on every qubit: i^{r(y)} cos^{r(~y)}(theta/2) sin^{r(y)}(theta/2).
Amplitude amplitude_one_param(BasisIndex y, double theta, int qubits);

/// lambda cos^2(theta/2) sin^{2n}(theta/2) + sin^{2(n+1)}(theta/2).
double payoff_one_param(int n, double lambda, double theta);

/// Closed-form driver payoff for U(theta, alpha, beta) on all n+1 qubits.
double payoff_three_param(int n, double lambda, const UnitaryParams &params);

/// sum_{kl} o_kl |<kl|psi_f>|^2 for U(p1) (x) U(p2), by simulation.
double payoff_two_qubit_general(const std::array<double, 4> &payoffs,
                                const UnitaryParams &p1, const UnitaryParams &p2);

/// |<01|psi_f> - <10|psi_f>| for U(params) on both of two qubits.
double eta_symmetry_check(const UnitaryParams &params);

} // namespace ewl
