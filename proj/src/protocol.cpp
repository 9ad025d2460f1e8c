#include "ewl/protocol.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <numbers>

#include "ewl/error.hpp"

namespace ewl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// i^k for integer k >= 0.
Amplitude i_pow(int k) {
    switch (k & 3) {
    case 0:
        return {1.0, 0.0};
    case 1:
        return {0.0, 1.0};
    case 2:
        return {-1.0, 0.0};
    default:
        return {0.0, -1.0};
    }
}

void check_n(int n) {
    if (n < 1) {
        throw ValidationError("n must be >= 1, got " + std::to_string(n));
    }
    if (n + 1 > kMaxQubits) {
        throw ValidationError("n too large for state-vector simulation");
    }
}

int qubits_for(std::size_t states) {
    if (states < 2 || !std::has_single_bit(states)) {
        throw ValidationError("an EWL game needs 2^m entries with m >= 1");
    }
    const int m = std::countr_zero(states);
    if (m > kMaxQubits) {
        throw ValidationError("too many qubits");
    }
    return m;
}

// Length of the run of ones starting at the most significant bit.
int leading_ones(BasisIndex y, int qubits) {
    int t = 0;
    for (int bit = qubits - 1; bit >= 0 && ((y >> bit) & 1U); --bit) {
        ++t;
    }
    return t;
}

} // namespace

void UnitaryParams::validate() const {
    if (!(theta >= 0.0 && theta <= kPi)) {
        throw ValidationError("theta must lie in [0, pi], got " + std::to_string(theta));
    }
    if (!(alpha >= 0.0 && alpha < kTwoPi)) {
        throw ValidationError("alpha must lie in [0, 2pi), got " + std::to_string(alpha));
    }
    if (!(beta >= 0.0 && beta < kTwoPi)) {
        throw ValidationError("beta must lie in [0, 2pi), got " + std::to_string(beta));
    }
}

Gate build_gate(const UnitaryParams &params) {
    params.validate();
    const double c = std::cos(params.theta / 2.0);
    const double s = std::sin(params.theta / 2.0);
    Gate::Matrix m;
    m[0][0] = c * std::polar(1.0, params.alpha);
    m[1][1] = c * std::polar(1.0, -params.alpha);
    m[1][0] = s * std::polar(1.0, kPi / 2.0 - params.beta);
    m[0][1] = s * std::polar(1.0, kPi / 2.0 + params.beta);
    return Gate::from_matrix(m);
}

EwlGame EwlGame::with_payoffs(std::vector<double> payoffs) {
    EwlGame g;
    g.qubits_ = qubits_for(payoffs.size());
    for (double p : payoffs) {
        if (!std::isfinite(p)) {
            throw ValidationError("payoff is not finite");
        }
    }
    g.payoffs_ = std::move(payoffs);
    return g;
}

EwlGame EwlGame::with_labels(std::vector<decision::Label> labels) {
    EwlGame g;
    g.qubits_ = qubits_for(labels.size());
    g.labels_ = std::move(labels);
    return g;
}

EwlGame driver_game(int n, double lambda) {
    check_n(n);
    if (!std::isfinite(lambda)) {
        throw ValidationError("lambda must be finite");
    }
    const int m = n + 1;
    std::vector<double> payoffs(std::size_t{1} << m, 0.0);
    payoffs[payoffs.size() - 1] = 1.0;
    payoffs[payoffs.size() - 2] = lambda;
    return EwlGame::with_payoffs(std::move(payoffs));
}

EwlGame n_tuple_outcome_game(int n) {
    check_n(n);
    const int m = n + 1;
    std::vector<decision::Label> labels(std::size_t{1} << m);
    for (BasisIndex y = 0; y < labels.size(); ++y) {
        labels[y] = "o" + std::to_string(leading_ones(y, m) + 1);
    }
    return EwlGame::with_labels(std::move(labels));
}

EwlGame two_stage_game(const std::array<decision::Label, 4> &labels) {
    return EwlGame::with_labels({labels.begin(), labels.end()});
}

StateVector final_state(int qubits, std::span<const Gate> gates) {
    if (gates.size() != static_cast<std::size_t>(qubits)) {
        throw ValidationError("expected one gate per qubit (" + std::to_string(qubits) +
                              "), got " + std::to_string(gates.size()));
    }
    auto psi = apply_entangler(StateVector::basis(qubits, 0), false);
    psi = apply_product(psi, gates);
    return apply_entangler(psi, true);
}

StateVector final_state(const EwlGame &game, std::span<const Gate> gates) {
    return final_state(game.qubits(), gates);
}

double expected_payoff(const EwlGame &game, std::span<const Gate> gates) {
    if (!game.has_payoffs()) {
        throw ValidationError("game carries outcome labels; use outcome_distribution_ewl");
    }
    const auto psi = final_state(game, gates);
    const auto amps = psi.amplitudes();
    double e = 0.0;
    for (std::size_t y = 0; y < amps.size(); ++y) {
        e += game.payoffs()[y] * std::norm(amps[y]);
    }
    return e;
}

decision::OutcomeDistribution outcome_distribution_ewl(const EwlGame &game,
                                                       std::span<const Gate> gates) {
    if (game.has_payoffs()) {
        throw ValidationError("game carries payoffs, not outcome labels");
    }
    const auto probs = final_state(game, gates).probabilities();
    std::map<decision::Label, double> out;
    for (std::size_t y = 0; y < probs.size(); ++y) {
        out[game.labels()[y]] += probs[y];
    }
    return decision::OutcomeDistribution::from_map(std::move(out));
}

double simulated_driver_payoff(int n, double lambda, const UnitaryParams &params) {
    const auto game = driver_game(n, lambda);
    const std::vector<Gate> gates(static_cast<std::size_t>(n + 1), build_gate(params));
    return expected_payoff(game, gates);
}

Amplitude amplitude_one_param(BasisIndex y, double theta, int qubits) {
    const int r = hamming_weight(y, qubits);
    const int r_bar = qubits - r;
    return i_pow(r) * std::pow(std::cos(theta / 2.0), r_bar) *
           std::pow(std::sin(theta / 2.0), r);
}

double payoff_one_param(int n, double lambda, double theta) {
    if (n < 1) {
        throw ValidationError("n must be >= 1");
    }
    const double c2 = std::pow(std::cos(theta / 2.0), 2);
    const double s2 = std::pow(std::sin(theta / 2.0), 2);
    return lambda * c2 * std::pow(s2, n) + std::pow(s2, n + 1);
}

double payoff_three_param(int n, double lambda, const UnitaryParams &params) {
    if (n < 1) {
        throw ValidationError("n must be >= 1");
    }
    const double c = std::cos(params.theta / 2.0);
    const double s = std::sin(params.theta / 2.0);
    const double a = params.alpha;
    const double b = params.beta;
    const double dn = n;
    const Amplitude home =
        Amplitude{0.0, 1.0} * std::pow(c, n) * s * std::sin(dn * a - b) +
        i_pow(n) * c * std::pow(s, n) * std::cos(a - dn * b);
    const Amplitude lodge = std::pow(c, n + 1) * std::sin((dn + 1.0) * a) +
                            i_pow(n + 1) * std::pow(s, n + 1) * std::cos((dn + 1.0) * b);
    return lambda * std::norm(home) + std::norm(lodge);
}

double payoff_two_qubit_general(const std::array<double, 4> &payoffs,
                                const UnitaryParams &p1, const UnitaryParams &p2) {
    const auto game = EwlGame::with_payoffs({payoffs.begin(), payoffs.end()});
    const std::array<Gate, 2> gates{build_gate(p1), build_gate(p2)};
    return expected_payoff(game, gates);
}

double eta_symmetry_check(const UnitaryParams &params) {
    const Gate u = build_gate(params);
    const std::array<Gate, 2> gates{u, u};
    const auto psi = final_state(2, gates);
    return std::abs(psi[0b01] - psi[0b10]);
}

} // namespace ewl
