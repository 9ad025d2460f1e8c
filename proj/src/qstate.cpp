#include "ewl/qstate.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "ewl/error.hpp"
#include "ewl/kernels.hpp"

namespace ewl {

namespace {

bool finite(Amplitude a) { return std::isfinite(a.real()) && std::isfinite(a.imag()); }

void check_qubits(int qubits) {
    if (qubits < 1 || qubits > kMaxQubits) {
        throw ValidationError("qubit count must be in [1, " +
                              std::to_string(kMaxQubits) + "], got " +
                              std::to_string(qubits));
    }
}

void check_index(BasisIndex y, int qubits) {
    check_qubits(qubits);
    if (y >= (BasisIndex{1} << qubits)) {
        throw ValidationError("basis index " + std::to_string(y) +
                              " out of range for " + std::to_string(qubits) +
                              " qubits");
    }
}

} // namespace

Gate Gate::from_matrix(const Matrix &entries) {
    for (const auto &row : entries) {
        for (const auto &e : row) {
            if (!finite(e)) {
                throw ValidationError("gate entry is not finite");
            }
        }
    }
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            Amplitude sum = 0.0;
            for (int k = 0; k < 2; ++k) {
                sum += entries[r][k] * std::conj(entries[c][k]);
            }
            const double expected = r == c ? 1.0 : 0.0;
            if (std::abs(sum - expected) > kAmplitudeTolerance) {
                throw ValidationError("gate is not unitary");
            }
        }
    }
    return Gate(entries);
}

Gate Gate::identity() { return Gate({{{1.0, 0.0}, {0.0, 1.0}}}); }

Gate Gate::i_sigma_x() {
    const Amplitude i{0.0, 1.0};
    return Gate({{{0.0, i}, {i, 0.0}}});
}

Amplitude Gate::determinant() const noexcept {
    return m_[0][0] * m_[1][1] - m_[0][1] * m_[1][0];
}

StateVector StateVector::basis(int qubits, BasisIndex y) {
    check_index(y, qubits);
    std::vector<Amplitude> amps(std::size_t{1} << qubits);
    amps[y] = 1.0;
    return StateVector(qubits, std::move(amps));
}

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amps) {
    if (amps.size() < 2 || !std::has_single_bit(amps.size())) {
        throw ValidationError("amplitude count must be 2^m with m >= 1");
    }
    const int qubits = std::countr_zero(amps.size());
    check_qubits(qubits);
    double norm = 0.0;
    for (const auto &a : amps) {
        if (!finite(a)) {
            throw ValidationError("amplitude is not finite");
        }
        norm += std::norm(a);
    }
    if (std::abs(norm - 1.0) > kAmplitudeTolerance) {
        throw ValidationError("state is not normalized (norm^2 = " +
                              std::to_string(norm) + ")");
    }
    return StateVector(qubits, std::move(amps));
}

double StateVector::norm_squared() const {
    double s = 0.0;
    for (const auto &a : amps_) {
        s += std::norm(a);
    }
    return s;
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    for (std::size_t y = 0; y < amps_.size(); ++y) {
        p[y] = std::norm(amps_[y]);
    }
    return p;
}

StateVector apply_single_qubit_gate(const StateVector &state, int qubit_index,
                                    const Gate &gate) {
    if (qubit_index < 1 || qubit_index > state.qubits()) {
        throw ValidationError("qubit index " + std::to_string(qubit_index) +
                              " out of range [1, " +
                              std::to_string(state.qubits()) + "]");
    }
    std::vector<Amplitude> amps = state.amps_;
    kernels::parallel::apply_gate(amps, state.qubits() - qubit_index,
                                  gate.matrix());
    return StateVector(state.qubits(), std::move(amps));
}

StateVector apply_product(const StateVector &state, std::span<const Gate> gates) {
    if (gates.size() != static_cast<std::size_t>(state.qubits())) {
        throw ValidationError("expected " + std::to_string(state.qubits()) +
                              " gates, got " + std::to_string(gates.size()));
    }
    std::vector<Amplitude> amps = state.amps_;
    const int m = state.qubits();
    for (int q = 0; q < m; ++q) {
        kernels::parallel::apply_gate(amps, m - 1 - q,
                                      gates[static_cast<std::size_t>(q)].matrix());
    }
    return StateVector(m, std::move(amps));
}

StateVector apply_entangler(const StateVector &state, bool dagger) {
    std::vector<Amplitude> out(state.size());
    kernels::parallel::apply_entangler(state.amps_, out, dagger);
    return StateVector(state.qubits(), std::move(out));
}

Amplitude inner_product(const StateVector &a, const StateVector &b) {
    if (a.qubits() != b.qubits()) {
        throw ValidationError("inner product of states with " +
                              std::to_string(a.qubits()) + " and " +
                              std::to_string(b.qubits()) + " qubits");
    }
    Amplitude s = 0.0;
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t k = 0; k < x.size(); ++k) {
        s += std::conj(x[k]) * y[k];
    }
    return s;
}

int hamming_weight(BasisIndex y, int qubits) {
    check_index(y, qubits);
    return std::popcount(y);
}

BasisIndex bit_complement(BasisIndex y, int qubits) {
    check_index(y, qubits);
    const BasisIndex mask = (BasisIndex{1} << qubits) - 1;
    return ~y & mask;
}

} // namespace ewl
