/**
 * @file
 * Complex state vectors over m qubits, single-qubit gates and the structured
 * EWL entangler J = (I^{(x)m} + i X^{(x)m}) / sqrt(2).
 *
 * Basis index convention: qubit 1 is the most significant bit, so the label
 * y = (j_1 j_2 ... j_m)_2 reads left to right in qubit order.
 */
#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ewl {

using Amplitude = std::complex<double>;
using BasisIndex = std::uint64_t;

/// Absolute tolerance used for norm, unitarity and amplitude comparisons.
inline constexpr double kAmplitudeTolerance = 1e-12;

/// Largest register the library will allocate.
inline constexpr int kMaxQubits = 26;

/// A 2x2 unitary. Row-major: entry(r, c) = <r|G|c>.
class Gate {
  public:
    using Matrix = std::array<std::array<Amplitude, 2>, 2>;

    /// Throws ValidationError unless G G^dagger = I within 1e-12 entrywise
    /// and every entry is finite.
    static Gate from_matrix(const Matrix &entries);

    static Gate identity();
    /// i * sigma_x, the classical "flip" action.
    static Gate i_sigma_x();

    [[nodiscard]] const Matrix &matrix() const noexcept { return m_; }
    [[nodiscard]] Amplitude operator()(int row, int col) const {
        return m_[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
    }
    [[nodiscard]] Amplitude determinant() const noexcept;

  private:
    explicit Gate(const Matrix &entries) : m_(entries) {}
    Matrix m_;
};

class StateVector {
  public:
    /// |y> on m qubits.
    static StateVector basis(int qubits, BasisIndex y = 0);

    /// Validates length 2^m, finiteness and unit norm (within 1e-12).
    static StateVector from_amplitudes(std::vector<Amplitude> amps);

    [[nodiscard]] int qubits() const noexcept { return qubits_; }
    [[nodiscard]] std::size_t size() const noexcept { return amps_.size(); }
    [[nodiscard]] std::span<const Amplitude> amplitudes() const noexcept {
        return amps_;
    }
    [[nodiscard]] Amplitude operator[](BasisIndex y) const { return amps_.at(y); }

    [[nodiscard]] double norm_squared() const;
    /// |<y|psi>|^2 for every basis state.
    [[nodiscard]] std::vector<double> probabilities() const;

  private:
    StateVector(int qubits, std::vector<Amplitude> amps)
        : qubits_(qubits), amps_(std::move(amps)) {}

    friend StateVector apply_single_qubit_gate(const StateVector &, int,
                                               const Gate &);
    friend StateVector apply_entangler(const StateVector &, bool);
    friend StateVector apply_product(const StateVector &,
                                     std::span<const Gate>);

    int qubits_;
    std::vector<Amplitude> amps_;
};

/// Applies `gate` to qubit `qubit_index` (1-based, qubit 1 = MSB).
StateVector apply_single_qubit_gate(const StateVector &state, int qubit_index,
                                    const Gate &gate);

/// Applies one gate per qubit, gates[k] acting on qubit k+1.
StateVector apply_product(const StateVector &state, std::span<const Gate> gates);

/// J|psi> = (|psi> + i X^{(x)m}|psi>)/sqrt(2); with dagger the sign of i flips.
/// X^{(x)m} is a bit-complement permutation of the basis, so no dense
/// operator is built.
StateVector apply_entangler(const StateVector &state, bool dagger = false);

/// <a|b>, conjugate-linear in `a`.
Amplitude inner_product(const StateVector &a, const StateVector &b);

/// r(y): number of set bits among the low m bits of y.
int hamming_weight(BasisIndex y, int qubits);

/// y with all m bits flipped.
BasisIndex bit_complement(BasisIndex y, int qubits);

} // namespace ewl
