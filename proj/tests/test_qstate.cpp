#include <doctest.h>

#include <cmath>
#include <random>

#include "ewl/error.hpp"
#include "support.hpp"

using namespace ewl;

namespace {

// Dense (I + i X^{(x)m}) / sqrt(2), the oracle for the structured entangler.
std::vector<std::vector<Amplitude>> dense_entangler(int m) {
    const std::size_t dim = std::size_t{1} << m;
    std::vector<std::vector<Amplitude>> j(dim, std::vector<Amplitude>(dim));
    const double s = 1.0 / std::sqrt(2.0);
    for (std::size_t r = 0; r < dim; ++r) {
        j[r][r] += s;
        j[r][(dim - 1) ^ r] += Amplitude{0.0, s};
    }
    return j;
}

// Dense kron(G_1, ..., G_m), qubit 1 most significant.
std::vector<std::vector<Amplitude>> dense_product(const std::vector<Gate> &gates) {
    const int m = static_cast<int>(gates.size());
    const std::size_t dim = std::size_t{1} << m;
    std::vector<std::vector<Amplitude>> k(dim, std::vector<Amplitude>(dim, 1.0));
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            for (int q = 0; q < m; ++q) {
                const int shift = m - 1 - q;
                k[r][c] *= gates[static_cast<std::size_t>(q)]((r >> shift) & 1, (c >> shift) & 1);
            }
        }
    }
    return k;
}

std::vector<Amplitude> apply_dense(const std::vector<std::vector<Amplitude>> &mat,
                                   std::span<const Amplitude> v) {
    std::vector<Amplitude> out(v.size());
    for (std::size_t r = 0; r < v.size(); ++r) {
        for (std::size_t c = 0; c < v.size(); ++c) {
            out[r] += mat[r][c] * v[c];
        }
    }
    return out;
}

} // namespace

TEST_SUITE("qstate") {

TEST_CASE("basis states and validation") {
    const auto s = StateVector::basis(3, 5);
    CHECK(s.qubits() == 3);
    CHECK(s.size() == 8);
    CHECK(s[5] == Amplitude{1.0, 0.0});
    CHECK(s.norm_squared() == doctest::Approx(1.0));
    CHECK_THROWS_AS(StateVector::basis(0), ValidationError);
    CHECK_THROWS_AS(StateVector::basis(2, 4), ValidationError);
    CHECK_THROWS_AS(StateVector::basis(kMaxQubits + 1), ValidationError);

    CHECK_THROWS_AS(StateVector::from_amplitudes({1.0, 0.0, 0.0}), ValidationError);
    CHECK_THROWS_AS(StateVector::from_amplitudes({1.0, 1.0}), ValidationError);
    CHECK_THROWS_AS(StateVector::from_amplitudes({std::nan(""), 0.0}), ValidationError);
    CHECK_NOTHROW(StateVector::from_amplitudes({Amplitude{0.6, 0.0}, Amplitude{0.0, 0.8}}));
}

TEST_CASE("gates are validated as unitary") {
    Gate::Matrix bad{{{1.0, 0.0}, {0.0, 2.0}}};
    CHECK_THROWS_AS(Gate::from_matrix(bad), ValidationError);
    Gate::Matrix inf{{{INFINITY, 0.0}, {0.0, 1.0}}};
    CHECK_THROWS_AS(Gate::from_matrix(inf), ValidationError);

    std::mt19937_64 rng(11);
    for (int k = 0; k < 200; ++k) {
        const auto g = build_gate(test::random_params(rng));
        CHECK(std::abs(g.determinant() - 1.0) < 1e-12);
    }
    const auto x = Gate::i_sigma_x();
    CHECK(x(0, 1) == Amplitude{0.0, 1.0});
    CHECK(x(1, 0) == Amplitude{0.0, 1.0});
}

TEST_CASE("qubit 1 is the most significant bit") {
    const auto s = apply_single_qubit_gate(StateVector::basis(2, 0), 1, Gate::i_sigma_x());
    CHECK(std::abs(s[2] - Amplitude{0.0, 1.0}) < 1e-15);
    const auto t = apply_single_qubit_gate(StateVector::basis(2, 0), 2, Gate::i_sigma_x());
    CHECK(std::abs(t[1] - Amplitude{0.0, 1.0}) < 1e-15);
    CHECK_THROWS_AS(apply_single_qubit_gate(s, 3, Gate::identity()), ValidationError);
    CHECK_THROWS_AS(apply_single_qubit_gate(s, 0, Gate::identity()), ValidationError);
}

TEST_CASE("norm is preserved by every operation") {
    std::mt19937_64 rng(3);
    for (int m = 1; m <= 10; ++m) {
        auto s = test::random_state(m, rng);
        std::vector<Gate> gates;
        for (int q = 0; q < m; ++q) {
            gates.push_back(build_gate(test::random_params(rng)));
        }
        s = apply_entangler(s);
        CHECK(std::abs(s.norm_squared() - 1.0) < 1e-12);
        s = apply_product(s, gates);
        CHECK(std::abs(s.norm_squared() - 1.0) < 1e-12);
        s = apply_single_qubit_gate(s, 1 + m / 2, gates.back());
        CHECK(std::abs(s.norm_squared() - 1.0) < 1e-12);
        s = apply_entangler(s, true);
        CHECK(std::abs(s.norm_squared() - 1.0) < 1e-12);
    }
}

TEST_CASE("entangler followed by its dagger is the identity") {
    std::mt19937_64 rng(5);
    for (int m = 1; m <= 12; ++m) {
        for (int rep = 0; rep < 3; ++rep) {
            const auto s = test::random_state(m, rng);
            const auto back = apply_entangler(apply_entangler(s), true);
            CHECK(test::max_abs_diff(s, back) <= 1e-12);
            const auto back2 = apply_entangler(apply_entangler(s, true), false);
            CHECK(test::max_abs_diff(s, back2) <= 1e-12);
        }
    }
}

TEST_CASE("structured entangler equals the dense matrix") {
    std::mt19937_64 rng(8);
    for (int m = 1; m <= 4; ++m) {
        const auto j = dense_entangler(m);
        for (int rep = 0; rep < 5; ++rep) {
            const auto s = test::random_state(m, rng);
            const auto dense = apply_dense(j, s.amplitudes());
            const auto fast = apply_entangler(s);
            for (std::size_t y = 0; y < s.size(); ++y) {
                CHECK(std::abs(dense[y] - fast[y]) <= 1e-12);
            }
        }
    }
}

TEST_CASE("gate product equals the dense Kronecker product") {
    std::mt19937_64 rng(9);
    for (int m = 1; m <= 4; ++m) {
        std::vector<Gate> gates;
        for (int q = 0; q < m; ++q) {
            gates.push_back(build_gate(test::random_params(rng)));
        }
        const auto s = test::random_state(m, rng);
        const auto dense = apply_dense(dense_product(gates), s.amplitudes());
        const auto fast = apply_product(s, gates);
        for (std::size_t y = 0; y < s.size(); ++y) {
            CHECK(std::abs(dense[y] - fast[y]) <= 1e-12);
        }
    }
}

TEST_CASE("inner product") {
    std::mt19937_64 rng(1);
    const auto a = test::random_state(3, rng);
    CHECK(std::abs(inner_product(a, a) - 1.0) < 1e-12);
    const auto e0 = StateVector::basis(3, 0);
    CHECK(inner_product(e0, a) == a[0]);
    CHECK_THROWS_AS(inner_product(e0, StateVector::basis(2)), ValidationError);
}

TEST_CASE("hamming weight of y and its complement sum to m") {
    for (int m = 1; m <= 12; ++m) {
        for (BasisIndex y = 0; y < (BasisIndex{1} << m); ++y) {
            REQUIRE(hamming_weight(y, m) + hamming_weight(bit_complement(y, m), m) == m);
        }
    }
    CHECK(hamming_weight(0b1011, 4) == 3);
    CHECK(bit_complement(0b1011, 4) == 0b0100);
}

}
