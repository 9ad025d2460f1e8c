#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ewl/kernels.hpp"
#include "support.hpp"

using namespace ewl;

namespace {

std::vector<Amplitude> random_amps(int m, std::mt19937_64 &rng) {
    const auto s = test::random_state(m, rng);
    return {s.amplitudes().begin(), s.amplitudes().end()};
}

} // namespace

TEST_SUITE("kernels") {

// The parallel kernels must agree exactly with the serial reference, both
// below and above the threading threshold.
TEST_CASE("gate kernel: serial and parallel are bit-identical") {
    std::mt19937_64 rng(21);
    for (int m : {3, 12, 15}) {
        const auto g = build_gate(test::random_params(rng)).matrix();
        for (int bit : {0, m / 2, m - 1}) {
            auto a = random_amps(m, rng);
            auto b = a;
            kernels::serial::apply_gate(a, bit, g);
            kernels::parallel::apply_gate(b, bit, g);
            REQUIRE(a == b);
        }
    }
}

TEST_CASE("entangler kernel: serial and parallel are bit-identical") {
    std::mt19937_64 rng(22);
    for (int m : {2, 12, 15}) {
        const auto in = random_amps(m, rng);
        for (bool dagger : {false, true}) {
            std::vector<Amplitude> a(in.size());
            std::vector<Amplitude> b(in.size());
            kernels::serial::apply_entangler(in, a, dagger);
            kernels::parallel::apply_entangler(in, b, dagger);
            REQUIRE(a == b);
        }
    }
}

TEST_CASE("grid kernels: serial and parallel agree") {
    const std::size_t count = 50'000;
    const kernels::IndexFunction f = [](std::size_t i) {
        return std::sin(0.001 * static_cast<double>(i)) * std::cos(0.37 * static_cast<double>(i));
    };
    std::vector<double> a(count);
    std::vector<double> b(count);
    kernels::serial::evaluate(count, f, a);
    kernels::parallel::evaluate(count, f, b);
    CHECK(a == b);

    const auto sa = kernels::serial::argmax(count, f);
    const auto pa = kernels::parallel::argmax(count, f);
    CHECK(sa.index == pa.index);
    CHECK(sa.value == pa.value);
    CHECK(kernels::serial::max_value(count, f) == kernels::parallel::max_value(count, f));
    CHECK(kernels::serial::min_value(count, f) == kernels::parallel::min_value(count, f));
}

TEST_CASE("argmax ties go to the smallest index") {
    const kernels::IndexFunction plateau = [](std::size_t i) {
        return (i % 1000 == 7) ? 1.0 : 0.0;
    };
    for (std::size_t count : {std::size_t{10}, std::size_t{100'000}}) {
        CHECK(kernels::serial::argmax(count, plateau).index == 7);
        CHECK(kernels::parallel::argmax(count, plateau).index == 7);
    }
    const kernels::IndexFunction flat = [](std::size_t) { return 3.0; };
    CHECK(kernels::parallel::argmax(100'000, flat).index == 0);
}

TEST_CASE("top_k orders best first with index tie-break") {
    const std::vector<double> v{1.0, 5.0, 3.0, 5.0, 2.0};
    CHECK(kernels::top_k(v, 3) == std::vector<std::size_t>{1, 3, 2});
    CHECK(kernels::top_k(v, 10).size() == v.size());
    CHECK(kernels::top_k(v, 0).empty());
}

}
