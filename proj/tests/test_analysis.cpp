#include <doctest.h>

#include <cmath>
#include <random>

#include "ewl/analysis.hpp"
#include "ewl/error.hpp"
#include "support.hpp"

using namespace ewl;
using namespace ewl::analysis;
using test::kPi;

namespace {

// Quantum payoff minus classical maximum, derived independently with a
// numpy state-vector simulation and the closed-form classical optimum.
struct Margin {
    int n;
    double delta;
    double margin;
    double quantum;
};

constexpr Margin kFrozenMargins[] = {
    {2, 1.1, 0.770841533188, 3.3},
    {2, 1.5, 1.180215888008, 4.5},
    {2, 3.0, 2.692356994071, 9.0},
    {3, 1.1, 7.501730495879, 17.725},
    {3, 1.5, 10.303584766618, 24.125},
    {3, 3.0, 20.806105638103, 48.125},
    {4, 1.1, 1.017364526090, 71.746},
    {4, 1.5, 1.417619754503, 97.746},
    {4, 3.0, 2.917970176182, 195.246},
    {5, 1.1, 56.046302064146, 743.881297945251},
    {5, 1.5, 76.446328176346, 1014.281297945250},
    {5, 3.0, 152.946364075451, 2028.281297945246},
    {6, 1.1, 1.067534064099, 8555.007458621096},
    {6, 1.5, 1.467536165430, 11665.807458621102},
    {6, 3.0, 2.967539054735, 23331.307458621126},
};

bool has_check(const Report &r, const std::string &name) {
    for (const auto &c : r.checks) {
        if (c.name == name) {
            return true;
        }
    }
    return false;
}

} // namespace

TEST_SUITE("analysis") {

TEST_CASE("prop1: branches") {
    CHECK(prop1_solve({0.25, 0.25, 0.25, 0.25}).branch == Prop1Branch::general);
    CHECK(prop1_solve({0.3, 0.0, 0.0, 0.7}).branch == Prop1Branch::diagonal_segment);
    CHECK(prop1_solve({0.0, 0.75, 0.25, 0.0}).branch == Prop1Branch::antidiagonal_segment);
    CHECK(prop1_solve({1.0, 0.0, 0.0, 0.0}).branch == Prop1Branch::diagonal_segment);

    const auto uniform = prop1_solve({0.25, 0.25, 0.25, 0.25});
    CHECK(uniform.params1.theta == doctest::Approx(kPi / 2));
    CHECK(uniform.params1.alpha == doctest::Approx(kPi / 4));
    CHECK(uniform.params1.beta == doctest::Approx(kPi / 4));
    CHECK(uniform.gate2_is_identity);

    const auto anti = prop1_solve({0.0, 0.75, 0.25, 0.0});
    CHECK(anti.params1.theta == doctest::Approx(kPi));
    CHECK(std::pow(std::cos(anti.params1.beta), 2) == doctest::Approx(0.25));
}

TEST_CASE("prop1: outcome equivalence on boundary and random inputs") {
    const std::array<double, 4> cases[] = {
        {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1},
        {0.5, 0, 0, 0.5}, {0, 0.5, 0.5, 0}, {0.5, 0.5, 0, 0}, {0, 0, 0.5, 0.5},
        {0.5, 0, 0.5, 0}, {0.1, 0.2, 0.3, 0.4}, {1 - 3e-15, 1e-15, 1e-15, 1e-15},
    };
    for (const auto &p : cases) {
        CHECK(prop1_deviation(p) <= 1e-9);
    }
    std::mt19937_64 rng(51);
    std::exponential_distribution<double> e(1.0);
    for (int k = 0; k < 300; ++k) {
        std::array<double, 4> p{e(rng), e(rng), e(rng), e(rng)};
        const double s = p[0] + p[1] + p[2] + p[3];
        for (auto &x : p) {
            x /= s;
        }
        REQUIRE(prop1_deviation(p) <= 1e-9);
    }
}

TEST_CASE("prop1: invalid input") {
    CHECK_THROWS_AS(prop1_solve({0.5, 0.5, 0.5, 0.0}), ValidationError);
    CHECK_THROWS_AS(prop1_solve({-0.1, 0.5, 0.5, 0.1}), ValidationError);
    CHECK_THROWS_AS(prop1_solve({NAN, 0.5, 0.5, 0.0}), ValidationError);
}

TEST_CASE("prop1 and prop2 reports pass") {
    const auto r1 = prop1_verify(200, 7);
    CHECK(r1.all_pass());
    CHECK(r1.max_deviation() <= 1e-9);
    const auto r2 = prop2_verify(4, 41);
    CHECK(r2.all_pass());
}

TEST_CASE("prop3: strategy parameters") {
    const auto p = prop3_params(3);
    CHECK(p.theta == doctest::Approx(2 * kPi / 3));
    CHECK(p.alpha == doctest::Approx(9 * kPi / 16));
    CHECK(p.beta == doctest::Approx(3 * kPi / 16));
    CHECK(p.lambda0 == doctest::Approx(256.0 / 3.0));
    CHECK_THROWS_AS(prop3_params(1), ValidationError);
    // chi switches on exactly when n = 3 mod 4.
    CHECK(prop3_params(7).beta == doctest::Approx(3 * kPi / (2 * 48)));
    CHECK(prop3_params(6).beta == doctest::Approx(kPi / (2 * 35)));
}

TEST_CASE("prop3: frozen margins") {
    for (const auto &m : kFrozenMargins) {
        CAPTURE(m.n);
        CAPTURE(m.delta);
        const auto c = prop3_verify(m.n, m.delta);
        CHECK(c.dominates());
        CHECK(c.margin() > 0.0);
        CHECK(c.margin() == doctest::Approx(m.margin).epsilon(1e-6));
        CHECK(c.quantum_payoff == doctest::Approx(m.quantum).epsilon(1e-9));
    }
}

TEST_CASE("prop3: n = 1 certificate") {
    const auto c = prop3_verify(1, kDefaultDelta);
    CHECK(c.lambda == doctest::Approx(3.0));
    CHECK(c.quantum_payoff == doctest::Approx(1.5));
    CHECK(c.dominates());
}

TEST_CASE("prop3 report passes") {
    CHECK(prop3_report({2, 3, 7, 8}, {1.1, 2.0}).all_pass());
}

TEST_CASE("classical closed form") {
    const auto a = classical_max_closed_form(1, 4.0);
    CHECK(a.p == doctest::Approx(1.0 / 3.0));
    CHECK(a.value == doctest::Approx(4.0 / 3.0));
    const auto b = classical_max_closed_form(3, 20.0);
    CHECK(b.p == doctest::Approx(4.0 / 19.0));
    CHECK(b.value == doctest::Approx(16875.0 / 6859.0).epsilon(1e-14));
    // Below the threshold the lodge (p = 0) is optimal.
    CHECK(classical_max_closed_form(2, 3.0).p == 0.0);
    CHECK(classical_max_closed_form(1, 0.5).value == 1.0);
}

TEST_CASE("closed-form classical value dominates the theta grid") {
    for (int n = 1; n <= 6; ++n) {
        for (double lambda : {0.5, 1.0, 2.0, 4.0, 20.0, 100.0}) {
            const double best = classical_max_closed_form(n, lambda).value;
            for (int k = 0; k <= 400; ++k) {
                REQUIRE(payoff_one_param(n, lambda, kPi * k / 400.0) <= best + 1e-9);
            }
        }
    }
}

TEST_CASE("driver optimum") {
    const auto o = driver_optimum(3, 20.0);
    CHECK(o.quantum.value >= 5.0 - 1e-6);
    CHECK(std::abs(o.quantum_simulated - o.quantum.value) <= 1e-9);
    CHECK(std::abs(o.classical.value - 16875.0 / 6859.0) <= 1e-6);
}

TEST_CASE("cross-check reports") {
    CHECK(classical_embedding(4, 41).all_pass());
    CHECK(eta_symmetry(50, 3).all_pass());
    const auto recall = recall_report();
    CHECK(recall.all_pass());
    CHECK(has_check(recall, "every behavioral outcome is a mixed outcome"));

    const auto ledger = formula_ledger(3, 100, 5);
    CHECK(ledger.all_pass());
    bool documented = false;
    for (const auto &c : ledger.checks) {
        if (!c.note.empty() && c.deviation > 1e-3) {
            documented = true;
        }
    }
    CHECK(documented);
}

TEST_CASE("report serialization keeps key order") {
    Report r{"demo", {}};
    r.add(Check::numeric("x", {{"n", 1}}, 1.0, 1.0 + 1e-12, 1e-9));
    const auto j = r.to_json();
    std::vector<std::string> keys;
    for (const auto &[k, v] : j["checks"][0].items()) {
        keys.push_back(k);
    }
    CHECK(keys == std::vector<std::string>{"check", "inputs", "expected", "actual",
                                           "deviation", "pass"});
    CHECK(j["pass"] == true);
    CHECK(r.to_csv().rfind("check,inputs,expected,actual,deviation,pass,note\n", 0) == 0);
}

}
