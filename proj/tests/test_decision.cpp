#include <doctest.h>

#include <cmath>
#include <random>

#include "ewl/decision.hpp"
#include "ewl/error.hpp"

using namespace ewl;
using namespace ewl::decision;

namespace {

MixedStrategy random_mixed(const DecisionProblem &p, std::mt19937_64 &rng) {
    std::exponential_distribution<double> e(1.0);
    const auto pures = pure_strategies(p);
    std::vector<double> w(pures.size());
    double sum = 0.0;
    for (auto &x : w) {
        x = e(rng);
        sum += x;
    }
    MixedStrategy m;
    for (std::size_t k = 0; k < pures.size(); ++k) {
        m.weights.emplace_back(pures[k], w[k] / sum);
    }
    return m;
}

// Random tree of depth <= 3 with 2 or 3 actions per node and singleton
// information sets (so it has perfect recall).
DecisionProblem random_perfect_recall_tree(std::mt19937_64 &rng) {
    std::uniform_int_distribution<int> branching(2, 3);
    std::bernoulli_distribution expand(0.6);
    std::vector<History> histories{{}};
    std::vector<History> frontier{{}};
    std::vector<std::vector<History>> cells;
    std::map<History, Label> labels;
    int next_label = 0;
    while (!frontier.empty()) {
        const History h = frontier.back();
        frontier.pop_back();
        if (h.empty() || (h.size() < 3 && expand(rng))) {
            cells.push_back({h});
            const int k = branching(rng);
            for (int a = 0; a < k; ++a) {
                History c = h;
                c.push_back(a);
                histories.push_back(c);
                frontier.push_back(c);
            }
        } else {
            labels[h] = "z" + std::to_string(next_label++ % 4);
        }
    }
    return DecisionProblem::create(histories, labels, cells);
}

// Conditional-probability behavioral strategy of a mixed strategy.
BehavioralStrategy kuhn_behavioral(const DecisionProblem &p, const MixedStrategy &m) {
    BehavioralStrategy b;
    for (std::size_t c = 0; c < p.info_sets().size(); ++c) {
        const std::size_t h = p.info_sets()[c].front();
        const History &path = p.histories()[h];
        const auto &acts = p.actions(c);
        std::vector<double> local(acts.size(), 0.0);
        double reach = 0.0;
        for (const auto &[pure, w] : m.weights) {
            // Pure strategy reaches h when it plays h's actions along the path.
            std::size_t node = 0;
            bool ok = true;
            for (int a : path) {
                if (pure.choice[p.info_set_of(node)] != a) {
                    ok = false;
                    break;
                }
                node = p.child(node, a);
            }
            if (!ok) {
                continue;
            }
            reach += w;
            const int a = pure.choice[c];
            local[static_cast<std::size_t>(
                std::find(acts.begin(), acts.end(), a) - acts.begin())] += w;
        }
        for (auto &x : local) {
            x = reach > 0.0 ? x / reach : 1.0 / static_cast<double>(acts.size());
        }
        b.local.push_back(local);
    }
    return b;
}

double total(const OutcomeDistribution &d) {
    double s = 0.0;
    for (const auto &[l, p] : d.probabilities()) {
        s += p;
    }
    return s;
}

} // namespace

TEST_SUITE("decision") {

TEST_CASE("problem validation") {
    // Not prefix-closed: (0,0) without (0).
    CHECK_THROWS_AS(DecisionProblem::create({{}, {0, 0}, {1}}, {{{0, 0}, "a"}, {{1}, "b"}},
                                            {{{}}}),
                    ValidationError);
    // Root missing from the partition.
    CHECK_THROWS_AS(DecisionProblem::create({{}, {0}, {1}}, {{{0}, "a"}, {{1}, "b"}}, {}),
                    ValidationError);
    // Terminal history inside an information set.
    CHECK_THROWS_AS(DecisionProblem::create({{}, {0}, {1}}, {{{0}, "a"}, {{1}, "b"}},
                                            {{{}, {0}}}),
                    ValidationError);
    // Missing terminal label.
    CHECK_THROWS_AS(DecisionProblem::create({{}, {0}, {1}}, {{{0}, "a"}}, {{{}}}),
                    ValidationError);
    // Histories in one cell with different action sets.
    CHECK_THROWS_AS(DecisionProblem::create({{}, {0}, {1}, {0, 0}, {0, 1}, {1, 0}},
                                            {{{0, 0}, "a"}, {{0, 1}, "b"}, {{1, 0}, "c"}},
                                            {{{}}, {{0}, {1}}}),
                    ValidationError);
    // Payoffs must cover every label.
    CHECK_THROWS_AS(DecisionProblem::create({{}, {0}, {1}}, {{{0}, "a"}, {{1}, "b"}},
                                            {{{}}}, std::map<Label, double>{{"a", 1.0}}),
                    ValidationError);
}

TEST_CASE("two-stage problem: pure strategies and labels") {
    const auto p = two_stage_problem();
    CHECK(p.info_sets().size() == 2);
    const auto pures = pure_strategies(p);
    REQUIRE(pures.size() == 4);
    const std::array<Label, 4> expected{"o00", "o01", "o10", "o11"};
    for (std::size_t k = 0; k < 4; ++k) {
        const auto d = outcome_of(p, pures[k]);
        CHECK(d[expected[k]] == 1.0);
    }
    CHECK(has_imperfect_recall(p));
}

TEST_CASE("experience sequences") {
    const auto p = two_stage_problem();
    // Both second-stage histories sit in cell 1 but arrive by different actions.
    const auto e0 = experience(p, p.index_of({0}));
    const auto e1 = experience(p, p.index_of({1}));
    CHECK(e0.size() == 3);
    CHECK(e0 != e1);
    CHECK(e0.back() == 1);
}

TEST_CASE("driver payoffs match the behavioral closed form") {
    for (int n = 1; n <= 6; ++n) {
        const double lambda = 4.0 + n;
        const auto p = n_tuple_driver(n, lambda);
        CHECK(has_imperfect_recall(p));
        for (double e : {0.0, 0.1, 0.5, 0.9, 1.0}) {
            const double got = expected_payoff_classical(p, exit_with_probability(e));
            const double want = std::pow(1.0 - e, n) * ((lambda - 1.0) * e + 1.0);
            CHECK(got == doctest::Approx(want).epsilon(1e-12));
        }
    }
}

TEST_CASE("n-tuple outcome labels") {
    const auto p = n_tuple_outcomes(3);
    const auto labels = p.outcome_labels();
    CHECK(labels.size() == 5);
    CHECK_FALSE(p.has_payoffs());
    CHECK(p.label(p.index_of({0})) == "o1");
    CHECK(p.label(p.index_of({1, 1, 0})) == "o3");
    CHECK(p.label(p.index_of({1, 1, 1, 1})) == "o5");
    CHECK_THROWS_AS(expected_payoff_classical(p, exit_with_probability(0.5)), ValidationError);
}

TEST_CASE("strategy validation") {
    const auto p = two_stage_problem();
    CHECK_THROWS_AS(outcome_of(p, PureStrategy{{0}}), ValidationError);
    CHECK_THROWS_AS(outcome_of(p, PureStrategy{{0, 2}}), ValidationError);
    CHECK_THROWS_AS(outcome_of(p, BehavioralStrategy{{{0.5, 0.6}, {1.0, 0.0}}}),
                    ValidationError);
    CHECK_THROWS_AS(OutcomeDistribution::from_map({{"a", 0.5}, {"b", 0.4}}), ValidationError);
    CHECK_THROWS_AS(OutcomeDistribution::from_map({{"a", -0.1}, {"b", 1.1}}), ValidationError);
}

TEST_CASE("outcome distributions sum to one") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto p = two_stage_problem();
    for (int k = 0; k < 200; ++k) {
        const double a = u(rng);
        const double b = u(rng);
        CHECK(std::abs(total(outcome_of(p, BehavioralStrategy{{{a, 1 - a}, {b, 1 - b}}})) -
                       1.0) <= 1e-12);
        CHECK(std::abs(total(outcome_of(p, random_mixed(p, rng))) - 1.0) <= 1e-12);
    }
}

TEST_CASE("outcome_of is affine in mixed weights") {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto p = n_tuple_outcomes(3);
    for (int k = 0; k < 100; ++k) {
        const auto m1 = random_mixed(p, rng);
        const auto m2 = random_mixed(p, rng);
        const double t = u(rng);
        MixedStrategy mix;
        for (std::size_t i = 0; i < m1.weights.size(); ++i) {
            mix.weights.emplace_back(m1.weights[i].first,
                                     t * m1.weights[i].second + (1 - t) * m2.weights[i].second);
        }
        const auto d = outcome_of(p, mix);
        const auto d1 = outcome_of(p, m1);
        const auto d2 = outcome_of(p, m2);
        for (const auto &[l, prob] : d.probabilities()) {
            CHECK(std::abs(prob - (t * d1[l] + (1 - t) * d2[l])) <= 1e-12);
        }
    }
}

TEST_CASE("Kuhn equivalence on random perfect-recall trees") {
    std::mt19937_64 rng(33);
    for (int k = 0; k < 60; ++k) {
        const auto p = random_perfect_recall_tree(rng);
        CHECK_FALSE(has_imperfect_recall(p));
        const auto m = random_mixed(p, rng);
        const auto b = kuhn_behavioral(p, m);
        CHECK(max_abs_difference(outcome_of(p, m), outcome_of(p, b)) <= 1e-9);
    }
}

TEST_CASE("behavioral gap witness on the two-stage problem") {
    const auto p = two_stage_problem();
    const auto target =
        OutcomeDistribution::from_map({{"o00", 0.5}, {"o01", 0.0}, {"o10", 0.0}, {"o11", 0.5}});
    const auto g = behavioral_gap(p, target);
    CHECK(g.gap == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(g.gap > 0.1);
    CHECK(max_abs_difference(outcome_of(p, g.witness), target) == doctest::Approx(g.gap));

    // A reachable target has zero gap.
    const auto reachable = outcome_of(p, BehavioralStrategy{{{0.3, 0.7}, {0.6, 0.4}}});
    CHECK(behavioral_gap(p, reachable).gap <= 1e-9);
}

TEST_CASE("JSON round trip") {
    for (const auto &p : {two_stage_problem(), n_tuple_driver(3, 20.0), n_tuple_outcomes(2)}) {
        const auto doc = to_json(p);
        const auto q = problem_from_json(nlohmann::json::parse(doc.dump()));
        CHECK(q.histories() == p.histories());
        CHECK(q.info_sets() == p.info_sets());
        CHECK(q.outcome_labels() == p.outcome_labels());
        CHECK(q.has_payoffs() == p.has_payoffs());
        CHECK(has_imperfect_recall(q) == has_imperfect_recall(p));
    }
    CHECK_THROWS_AS(problem_from_json(nlohmann::json::parse(R"({"histories": [[]]})")),
                    ValidationError);
}

}
