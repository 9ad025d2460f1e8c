#include "ewl/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ewl/error.hpp"
#include "ewl/kernels.hpp"

namespace ewl::analysis {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kOutcomeTol = 1e-9;
constexpr double kAmpTol = 1e-12;

double sq(double x) { return x * x; }

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

std::vector<double> theta_grid(int size) {
    std::vector<double> g(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) {
        g[static_cast<std::size_t>(i)] =
            i + 1 == size ? kPi : kPi * i / std::max(size - 1, 1);
    }
    return g;
}

decision::MixedStrategy mixed_from(const std::array<double, 4> &p) {
    // pure_strategies() enumerates (a0 b0), (a0 b1), (a1 b0), (a1 b1).
    static const auto problem = decision::two_stage_problem();
    static const auto pures = decision::pure_strategies(problem);
    decision::MixedStrategy m;
    for (std::size_t k = 0; k < 4; ++k) {
        m.weights.emplace_back(pures[k], p[k]);
    }
    return m;
}

std::array<double, 4> random_simplex(std::mt19937_64 &rng) {
    std::exponential_distribution<double> e(1.0);
    std::array<double, 4> p{};
    double s = 0.0;
    for (auto &x : p) {
        x = e(rng);
        s += x;
    }
    for (auto &x : p) {
        x /= s;
    }
    return p;
}

// Mass on basis states whose first `prefix_len` bits equal `prefix`.
double prefix_mass(std::span<const double> probs, int qubits, BasisIndex prefix,
                   int prefix_len) {
    const int rest = qubits - prefix_len;
    const BasisIndex base = prefix << rest;
    double s = 0.0;
    for (BasisIndex x = 0; x < (BasisIndex{1} << rest); ++x) {
        s += probs[base | x];
    }
    return s;
}

std::vector<Gate> uniform_gates(int qubits, const UnitaryParams &params) {
    return std::vector<Gate>(static_cast<std::size_t>(qubits), build_gate(params));
}

double rel_tol(double scale, double tol) { return tol * std::max(1.0, std::abs(scale)); }

// Printed two-parameter (beta = 0) driver payoff, exactly as typeset.
double printed_two_param(double lambda, double theta, double alpha) {
    return 0.25 * lambda * (std::sin(2 * alpha) + 1.0) * std::sin(theta) +
           sq(std::sin(2 * alpha) * sq(std::cos(theta / 2)) - sq(std::sin(theta / 2)));
}

// The same expression with sin^2(theta), which is what simulation gives.
double corrected_two_param(double lambda, double theta, double alpha) {
    return 0.25 * lambda * (std::sin(2 * alpha) + 1.0) * sq(std::sin(theta)) +
           sq(std::sin(2 * alpha) * sq(std::cos(theta / 2)) - sq(std::sin(theta / 2)));
}

} // namespace

const char *to_string(Prop1Branch b) {
    switch (b) {
    case Prop1Branch::general:
        return "general";
    case Prop1Branch::diagonal_segment:
        return "diagonal_segment";
    case Prop1Branch::antidiagonal_segment:
        return "antidiagonal_segment";
    }
    return "?";
}

Prop1Solution prop1_solve(const std::array<double, 4> &p) {
    double sum = 0.0;
    for (double x : p) {
        if (!std::isfinite(x) || x < 0.0) {
            throw ValidationError("probabilities must be finite and nonnegative");
        }
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw ValidationError("probabilities must sum to 1");
    }
    const double diag = p[0] + p[3];
    const double anti = p[1] + p[2];
    Prop1Solution s;
    if (anti <= 0.0) {
        s.branch = Prop1Branch::diagonal_segment;
        s.params1 = {0.0, std::acos(std::sqrt(clamp01(p[0] / diag))), 0.0};
    } else if (diag <= 0.0) {
        s.branch = Prop1Branch::antidiagonal_segment;
        s.params1 = {kPi, 0.0, std::acos(std::sqrt(clamp01(p[2] / anti)))};
    } else {
        s.branch = Prop1Branch::general;
        s.params1 = {2.0 * std::acos(std::sqrt(clamp01(diag / sum))),
                     std::acos(std::sqrt(clamp01(p[0] / diag))),
                     std::acos(std::sqrt(clamp01(p[2] / anti)))};
    }
    return s;
}

std::array<Gate, 2> prop1_gates(const Prop1Solution &s) {
    return {build_gate(s.params1), Gate::identity()};
}

double prop1_deviation(const std::array<double, 4> &p) {
    static const auto problem = decision::two_stage_problem();
    static const auto game = two_stage_game();
    const auto gates = prop1_gates(prop1_solve(p));
    const auto quantum = outcome_distribution_ewl(game, gates);
    const auto classical = decision::outcome_of(problem, mixed_from(p));
    return decision::max_abs_difference(quantum, classical);
}

Report prop1_verify(int sample_count, std::uint64_t seed) {
    if (sample_count < 1) {
        throw ValidationError("sample_count must be >= 1");
    }
    Report r{"mixed strategy -> outcome-equivalent pure unitary strategy", {}};
    std::mt19937_64 rng(seed);

    std::vector<std::pair<std::string, std::array<double, 4>>> boundary{
        {"unit o00", {1, 0, 0, 0}},
        {"unit o01", {0, 1, 0, 0}},
        {"unit o10", {0, 0, 1, 0}},
        {"unit o11", {0, 0, 0, 1}},
        {"diagonal segment 1/2", {0.5, 0, 0, 0.5}},
        {"antidiagonal segment 1/2", {0, 0.5, 0.5, 0}},
        {"uniform", {0.25, 0.25, 0.25, 0.25}},
        {"near-degenerate", {1.0 - 3e-13, 1e-13, 1e-13, 1e-13}},
    };
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t k = 0; k < 4; ++k) {
        auto p = random_simplex(rng);
        const double removed = p[k];
        p[k] = 0.0;
        for (auto &x : p) {
            x /= 1.0 - removed;
        }
        boundary.emplace_back("zero at index " + std::to_string(k), p);
    }
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = a + 1; b < 4; ++b) {
            std::array<double, 4> p{};
            p[a] = u(rng);
            p[b] = 1.0 - p[a];
            boundary.emplace_back("support {" + std::to_string(a) + "," +
                                      std::to_string(b) + "}",
                                  p);
        }
    }
    for (const auto &[name, p] : boundary) {
        const auto sol = prop1_solve(p);
        ordered_json inputs{{"p", p}, {"branch", to_string(sol.branch)}};
        r.add(Check::max_deviation("boundary: " + name, inputs, prop1_deviation(p),
                                   kOutcomeTol));
    }

    std::vector<std::array<double, 4>> samples;
    samples.reserve(static_cast<std::size_t>(sample_count));
    for (int i = 0; i < sample_count; ++i) {
        samples.push_back(random_simplex(rng));
    }
    const double dev = kernels::parallel::max_value(
        samples.size(), [&](std::size_t i) { return prop1_deviation(samples[i]); });
    r.add(Check::max_deviation("random mixed strategies",
                               {{"samples", sample_count}, {"seed", seed}}, dev,
                               kOutcomeTol));
    return r;
}

Report prop2_verify(int n_max, int theta_grid_size) {
    if (n_max < 1 || theta_grid_size < 2) {
        throw ValidationError("prop2_verify needs n_max >= 1 and a grid of >= 2 points");
    }
    Report r{"one-parameter unitaries implement the n-tuple decision tree", {}};
    const auto grid = theta_grid(theta_grid_size);
    for (int n = 1; n <= n_max; ++n) {
        const int m = n + 1;
        const auto problem = decision::n_tuple_outcomes(n);
        const auto game = n_tuple_outcome_game(n);
        struct Devs {
            double amp = 0, prob = 0, prefix = 0, terminal = 0, outcome = 0;
        };
        std::vector<Devs> per_theta(grid.size());
        const auto count = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(dynamic, 4)
        for (std::int64_t i = 0; i < count; ++i) {
            const double theta = grid[static_cast<std::size_t>(i)];
            const double p = sq(std::cos(theta / 2));
            const auto gates = uniform_gates(m, {theta, 0.0, 0.0});
            const auto psi = final_state(m, gates);
            const auto probs = psi.probabilities();
            Devs d;
            for (BasisIndex y = 0; y < psi.size(); ++y) {
                d.amp = std::max(d.amp, std::abs(amplitude_one_param(y, theta, m) - psi[y]));
                const int ry = hamming_weight(y, m);
                const double binom = std::pow(p, m - ry) * std::pow(1.0 - p, ry);
                d.prob = std::max(d.prob, std::abs(probs[y] - binom));
            }
            // Prefix 1^{t-1} 0 on the first t qubits.
            for (int t = 1; t <= n; ++t) {
                const BasisIndex prefix = ((BasisIndex{1} << (t - 1)) - 1) << 1;
                const double mass = prefix_mass(probs, m, prefix, t);
                d.prefix = std::max(d.prefix,
                                    std::abs(mass - std::pow(1.0 - p, t - 1) * p));
            }
            const BasisIndex home = (BasisIndex{1} << m) - 2;
            const BasisIndex lodge = (BasisIndex{1} << m) - 1;
            d.terminal = std::max(std::abs(probs[home] - p * std::pow(1.0 - p, n)),
                                  std::abs(probs[lodge] - std::pow(1.0 - p, n + 1)));
            const auto quantum = outcome_distribution_ewl(game, gates);
            const auto classical =
                decision::outcome_of(problem, decision::exit_with_probability(p));
            d.outcome = decision::max_abs_difference(quantum, classical);
            per_theta[static_cast<std::size_t>(i)] = d;
        }
        Devs worst;
        for (const auto &d : per_theta) {
            worst.amp = std::max(worst.amp, d.amp);
            worst.prob = std::max(worst.prob, d.prob);
            worst.prefix = std::max(worst.prefix, d.prefix);
            worst.terminal = std::max(worst.terminal, d.terminal);
            worst.outcome = std::max(worst.outcome, d.outcome);
        }
        const ordered_json in{{"n", n}, {"theta_grid", theta_grid_size}};
        r.add(Check::max_deviation("closed-form amplitude vs simulation", in, worst.amp,
                                   kAmpTol));
        r.add(Check::max_deviation("|<y|psi_f>|^2 = p^r(~y) (1-p)^r(y)", in, worst.prob,
                                   kAmpTol));
        r.add(Check::max_deviation("prefix mass = (1-p)^(t-1) p", in, worst.prefix,
                                   kOutcomeTol));
        r.add(Check::max_deviation("terminal masses p(1-p)^n, (1-p)^(n+1)", in,
                                   worst.terminal, kOutcomeTol));
        r.add(Check::max_deviation("EWL outcome = behavioral outcome", in, worst.outcome,
                                   kOutcomeTol));
    }
    return r;
}

Prop3Params prop3_params(int n) {
    if (n < 2) {
        throw ValidationError("prop3_params needs n >= 2; n = 1 uses (pi/2, pi/4, 0)");
    }
    const double chi = (n % 4 == 3) ? 1.0 : 0.0;
    const double numer = kPi + kTwoPi * chi;
    const double denom = 2.0 * (static_cast<double>(n) * n - 1.0);
    Prop3Params p;
    p.theta = 2.0 * std::acos(1.0 / std::sqrt(n + 1.0));
    p.alpha = numer * n / denom;
    p.beta = numer / denom;
    const double c2 = sq(std::cos(p.theta / 2));
    const double s2 = sq(std::sin(p.theta / 2));
    p.lambda0 = 1.0 / (std::pow(c2, n) * s2);
    return p;
}

ClassicalOptimum classical_max_closed_form(int n, double lambda) {
    if (n < 1) {
        throw ValidationError("n must be >= 1");
    }
    double p = 0.0;
    if (lambda > 1.0) {
        p = clamp01((lambda - 1.0 - n) / ((lambda - 1.0) * (n + 1.0)));
    }
    return {p, std::pow(1.0 - p, n) * ((lambda - 1.0) * p + 1.0)};
}

Prop3Certificate prop3_verify(int n, double delta) {
    if (n < 1) {
        throw ValidationError("n must be >= 1");
    }
    if (!(delta > 1.0) || !std::isfinite(delta)) {
        throw ValidationError("delta must be a finite number > 1");
    }
    Prop3Certificate c;
    c.n = n;
    c.delta = delta;
    if (n == 1) {
        c.theta = kPi / 2;
        c.alpha = kPi / 4;
        c.beta = 0.0;
        c.lambda0 = 2.0;
    } else {
        const auto p = prop3_params(n);
        c.theta = p.theta;
        c.alpha = p.alpha;
        c.beta = p.beta;
        c.lambda0 = p.lambda0;
    }
    c.lambda = delta * c.lambda0;
    c.quantum_payoff = simulated_driver_payoff(n, c.lambda, {c.theta, c.alpha, c.beta});
    const double lambda = c.lambda;
    c.classical_numeric =
        optimize::maximize_1d([&](double t) { return payoff_one_param(n, lambda, t); },
                              0.0, kPi)
            .value;
    c.classical_closed_form = classical_max_closed_form(n, lambda).value;
    c.classical_max = std::max(c.classical_numeric, c.classical_closed_form);
    return c;
}

Report prop3_report(const std::vector<int> &ns, const std::vector<double> &deltas) {
    Report r{"explicit unitary strictly beats every classical strategy", {}};
    for (int n : ns) {
        if (n >= 2) {
            const auto p = prop3_params(n);
            const auto best = optimize::maximize_1d(
                [n](double t) {
                    return sq(std::cos(t / 2)) * std::pow(std::sin(t / 2), 2 * n);
                },
                0.0, kPi);
            Check c = Check::numeric("theta' maximizes cos^2(t/2) sin^2n(t/2)", {{"n", n}},
                                     p.theta, best.argmax[0], 1e-6);
            r.add(std::move(c));
        }
        for (double delta : deltas) {
            const auto cert = prop3_verify(n, delta);
            const ordered_json in{{"n", n},         {"delta", delta},
                                  {"lambda", cert.lambda}, {"theta", cert.theta},
                                  {"alpha", cert.alpha},   {"beta", cert.beta}};
            Check dom;
            dom.name = "quantum payoff > classical maximum";
            dom.inputs = in;
            dom.expected = cert.classical_max;
            dom.actual = cert.quantum_payoff;
            dom.deviation = cert.margin();
            dom.pass = cert.dominates();
            dom.note = "deviation is the dominance margin";
            r.add(std::move(dom));

            const double closed = payoff_three_param(n, cert.lambda,
                                                     {cert.theta, cert.alpha, cert.beta});
            r.add(Check::numeric("closed form at U* vs simulation", in, cert.quantum_payoff,
                                 closed, rel_tol(closed, kOutcomeTol)));
            r.add(Check::numeric("closed-form classical max vs 1D optimizer", in,
                                 cert.classical_closed_form, cert.classical_numeric,
                                 rel_tol(cert.classical_closed_form, kOutcomeTol)));
            if (n >= 2) {
                const double c2 = sq(std::cos(cert.theta / 2));
                const double s2 = sq(std::sin(cert.theta / 2));
                const double tail = cert.lambda * c2 * std::pow(s2, n);
                const double lower =
                    cert.lambda * (std::pow(c2, n) * s2 + c2 * std::pow(s2, n));
                Check lb;
                lb.name = "E(U*) >= lambda'(cos^2n sin^2 + cos^2 sin^2n)";
                lb.inputs = in;
                lb.expected = lower;
                lb.actual = cert.quantum_payoff;
                lb.deviation = cert.quantum_payoff - lower;
                lb.pass = lb.deviation >= -rel_tol(lower, kOutcomeTol);
                r.add(std::move(lb));
                r.add(Check::numeric("lambda'(cos^2n sin^2) = delta", in, delta,
                                     lower - tail, rel_tol(delta, kOutcomeTol)));
                Check upper;
                upper.name = "1 + lambda' max(cos^2 sin^2n) >= classical maximum";
                upper.inputs = in;
                upper.expected = cert.classical_max;
                upper.actual = 1.0 + tail;
                upper.deviation = 1.0 + tail - cert.classical_max;
                upper.pass = upper.deviation >= -rel_tol(tail, kOutcomeTol);
                r.add(std::move(upper));
            }
        }
    }
    return r;
}

DriverOptimum driver_optimum(int n, double lambda, const optimize::Options3D &options3d,
                             const optimize::Options1D &options1d) {
    if (n < 1) {
        throw ValidationError("n must be >= 1");
    }
    DriverOptimum d;
    d.classical = optimize::maximize_1d(
        [&](double t) { return payoff_one_param(n, lambda, t); }, 0.0, kPi, options1d);
    d.classical_closed = classical_max_closed_form(n, lambda);
    d.quantum = optimize::maximize_3d(
        [&](const UnitaryParams &u) { return payoff_three_param(n, lambda, u); },
        options3d);
    d.quantum_simulated = simulated_driver_payoff(
        n, lambda, {d.quantum.argmax[0], d.quantum.argmax[1], d.quantum.argmax[2]});
    return d;
}

Report classical_embedding(int n_max, int theta_grid_size) {
    if (n_max < 1 || theta_grid_size < 2) {
        throw ValidationError("classical_embedding needs n_max >= 1 and >= 2 grid points");
    }
    Report r{"one-parameter payoff = simulation = classical behavioral payoff", {}};
    const auto grid = theta_grid(theta_grid_size);
    for (int n = 1; n <= n_max; ++n) {
        for (double lambda : {0.5, 2.0, 4.0, 20.0}) {
            const auto problem = decision::n_tuple_driver(n, lambda);
            const auto game = driver_game(n, lambda);
            const double sim_dev =
                kernels::parallel::max_value(grid.size(), [&](std::size_t i) {
                    const double t = grid[i];
                    const auto gates = uniform_gates(n + 1, {t, 0.0, 0.0});
                    return std::abs(payoff_one_param(n, lambda, t) -
                                    expected_payoff(game, gates));
                });
            const double tree_dev =
                kernels::parallel::max_value(grid.size(), [&](std::size_t i) {
                    const double t = grid[i];
                    const auto b = decision::exit_with_probability(sq(std::cos(t / 2)));
                    return std::abs(payoff_one_param(n, lambda, t) -
                                    decision::expected_payoff_classical(problem, b));
                });
            const ordered_json in{{"n", n}, {"lambda", lambda}, {"theta_grid", theta_grid_size}};
            r.add(Check::max_deviation("closed form vs simulation", in, sim_dev, kOutcomeTol));
            r.add(Check::max_deviation("closed form vs behavioral payoff", in, tree_dev,
                                       kOutcomeTol));
        }
    }
    return r;
}

Report eta_symmetry(int sample_count, std::uint64_t seed) {
    Report r{"two-qubit final state has eta_01 = eta_10", {}};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> th(0.0, kPi);
    std::uniform_real_distribution<double> ang(0.0, kTwoPi);
    std::vector<UnitaryParams> samples;
    for (int i = 0; i < sample_count; ++i) {
        const double t = th(rng);
        const double a = ang(rng);
        samples.push_back({t, a, ang(rng)});
    }
    r.add(Check::numeric("eta at identity", {}, 0.0, eta_symmetry_check({0, 0, 0}), kAmpTol));
    r.add(Check::numeric("eta at (pi/2, pi/4, 0)", {}, 0.0,
                         eta_symmetry_check({kPi / 2, kPi / 4, 0.0}), kAmpTol));
    const double dev = kernels::parallel::max_value(
        samples.size(), [&](std::size_t i) { return eta_symmetry_check(samples[i]); });
    r.add(Check::max_deviation("random parameter triples",
                               {{"samples", sample_count}, {"seed", seed}}, dev, kAmpTol));
    return r;
}

Report recall_report(const std::optional<decision::DecisionProblem> &extra) {
    using namespace decision;
    Report r{"imperfect recall and mixed/behavioral non-equivalence", {}};
    r.add(Check::equals("two-stage problem has imperfect recall", {}, true,
                        has_imperfect_recall(two_stage_problem())));
    r.add(Check::equals("absentminded driver has imperfect recall", {{"lambda", 4}}, true,
                        has_imperfect_recall(absentminded_driver(4.0))));
    r.add(Check::equals("n-tuple driver has imperfect recall", {{"n", 3}}, true,
                        has_imperfect_recall(n_tuple_driver(3, 20.0))));
    const auto perfect = DecisionProblem::create(
        {{}, {0}, {1}, {0, 0}, {0, 1}, {1, 0}, {1, 1}},
        {{{0, 0}, "o00"}, {{0, 1}, "o01"}, {{1, 0}, "o10"}, {{1, 1}, "o11"}},
        {{{}}, {{0}}, {{1}}});
    r.add(Check::equals("two-stage with singleton second-stage sets has perfect recall", {},
                        false, has_imperfect_recall(perfect)));

    const auto problem = two_stage_problem();
    const auto target = OutcomeDistribution::from_map(
        {{"o00", 0.5}, {"o01", 0.0}, {"o10", 0.0}, {"o11", 0.5}});
    const auto gap = behavioral_gap(problem, target);
    Check g = Check::numeric("behavioral gap for (o00 + o11)/2", {{"grid", 201}},
                             kTwoStageGap, gap.gap, 1e-6);
    g.pass = g.pass && gap.gap > 0.1;
    r.add(std::move(g));
    r.add(Check::max_deviation(
        "mixed (1/2,0,0,1/2) yields (o00 + o11)/2", {},
        max_abs_difference(outcome_of(problem, mixed_from({0.5, 0.0, 0.0, 0.5})), target),
        kAmpTol));

    // The converse inclusion: b = (p, q) is realized by the product mixture.
    constexpr int kSide = 41;
    const double behav_dev = kernels::parallel::max_value(
        kSide * kSide, [&](std::size_t i) {
            const double p = static_cast<double>(i / kSide) / (kSide - 1);
            const double q = static_cast<double>(i % kSide) / (kSide - 1);
            const BehavioralStrategy b{{{p, 1.0 - p}, {q, 1.0 - q}}};
            const auto m = mixed_from({p * q, p * (1.0 - q), (1.0 - p) * q,
                                       (1.0 - p) * (1.0 - q)});
            return max_abs_difference(outcome_of(problem, b), outcome_of(problem, m));
        });
    r.add(Check::max_deviation("every behavioral outcome is a mixed outcome",
                               {{"grid", std::to_string(kSide) + " x " + std::to_string(kSide)}},
                               behav_dev, 1e-9));

    if (extra) {
        Check c;
        c.name = "input problem classification";
        c.inputs = {{"histories", extra->histories().size()},
                    {"info_sets", extra->info_sets().size()}};
        c.expected = nullptr;
        c.actual = has_imperfect_recall(*extra) ? "imperfect recall" : "perfect recall";
        c.pass = true;
        c.note = "classification only; no expected value";
        r.add(std::move(c));
    }
    return r;
}

Report formula_ledger(int n_max, int sample_count, std::uint64_t seed) {
    if (n_max < 1 || sample_count < 1) {
        throw ValidationError("formula_ledger needs n_max >= 1 and sample_count >= 1");
    }
    Report r{"printed closed forms vs state-vector simulation", {}};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> th(0.0, kPi);
    std::uniform_real_distribution<double> ang(0.0, kTwoPi);
    std::uniform_real_distribution<double> lam(0.5, 30.0);
    std::uniform_int_distribution<int> nd(1, n_max);

    struct Sample {
        int n;
        double lambda;
        UnitaryParams u;
    };
    std::vector<Sample> samples;
    for (int i = 0; i < sample_count; ++i) {
        Sample s{};
        s.n = nd(rng);
        s.lambda = lam(rng);
        s.u.theta = th(rng);
        s.u.alpha = ang(rng);
        s.u.beta = ang(rng);
        samples.push_back(s);
    }
    const double three = kernels::parallel::max_value(samples.size(), [&](std::size_t i) {
        const auto &s = samples[i];
        return std::abs(payoff_three_param(s.n, s.lambda, s.u) -
                        simulated_driver_payoff(s.n, s.lambda, s.u));
    });
    r.add(Check::max_deviation("three-parameter payoff",
                               {{"n_max", n_max}, {"samples", sample_count}, {"seed", seed}},
                               three, kOutcomeTol));

    const auto grid = theta_grid(101);
    for (int n = 1; n <= n_max; ++n) {
        const double one = kernels::parallel::max_value(grid.size(), [&](std::size_t i) {
            return std::abs(payoff_one_param(n, 20.0, grid[i]) -
                            simulated_driver_payoff(n, 20.0, {grid[i], 0.0, 0.0}));
        });
        r.add(Check::max_deviation("one-parameter payoff", {{"n", n}, {"lambda", 20}}, one,
                                   kOutcomeTol));
        const double beta0 = kernels::parallel::max_value(grid.size(), [&](std::size_t i) {
            const UnitaryParams u{grid[i], std::fmod(0.37 * i, kTwoPi), 0.0};
            return std::abs(payoff_three_param(n, 20.0, u) -
                            simulated_driver_payoff(n, 20.0, u));
        });
        r.add(Check::max_deviation("three-parameter payoff at beta = 0",
                                   {{"n", n}, {"lambda", 20}}, beta0, kOutcomeTol));
    }

    // Two-parameter driver payoff (n = 1, beta = 0).
    {
        double printed = 0.0;
        double corrected = 0.0;
        for (double t : theta_grid(41)) {
            for (int k = 0; k < 40; ++k) {
                const double a = kTwoPi * k / 40.0;
                const double sim = simulated_driver_payoff(1, 4.0, {t, a, 0.0});
                printed = std::max(printed, std::abs(printed_two_param(4.0, t, a) - sim));
                corrected =
                    std::max(corrected, std::abs(corrected_two_param(4.0, t, a) - sim));
            }
        }
        const ordered_json in{{"n", 1}, {"lambda", 4}, {"grid", "41 x 40"}};
        Check known;
        known.name = "two-parameter payoff as printed (sin theta)";
        known.inputs = in;
        known.expected = 0.0;
        known.actual = printed;
        known.deviation = printed;
        known.pass = true;
        known.note = "known discrepancy: the lambda term carries sin(theta) where "
                     "simulation and the beta = 0 three-parameter form give sin^2(theta); "
                     "corrected form deviation " +
                     format_number(corrected, 3);
        r.add(std::move(known));
        r.add(Check::max_deviation("two-parameter payoff with sin^2(theta)", in, corrected,
                                   kOutcomeTol));
        r.add(Check::numeric("two-parameter payoff at (pi/2, pi/4) = lambda/2", in, 2.0,
                             simulated_driver_payoff(1, 4.0, {kPi / 2, kPi / 4, 0.0}),
                             kOutcomeTol));
    }

    // Final state at alpha = beta = 0: (c^2, i c s, i c s, -s^2).
    {
        double dev = 0.0;
        for (double t : theta_grid(101)) {
            const double c = std::cos(t / 2);
            const double s = std::sin(t / 2);
            const Gate u = build_gate({t, 0.0, 0.0});
            const std::array<Gate, 2> gates{u, u};
            const auto psi = final_state(2, gates);
            const std::array<Amplitude, 4> printed{
                Amplitude{c * c, 0.0}, Amplitude{0.0, c * s}, Amplitude{0.0, c * s},
                Amplitude{-s * s, 0.0}};
            for (std::size_t y = 0; y < 4; ++y) {
                dev = std::max(dev, std::abs(psi[y] - printed[y]));
            }
        }
        r.add(Check::max_deviation("two-qubit final state at alpha = beta = 0", {}, dev,
                                   kAmpTol));
    }

    // Product form for U(t1,0,0) (x) U(t2,0,0) and the single-qubit combination.
    {
        std::uniform_real_distribution<double> pay(-5.0, 5.0);
        double product = 0.0;
        double combination = 0.0;
        for (int i = 0; i < 200; ++i) {
            const std::array<double, 4> o{pay(rng), pay(rng), pay(rng), pay(rng)};
            const double t1 = th(rng);
            const double t2 = th(rng);
            double e = 0.0;
            for (int k = 0; k < 2; ++k) {
                for (int l = 0; l < 2; ++l) {
                    e += o[static_cast<std::size_t>(2 * k + l)] *
                         sq(std::cos((t1 - k * kPi) / 2)) * sq(std::cos((t2 - l * kPi) / 2));
                }
            }
            product = std::max(
                product, std::abs(e - payoff_two_qubit_general(o, {t1, 0, 0}, {t2, 0, 0})));

            const UnitaryParams u{th(rng), ang(rng), ang(rng)};
            const double comb =
                (o[0] * sq(std::cos(u.alpha)) + o[3] * sq(std::sin(u.alpha))) *
                    sq(std::cos(u.theta / 2)) +
                (o[1] * sq(std::sin(u.beta)) + o[2] * sq(std::cos(u.beta))) *
                    sq(std::sin(u.theta / 2));
            combination = std::max(
                combination, std::abs(comb - payoff_two_qubit_general(o, u, {0, 0, 0})));
        }
        r.add(Check::max_deviation("two-qubit one-parameter product form",
                                   {{"samples", 200}}, product, kOutcomeTol));
        r.add(Check::max_deviation("first-qubit-only combination form", {{"samples", 200}},
                                   combination, kOutcomeTol));
    }

    // Classical driver values.
    {
        const auto driver = decision::absentminded_driver(4.0);
        double dev = 0.0;
        for (int i = 0; i <= 100; ++i) {
            const double p = i / 100.0;
            dev = std::max(dev, std::abs((1 - p) * (1 + 3 * p) -
                                         decision::expected_payoff_classical(
                                             driver, decision::exit_with_probability(p))));
        }
        r.add(Check::max_deviation("u(p,1-p) = (1-p)(1+3p) at lambda = 4", {}, dev,
                                   kOutcomeTol));
        for (double lambda : {3.0, 4.0, 10.0}) {
            r.add(Check::numeric("classical maximum lambda^2 / 4(lambda-1)",
                                 {{"lambda", lambda}},
                                 lambda * lambda / (4.0 * (lambda - 1.0)),
                                 classical_max_closed_form(1, lambda).value, kOutcomeTol));
        }
        const double e7 = payoff_one_param(3, 20.0, 0.7 * kPi);
        r.add(Check::numeric("E(7pi/10) ~ 2.46 at n = 3, lambda = 20", {}, 2.46, e7, 0.005));
        r.add(Check::numeric("classical maximum at n = 3, lambda = 20", {}, 16875.0 / 6859.0,
                             classical_max_closed_form(3, 20.0).value, kOutcomeTol));
        r.add(Check::numeric("three-parameter payoff at (pi/2, 9pi/16, 3pi/16)",
                             {{"n", 3}, {"lambda", 20}}, 5.0,
                             simulated_driver_payoff(3, 20.0,
                                                     {kPi / 2, 9 * kPi / 16, 3 * kPi / 16}),
                             kOutcomeTol));
    }
    return r;
}

} // namespace ewl::analysis
