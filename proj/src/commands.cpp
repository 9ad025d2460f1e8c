#include "ewl/commands.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "ewl/analysis.hpp"
#include "ewl/error.hpp"
#include "ewl/kernels.hpp"
#include "ewl/protocol.hpp"
#include "ewl/report.hpp"

namespace ewl::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Tolerances for cross-checks and table cells.
constexpr double kCrossCheckTol = 1e-9;
constexpr double kOptimumTol = 1e-6;

double scaled(double tol, double x) { return tol * std::max(1.0, std::abs(x)); }

std::string bits(BasisIndex y, int m) {
    std::string s(static_cast<std::size_t>(m), '0');
    for (int q = 0; q < m; ++q) {
        if ((y >> (m - 1 - q)) & 1U) {
            s[static_cast<std::size_t>(q)] = '1';
        }
    }
    return s;
}

std::string driver_label(BasisIndex y, int n) {
    const int m = n + 1;
    int t = 0;
    for (int b = m - 1; b >= 0 && ((y >> b) & 1U); --b) {
        ++t;
    }
    if (t == m) {
        return "lodge";
    }
    return t == n ? "home" : "exit_" + std::to_string(t + 1);
}

UnitaryParams params_of(const RunConfig &c) {
    return {c.theta.value_or(0.0), c.alpha.value_or(0.0), c.beta.value_or(0.0)};
}

Format format_or(const RunConfig &c, Format fallback) { return c.format.value_or(fallback); }

void emit_report(const Report &r, Format f, std::ostream &out) {
    switch (f) {
    case Format::json:
        out << r.to_json().dump(2) << "\n";
        break;
    case Format::csv:
        out << r.to_csv();
        break;
    case Format::text:
        out << r.to_text();
        break;
    }
}

void require(bool ok, const std::string &what) {
    if (!ok) {
        throw ValidationError(what);
    }
}

void check_n(const std::optional<int> &n, int lo) {
    if (n) {
        require(*n >= lo && *n <= kMaxCliN, "--n must be in [" + std::to_string(lo) + ", " +
                                                std::to_string(kMaxCliN) + "]");
    }
}

} // namespace

std::optional<Format> parse_format(const std::string &s) {
    if (s == "text") return Format::text;
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    return std::nullopt;
}

std::optional<VerifyTarget> parse_target(const std::string &s) {
    if (s == "prop1") return VerifyTarget::prop1;
    if (s == "prop2") return VerifyTarget::prop2;
    if (s == "prop3") return VerifyTarget::prop3;
    if (s == "recall") return VerifyTarget::recall;
    if (s == "formulas") return VerifyTarget::formulas;
    if (s == "eta") return VerifyTarget::eta;
    if (s == "embedding") return VerifyTarget::embedding;
    return std::nullopt;
}

std::optional<OptimizeMode> parse_mode(const std::string &s) {
    if (s == "both") return OptimizeMode::both;
    if (s == "classical") return OptimizeMode::classical;
    if (s == "quantum") return OptimizeMode::quantum;
    return std::nullopt;
}

void validate(const RunConfig &c) {
    require(std::isfinite(c.lambda), "--lambda must be finite");
    if (c.samples) require(*c.samples >= 1 && *c.samples <= 10'000'000, "--samples out of range");
    if (c.tol) require(*c.tol > 0.0 && *c.tol < 1.0, "--tol must be in (0, 1)");
    if (c.starts) require(*c.starts >= 1 && *c.starts <= 4096, "--starts out of range");
    for (const auto *g : {&c.grid, &c.grid_theta, &c.grid_alpha, &c.grid_beta}) {
        if (*g) require(**g >= 1 && **g <= 4096, "grid sizes must be in [1, 4096]");
    }
    if (c.delta) require(*c.delta > 1.0 && std::isfinite(*c.delta), "--delta must be > 1");
    for (double l : c.lambda_sweep) {
        require(std::isfinite(l), "--lambda-sweep entries must be finite");
    }

    switch (c.command) {
    case Command::simulate:
        require(c.n.has_value(), "simulate needs --n");
        require(c.theta.has_value(), "simulate needs --theta");
        check_n(c.n, 1);
        params_of(c).validate();
        break;
    case Command::optimize:
        require(c.n.has_value(), "optimize needs --n");
        check_n(c.n, 1);
        require(*c.n <= 12, "optimize supports n <= 12");
        if (c.grid) require(*c.grid >= 2 && *c.grid <= 129, "--grid must be in [2, 129]");
        break;
    case Command::landscape: {
        require(c.n.has_value(), "landscape needs --n");
        check_n(c.n, 1);
        require(*c.n <= 12, "landscape supports n <= 12");
        const auto gt = c.grid_theta.value_or(c.grid.value_or(9));
        const auto ga = c.grid_alpha.value_or(c.grid.value_or(9));
        const auto gb = c.grid_beta.value_or(c.grid.value_or(9));
        require(static_cast<double>(gt) * ga * gb <= 5e6, "landscape grid too large");
        break;
    }
    case Command::verify:
        switch (c.target) {
        case VerifyTarget::prop2:
        case VerifyTarget::formulas:
        case VerifyTarget::embedding:
            check_n(c.n, 1);
            if (c.n) require(*c.n <= 10, "--n must be <= 10 for sweeps");
            if (c.grid) require(*c.grid >= 2, "--grid must be >= 2");
            break;
        case VerifyTarget::prop3:
            check_n(c.n, 1);
            if (c.n) require(*c.n <= 12, "--n must be <= 12 for prop3");
            break;
        default:
            break;
        }
        break;
    case Command::reproduce:
        break;
    }
}

int cmd_simulate(const RunConfig &c, std::ostream &out) {
    const int n = *c.n;
    const int m = n + 1;
    const auto params = params_of(c);
    const auto game = driver_game(n, c.lambda);
    const std::vector<Gate> gates(static_cast<std::size_t>(m), build_gate(params));
    const auto psi = final_state(game, gates);
    const double payoff = expected_payoff(game, gates);

    std::map<std::string, double> grouped;
    for (BasisIndex y = 0; y < psi.size(); ++y) {
        grouped[driver_label(y, n)] += std::norm(psi[y]);
    }

    const Format f = format_or(c, Format::text);
    if (f == Format::json) {
        ordered_json j;
        j["command"] = "simulate";
        j["inputs"] = {{"n", n},
                       {"lambda", c.lambda},
                       {"theta", params.theta},
                       {"alpha", params.alpha},
                       {"beta", params.beta}};
        auto basis = ordered_json::array();
        for (BasisIndex y = 0; y < psi.size(); ++y) {
            basis.push_back({{"state", bits(y, m)},
                             {"amplitude", {psi[y].real(), psi[y].imag()}},
                             {"probability", std::norm(psi[y])},
                             {"outcome", driver_label(y, n)}});
        }
        j["basis"] = basis;
        j["outcomes"] = grouped;
        j["expected_payoff"] = payoff;
        out << j.dump(2) << "\n";
    } else if (f == Format::csv) {
        out << "state,amplitude_re,amplitude_im,probability,outcome,payoff\n";
        for (BasisIndex y = 0; y < psi.size(); ++y) {
            out << bits(y, m) << ',' << format_number(psi[y].real()) << ','
                << format_number(psi[y].imag()) << ',' << format_number(std::norm(psi[y]))
                << ',' << driver_label(y, n) << ',' << format_number(game.payoffs()[y])
                << '\n';
        }
    } else {
        out << "EWL driver: n = " << n << " (" << m << " qubits), lambda = "
            << format_number(c.lambda) << "\n"
            << "U(theta, alpha, beta) = U(" << format_number(params.theta) << ", "
            << format_number(params.alpha) << ", " << format_number(params.beta)
            << ") on every qubit\n\n";
        out << std::left << std::setw(m + 4) << "state" << std::setw(16) << "probability"
            << "outcome\n";
        for (BasisIndex y = 0; y < psi.size(); ++y) {
            out << std::setw(m + 4) << ("|" + bits(y, m) + ">") << std::setw(16)
                << format_number(std::norm(psi[y])) << driver_label(y, n) << "\n";
        }
        out << "\noutcome distribution:\n";
        for (const auto &[label, p] : grouped) {
            out << "  " << std::setw(10) << label << format_number(p) << "\n";
        }
        out << "\nexpected payoff: " << format_number(payoff) << "\n";
    }
    return kExitOk;
}

int cmd_optimize(const RunConfig &c, std::ostream &out) {
    const int n = *c.n;
    const double lambda = c.lambda;
    optimize::Options3D o3;
    if (c.grid) o3.grid_per_dim = *c.grid;
    if (c.starts) o3.starts = *c.starts;
    if (c.tol) o3.tol = *c.tol;
    optimize::Options1D o1;
    if (c.tol) o1.tol = *c.tol;

    const bool want_classical = c.mode != OptimizeMode::quantum;
    const bool want_quantum = c.mode != OptimizeMode::classical;
    ordered_json j;
    j["command"] = "optimize";
    j["inputs"] = {{"n", n}, {"lambda", lambda}};
    bool cross_ok = true;
    std::ostringstream text;
    text << "n = " << n << ", lambda = " << format_number(lambda) << "\n";

    double classical_value = 0.0;
    double quantum_value = 0.0;
    if (want_classical) {
        const auto r = optimize::maximize_1d(
            [&](double t) { return payoff_one_param(n, lambda, t); }, 0.0, kPi, o1);
        const auto closed = analysis::classical_max_closed_form(n, lambda);
        const double dev = std::abs(r.value - closed.value);
        const bool ok = dev <= scaled(kCrossCheckTol, closed.value);
        cross_ok = cross_ok && ok;
        classical_value = r.value;
        const double theta = r.argmax[0];
        const double p = std::pow(std::cos(theta / 2), 2);
        j["classical"] = {{"value", r.value},
                          {"theta", theta},
                          {"p_exit", p},
                          {"closed_form_value", closed.value},
                          {"closed_form_p", closed.p},
                          {"deviation", dev},
                          {"cross_check", ok},
                          {"evaluations", r.evaluations}};
        text << "classical (behavioral) maximum: " << format_number(r.value)
             << " at theta = " << format_number(theta) << " (p_exit = " << format_number(p)
             << ")\n  closed form: " << format_number(closed.value) << " at p = "
             << format_number(closed.p) << "  [" << (ok ? "agree" : "DISAGREE")
             << ", deviation " << format_number(dev, 3) << "]\n";
    }
    if (want_quantum) {
        const auto r = optimize::maximize_3d(
            [&](const UnitaryParams &u) { return payoff_three_param(n, lambda, u); }, o3);
        const UnitaryParams at{r.argmax[0], r.argmax[1], r.argmax[2]};
        const double sim = simulated_driver_payoff(n, lambda, at);
        const double dev = std::abs(sim - r.value);
        const bool ok = dev <= scaled(kCrossCheckTol, sim);
        cross_ok = cross_ok && ok;
        quantum_value = r.value;
        j["quantum"] = {{"value", r.value},
                        {"theta", at.theta},
                        {"alpha", at.alpha},
                        {"beta", at.beta},
                        {"simulated_value", sim},
                        {"deviation", dev},
                        {"cross_check", ok},
                        {"grid_best", r.grid_best},
                        {"evaluations", r.evaluations}};
        text << "quantum (EWL) maximum: " << format_number(r.value) << " at (theta, alpha, beta) = ("
             << format_number(at.theta) << ", " << format_number(at.alpha) << ", "
             << format_number(at.beta) << ")\n  simulation at argmax: " << format_number(sim)
             << "  [" << (ok ? "agree" : "DISAGREE") << ", deviation "
             << format_number(dev, 3) << "]\n";
    }
    if (want_classical && want_quantum) {
        const double ratio = quantum_value / classical_value;
        j["ratio"] = ratio;
        text << "quantum / classical ratio: " << format_number(ratio) << "\n";
    }
    j["cross_check"] = cross_ok;

    switch (format_or(c, Format::text)) {
    case Format::json:
        out << j.dump(2) << "\n";
        break;
    case Format::csv:
        out << "kind,value,theta,alpha,beta,cross_check\n";
        if (want_classical) {
            const auto &k = j["classical"];
            out << "classical," << format_number(k["value"].get<double>()) << ','
                << format_number(k["theta"].get<double>()) << ",0,0,"
                << (k["cross_check"].get<bool>() ? "true" : "false") << "\n";
        }
        if (want_quantum) {
            const auto &k = j["quantum"];
            out << "quantum," << format_number(k["value"].get<double>()) << ','
                << format_number(k["theta"].get<double>()) << ','
                << format_number(k["alpha"].get<double>()) << ','
                << format_number(k["beta"].get<double>()) << ','
                << (k["cross_check"].get<bool>() ? "true" : "false") << "\n";
        }
        break;
    case Format::text:
        out << text.str();
        break;
    }
    return cross_ok ? kExitOk : kExitCrossCheck;
}

int cmd_verify(const RunConfig &c, std::ostream &out) {
    Report r;
    switch (c.target) {
    case VerifyTarget::prop1:
        r = analysis::prop1_verify(c.samples.value_or(1000), c.seed);
        break;
    case VerifyTarget::prop2:
        r = analysis::prop2_verify(c.n.value_or(5), c.grid.value_or(101));
        break;
    case VerifyTarget::prop3: {
        std::vector<int> ns{1, 2, 3, 4, 5, 6};
        if (c.n) ns = {*c.n};
        std::vector<double> deltas{1.1, 1.5, 3.0};
        if (c.delta) deltas = {*c.delta};
        r = analysis::prop3_report(ns, deltas);
        break;
    }
    case VerifyTarget::recall: {
        std::optional<decision::DecisionProblem> extra;
        if (c.problem_path) {
            std::ifstream in(*c.problem_path);
            if (!in) {
                throw ValidationError("cannot read problem file " + *c.problem_path);
            }
            nlohmann::json doc;
            try {
                in >> doc;
            } catch (const nlohmann::json::exception &e) {
                throw ValidationError(std::string("problem file is not JSON: ") + e.what());
            }
            extra = decision::problem_from_json(doc);
        }
        r = analysis::recall_report(extra);
        break;
    }
    case VerifyTarget::formulas:
        r = analysis::formula_ledger(c.n.value_or(5), c.samples.value_or(500), c.seed);
        break;
    case VerifyTarget::eta:
        r = analysis::eta_symmetry(c.samples.value_or(100), c.seed);
        break;
    case VerifyTarget::embedding:
        r = analysis::classical_embedding(c.n.value_or(6), c.grid.value_or(101));
        break;
    }
    emit_report(r, format_or(c, Format::text), out);
    return r.all_pass() ? kExitOk : kExitCheckFailed;
}

int cmd_landscape(const RunConfig &c, std::ostream &out) {
    const int n = *c.n;
    const double lambda = c.lambda;
    const auto gt = static_cast<std::size_t>(c.grid_theta.value_or(c.grid.value_or(9)));
    const auto ga = static_cast<std::size_t>(c.grid_alpha.value_or(c.grid.value_or(9)));
    const auto gb = static_cast<std::size_t>(c.grid_beta.value_or(c.grid.value_or(9)));
    const std::size_t total = gt * ga * gb;
    auto point = [&](std::size_t flat) {
        const std::size_t k = flat % gb;
        const std::size_t j = (flat / gb) % ga;
        const std::size_t i = flat / (ga * gb);
        double theta = 0.0;
        if (gt > 1) {
            theta = i + 1 == gt ? kPi : kPi * static_cast<double>(i) / static_cast<double>(gt - 1);
        }
        return UnitaryParams{theta, kTwoPi * static_cast<double>(j) / static_cast<double>(ga),
                             kTwoPi * static_cast<double>(k) / static_cast<double>(gb)};
    };
    std::vector<double> payoff(total);
    kernels::parallel::evaluate(
        total, [&](std::size_t i) { return simulated_driver_payoff(n, lambda, point(i)); },
        payoff);

    if (format_or(c, Format::csv) == Format::json) {
        auto rows = ordered_json::array();
        for (std::size_t i = 0; i < total; ++i) {
            const auto p = point(i);
            rows.push_back({{"theta", p.theta},
                            {"alpha", p.alpha},
                            {"beta", p.beta},
                            {"payoff", payoff[i]}});
        }
        ordered_json j;
        j["command"] = "landscape";
        j["inputs"] = {{"n", n}, {"lambda", lambda}, {"grid", {gt, ga, gb}}};
        j["rows"] = rows;
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    out << "theta,alpha,beta,payoff\n";
    for (std::size_t i = 0; i < total; ++i) {
        const auto p = point(i);
        out << format_number(p.theta) << ',' << format_number(p.alpha) << ','
            << format_number(p.beta) << ',' << format_number(payoff[i]) << '\n';
    }
    return kExitOk;
}

int cmd_reproduce(const RunConfig &c, std::ostream &out) {
    struct Row {
        int n;
        double lambda;
    };
    std::vector<Row> rows{{1, 4.0}, {3, 20.0}};
    if (!c.lambda_sweep.empty()) {
        rows.clear();
        for (double l : c.lambda_sweep) {
            rows.push_back({1, l});
        }
    }
    Report r{"reproduction table", {}};
    std::ostringstream table;
    table << std::left << std::setw(4) << "n" << std::setw(8) << "lambda" << std::setw(16)
          << "classical" << std::setw(18) << "l^2/4(l-1)" << std::setw(14) << "quantum"
          << std::setw(10) << "ratio"
          << "cells\n";
    for (const auto &row : rows) {
        const auto opt = analysis::driver_optimum(row.n, row.lambda);
        const ordered_json in{{"n", row.n}, {"lambda", row.lambda}};
        const double classical = opt.classical.value;
        const double quantum = opt.quantum.value;
        bool row_ok = true;

        // Classical column: against the closed-form optimum (4/3, 16875/6859, ...).
        auto cc = Check::numeric("classical maximum", in, opt.classical_closed.value,
                                 classical, kOptimumTol);
        row_ok = row_ok && cc.pass;
        r.add(std::move(cc));
        std::string formula = "-";
        if (row.n == 1) {
            const double expected = row.lambda > 2.0
                                        ? row.lambda * row.lambda / (4.0 * (row.lambda - 1.0))
                                        : 1.0;
            auto fc = Check::numeric("classical formula lambda^2/4(lambda-1)", in, expected,
                                     opt.classical_closed.value, kCrossCheckTol);
            if (row.lambda <= 2.0) {
                fc.note = "lambda <= 2: optimum is p = 0 with payoff 1";
            }
            formula = format_number(expected, 8);
            row_ok = row_ok && fc.pass;
            r.add(std::move(fc));
        }
        if (row.n == 3 && row.lambda == 20.0) {
            auto pc = Check::numeric("classical maximum ~ 2.46", in, 2.46, classical, 0.005);
            row_ok = row_ok && pc.pass;
            r.add(std::move(pc));
        }

        std::optional<double> quantum_expected;
        if (row.n == 1) {
            quantum_expected = std::max(1.0, row.lambda / 2.0);
        } else if (row.n == 3 && row.lambda == 20.0) {
            quantum_expected = 5.0;
        }
        if (quantum_expected) {
            auto qc = Check::numeric("quantum maximum", in, *quantum_expected, quantum,
                                     kOptimumTol);
            row_ok = row_ok && qc.pass;
            r.add(std::move(qc));
        }
        auto sc = Check::numeric("quantum optimum: closed form vs simulation", in,
                                 opt.quantum_simulated, quantum,
                                 scaled(kCrossCheckTol, quantum));
        row_ok = row_ok && sc.pass;
        r.add(std::move(sc));

        table << std::setw(4) << row.n << std::setw(8) << format_number(row.lambda, 6)
              << std::setw(16) << format_number(classical, 10) << std::setw(18) << formula
              << std::setw(14) << format_number(quantum, 10) << std::setw(10)
              << format_number(quantum / classical, 6) << (row_ok ? "pass" : "FAIL") << "\n";
    }

    const Format f = format_or(c, Format::text);
    if (f == Format::text) {
        out << table.str() << "\n";
    }
    emit_report(r, f, out);
    return r.all_pass() ? kExitOk : kExitCheckFailed;
}

int run(const RunConfig &config, std::ostream &out, std::ostream &err) {
    try {
        validate(config);
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    std::ofstream file;
    if (config.output) {
        file.open(*config.output, std::ios::out | std::ios::trunc);
        if (!file) {
            err << "error: cannot write to " << *config.output << "\n";
            return kExitUsage;
        }
    }
    std::ostringstream buf;
    int code = kExitOk;
    try {
        switch (config.command) {
        case Command::simulate:
            code = cmd_simulate(config, buf);
            break;
        case Command::optimize:
            code = cmd_optimize(config, buf);
            break;
        case Command::verify:
            code = cmd_verify(config, buf);
            break;
        case Command::landscape:
            code = cmd_landscape(config, buf);
            break;
        case Command::reproduce:
            code = cmd_reproduce(config, buf);
            break;
        }
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    if (config.output) {
        file << buf.str();
        if (!file.flush()) {
            err << "error: failed writing " << *config.output << "\n";
            return kExitUsage;
        }
    } else {
        out << buf.str();
    }
    return code;
}

} // namespace ewl::cli
