#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ewl/angle.hpp"
#include "ewl/commands.hpp"
#include "ewl/error.hpp"

namespace {

using ewl::cli::RunConfig;

struct RawOptions {
    std::string theta, alpha, beta, format, mode, target = "formulas";
};

void add_common(CLI::App *sub, RunConfig &c, RawOptions &raw) {
    sub->add_option("--n", c.n, "number of intersections (n + 1 qubits)");
    sub->add_option("--lambda", c.lambda, "payoff of the home outcome")->capture_default_str();
    sub->add_option("--seed", c.seed, "seed for sampled checks")->capture_default_str();
    sub->add_option("--format", raw.format, "text | csv | json");
    sub->add_option("--output", c.output, "write the result to this file");
}

void add_angles(CLI::App *sub, RawOptions &raw) {
    sub->add_option("--theta", raw.theta, "theta in [0, pi]; accepts pi literals like 9pi/16");
    sub->add_option("--alpha", raw.alpha, "alpha in [0, 2pi)");
    sub->add_option("--beta", raw.beta, "beta in [0, 2pi)");
}

void add_grid(CLI::App *sub, RunConfig &c) {
    sub->add_option("--grid", c.grid, "grid points per dimension");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"EWL quantum decision problems: simulate, optimize and verify"};
    app.require_subcommand(1);

    RunConfig c;
    RawOptions raw;

    auto *simulate = app.add_subcommand("simulate", "final state and payoff for one strategy");
    add_common(simulate, c, raw);
    add_angles(simulate, raw);

    auto *optimize = app.add_subcommand("optimize", "classical and quantum maxima of the driver");
    add_common(optimize, c, raw);
    add_grid(optimize, c);
    optimize->add_option("--starts", c.starts, "local searches started from the best grid points");
    optimize->add_option("--tol", c.tol, "golden-section tolerance");
    optimize->add_option("--mode", raw.mode, "both | classical | quantum");

    auto *verify = app.add_subcommand("verify", "run a verification report");
    add_common(verify, c, raw);
    add_grid(verify, c);
    verify->add_option("target", raw.target,
                       "prop1 | prop2 | prop3 | recall | formulas | eta | embedding");
    verify->add_option("--samples", c.samples, "random samples");
    verify->add_option("--delta", c.delta, "lambda / lambda0 for the dominance certificate");
    verify->add_option("--problem", c.problem_path, "decision problem JSON for `recall`");

    auto *landscape = app.add_subcommand("landscape", "payoff over a (theta, alpha, beta) grid");
    add_common(landscape, c, raw);
    add_grid(landscape, c);
    landscape->add_option("--grid-theta", c.grid_theta, "theta points (overrides --grid)");
    landscape->add_option("--grid-alpha", c.grid_alpha, "alpha points (overrides --grid)");
    landscape->add_option("--grid-beta", c.grid_beta, "beta points (overrides --grid)");

    auto *reproduce = app.add_subcommand("reproduce", "classical vs quantum optimum table");
    reproduce->add_option("--format", raw.format, "text | csv | json");
    reproduce->add_option("--output", c.output, "write the result to this file");
    reproduce->add_option("--lambda-sweep", c.lambda_sweep, "n = 1 rows for these lambdas")
        ->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return ewl::cli::kExitUsage;
    }

    using ewl::cli::Command;
    if (simulate->parsed()) c.command = Command::simulate;
    if (optimize->parsed()) c.command = Command::optimize;
    if (verify->parsed()) c.command = Command::verify;
    if (landscape->parsed()) c.command = Command::landscape;
    if (reproduce->parsed()) c.command = Command::reproduce;

    try {
        if (!raw.theta.empty()) c.theta = ewl::parse_angle(raw.theta);
        if (!raw.alpha.empty()) c.alpha = ewl::parse_angle(raw.alpha);
        if (!raw.beta.empty()) c.beta = ewl::parse_angle(raw.beta);
        if (!raw.format.empty()) {
            c.format = ewl::cli::parse_format(raw.format);
            if (!c.format) throw ewl::ValidationError("unknown format '" + raw.format + "'");
        }
        if (!raw.mode.empty()) {
            const auto m = ewl::cli::parse_mode(raw.mode);
            if (!m) throw ewl::ValidationError("unknown mode '" + raw.mode + "'");
            c.mode = *m;
        }
        const auto t = ewl::cli::parse_target(raw.target);
        if (!t) throw ewl::ValidationError("unknown verify target '" + raw.target + "'");
        c.target = *t;
    } catch (const ewl::ValidationError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return ewl::cli::kExitUsage;
    }
    return ewl::cli::run(c, std::cout, std::cerr);
}
