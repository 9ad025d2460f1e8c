/**
 * @file
 * One-player extensive-form decision problems: a prefix-closed history tree,
 * an information partition of its nonterminal histories, outcome labels on
 * terminal histories and (optionally) real utilities on those labels.
 *
 * Histories are sequences of action indices. Actions available after a
 * history are the indices `a` for which `h + [a]` is itself a history.
 */
#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace ewl::decision {

using History = std::vector<int>;
using Label = std::string;

class DecisionProblem {
  public:
    /// Validates prefix-closure, the partition, equal action sets per cell,
    /// terminal label coverage and (when present) payoff coverage.
    static DecisionProblem create(std::vector<History> histories,
                                  std::map<History, Label> terminal_labels,
                                  std::vector<std::vector<History>> info_sets,
                                  std::optional<std::map<Label, double>> payoffs = {});

    /// Histories ordered by length, then lexicographically; index 0 is the root.
    [[nodiscard]] const std::vector<History> &histories() const noexcept {
        return histories_;
    }
    [[nodiscard]] std::size_t index_of(const History &h) const;
    [[nodiscard]] bool is_terminal(std::size_t h) const { return terminal_[h]; }
    [[nodiscard]] const std::vector<std::size_t> &terminals() const noexcept {
        return terminal_list_;
    }

    /// Cells of the partition, as sorted history indices.
    [[nodiscard]] const std::vector<std::vector<std::size_t>> &info_sets() const noexcept {
        return info_sets_;
    }
    [[nodiscard]] std::size_t info_set_of(std::size_t h) const;
    /// A(h) for any h in the cell, sorted ascending.
    [[nodiscard]] const std::vector<int> &actions(std::size_t info_set) const {
        return actions_.at(info_set);
    }
    /// Index of the history reached by taking `action` after `h`.
    [[nodiscard]] std::size_t child(std::size_t h, int action) const;

    [[nodiscard]] const Label &label(std::size_t terminal_history) const;
    /// Distinct outcome labels, sorted.
    [[nodiscard]] std::vector<Label> outcome_labels() const;

    [[nodiscard]] bool has_payoffs() const noexcept { return payoffs_.has_value(); }
    [[nodiscard]] const std::optional<std::map<Label, double>> &payoffs() const noexcept {
        return payoffs_;
    }

  private:
    DecisionProblem() = default;

    std::vector<History> histories_;
    std::map<History, std::size_t> index_;
    std::vector<bool> terminal_;
    std::vector<std::size_t> terminal_list_;
    std::vector<std::vector<std::size_t>> info_sets_;
    std::vector<std::size_t> cell_of_; // SIZE_MAX for terminals
    std::vector<std::vector<int>> actions_;
    std::map<std::size_t, Label> labels_;
    std::map<std::pair<std::size_t, int>, std::size_t> children_;
    std::optional<std::map<Label, double>> payoffs_;
};

/// One action per information set, indexed like DecisionProblem::info_sets().
struct PureStrategy {
    std::vector<int> choice;
    auto operator<=>(const PureStrategy &) const = default;
};

struct MixedStrategy {
    std::vector<std::pair<PureStrategy, double>> weights;
};

/// Per information set, a distribution over DecisionProblem::actions(cell).
struct BehavioralStrategy {
    std::vector<std::vector<double>> local;
};

using Strategy = std::variant<PureStrategy, MixedStrategy, BehavioralStrategy>;

/// Probability distribution over outcome labels.
class OutcomeDistribution {
  public:
    OutcomeDistribution() = default;
    /// Throws unless probabilities are nonnegative and sum to 1 within 1e-12.
    static OutcomeDistribution from_map(std::map<Label, double> probs);

    [[nodiscard]] const std::map<Label, double> &probabilities() const noexcept {
        return probs_;
    }
    [[nodiscard]] double operator[](const Label &label) const;
    [[nodiscard]] double total() const;

  private:
    explicit OutcomeDistribution(std::map<Label, double> p) : probs_(std::move(p)) {}
    std::map<Label, double> probs_;
};

// Concrete problems.

/// Choose a_k, forget it, choose b_l: outcome O(a_k, b_l) = labels[2k + l].
DecisionProblem two_stage_problem(const std::array<Label, 4> &labels = {"o00", "o01",
                                                                        "o10", "o11"});
/// n = 1 case of n_tuple_driver.
DecisionProblem absentminded_driver(double lambda);
/// n+1 indistinguishable intersections; action 0 = exit, 1 = motorway.
/// Labels exit_1..exit_n (payoff 0), home (lambda), lodge (1).
DecisionProblem n_tuple_driver(int n, double lambda);
/// Same tree with labels o1..o{n+2} and no payoffs; o{t+1} is the exit after
/// t motorway moves and o{n+2} is always-motorway.
DecisionProblem n_tuple_outcomes(int n);

std::vector<PureStrategy> pure_strategies(const DecisionProblem &problem);

OutcomeDistribution outcome_of(const DecisionProblem &problem, const PureStrategy &s);
OutcomeDistribution outcome_of(const DecisionProblem &problem, const MixedStrategy &s);
OutcomeDistribution outcome_of(const DecisionProblem &problem,
                               const BehavioralStrategy &s);
OutcomeDistribution outcome_of(const DecisionProblem &problem, const Strategy &s);

double expected_payoff(const DecisionProblem &problem, const OutcomeDistribution &d);
double expected_payoff_classical(const DecisionProblem &problem, const Strategy &s);

/// Convenience for the single-information-set driver family: exit with p.
BehavioralStrategy exit_with_probability(double p);

/// The experience e(h): information sets visited and actions taken along h,
/// ending with the cell in which the move at h is made. Encoded as
/// [cell_0, action_1, cell_1, action_2, ..., cell_K].
std::vector<std::size_t> experience(const DecisionProblem &problem, std::size_t h);

bool has_imperfect_recall(const DecisionProblem &problem);

/// Max absolute difference <= tol. Throws on differing label sets.
bool outcome_equivalent(const OutcomeDistribution &a, const OutcomeDistribution &b,
                        double tol);
double max_abs_difference(const OutcomeDistribution &a, const OutcomeDistribution &b);

struct GapOptions {
    int grid_points = 201;
    /// Upper bound on grid evaluations; the per-axis count shrinks to fit.
    std::size_t grid_budget = 2'000'000;
};

struct GapResult {
    double gap = 0.0;
    BehavioralStrategy witness;
};

/// min over behavioral strategies of max_label |O(b)(label) - target(label)|,
/// by grid search followed by pattern-search refinement.
GapResult behavioral_gap(const DecisionProblem &problem,
                         const OutcomeDistribution &target,
                         const GapOptions &options = {});

nlohmann::json to_json(const DecisionProblem &problem);
DecisionProblem problem_from_json(const nlohmann::json &doc);

} // namespace ewl::decision
