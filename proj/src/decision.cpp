#include "ewl/decision.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "ewl/error.hpp"
#include "ewl/kernels.hpp"

namespace ewl::decision {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
constexpr double kProbTolerance = 1e-12;

std::string show(const History &h) {
    std::string s = "(";
    for (std::size_t i = 0; i < h.size(); ++i) {
        s += (i ? "," : "") + std::to_string(h[i]);
    }
    return s + ")";
}

bool shorter_first(const History &a, const History &b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
}

void check_distribution(const std::vector<double> &p, const std::string &what) {
    double sum = 0.0;
    for (double x : p) {
        if (!std::isfinite(x) || x < 0.0) {
            throw ValidationError(what + " has a negative or non-finite entry");
        }
        sum += x;
    }
    if (std::abs(sum - 1.0) > kProbTolerance) {
        throw ValidationError(what + " does not sum to 1");
    }
}

History repeat(int action, int times) {
    return History(static_cast<std::size_t>(times), action);
}

void check_pure(const DecisionProblem &problem, const PureStrategy &s) {
    const auto &cells = problem.info_sets();
    if (s.choice.size() != cells.size()) {
        throw ValidationError("pure strategy covers " + std::to_string(s.choice.size()) +
                              " information sets, problem has " +
                              std::to_string(cells.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const auto &acts = problem.actions(c);
        if (!std::binary_search(acts.begin(), acts.end(), s.choice[c])) {
            throw ValidationError("pure strategy picks unavailable action " +
                                  std::to_string(s.choice[c]));
        }
    }
}

void check_behavioral(const DecisionProblem &problem, const BehavioralStrategy &s) {
    const auto &cells = problem.info_sets();
    if (s.local.size() != cells.size()) {
        throw ValidationError("behavioral strategy covers " +
                              std::to_string(s.local.size()) +
                              " information sets, problem has " +
                              std::to_string(cells.size()));
    }
    for (std::size_t c = 0; c < cells.size(); ++c) {
        if (s.local[c].size() != problem.actions(c).size()) {
            throw ValidationError("local rule size does not match the action set");
        }
        check_distribution(s.local[c], "local rule");
    }
}

// Behavioral outcome without validation; used in tight loops.
std::map<Label, double> behavioral_outcome(const DecisionProblem &problem,
                                           const BehavioralStrategy &s) {
    std::map<Label, double> probs;
    for (const auto &l : problem.outcome_labels()) {
        probs[l] = 0.0;
    }
    // Histories are ordered by length, so a forward pass sees parents first.
    const auto &hs = problem.histories();
    std::vector<double> reach(hs.size(), 0.0);
    reach[0] = 1.0;
    for (std::size_t h = 0; h < hs.size(); ++h) {
        if (problem.is_terminal(h)) {
            probs[problem.label(h)] += reach[h];
            continue;
        }
        const std::size_t cell = problem.info_set_of(h);
        const auto &acts = problem.actions(cell);
        for (std::size_t k = 0; k < acts.size(); ++k) {
            reach[problem.child(h, acts[k])] = reach[h] * s.local[cell][k];
        }
    }
    return probs;
}

// Stick-breaking map from [0,1]^{d-1} onto the (d-1)-simplex.
void unpack(std::span<const double> x, const DecisionProblem &problem,
            BehavioralStrategy &out) {
    std::size_t pos = 0;
    for (std::size_t c = 0; c < problem.info_sets().size(); ++c) {
        auto &local = out.local[c];
        double remaining = 1.0;
        for (std::size_t k = 0; k + 1 < local.size(); ++k) {
            local[k] = remaining * x[pos++];
            remaining -= local[k];
        }
        local.back() = std::max(remaining, 0.0);
    }
}

} // namespace

DecisionProblem DecisionProblem::create(std::vector<History> histories,
                                        std::map<History, Label> terminal_labels,
                                        std::vector<std::vector<History>> info_sets,
                                        std::optional<std::map<Label, double>> payoffs) {
    DecisionProblem p;
    std::sort(histories.begin(), histories.end(), shorter_first);
    if (std::adjacent_find(histories.begin(), histories.end()) != histories.end()) {
        throw ValidationError("duplicate history");
    }
    if (histories.empty() || !histories.front().empty()) {
        throw ValidationError("the empty history must be present");
    }
    for (std::size_t i = 0; i < histories.size(); ++i) {
        p.index_[histories[i]] = i;
    }
    p.histories_ = std::move(histories);
    const std::size_t count = p.histories_.size();
    p.terminal_.assign(count, true);
    for (std::size_t i = 1; i < count; ++i) {
        const History &h = p.histories_[i];
        if (h.back() < 0) {
            throw ValidationError("negative action index in " + show(h));
        }
        History parent(h.begin(), h.end() - 1);
        auto it = p.index_.find(parent);
        if (it == p.index_.end()) {
            throw ValidationError("history set is not prefix-closed at " + show(h));
        }
        p.terminal_[it->second] = false;
        p.children_[{it->second, h.back()}] = i;
    }
    for (std::size_t i = 0; i < count; ++i) {
        if (p.terminal_[i]) {
            p.terminal_list_.push_back(i);
        }
    }

    if (terminal_labels.size() != p.terminal_list_.size()) {
        throw ValidationError("terminal labels must cover exactly the terminal histories");
    }
    for (const auto &[h, label] : terminal_labels) {
        auto it = p.index_.find(h);
        if (it == p.index_.end() || !p.terminal_[it->second]) {
            throw ValidationError("label attached to non-terminal history " + show(h));
        }
        p.labels_[it->second] = label;
    }

    p.cell_of_.assign(count, kNone);
    for (std::size_t c = 0; c < info_sets.size(); ++c) {
        if (info_sets[c].empty()) {
            throw ValidationError("empty information set");
        }
        std::vector<std::size_t> cell;
        for (const auto &h : info_sets[c]) {
            auto it = p.index_.find(h);
            if (it == p.index_.end()) {
                throw ValidationError("information set names unknown history " + show(h));
            }
            if (p.terminal_[it->second]) {
                throw ValidationError("terminal history " + show(h) +
                                      " inside an information set");
            }
            if (p.cell_of_[it->second] != kNone) {
                throw ValidationError("history " + show(h) +
                                      " appears in two information sets");
            }
            p.cell_of_[it->second] = c;
            cell.push_back(it->second);
        }
        std::sort(cell.begin(), cell.end());
        p.info_sets_.push_back(std::move(cell));
    }
    for (std::size_t i = 0; i < count; ++i) {
        if (!p.terminal_[i] && p.cell_of_[i] == kNone) {
            throw ValidationError("history " + show(p.histories_[i]) +
                                  " is not in any information set");
        }
    }

    for (const auto &cell : p.info_sets_) {
        std::vector<int> reference;
        for (std::size_t k = 0; k < cell.size(); ++k) {
            std::vector<int> acts;
            for (auto it = p.children_.lower_bound({cell[k], 0});
                 it != p.children_.end() && it->first.first == cell[k]; ++it) {
                acts.push_back(it->first.second);
            }
            if (k == 0) {
                reference = std::move(acts);
            } else if (acts != reference) {
                throw ValidationError("histories in one information set have "
                                      "different action sets");
            }
        }
        p.actions_.push_back(std::move(reference));
    }

    if (payoffs) {
        for (const auto &[h, label] : p.labels_) {
            const auto it = payoffs->find(label);
            if (it == payoffs->end()) {
                throw ValidationError("no payoff for outcome '" + label + "'");
            }
            if (!std::isfinite(it->second)) {
                throw ValidationError("payoff for '" + label + "' is not finite");
            }
        }
    }
    p.payoffs_ = std::move(payoffs);
    return p;
}

std::size_t DecisionProblem::index_of(const History &h) const {
    auto it = index_.find(h);
    if (it == index_.end()) {
        throw ValidationError("unknown history " + show(h));
    }
    return it->second;
}

std::size_t DecisionProblem::info_set_of(std::size_t h) const {
    if (h >= cell_of_.size() || cell_of_[h] == kNone) {
        throw ValidationError("history has no information set");
    }
    return cell_of_[h];
}

std::size_t DecisionProblem::child(std::size_t h, int action) const {
    auto it = children_.find({h, action});
    if (it == children_.end()) {
        throw ValidationError("action " + std::to_string(action) +
                              " not available after " + show(histories_.at(h)));
    }
    return it->second;
}

const Label &DecisionProblem::label(std::size_t terminal_history) const {
    auto it = labels_.find(terminal_history);
    if (it == labels_.end()) {
        throw ValidationError("history is not terminal");
    }
    return it->second;
}

std::vector<Label> DecisionProblem::outcome_labels() const {
    std::set<Label> s;
    for (const auto &[h, l] : labels_) {
        s.insert(l);
    }
    return {s.begin(), s.end()};
}

OutcomeDistribution OutcomeDistribution::from_map(std::map<Label, double> probs) {
    double sum = 0.0;
    for (const auto &[l, p] : probs) {
        if (!std::isfinite(p) || p < 0.0) {
            throw ValidationError("outcome probability for '" + l + "' is invalid");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kProbTolerance) {
        throw ValidationError("outcome probabilities sum to " + std::to_string(sum));
    }
    return OutcomeDistribution(std::move(probs));
}

double OutcomeDistribution::operator[](const Label &label) const {
    auto it = probs_.find(label);
    if (it == probs_.end()) {
        throw ValidationError("unknown outcome label '" + label + "'");
    }
    return it->second;
}

double OutcomeDistribution::total() const {
    double s = 0.0;
    for (const auto &[l, p] : probs_) {
        s += p;
    }
    return s;
}

DecisionProblem two_stage_problem(const std::array<Label, 4> &labels) {
    const std::set<Label> distinct(labels.begin(), labels.end());
    if (distinct.size() != 4) {
        throw ValidationError("two-stage problem needs four distinct labels");
    }
    std::vector<History> hs{{}, {0}, {1}, {0, 0}, {0, 1}, {1, 0}, {1, 1}};
    std::map<History, Label> lab;
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
            lab[{k, l}] = labels[static_cast<std::size_t>(2 * k + l)];
        }
    }
    return DecisionProblem::create(std::move(hs), std::move(lab), {{{}}, {{0}, {1}}});
}

namespace {

// Chain of n+1 intersections; label(t) names the exit after t motorway moves.
template <class LabelFn>
DecisionProblem driver_chain(int n, LabelFn label, const Label &all_motorway,
                             std::optional<std::map<Label, double>> payoffs) {
    if (n < 1) {
        throw ValidationError("n must be >= 1, got " + std::to_string(n));
    }
    std::vector<History> hs{{}};
    std::map<History, Label> lab;
    std::vector<History> cell;
    for (int t = 0; t <= n; ++t) {
        History exit = repeat(1, t);
        cell.push_back(exit);
        exit.push_back(0);
        hs.push_back(exit);
        lab[exit] = label(t);
        hs.push_back(repeat(1, t + 1));
    }
    lab[repeat(1, n + 1)] = all_motorway;
    return DecisionProblem::create(std::move(hs), std::move(lab), {cell},
                                   std::move(payoffs));
}

} // namespace

DecisionProblem absentminded_driver(double lambda) { return n_tuple_driver(1, lambda); }

DecisionProblem n_tuple_driver(int n, double lambda) {
    if (!std::isfinite(lambda)) {
        throw ValidationError("lambda must be finite");
    }
    std::map<Label, double> payoffs{{"home", lambda}, {"lodge", 1.0}};
    for (int t = 1; t <= n; ++t) {
        payoffs["exit_" + std::to_string(t)] = 0.0;
    }
    auto label = [n](int t) -> Label {
        return t == n ? "home" : "exit_" + std::to_string(t + 1);
    };
    return driver_chain(n, label, "lodge", std::move(payoffs));
}

DecisionProblem n_tuple_outcomes(int n) {
    auto label = [](int t) { return "o" + std::to_string(t + 1); };
    return driver_chain(n, label, "o" + std::to_string(n + 2), std::nullopt);
}

std::vector<PureStrategy> pure_strategies(const DecisionProblem &problem) {
    std::vector<PureStrategy> out{PureStrategy{}};
    for (std::size_t c = 0; c < problem.info_sets().size(); ++c) {
        std::vector<PureStrategy> next;
        for (const auto &s : out) {
            for (int a : problem.actions(c)) {
                PureStrategy t = s;
                t.choice.push_back(a);
                next.push_back(std::move(t));
            }
        }
        out = std::move(next);
    }
    return out;
}

OutcomeDistribution outcome_of(const DecisionProblem &problem, const PureStrategy &s) {
    check_pure(problem, s);
    std::map<Label, double> probs;
    for (const auto &l : problem.outcome_labels()) {
        probs[l] = 0.0;
    }
    std::size_t h = 0;
    while (!problem.is_terminal(h)) {
        h = problem.child(h, s.choice[problem.info_set_of(h)]);
    }
    probs[problem.label(h)] = 1.0;
    return OutcomeDistribution::from_map(std::move(probs));
}

OutcomeDistribution outcome_of(const DecisionProblem &problem, const MixedStrategy &s) {
    std::vector<double> w;
    for (const auto &[pure, weight] : s.weights) {
        check_pure(problem, pure);
        w.push_back(weight);
    }
    check_distribution(w, "mixed strategy");
    std::map<Label, double> probs;
    for (const auto &l : problem.outcome_labels()) {
        probs[l] = 0.0;
    }
    for (const auto &[pure, weight] : s.weights) {
        const auto d = outcome_of(problem, pure);
        for (const auto &[l, p] : d.probabilities()) {
            probs[l] += weight * p;
        }
    }
    return OutcomeDistribution::from_map(std::move(probs));
}

OutcomeDistribution outcome_of(const DecisionProblem &problem,
                               const BehavioralStrategy &s) {
    check_behavioral(problem, s);
    return OutcomeDistribution::from_map(behavioral_outcome(problem, s));
}

OutcomeDistribution outcome_of(const DecisionProblem &problem, const Strategy &s) {
    return std::visit([&](const auto &x) { return outcome_of(problem, x); }, s);
}

double expected_payoff(const DecisionProblem &problem, const OutcomeDistribution &d) {
    if (!problem.has_payoffs()) {
        throw ValidationError("decision problem has outcome labels but no payoffs");
    }
    double e = 0.0;
    for (const auto &[l, p] : d.probabilities()) {
        e += p * problem.payoffs()->at(l);
    }
    return e;
}

double expected_payoff_classical(const DecisionProblem &problem, const Strategy &s) {
    return expected_payoff(problem, outcome_of(problem, s));
}

BehavioralStrategy exit_with_probability(double p) {
    return BehavioralStrategy{{{p, 1.0 - p}}};
}

std::vector<std::size_t> experience(const DecisionProblem &problem, std::size_t h) {
    const History &hist = problem.histories().at(h);
    std::vector<std::size_t> e;
    std::size_t node = 0;
    for (int a : hist) {
        e.push_back(problem.info_set_of(node));
        e.push_back(static_cast<std::size_t>(a));
        node = problem.child(node, a);
    }
    e.push_back(problem.info_set_of(node));
    return e;
}

bool has_imperfect_recall(const DecisionProblem &problem) {
    for (const auto &cell : problem.info_sets()) {
        const auto first = experience(problem, cell.front());
        for (std::size_t k = 1; k < cell.size(); ++k) {
            if (experience(problem, cell[k]) != first) {
                return true;
            }
        }
    }
    return false;
}

double max_abs_difference(const OutcomeDistribution &a, const OutcomeDistribution &b) {
    const auto &pa = a.probabilities();
    const auto &pb = b.probabilities();
    if (pa.size() != pb.size()) {
        throw ValidationError("outcome distributions have different label sets");
    }
    double d = 0.0;
    for (auto ia = pa.begin(), ib = pb.begin(); ia != pa.end(); ++ia, ++ib) {
        if (ia->first != ib->first) {
            throw ValidationError("outcome distributions have different label sets");
        }
        d = std::max(d, std::abs(ia->second - ib->second));
    }
    return d;
}

bool outcome_equivalent(const OutcomeDistribution &a, const OutcomeDistribution &b,
                        double tol) {
    return max_abs_difference(a, b) <= tol;
}

GapResult behavioral_gap(const DecisionProblem &problem,
                         const OutcomeDistribution &target,
                         const GapOptions &options) {
    const auto labels = problem.outcome_labels();
    std::vector<double> goal;
    for (const auto &l : labels) {
        goal.push_back(target[l]);
    }
    if (target.probabilities().size() != labels.size()) {
        throw ValidationError("target distribution has labels outside the problem");
    }

    BehavioralStrategy shape;
    std::size_t dims = 0;
    for (std::size_t c = 0; c < problem.info_sets().size(); ++c) {
        shape.local.emplace_back(problem.actions(c).size(), 0.0);
        dims += problem.actions(c).size() - 1;
    }

    auto distance = [&](std::span<const double> x) {
        BehavioralStrategy b = shape;
        unpack(x, problem, b);
        const auto probs = behavioral_outcome(problem, b);
        double d = 0.0;
        std::size_t k = 0;
        for (const auto &[l, p] : probs) {
            d = std::max(d, std::abs(p - goal[k++]));
        }
        return d;
    };

    if (dims == 0) {
        std::vector<double> none;
        BehavioralStrategy b = shape;
        unpack(none, problem, b);
        return {distance(none), b};
    }

    std::size_t per_axis = static_cast<std::size_t>(std::max(options.grid_points, 2));
    while (per_axis > 2 &&
           std::pow(static_cast<double>(per_axis), static_cast<double>(dims)) >
               static_cast<double>(options.grid_budget)) {
        --per_axis;
    }
    std::size_t total = 1;
    for (std::size_t d = 0; d < dims; ++d) {
        total *= per_axis;
    }
    const double spacing = 1.0 / static_cast<double>(per_axis - 1);
    auto grid_point = [&](std::size_t flat) {
        std::vector<double> x(dims);
        for (std::size_t d = dims; d-- > 0;) {
            x[d] = static_cast<double>(flat % per_axis) * spacing;
            flat /= per_axis;
        }
        return x;
    };

    const auto best = kernels::parallel::argmax(
        total, [&](std::size_t i) { return -distance(grid_point(i)); });
    std::vector<double> x = grid_point(best.index);
    double value = -best.value;

    // Pattern search over all 3^dims - 1 directions (axes only beyond 3 dims).
    std::vector<std::vector<double>> directions;
    if (dims <= 3) {
        std::size_t combos = 1;
        for (std::size_t d = 0; d < dims; ++d) {
            combos *= 3;
        }
        for (std::size_t c = 0; c < combos; ++c) {
            std::vector<double> dir(dims);
            std::size_t r = c;
            bool zero = true;
            for (std::size_t d = 0; d < dims; ++d) {
                dir[d] = static_cast<double>(r % 3) - 1.0;
                zero = zero && dir[d] == 0.0;
                r /= 3;
            }
            if (!zero) {
                directions.push_back(std::move(dir));
            }
        }
    } else {
        for (std::size_t d = 0; d < dims; ++d) {
            for (double s : {-1.0, 1.0}) {
                std::vector<double> dir(dims);
                dir[d] = s;
                directions.push_back(std::move(dir));
            }
        }
    }
    double step = spacing;
    while (step > 1e-13 && value > 0.0) {
        bool moved = false;
        for (const auto &dir : directions) {
            std::vector<double> y = x;
            for (std::size_t d = 0; d < dims; ++d) {
                y[d] = std::clamp(y[d] + step * dir[d], 0.0, 1.0);
            }
            const double v = distance(y);
            if (v < value) {
                value = v;
                x = std::move(y);
                moved = true;
                break;
            }
        }
        if (!moved) {
            step *= 0.5;
        }
    }

    BehavioralStrategy witness = shape;
    unpack(x, problem, witness);
    return {value, witness};
}

nlohmann::json to_json(const DecisionProblem &problem) {
    nlohmann::ordered_json doc;
    doc["histories"] = problem.histories();
    doc["info_sets"] = problem.info_sets();
    auto labels = nlohmann::ordered_json::array();
    for (std::size_t h : problem.terminals()) {
        labels.push_back({{"history", h}, {"label", problem.label(h)}});
    }
    doc["labels"] = labels;
    if (problem.has_payoffs()) {
        doc["payoffs"] = *problem.payoffs();
    }
    return nlohmann::json(doc);
}

DecisionProblem problem_from_json(const nlohmann::json &doc) {
    try {
        const auto histories = doc.at("histories").get<std::vector<History>>();
        auto at = [&](std::size_t i) -> const History & {
            if (i >= histories.size()) {
                throw ValidationError("history index " + std::to_string(i) +
                                      " out of range");
            }
            return histories[i];
        };
        std::map<History, Label> labels;
        for (const auto &entry : doc.at("labels")) {
            labels[at(entry.at("history").get<std::size_t>())] =
                entry.at("label").get<Label>();
        }
        std::vector<std::vector<History>> cells;
        for (const auto &cell : doc.at("info_sets")) {
            std::vector<History> c;
            for (const auto &i : cell) {
                c.push_back(at(i.get<std::size_t>()));
            }
            cells.push_back(std::move(c));
        }
        std::optional<std::map<Label, double>> payoffs;
        if (doc.contains("payoffs") && !doc.at("payoffs").is_null()) {
            payoffs = doc.at("payoffs").get<std::map<Label, double>>();
        }
        return DecisionProblem::create(histories, std::move(labels), std::move(cells),
                                       std::move(payoffs));
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError(std::string("malformed decision problem document: ") +
                              e.what());
    }
}

} // namespace ewl::decision
