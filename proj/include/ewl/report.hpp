#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace ewl {

using ordered_json = nlohmann::ordered_json;

/// One verification result. Serialized as
/// {check, inputs, expected, actual, deviation, pass[, note]} in that order.
struct Check {
    std::string name;
    ordered_json inputs = ordered_json::object();
    ordered_json expected;
    ordered_json actual;
    double deviation = 0.0;
    bool pass = false;
    /// Set for known discrepancies that pass with an explanation.
    std::string note;

    /// |actual - expected| <= tolerance. The tolerance is recorded in inputs.
    static Check numeric(std::string name, ordered_json inputs, double expected,
                         double actual, double tolerance);
    /// Aggregate over a sweep: expected deviation 0, actual = observed maximum.
    static Check max_deviation(std::string name, ordered_json inputs, double deviation,
                               double tolerance);
    /// Exact comparison of booleans, labels or other JSON values.
    static Check equals(std::string name, ordered_json inputs, ordered_json expected,
                        ordered_json actual);

    [[nodiscard]] ordered_json to_json() const;
};

struct Report {
    std::string title;
    std::vector<Check> checks;

    void add(Check c) { checks.push_back(std::move(c)); }
    void append(const Report &other);
    [[nodiscard]] bool all_pass() const;
    /// Largest deviation among tolerance checks without a note.
    [[nodiscard]] double max_deviation() const;

    [[nodiscard]] ordered_json to_json() const;
    [[nodiscard]] std::string to_text() const;
    /// check,inputs,expected,actual,deviation,pass,note
    [[nodiscard]] std::string to_csv() const;
};

/// Shortest round-trippable rendering of a double for text tables.
std::string format_number(double x, int significant = 12);

} // namespace ewl
