#include "ewl/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace ewl {

namespace {

std::string render(const ordered_json &v) {
    if (v.is_number_float()) {
        return format_number(v.get<double>());
    }
    if (v.is_string()) {
        return v.get<std::string>();
    }
    return v.dump();
}

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string format_number(double x, int significant) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", significant, x);
    return buf;
}

Check Check::numeric(std::string name, ordered_json inputs, double expected,
                     double actual, double tolerance) {
    Check c;
    c.name = std::move(name);
    c.inputs = std::move(inputs);
    c.inputs["tolerance"] = tolerance;
    c.expected = expected;
    c.actual = actual;
    c.deviation = std::abs(actual - expected);
    c.pass = c.deviation <= tolerance;
    return c;
}

Check Check::max_deviation(std::string name, ordered_json inputs, double deviation,
                           double tolerance) {
    return numeric(std::move(name), std::move(inputs), 0.0, deviation, tolerance);
}

Check Check::equals(std::string name, ordered_json inputs, ordered_json expected,
                    ordered_json actual) {
    Check c;
    c.name = std::move(name);
    c.inputs = std::move(inputs);
    c.pass = expected == actual;
    c.deviation = c.pass ? 0.0 : 1.0;
    c.expected = std::move(expected);
    c.actual = std::move(actual);
    return c;
}

ordered_json Check::to_json() const {
    ordered_json j;
    j["check"] = name;
    j["inputs"] = inputs;
    j["expected"] = expected;
    j["actual"] = actual;
    j["deviation"] = deviation;
    j["pass"] = pass;
    if (!note.empty()) {
        j["note"] = note;
    }
    return j;
}

void Report::append(const Report &other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

bool Report::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const Check &c) { return c.pass; });
}

double Report::max_deviation() const {
    double m = 0.0;
    for (const auto &c : checks) {
        // Inequalities report a margin and known discrepancies a documented gap;
        // neither is an approximation error.
        if (c.inputs.contains("tolerance") && c.note.empty()) {
            m = std::max(m, c.deviation);
        }
    }
    return m;
}

ordered_json Report::to_json() const {
    ordered_json j;
    j["report"] = title;
    j["pass"] = all_pass();
    j["max_deviation"] = max_deviation();
    auto arr = ordered_json::array();
    for (const auto &c : checks) {
        arr.push_back(c.to_json());
    }
    j["checks"] = std::move(arr);
    return j;
}

std::string Report::to_text() const {
    std::ostringstream os;
    os << "== " << title << " ==\n";
    for (const auto &c : checks) {
        os << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << "  " << c.inputs.dump()
           << "\n       expected " << render(c.expected) << ", actual "
           << render(c.actual) << ", deviation " << format_number(c.deviation, 3)
           << "\n";
        if (!c.note.empty()) {
            os << "       note: " << c.note << "\n";
        }
    }
    os << (all_pass() ? "overall: PASS" : "overall: FAIL") << " (" << checks.size()
       << " checks, max deviation " << format_number(max_deviation(), 3) << ")\n";
    return os.str();
}

std::string Report::to_csv() const {
    std::ostringstream os;
    os << "check,inputs,expected,actual,deviation,pass,note\n";
    for (const auto &c : checks) {
        os << csv_field(c.name) << ',' << csv_field(c.inputs.dump()) << ','
           << csv_field(render(c.expected)) << ',' << csv_field(render(c.actual)) << ','
           << format_number(c.deviation, 6) << ',' << (c.pass ? "true" : "false") << ','
           << csv_field(c.note) << '\n';
    }
    return os.str();
}

} // namespace ewl
