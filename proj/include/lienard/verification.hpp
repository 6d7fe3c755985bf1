#pragma once

// Self-checks that aggregate the cross-validation oracles of every layer.

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace lienard::verification {

enum class Suite { Classical, Semiclassical, Quantum, All };

Suite parse_suite(std::string_view name);
std::string_view to_string(Suite suite);

struct CheckResult {
    std::string suite;
    std::string name;
    bool passed = false;
    double value = 0.0;      ///< measured error (or the quantity bounded from below)
    double tolerance = 0.0;
};

struct Report {
    std::vector<CheckResult> checks;
    bool passed() const;
};

/// Runs the requested suite(s); with `parallel` the three suites of `All`
/// run on separate threads. Results keep a fixed order either way.
Report run(Suite suite, bool parallel = false);

nlohmann::ordered_json to_json(const Report& report, Suite suite);

}  // namespace lienard::verification
