#pragma once

#include <string>
#include <vector>

#include "catbond/config.hpp"

namespace catbond {

struct CheckResult {
    std::string name;
    double value_a;
    double value_b;
    double tolerance;
    bool pass;
};

// Closed-form-vs-oracle battery for the configured model. Deterministic for
// a fixed seed, independent of worker count.
std::vector<CheckResult> run_validation(const ScenarioConfig& config);

std::string checks_to_csv(const std::vector<CheckResult>& checks);
bool all_pass(const std::vector<CheckResult>& checks);

}  // namespace catbond
