#pragma once

#include <functional>
#include <string>
#include <vector>

namespace weylflow {

struct Measurement {
    std::string name;
    double value = 0.0;
    std::string relation;  // "<", "<=", ">", ">=", "=="
    double threshold = 0.0;
    bool passed = false;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::vector<Measurement> measurements;
    std::string error;  // set when the check itself threw
};

inline constexpr int kCriterionCount = 12;

/// Runs one acceptance criterion (1..12). Never throws: library errors are
/// recorded as a failed criterion.
CriterionResult run_criterion(int id);

/// Runs the given criteria in order (all when empty); `progress` is called
/// after each one.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids = {},
                                            const std::function<void(const CriterionResult&)>& progress = {});

/// One line per criterion: "PASS  3  title  name=value (< thr), ...".
std::string summary_line(const CriterionResult& r);

}  // namespace weylflow
