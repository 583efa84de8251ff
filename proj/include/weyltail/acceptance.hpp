#pragma once

#include <functional>
#include <string>
#include <vector>

namespace wt {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    bool reproducible = true; // false: only a substitute check was run
    std::string detail;
    double seconds = 0;
};

struct AcceptanceOptions {
    bool quick = false; // reduced sample sizes, same thresholds
    int threads = 1;
    unsigned long long seed = 20240601;
    std::vector<int> only; // empty: all of 1..12
};

// "PASS 6 rational/irrational tail law ... (12.3 s)"
std::string format_result(const CriterionResult& r);

// runs the criteria in order; on_result fires as each one finishes
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                            const std::function<void(const CriterionResult&)>& on_result = {});

} // namespace wt
