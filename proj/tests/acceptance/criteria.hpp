#pragma once

// The acceptance battery. Each criterion measures its quantities, applies its
// pass rule and its wall-clock limit, and reports the numbers it saw.

#include <functional>
#include <string>
#include <vector>

#include "envsieve/report.hpp"

namespace acceptance {

struct Outcome {
    int id = 0;
    std::string title;
    bool pass = false;
    double seconds = 0;
    double limit_seconds = 0;
    std::vector<std::string> failures;  // one entry per failed sub-check
    envsieve::report::json detail = envsieve::report::json::object();
};

struct Criterion {
    int id;
    std::string title;
    double limit_seconds;
    std::function<void(Outcome&)> run;
};

const std::vector<Criterion>& criteria();

/// Runs one criterion, timing it; a thrown error is recorded as a failure.
Outcome run(const Criterion& c);

/// "PASS  3  title  (1.2 s, limit 60 s)" plus the failed sub-checks.
std::string summary_line(const Outcome& o);

}  // namespace acceptance
