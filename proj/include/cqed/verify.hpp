#pragma once

#include <string>
#include <vector>

namespace cqed {

/// One verification check. `relation` states how `value` is compared:
///   abs_diff : pass iff |value - expected| <= tolerance
///   le       : pass iff value <= expected
///   ge       : pass iff value >= expected
///   gt       : pass iff value >  expected
struct CheckResult {
    std::string id;
    std::string relation;
    double value = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

/// Runs the verification suite. `only` filters checks whose id contains the
/// given substring (empty = run everything).
std::vector<CheckResult> run_acceptance(const std::string& only = "");

bool all_passed(const std::vector<CheckResult>& checks);

/// "PASS id  value=... expected=... tol=..." one-liner.
std::string format_check_line(const CheckResult& c);

} // namespace cqed
