#include <chrono>
#include <cstdio>

#include "cqed/verify.hpp"

int main() {
    const auto start = std::chrono::steady_clock::now();
    const auto checks = cqed::run_acceptance();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    for (const auto& c : checks) std::printf("%s\n", cqed::format_check_line(c).c_str());
    const bool ok = cqed::all_passed(checks);
    std::printf("%zu checks in %.1f s: %s\n", checks.size(), secs, ok ? "all passed" : "FAILURES PRESENT");
    return ok ? 0 : 1;
}
