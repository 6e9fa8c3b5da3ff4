// Standalone acceptance runner: one pass/fail line per criterion, exit 0
// iff all pass.

#include "lemon/verify.hpp"

#include <cstdio>

int main(int argc, char** argv) {
    std::string filter = argc > 1 ? argv[1] : "";
    auto results = lemon::run_acceptance(filter);
    bool all = true;
    for (const auto& r : results) {
        std::printf("[%s] %-20s (%.2fs)%s%s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.seconds, r.detail.empty() ? "" : " ", r.detail.c_str());
        all = all && r.pass;
    }
    std::printf("%s\n", all ? "acceptance: all criteria passed" : "acceptance: FAILURES present");
    return all ? 0 : 1;
}
