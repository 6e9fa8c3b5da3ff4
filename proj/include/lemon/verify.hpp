#pragma once

// The acceptance checks, shared by the standalone acceptance binary and
// the `verify` CLI subcommand.

#include <string>
#include <vector>

namespace lemon {

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
    double seconds;
};

// Runs every check whose name contains `filter` (all when empty).
std::vector<CheckResult> run_acceptance(const std::string& filter = "");

std::vector<std::string> acceptance_check_names();

} // namespace lemon
