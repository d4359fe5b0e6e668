#pragma once

#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace hopf {

/// Execute one CLI invocation (subcommand + flags). The JSON report (or CSV
/// for sweeps) goes to `out` or to the --out file; a copy of the report is
/// stored in *report_out when given. Exit codes: 0 success, 1 input or
/// validation error, 2 internal-consistency failure.
int run_command(const std::vector<std::string>& args, nlohmann::json* report_out = nullptr,
                std::ostream& out = std::cout, std::ostream& err = std::cerr);

}  // namespace hopf
