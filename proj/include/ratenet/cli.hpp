#pragma once

#include <string>

#include "ratenet/config.hpp"

namespace ratenet {

// Runs one subcommand and writes its CSV files under c.out.
void run_command(const std::string& command, const ExperimentConfig& c);

// Full command line: exit 0 on success, 2 for configuration errors, 3 for
// numerical failures.
int run_cli(int argc, char** argv);

}  // namespace ratenet
