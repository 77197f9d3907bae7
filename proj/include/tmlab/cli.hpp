#pragma once

#include <string>
#include <vector>

namespace tmlab {

// The tmlab command line: train, analyze, diagram, table. `args` excludes the
// program name. Returns the process exit code: 0 success, 2 configuration or
// validation error, 3 analysis-too-large, 1 anything else.
int run_cli(const std::vector<std::string>& args);

}  // namespace tmlab
