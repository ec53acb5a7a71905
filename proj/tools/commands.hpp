#pragma once

#include <string>

#include "config.hpp"

namespace polyball::cli {

// Each command writes its report and returns the process exit code.
// Library errors propagate; main maps them to exit codes.
int cmd_verify(const RunConfig& cfg);
int cmd_dilate(const std::string& kernel_path, const RunConfig& cfg);
int cmd_transform(const std::string& kind, const std::string& inputs_path, const RunConfig& cfg);

}  // namespace polyball::cli
