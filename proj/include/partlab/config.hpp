#pragma once

#include <filesystem>
#include <string>

#include "partlab/harness.hpp"

namespace partlab {

/// Reads a flat `key = value` config file (# starts a comment) into an
/// ExperimentSpec. Unknown keys are errors. The schema is documented in
/// the README.
ExperimentSpec load_config(const std::filesystem::path& path);

/// Applies one `key = value` pair to a spec; same keys as the file format.
void apply_config_value(ExperimentSpec& spec, const std::string& key,
                        const std::string& value);

/// Parses "periodic:<p>" or "auto".
Criterion parse_criterion(const std::string& text);

}  // namespace partlab
