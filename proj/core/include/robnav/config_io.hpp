/// @file config_io.hpp JSON experiment configuration.

#pragma once

#include <filesystem>

#include "robnav/experiment.hpp"

namespace robnav {

/// Parses a JSON config file into an ExperimentConfig. Every key is optional
/// and defaults to the values documented in the README; unknown keys are
/// rejected. Throws ConfigError on any problem.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Parses a JSON string (same schema as the file form).
ExperimentConfig parse_experiment_config(const std::string& json_text);

}  // namespace robnav
