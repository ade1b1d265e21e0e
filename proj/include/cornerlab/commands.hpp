#pragma once

#include "cornerlab/artifacts.hpp"
#include "cornerlab/config.hpp"

namespace cornerlab {

struct RunContext {
  int jobs = 1;
};

// Throws ConfigError naming the offending field. Shares its readers with execute().
void validate_parameters(const std::string& command, const Json& parameters);

RunOutput execute(const RunConfig& cfg, const RunContext& ctx = {});

}  // namespace cornerlab
