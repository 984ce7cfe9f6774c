#pragma once

#include "config.hpp"

namespace aniso::cli {

int cmd_lp_analyze(RunConfig& cfg);
int cmd_besov_norm(RunConfig& cfg);
int cmd_profile_extract(RunConfig& cfg);
int cmd_ns_solve(RunConfig& cfg);
int cmd_make_corpus(RunConfig& cfg);

}  // namespace aniso::cli
