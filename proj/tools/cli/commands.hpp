#pragma once

#include <exception>
#include <iosfwd>

#include "cli/params.hpp"
#include "tsbound/mixing.hpp"

namespace tsbound::cli {

/// Every subcommand prints an input echo and its report to `out` and returns the exit code.
int run_bound(const Params& p, std::ostream& out);
int run_fit(const Params& p, std::ostream& out);
int run_srm(const Params& p, std::ostream& out);
int run_tradeoff(const Params& p, std::ostream& out);
int run_hpfilter(const Params& p, std::ostream& out);
int run_fredprep(const Params& p, std::ostream& out);
int run_simulate(const Params& p, std::ostream& out);
int run_coverage(const Params& p, std::ostream& out);

/// Mixing profile from "profile" (object), "mixing_table" (CSV path) or "beta_gap" (constant);
/// independent data when none is given.
MixingProfile profile_from(const Params& p);

/// 2 invalid input, 3 infeasible, 4 non-convergence; anything unrecognized counts as invalid input.
int exit_code_for(const std::exception& e);

}  // namespace tsbound::cli
