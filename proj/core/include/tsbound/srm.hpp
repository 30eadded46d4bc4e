#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tsbound/bounds.hpp"
#include "tsbound/mixing.hpp"

namespace tsbound {

/// One model competing in bound-based selection. Each candidate carries its own memory and
/// blocking plan, since the plan depends on d.
struct CandidateModel {
  std::string name;
  long d = 0;
  int vcd = 1;
  double train_err = 0.0;
  double delta_d = 0.0;
  /// When absent, srm_select picks one with choose_blocks (requires profile and n).
  std::optional<BlockingPlan> plan;
  /// Informational AIC column.
  std::optional<double> neg_loglik;
  int n_params = 0;
  /// Filled in by srm_select.
  BoundReport report;
};

struct SrmOptions {
  double eta = 0.15;
  double moment_m = 1.0;
  PenaltyVariant variant = PenaltyVariant::as_printed;
  std::optional<MixingProfile> profile;
  /// Sample size used when a plan must be chosen.
  long n = 0;
  /// Candidate the AIC column is reported against; empty picks "Mean" if present, else the
  /// first input candidate.
  std::string aic_baseline;
};

struct SrmResult {
  /// Ascending by total bound; ties by smaller vcd, then name.
  std::vector<CandidateModel> ranked;
  /// AIC minus baseline AIC, aligned with `ranked`; absent without a likelihood.
  std::vector<std::optional<double>> aic_delta;
  std::string baseline;
  /// ranked.front() is the selected model. `trivial` when even the winner's bound is vacuous.
  bool winner_trivial = false;

  const CandidateModel& winner() const { return ranked.front(); }
};

/// Recomputes every candidate's bound and ranks them. Throws InvalidInput on an empty list.
SrmResult srm_select(std::vector<CandidateModel> candidates, const SrmOptions& options);

/// 2 neg_loglik + 2 n_params.
double aic(double neg_loglik, int n_params);

/// Columns: model, train, aic_delta, bound, selected.
void write_srm_csv(std::ostream& out, const SrmResult& result);
void print_srm_table(std::ostream& out, const SrmResult& result);

}  // namespace tsbound
