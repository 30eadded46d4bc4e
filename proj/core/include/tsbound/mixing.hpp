#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace tsbound {

/// beta_a = c1 exp(-c2 a^kappa).
struct ExponentialMixing {
  double c1 = 1.0;
  double c2 = 1.0;
  double kappa = 1.0;
};

/// beta_a = c1 a^{-r}.
struct AlgebraicMixing {
  double c1 = 1.0;
  double r = 1.0;
};

/// Tabulated (gap, beta) pairs, gaps strictly increasing and betas nonincreasing.
/// Gaps between entries use the entry at the nearest smaller gap, gaps past the end use
/// the last entry, and gaps before the first entry return 1.
struct TabulatedMixing {
  std::vector<std::pair<long, double>> entries;
};

/// Decay of the beta-mixing coefficients as a function of the gap a.
class MixingProfile {
 public:
  using Form = std::variant<ExponentialMixing, AlgebraicMixing, TabulatedMixing>;

  explicit MixingProfile(Form form);

  static MixingProfile exponential(double c1, double c2, double kappa) {
    return MixingProfile(ExponentialMixing{c1, c2, kappa});
  }
  static MixingProfile algebraic(double c1, double r) {
    return MixingProfile(AlgebraicMixing{c1, r});
  }
  static MixingProfile table(std::vector<std::pair<long, double>> entries) {
    return MixingProfile(TabulatedMixing{std::move(entries)});
  }
  /// beta identically zero (independent data).
  static MixingProfile independent() { return table({{0, 0.0}}); }
  /// beta identically `value`.
  static MixingProfile constant(double value) { return table({{0, value}}); }

  const Form& form() const noexcept { return form_; }
  std::string describe() const;

 private:
  Form form_;
};

/// beta_a clamped to [0, 1]. Throws InvalidInput for a < 0.
double beta_at(const MixingProfile& profile, long a);

/// Two-column (gap, beta) CSV with a header row.
MixingProfile read_mixing_table_csv(std::istream& in);
MixingProfile read_mixing_table_csv_file(const std::string& path);

/// mu pairs of blocks of length a over a sample of size n with memory d.
struct BlockingPlan {
  long mu = 1;
  long a = 1;
  long d = 0;
  long n = 0;
  /// beta_{a-d}
  double beta_gap = 0.0;

  /// Checks 2 mu a + d <= n and positivity; throws on violation.
  void validate() const;
};

/// Builds a plan with beta_gap looked up from `profile`. Requires a > d.
BlockingPlan make_plan(long n, long d, long a, long mu, const MixingProfile& profile);

/// 1-based inclusive index range.
struct IndexRange {
  long first;
  long last;
  long length() const noexcept { return last - first + 1; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

struct BlockPartition {
  std::vector<IndexRange> odd;   // U_1..U_mu
  std::vector<IndexRange> even;  // V_1..V_mu
  /// Trailing indices left out of every block, as [first, n]; empty when first > n.
  IndexRange remainder;
};

/// U_j = 2(j-1)a+1 .. (2j-1)a, V_j = (2j-1)a+1 .. 2ja. Throws Infeasible if 2 mu a + d > n.
BlockPartition block_partition(long n, long d, long a, long mu);

/// eta' = eta - 2 mu beta. Throws InvalidInput unless 0 < eta < 1 and Infeasible if eta' <= 0.
double effective_eta(double eta, long mu, double beta_gap);

}  // namespace tsbound

#include "tsbound/penalty.hpp"

namespace tsbound {

/// Grid search over block lengths a in {d+1, ..., floor((n-d)/2)} with mu = floor((n-d)/(2a)),
/// keeping plans with eta' > 0 and returning the one with the smallest penalty. Ties go to
/// the smaller a. Throws Infeasible when no plan qualifies.
BlockingPlan choose_blocks(long n, long d, const MixingProfile& profile, double eta, int vcd,
                           double moment_m, PenaltyVariant variant = PenaltyVariant::as_printed);

}  // namespace tsbound
