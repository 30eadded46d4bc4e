#include "tsbound/mixing.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <sstream>

#include "tsbound/bounds.hpp"
#include "tsbound/error.hpp"

namespace tsbound {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double clamp01(double v) {
  if (std::isnan(v)) return 1.0;
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace

MixingProfile::MixingProfile(Form form) : form_(std::move(form)) {
  std::visit(overloaded{
                 [](const ExponentialMixing& e) {
                   if (!(e.c1 > 0.0 && e.c2 > 0.0 && e.kappa > 0.0))
                     throw InvalidInput("exponential mixing: constants must be positive");
                 },
                 [](const AlgebraicMixing& a) {
                   if (!(a.c1 > 0.0 && a.r > 0.0))
                     throw InvalidInput("algebraic mixing: constants must be positive");
                 },
                 [](const TabulatedMixing& t) {
                   if (t.entries.empty()) throw InvalidInput("mixing table is empty");
                   for (std::size_t i = 0; i < t.entries.size(); ++i) {
                     const auto [gap, beta] = t.entries[i];
                     if (gap < 0) throw InvalidInput("mixing table: negative gap");
                     if (!(beta >= 0.0 && beta <= 1.0))
                       throw InvalidInput("mixing table: beta outside [0,1] at gap " +
                                          std::to_string(gap));
                     if (i > 0) {
                       if (gap <= t.entries[i - 1].first)
                         throw InvalidInput("mixing table: gaps must be strictly increasing");
                       if (beta > t.entries[i - 1].second)
                         throw InvalidInput("mixing table: beta must be nonincreasing in the gap");
                     }
                   }
                 },
             },
             form_);
}

std::string MixingProfile::describe() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const ExponentialMixing& e) {
                   os << "exponential(c1=" << e.c1 << ", c2=" << e.c2 << ", kappa=" << e.kappa << ")";
                 },
                 [&](const AlgebraicMixing& a) {
                   os << "algebraic(c1=" << a.c1 << ", r=" << a.r << ")";
                 },
                 [&](const TabulatedMixing& t) {
                   os << "table(";
                   for (std::size_t i = 0; i < t.entries.size(); ++i)
                     os << (i ? ", " : "") << t.entries[i].first << ":" << t.entries[i].second;
                   os << ")";
                 },
             },
             form_);
  return os.str();
}

double beta_at(const MixingProfile& profile, long a) {
  if (a < 0) throw InvalidInput("beta_at: gap must be nonnegative");
  const double ad = static_cast<double>(a);
  return std::visit(
      overloaded{
          [&](const ExponentialMixing& e) { return clamp01(e.c1 * std::exp(-e.c2 * std::pow(ad, e.kappa))); },
          [&](const AlgebraicMixing& m) {
            return a == 0 ? 1.0 : clamp01(m.c1 * std::pow(ad, -m.r));
          },
          [&](const TabulatedMixing& t) {
            auto it = std::upper_bound(t.entries.begin(), t.entries.end(), a,
                                       [](long v, const auto& e) { return v < e.first; });
            if (it == t.entries.begin()) return 1.0;
            return clamp01(std::prev(it)->second);
          },
      },
      profile.form());
}

MixingProfile read_mixing_table_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("mixing CSV: empty input");
  std::vector<std::pair<long, double>> entries;
  long row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ss(line);
    std::string gap_s, beta_s;
    if (!std::getline(ss, gap_s, ',') || !std::getline(ss, beta_s))
      throw InvalidInput("mixing CSV: expected two columns at row " + std::to_string(row));
    try {
      std::size_t used = 0;
      const long gap = std::stol(gap_s, &used);
      const double beta = std::stod(beta_s);
      entries.emplace_back(gap, beta);
    } catch (const std::exception&) {
      throw InvalidInput("mixing CSV: non-numeric entry at row " + std::to_string(row));
    }
  }
  return MixingProfile::table(std::move(entries));
}

MixingProfile read_mixing_table_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  return read_mixing_table_csv(in);
}

void BlockingPlan::validate() const {
  if (mu < 1 || a < 1 || d < 0) throw InvalidInput("blocking plan: need mu >= 1, a >= 1, d >= 0");
  if (2 * mu * a + d > n)
    throw Infeasible("blocking plan infeasible: 2*mu*a + d = " + std::to_string(2 * mu * a + d) +
                     " exceeds n = " + std::to_string(n));
  if (!(beta_gap >= 0.0 && beta_gap <= 1.0)) throw InvalidInput("blocking plan: beta outside [0,1]");
}

BlockingPlan make_plan(long n, long d, long a, long mu, const MixingProfile& profile) {
  if (a <= d) throw InvalidInput("make_plan: block length a must exceed memory d");
  BlockingPlan plan{mu, a, d, n, beta_at(profile, a - d)};
  plan.validate();
  return plan;
}

BlockPartition block_partition(long n, long d, long a, long mu) {
  if (mu < 1 || a < 1 || d < 0) throw InvalidInput("block_partition: need mu >= 1, a >= 1, d >= 0");
  if (2 * mu * a + d > n)
    throw Infeasible("block_partition: 2*mu*a + d exceeds n");
  BlockPartition p;
  p.odd.reserve(static_cast<std::size_t>(mu));
  p.even.reserve(static_cast<std::size_t>(mu));
  for (long j = 1; j <= mu; ++j) {
    p.odd.push_back({2 * (j - 1) * a + 1, (2 * j - 1) * a});
    p.even.push_back({(2 * j - 1) * a + 1, 2 * j * a});
  }
  p.remainder = {2 * mu * a + 1, n};
  return p;
}

double effective_eta(double eta, long mu, double beta_gap) {
  if (!(eta > 0.0 && eta < 1.0)) throw InvalidInput("eta must lie in (0, 1)");
  if (mu < 1) throw InvalidInput("mu must be >= 1");
  const double out = eta - 2.0 * static_cast<double>(mu) * beta_gap;
  if (!(out > 0.0))
    throw Infeasible("mixing too strong for the requested confidence: eta' = " +
                     std::to_string(out) + " <= 0; enlarge the block length or lower the confidence");
  return out;
}

BlockingPlan choose_blocks(long n, long d, const MixingProfile& profile, double eta, int vcd,
                           double moment_m, PenaltyVariant variant) {
  if (d < 0 || n <= d + 2) throw InvalidInput("choose_blocks: need n > d + 2");
  if (!(eta > 0.0 && eta < 1.0)) throw InvalidInput("eta must lie in (0, 1)");
  std::optional<BlockingPlan> best;
  double best_eps = std::numeric_limits<double>::infinity();
  for (long a = d + 1; a <= (n - d) / 2; ++a) {
    const long mu = (n - d) / (2 * a);
    if (mu < 1) break;
    BlockingPlan plan{mu, a, d, n, beta_at(profile, a - d)};
    if (!(eta - 2.0 * static_cast<double>(mu) * plan.beta_gap > 0.0)) continue;
    const double eps = corollary_penalty(plan, vcd, eta, moment_m, variant).eps;
    if (eps < best_eps) {
      best_eps = eps;
      best = plan;
    }
  }
  if (!best)
    throw Infeasible("choose_blocks: no block length gives eta' > 0 for n = " + std::to_string(n) +
                     ", d = " + std::to_string(d) + ", profile " + profile.describe());
  return *best;
}

}  // namespace tsbound
