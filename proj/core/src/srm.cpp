#include "tsbound/srm.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "tsbound/error.hpp"

namespace tsbound {

double aic(double neg_loglik, int n_params) { return 2.0 * neg_loglik + 2.0 * n_params; }

SrmResult srm_select(std::vector<CandidateModel> candidates, const SrmOptions& opt) {
  if (candidates.empty()) throw InvalidInput("srm_select: no candidates");

  std::string baseline = opt.aic_baseline;
  if (baseline.empty()) {
    auto it = std::find_if(candidates.begin(), candidates.end(),
                           [](const CandidateModel& c) { return c.name == "Mean"; });
    baseline = it != candidates.end() ? it->name : candidates.front().name;
  }

  for (auto& c : candidates) {
    if (!c.plan) {
      if (!opt.profile || opt.n <= 0)
        throw InvalidInput("srm_select: candidate '" + c.name +
                           "' has no blocking plan and no mixing profile / n to choose one");
      c.plan = choose_blocks(opt.n, c.d, *opt.profile, opt.eta, c.vcd, opt.moment_m, opt.variant);
    }
    if (c.plan->d != c.d)
      throw InvalidInput("srm_select: candidate '" + c.name + "' plan memory differs from d");
    BoundInputs in{*c.plan, c.vcd, opt.eta, opt.moment_m, c.train_err, c.delta_d};
    c.report = risk_bound(in, opt.variant);
  }

  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const CandidateModel& a, const CandidateModel& b) {
                     if (a.report.total_bound != b.report.total_bound)
                       return a.report.total_bound < b.report.total_bound;
                     if (a.vcd != b.vcd) return a.vcd < b.vcd;
                     return a.name < b.name;
                   });

  SrmResult r;
  r.baseline = baseline;
  std::optional<double> base_aic;
  for (const auto& c : candidates)
    if (c.name == baseline && c.neg_loglik) base_aic = aic(*c.neg_loglik, c.n_params);
  for (const auto& c : candidates) {
    if (c.neg_loglik && base_aic) r.aic_delta.push_back(aic(*c.neg_loglik, c.n_params) - *base_aic);
    else r.aic_delta.push_back(std::nullopt);
  }
  r.ranked = std::move(candidates);
  r.winner_trivial = r.ranked.front().report.trivial;
  return r;
}

void write_srm_csv(std::ostream& out, const SrmResult& r) {
  const auto old = out.precision(6);
  out << "model,train,aic_delta,bound,selected\n";
  for (std::size_t i = 0; i < r.ranked.size(); ++i) {
    const auto& c = r.ranked[i];
    out << c.name << ',' << c.train_err << ',';
    if (r.aic_delta[i]) out << *r.aic_delta[i];
    out << ',' << c.report.total_bound << ',' << (i == 0 ? 1 : 0) << '\n';
  }
  out.precision(old);
}

void print_srm_table(std::ostream& out, const SrmResult& r) {
  std::size_t w = 5;
  for (const auto& c : r.ranked) w = std::max(w, c.name.size());
  auto fmt = [](double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
  };
  out << std::left << std::setw(static_cast<int>(w + 2)) << "model" << std::right << std::setw(12)
      << "train" << std::setw(14) << "AIC-baseline" << std::setw(12) << "bound" << std::setw(10)
      << "selected" << '\n';
  for (std::size_t i = 0; i < r.ranked.size(); ++i) {
    const auto& c = r.ranked[i];
    std::string bound = fmt(c.report.total_bound);
    if (c.report.trivial) bound += "*";
    out << std::left << std::setw(static_cast<int>(w + 2)) << c.name << std::right
        << std::setw(12) << fmt(c.train_err) << std::setw(14)
        << (r.aic_delta[i] ? fmt(*r.aic_delta[i]) : std::string("-")) << std::setw(12) << bound
        << std::setw(10) << (i == 0 ? "yes" : "") << '\n';
  }
  if (std::any_of(r.ranked.begin(), r.ranked.end(),
                  [](const CandidateModel& c) { return c.report.trivial; }))
    out << "* trivial bound: the penalty saturated\n";
}

}  // namespace tsbound
