#include <algorithm>
#include <cmath>

#include "common.hpp"
#include "ostat/asymptotics.hpp"
#include "ostat/experiments.hpp"
#include "ostat/random.hpp"
#include "sup_sim.hpp"

namespace ostat {
namespace {

struct Exceedance {
  double p = 0.0;
  double se = 0.0;
};

Exceedance exceedance(const std::vector<double>& sups, double u) {
  const auto hits = std::count_if(sups.begin(), sups.end(), [u](double s) { return s > u; });
  const double n = static_cast<double>(sups.size());
  const double p = static_cast<double>(hits) / n;
  return {p, std::sqrt(p * (1.0 - p) / n)};
}

}  // namespace

ExperimentResult run_tailprob(const ExperimentConfig& config) {
  const auto& p = std::get<TailprobParams>(config.params);
  const bool skew = p.process == ProcessKind::skew;

  for (double u : p.u) {
    const double limit = q_of_u(u, p.alpha) / 4.0;
    if (p.spacing > limit) {
      throw ConfigError("tailprob: spacing " + std::to_string(p.spacing) + " is too coarse for u = " +
                        std::to_string(u) + " (need spacing <= q(u)/4 = " + std::to_string(limit) + ")");
    }
  }

  const auto albin = resolve_albin(p.albin, p.r, p.alpha, config.seed, config.threads);
  const std::uint64_t family = derive_seed(config.seed, detail::kTagTailprob);

  detail::SupSimulation sim;
  sim.alpha = p.alpha;
  sim.r = p.r;
  sim.n = p.n;
  sim.skew = skew;
  sim.m = p.m;
  sim.delta = p.delta;

  auto simulate = [&](double spacing, std::uint64_t stream_family) {
    sim.spacing = spacing;
    sim.n_points = detail::grid_points_for(p.T, spacing);
    return detail::simulate_sups(sim, config.reps, stream_family, config.threads);
  };
  const auto sups = simulate(p.spacing, family);
  std::vector<double> refined;
  if (p.refine) refined = simulate(p.spacing / 2.0, derive_seed(family, 1));

  auto formula_at = [&](double u) {
    return skew ? thmA_tail(p.r, p.n, p.m, p.delta, p.alpha, p.T, u, albin.value)
                : thm1_tail(p.r, p.n, p.T, u, p.alpha, albin.value);
  };

  auto make_row = [&](double u, double spacing, const Exceedance& e, const TailApproximation& f) {
    ResultRow row;
    row.kind = "tailprob";
    row.r = p.r;
    row.n = p.n;
    if (skew) {
      row.m = p.m;
      row.delta = p.delta;
    }
    row.alpha = p.alpha;
    row.T = p.T;
    row.u = u;
    row.spacing = spacing;
    row.reps = config.reps;
    row.seed = config.seed;
    row.mc = e.p;
    row.mc_se = e.se;
    row.formula = f.value;
    if (f.value > 0.0) row.ratio = e.p / f.value;
    row.flags = std::string("src=") + (skew ? "thmA_tail" : "thm1_tail") +
                detail::flag("albin", albin.value) +
                detail::flag("albin_src", albin.estimated ? "estimated" : "fixed");
    if (albin.estimated) row.flags += detail::flag("albin_se", albin.std_err);
    if (f.regime_warning) row.flags += ";regime_warning";
    if (row.ratio) {
      const bool in_band = *row.ratio >= p.band_lo && *row.ratio <= p.band_hi;
      row.flags += detail::flag("in_band", in_band ? "yes" : "no");
    }
    return row;
  };

  ExperimentResult result;
  for (double u : p.u) {
    const auto f = formula_at(u);
    const auto base = exceedance(sups, u);
    auto row = make_row(u, p.spacing, base, f);
    row.flags += detail::flag("grid", "base");
    result.rows.push_back(std::move(row));

    if (!p.refine) continue;
    const auto fine = exceedance(refined, u);
    auto frow = make_row(u, p.spacing / 2.0, fine, f);
    frow.flags += detail::flag("grid", "refined");
    if (f.value > 0.0) {
      const double r0 = base.p / f.value;
      const double r1 = fine.p / f.value;
      const double band = 3.0 * std::hypot(base.se, fine.se) / f.value;
      const char* verdict = std::abs(r1 - 1.0) < std::abs(r0 - 1.0) ? "toward"
                            : std::abs(r1 - r0) <= band                ? "within_noise"
                                                                       : "away";
      frow.flags += detail::flag("refinement", verdict);
    }
    result.rows.push_back(std::move(frow));
  }
  return result;
}

}  // namespace ostat
