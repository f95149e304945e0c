#include "ostat/albin.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ostat/parallel.hpp"
#include "ostat/processes.hpp"
#include "ostat/random.hpp"

namespace ostat {
namespace {

constexpr std::size_t kRepsPerBlock = 512;

}  // namespace

std::size_t AlbinConfig::horizon_points() const {
  return static_cast<std::size_t>(std::ceil(horizon_T / grid_a - 1e-9));
}

double minimum_albin_horizon(double alpha, double margin_sigmas) {
  // Solve x^2 = q + z sqrt(2) x for x = T^(alpha/2).
  const double b = margin_sigmas * std::numbers::sqrt2;
  const double x = 0.5 * (b + std::sqrt(b * b + 4.0 * kExponentialQuantile9999));
  return std::pow(x, 2.0 / alpha);
}

void AlbinConfig::validate() const {
  if (r < 1 || r > 64) throw std::invalid_argument("AlbinConfig: r must lie in [1, 64]");
  if (!(alpha > 0.0 && alpha <= 2.0)) throw std::invalid_argument("AlbinConfig: alpha must lie in (0, 2]");
  if (!(grid_a > 0.0)) throw std::invalid_argument("AlbinConfig: grid_a must be positive");
  if (!(horizon_T > 0.0)) throw std::invalid_argument("AlbinConfig: horizon_T must be positive");
  if (reps == 0) throw std::invalid_argument("AlbinConfig: reps must be positive");
  if (!(margin_sigmas >= 0.0)) throw std::invalid_argument("AlbinConfig: margin_sigmas must be >= 0");
  if (horizon_points() < 1) throw std::invalid_argument("AlbinConfig: horizon shorter than one grid step");
  const double drift = std::pow(horizon_T, alpha);
  const double needed =
      kExponentialQuantile9999 + margin_sigmas * std::numbers::sqrt2 * std::pow(horizon_T, alpha / 2.0);
  if (drift < needed) {
    std::ostringstream msg;
    msg << "AlbinConfig: horizon too short: horizon^alpha = " << drift << " < " << needed
        << " (minimum horizon " << minimum_albin_horizon(alpha, margin_sigmas) << ")";
    throw std::invalid_argument(msg.str());
  }
}

AlbinEstimate estimate_albin(const AlbinConfig& config, unsigned threads) {
  config.validate();
  const std::size_t k_points = config.horizon_points();

  auto hits_per_block = run_blocks<std::uint64_t>(
      config.reps, kRepsPerBlock, threads,
      [&] { return LimitFieldSampler(config.alpha, config.grid_a, k_points); },
      [&](LimitFieldSampler& sampler, std::size_t begin, std::size_t end) {
        std::uint64_t hits = 0;
        for (std::size_t rep = begin; rep < end; ++rep) {
          RandomStream stream = split_stream(config.seed, rep);
          if (sampler.sample_sup(config.r, stream) <= 0.0) ++hits;
        }
        return hits;
      });

  AlbinEstimate est;
  est.config = config;
  est.hit_count = std::accumulate(hits_per_block.begin(), hits_per_block.end(), std::uint64_t{0});
  const double reps = static_cast<double>(config.reps);
  const double p = static_cast<double>(est.hit_count) / reps;
  est.value = p / config.grid_a;
  est.std_err = std::sqrt(p * (1.0 - p) / reps) / config.grid_a;
  return est;
}

AlbinLadder extrapolate_albin(std::span<const AlbinEstimate> ladder) {
  if (ladder.empty()) throw std::invalid_argument("extrapolate_albin: need at least 3 estimates");
  return extrapolate_albin(ladder, ladder.front().config.alpha / 2.0);
}

AlbinLadder extrapolate_albin(std::span<const AlbinEstimate> ladder, double rate_exponent) {
  if (!(rate_exponent > 0.0)) throw std::invalid_argument("extrapolate_albin: rate exponent must be positive");
  if (ladder.size() < 3) throw std::invalid_argument("extrapolate_albin: need at least 3 estimates");
  bool all_equal = true;
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    if (ladder[i].config.grid_a != ladder[0].config.grid_a) all_equal = false;
  }
  if (all_equal) throw std::invalid_argument("extrapolate_albin: degenerate fit, all grid spacings equal");
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    if (!(ladder[i].config.grid_a < ladder[i - 1].config.grid_a)) {
      throw std::invalid_argument("extrapolate_albin: grid spacings must be strictly decreasing");
    }
  }

  // Inverse-variance weights when every estimate carries an error; a zero
  // standard error (e.g. synthetic or saturated input) falls back to an
  // ordinary fit with the variance estimated from residuals.
  bool known_variance = true;
  for (const auto& e : ladder) {
    if (!(e.std_err > 0.0)) known_variance = false;
  }

  double sw = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& e : ladder) {
    const double w = known_variance ? 1.0 / (e.std_err * e.std_err) : 1.0;
    const double x = std::pow(e.config.grid_a, rate_exponent);
    sw += w;
    sx += w * x;
    sy += w * e.value;
    sxx += w * x * x;
    sxy += w * x * e.value;
  }
  const double det = sw * sxx - sx * sx;
  AlbinLadder out;
  out.estimates.assign(ladder.begin(), ladder.end());
  out.rate_exponent = rate_exponent;
  out.slope = (sw * sxy - sx * sy) / det;
  out.value = (sy - out.slope * sx) / sw;
  out.dof = static_cast<int>(ladder.size()) - 2;

  double rss = 0.0;
  for (const auto& e : ladder) {
    const double w = known_variance ? 1.0 / (e.std_err * e.std_err) : 1.0;
    const double resid = e.value - (out.value + out.slope * std::pow(e.config.grid_a, rate_exponent));
    rss += w * resid * resid;
  }
  out.lack_of_fit = rss;
  const double var_scale = known_variance ? 1.0 : (out.dof > 0 ? rss / out.dof : 0.0);
  out.std_err = std::sqrt(var_scale * sxx / det);
  return out;
}

AlbinLadder estimate_albin_ladder(const AlbinConfig& base, std::span<const double> grid_a_ladder,
                                  unsigned threads, double rate_exponent) {
  std::vector<AlbinEstimate> estimates;
  estimates.reserve(grid_a_ladder.size());
  for (double a : grid_a_ladder) {
    AlbinConfig cfg = base;
    cfg.grid_a = a;
    estimates.push_back(estimate_albin(cfg, threads));
  }
  if (rate_exponent > 0.0) return extrapolate_albin(estimates, rate_exponent);
  return extrapolate_albin(estimates);
}

}  // namespace ostat
