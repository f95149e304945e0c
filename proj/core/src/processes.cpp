#include "ostat/processes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ostat {

void OrderStatSpec::validate() const {
  if (n < 1 || r < 1 || r > n) {
    throw std::invalid_argument("OrderStatSpec: need 1 <= r <= n, got r=" + std::to_string(r) +
                                ", n=" + std::to_string(n));
  }
}

void SkewParams::validate() const {
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("SkewParams: delta must lie in (0, 1]");
  if (m < 1) throw std::invalid_argument("SkewParams: m must be >= 1");
}

double rth_largest(std::span<double> values, int r) {
  if (r < 1 || static_cast<std::size_t>(r) > values.size()) {
    throw std::invalid_argument("rth_largest: r out of range");
  }
  if (r == 1) return *std::max_element(values.begin(), values.end());
  if (static_cast<std::size_t>(r) == values.size()) return *std::min_element(values.begin(), values.end());
  auto nth = values.begin() + (r - 1);
  std::nth_element(values.begin(), nth, values.end(), std::greater<>());
  return *nth;
}

namespace {

void require_common_grid(std::span<const SamplePath> paths, const char* who) {
  const auto& g = paths.front().grid;
  for (const auto& p : paths) {
    if (p.grid.n_points != g.n_points || p.grid.spacing != g.spacing || p.values.size() != g.n_points) {
      throw std::invalid_argument(std::string(who) + ": paths do not share one grid");
    }
  }
}

}  // namespace

SamplePath order_statistics_path(std::span<const SamplePath> paths, const OrderStatSpec& spec) {
  spec.validate();
  if (paths.size() != static_cast<std::size_t>(spec.n)) {
    throw std::invalid_argument("order_statistics_path: expected n paths");
  }
  require_common_grid(paths, "order_statistics_path");
  const auto& grid = paths.front().grid;
  SamplePath out{grid, std::vector<double>(grid.n_points)};
  std::vector<double> column(paths.size());
  for (std::size_t t = 0; t < grid.n_points; ++t) {
    for (std::size_t i = 0; i < paths.size(); ++i) column[i] = paths[i].values[t];
    out.values[t] = rth_largest(column, spec.r);
  }
  return out;
}

SamplePath skew_gaussian_path(std::span<const SamplePath> paths, const SkewParams& params) {
  params.validate();
  if (paths.size() != static_cast<std::size_t>(params.m) + 1) {
    throw std::invalid_argument("skew_gaussian_path: expected m + 1 paths");
  }
  require_common_grid(paths, "skew_gaussian_path");
  const auto& grid = paths.front().grid;
  const double w = std::sqrt(std::max(0.0, 1.0 - params.delta * params.delta));
  SamplePath out{grid, std::vector<double>(grid.n_points)};
  for (std::size_t t = 0; t < grid.n_points; ++t) {
    double sq = 0.0;
    for (int i = 0; i < params.m; ++i) sq += paths[i].values[t] * paths[i].values[t];
    out.values[t] = params.delta * std::sqrt(sq) + w * paths[params.m].values[t];
  }
  return out;
}

LimitFieldSampler::LimitFieldSampler(double alpha, double a, std::size_t horizon_points)
    : alpha_(alpha), a_(a), fbm_(alpha / 2.0, UniformGrid{a, horizon_points + 1}) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw std::invalid_argument("LimitFieldSampler: alpha must lie in (0, 2]");
  if (!(a > 0.0)) throw std::invalid_argument("LimitFieldSampler: grid a must be positive");
  if (horizon_points < 1) throw std::invalid_argument("LimitFieldSampler: need K >= 1");
  drift_.resize(horizon_points);
  for (std::size_t k = 0; k < horizon_points; ++k) {
    drift_[k] = std::pow(a * static_cast<double>(k + 1), alpha);
  }
  path_.resize(horizon_points + 1);
  field_.resize(horizon_points);
}

void LimitFieldSampler::sample(int r, RandomStream& stream, std::span<double> out) {
  if (r < 1) throw std::invalid_argument("LimitFieldSampler: r must be >= 1");
  if (out.size() != drift_.size()) throw std::invalid_argument("LimitFieldSampler: output size must equal K");
  std::fill(out.begin(), out.end(), std::numeric_limits<double>::infinity());
  for (int i = 0; i < r; ++i) {
    const double e = stream.exponential();
    fbm_.sample(stream, path_);
    for (std::size_t k = 0; k < out.size(); ++k) {
      const double xi = std::numbers::sqrt2 * path_[k + 1] - drift_[k] + e;
      out[k] = std::min(out[k], xi);
    }
  }
}

double LimitFieldSampler::sample_sup(int r, RandomStream& stream) {
  sample(r, stream, field_);
  return *std::max_element(field_.begin(), field_.end());
}

LimitFieldSample sample_limit_field(int r, double alpha, double a, std::size_t horizon_points,
                                    RandomStream& stream) {
  LimitFieldSampler sampler(alpha, a, horizon_points);
  LimitFieldSample out{a, horizon_points, std::vector<double>(horizon_points)};
  sampler.sample(r, stream, out.values);
  return out;
}

}  // namespace ostat
