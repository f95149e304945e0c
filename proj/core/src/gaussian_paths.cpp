#include "ostat/gaussian_paths.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ostat {

double CovarianceModel::correlation(double t) const {
  return std::exp(-scale_c * std::pow(std::abs(t), alpha));
}

void CovarianceModel::validate() const {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw std::invalid_argument("CovarianceModel: alpha must lie in (0, 2]");
  if (!(scale_c > 0.0)) throw std::invalid_argument("CovarianceModel: scale_c must be positive");
}

SpectralEmbedding build_embedding(const CovarianceModel& model, const UniformGrid& grid, double tol) {
  model.validate();
  return build_embedding_from(
      [&](std::size_t lag) { return model.correlation(static_cast<double>(lag) * grid.spacing); },
      grid, tol);
}

StationarySampler::StationarySampler(std::shared_ptr<const SpectralEmbedding> embedding)
    : embedding_(std::move(embedding)), fft_(embedding_->fft_size()) {
  const std::size_t m = embedding_->fft_size();
  const std::size_t half = m / 2;
  const double inv_m = 1.0 / static_cast<double>(m);
  amplitude_.resize(half + 1);
  // Real-valued modes (k = 0, m/2) take one normal, the others a complex
  // pair whose variance is split between the two components.
  amplitude_[0] = std::sqrt(embedding_->eigenvalues[0] * inv_m);
  amplitude_[half] = std::sqrt(embedding_->eigenvalues[half] * inv_m);
  for (std::size_t k = 1; k < half; ++k) {
    amplitude_[k] = std::sqrt(0.5 * embedding_->eigenvalues[k] * inv_m);
  }
}

void StationarySampler::sample(RandomStream& stream, std::span<double> out) {
  const std::size_t half = fft_.size() / 2;
  if (out.size() > embedding_->grid.n_points) {
    throw std::invalid_argument("StationarySampler: output longer than the grid");
  }
  auto spec = fft_.spectrum();
  spec[0] = {amplitude_[0] * stream.normal(), 0.0};
  for (std::size_t k = 1; k < half; ++k) {
    const double re = stream.normal();
    const double im = stream.normal();
    spec[k] = {amplitude_[k] * re, amplitude_[k] * im};
  }
  spec[half] = {amplitude_[half] * stream.normal(), 0.0};
  fft_.execute();
  const auto x = fft_.signal();
  std::copy_n(x.begin(), out.size(), out.begin());
}

SamplePath sample_stationary_path(const SpectralEmbedding& emb, RandomStream& stream) {
  StationarySampler sampler(std::make_shared<const SpectralEmbedding>(emb));
  SamplePath path{emb.grid, std::vector<double>(emb.grid.n_points)};
  sampler.sample(stream, path.values);
  return path;
}

double fgn_autocovariance(double hurst, std::size_t lag) {
  const double k = static_cast<double>(lag);
  const double h2 = 2.0 * hurst;
  if (lag == 0) return 1.0;
  return 0.5 * (std::pow(k + 1.0, h2) - 2.0 * std::pow(k, h2) + std::pow(k - 1.0, h2));
}

FbmSampler::FbmSampler(double hurst, const UniformGrid& grid) : hurst_(hurst), grid_(grid) {
  if (!(hurst > 0.0 && hurst <= 1.0)) throw std::invalid_argument("FbmSampler: hurst must lie in (0, 1]");
  if (grid.n_points < 1 || !(grid.spacing > 0.0)) throw std::invalid_argument("FbmSampler: invalid grid");
  const std::size_t n_increments = grid.n_points - 1;
  if (hurst < 1.0 && n_increments >= 2) {
    auto emb = build_embedding_from([h = hurst](std::size_t lag) { return fgn_autocovariance(h, lag); },
                                    UniformGrid{1.0, n_increments});
    increments_ = std::make_unique<StationarySampler>(std::make_shared<const SpectralEmbedding>(std::move(emb)));
  }
  scratch_.resize(n_increments);
}

void FbmSampler::sample(RandomStream& stream, std::span<double> out) {
  if (out.size() != grid_.n_points) throw std::invalid_argument("FbmSampler: output size must equal n_points");
  out[0] = 0.0;
  const std::size_t n_increments = scratch_.size();
  if (n_increments == 0) return;
  // Self-similarity: increments at spacing s are s^H times unit-spacing fGn.
  const double scale = std::pow(grid_.spacing, hurst_);
  if (hurst_ == 1.0) {
    const double slope = scale * stream.normal();
    for (std::size_t k = 1; k < out.size(); ++k) out[k] = slope * static_cast<double>(k);
    return;
  }
  if (increments_) {
    increments_->sample(stream, scratch_);
  } else {
    scratch_[0] = stream.normal();
  }
  double z = 0.0;
  for (std::size_t k = 0; k < n_increments; ++k) {
    z += scale * scratch_[k];
    out[k + 1] = z;
  }
}

SamplePath sample_fbm(double hurst, const UniformGrid& grid, RandomStream& stream) {
  FbmSampler sampler(hurst, grid);
  SamplePath path{grid, std::vector<double>(grid.n_points)};
  sampler.sample(stream, path.values);
  return path;
}

}  // namespace ostat
