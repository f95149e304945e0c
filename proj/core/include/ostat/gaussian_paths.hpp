#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "ostat/fft.hpp"
#include "ostat/random.hpp"

namespace ostat {

/// Stationary correlation rho(t) = exp(-c |t|^alpha), alpha in (0, 2].
struct CovarianceModel {
  enum class Family { stable_exponential };

  Family family = Family::stable_exponential;
  double alpha = 1.0;
  double scale_c = 1.0;

  double correlation(double t) const;
  void validate() const;
};

struct UniformGrid {
  double spacing = 1.0;
  std::size_t n_points = 1;

  double time(std::size_t k) const { return static_cast<double>(k) * spacing; }
  double horizon() const { return time(n_points - 1); }
};

struct SamplePath {
  UniformGrid grid;
  std::vector<double> values;
};

/// Spectrum of the circulant extension of an autocovariance sequence.
/// `eigenvalues` has the padded FFT length (>= 2 (n_points - 1)).
struct SpectralEmbedding {
  UniformGrid grid;
  std::vector<double> eigenvalues;
  double clamp_report = 0.0;

  std::size_t fft_size() const { return eigenvalues.size(); }
};

inline constexpr double kDefaultClampTolerance = 1e-10;

/// Circulant embedding of an arbitrary autocovariance function of the lag
/// index. Negative eigenvalues no larger than tol * max eigenvalue are set
/// to zero and the largest such magnitude (relative to the maximum) is
/// kept in clamp_report; anything more negative throws
/// EmbeddingError.
template <typename Autocovariance>
SpectralEmbedding build_embedding_from(Autocovariance&& acov, const UniformGrid& grid,
                                       double tol = kDefaultClampTolerance);

SpectralEmbedding build_embedding(const CovarianceModel& model, const UniformGrid& grid,
                                  double tol = kDefaultClampTolerance);

/// Draws paths from a fixed embedding. Owns the FFT workspace, so each
/// worker thread needs its own sampler; the embedding itself is shared.
class StationarySampler {
 public:
  explicit StationarySampler(std::shared_ptr<const SpectralEmbedding> embedding);

  const SpectralEmbedding& embedding() const { return *embedding_; }

  /// Writes the first out.size() (<= n_points) grid values of one path.
  /// Consumes exactly fft_size() normals from the stream.
  void sample(RandomStream& stream, std::span<double> out);

 private:
  std::shared_ptr<const SpectralEmbedding> embedding_;
  std::vector<double> amplitude_;
  RealInverseFft fft_;
};

SamplePath sample_stationary_path(const SpectralEmbedding& emb, RandomStream& stream);

/// Fractional Brownian motion Z with Var Z(t) = t^(2 hurst) on grid times
/// k * spacing, k = 0..n_points-1, so Z(0) = 0. Increments come from a
/// circulant embedding of fractional Gaussian noise; hurst = 1 is the
/// degenerate line t * N.
class FbmSampler {
 public:
  FbmSampler(double hurst, const UniformGrid& grid);

  double hurst() const { return hurst_; }
  const UniformGrid& grid() const { return grid_; }

  void sample(RandomStream& stream, std::span<double> out);

 private:
  double hurst_;
  UniformGrid grid_;
  std::unique_ptr<StationarySampler> increments_;
  std::vector<double> scratch_;
};

SamplePath sample_fbm(double hurst, const UniformGrid& grid, RandomStream& stream);

/// Autocovariance of unit-spacing fractional Gaussian noise at integer lag k.
double fgn_autocovariance(double hurst, std::size_t lag);

}  // namespace ostat

#include "ostat/detail/embedding_impl.hpp"
