#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ostat/errors.hpp"

namespace ostat {

template <typename Autocovariance>
SpectralEmbedding build_embedding_from(Autocovariance&& acov, const UniformGrid& grid, double tol) {
  if (grid.n_points < 2) throw std::invalid_argument("build_embedding: need n_points >= 2");
  if (!(grid.spacing > 0.0)) throw std::invalid_argument("build_embedding: spacing must be positive");
  if (!(tol >= 0.0)) throw std::invalid_argument("build_embedding: tolerance must be non-negative");

  const std::size_t m = next_fft_size(2 * (grid.n_points - 1));
  const std::size_t half = m / 2;
  std::vector<double> row(m);
  for (std::size_t j = 0; j <= half; ++j) row[j] = acov(j);
  for (std::size_t j = half + 1; j < m; ++j) row[j] = row[m - j];

  SpectralEmbedding emb{grid, circulant_eigenvalues(row), 0.0};
  const double max_eig = *std::max_element(emb.eigenvalues.begin(), emb.eigenvalues.end());
  if (!(max_eig > 0.0)) throw EmbeddingError("build_embedding: covariance spectrum is not positive");

  double worst = 0.0;
  for (double lambda : emb.eigenvalues) worst = std::min(worst, lambda);
  if (-worst > tol * max_eig) {
    std::ostringstream msg;
    msg << "build_embedding: circulant embedding has eigenvalue " << worst << " (relative "
        << -worst / max_eig << " > tolerance " << tol << ") for n_points=" << grid.n_points
        << ", spacing=" << grid.spacing;
    throw EmbeddingError(msg.str());
  }
  for (double& lambda : emb.eigenvalues) lambda = std::max(lambda, 0.0);
  emb.clamp_report = -worst / max_eig;
  return emb;
}

}  // namespace ostat
