#include "sup_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "ostat/gaussian_paths.hpp"
#include "ostat/parallel.hpp"
#include "ostat/processes.hpp"
#include "ostat/random.hpp"

namespace ostat::detail {
namespace {

constexpr std::size_t kRepsPerBlock = 64;

class SupWorker {
 public:
  SupWorker(const SupSimulation& sim, std::shared_ptr<const SpectralEmbedding> emb)
      : sim_(sim), sampler_(std::move(emb)) {
    const int per_copy = sim.skew ? sim.m + (sim.delta < 1.0 ? 1 : 0) : 1;
    base_.assign(static_cast<std::size_t>(per_copy), std::vector<double>(sim.n_points));
    copies_.assign(static_cast<std::size_t>(sim.n), std::vector<double>(sim.n_points));
    column_.resize(static_cast<std::size_t>(sim.n));
  }

  double run(RandomStream& stream) {
    for (auto& copy : copies_) {
      if (!sim_.skew) {
        sampler_.sample(stream, copy);
        continue;
      }
      for (auto& b : base_) sampler_.sample(stream, b);
      const double w = std::sqrt(std::max(0.0, 1.0 - sim_.delta * sim_.delta));
      for (std::size_t t = 0; t < sim_.n_points; ++t) {
        double sq = 0.0;
        for (int i = 0; i < sim_.m; ++i) sq += base_[i][t] * base_[i][t];
        double z = sim_.delta * std::sqrt(sq);
        if (sim_.delta < 1.0) z += w * base_[sim_.m][t];
        copy[t] = z;
      }
    }
    if (sim_.n == 1) return *std::max_element(copies_[0].begin(), copies_[0].end());
    double sup = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < sim_.n_points; ++t) {
      for (std::size_t i = 0; i < copies_.size(); ++i) column_[i] = copies_[i][t];
      sup = std::max(sup, rth_largest(column_, sim_.r));
    }
    return sup;
  }

 private:
  SupSimulation sim_;
  StationarySampler sampler_;
  std::vector<std::vector<double>> base_;
  std::vector<std::vector<double>> copies_;
  std::vector<double> column_;
};

}  // namespace

std::size_t grid_points_for(double T, double spacing) {
  if (!(T > 0.0 && spacing > 0.0)) throw std::invalid_argument("grid_points_for: T and spacing must be positive");
  return static_cast<std::size_t>(std::floor(T / spacing + 1e-9)) + 1;
}

std::vector<double> simulate_sups(const SupSimulation& sim, std::uint64_t reps, std::uint64_t seed,
                                  unsigned threads) {
  OrderStatSpec{sim.r, sim.n}.validate();
  if (sim.skew) SkewParams{sim.delta, sim.m}.validate();
  if (sim.n_points < 2) throw std::invalid_argument("simulate_sups: need at least two grid points");

  const UniformGrid grid{sim.spacing, sim.n_points};
  auto emb = std::make_shared<const SpectralEmbedding>(
      build_embedding(CovarianceModel{CovarianceModel::Family::stable_exponential, sim.alpha, 1.0}, grid));

  auto blocks = run_blocks<std::vector<double>>(
      reps, kRepsPerBlock, threads, [&] { return SupWorker(sim, emb); },
      [&](SupWorker& worker, std::size_t begin, std::size_t end) {
        std::vector<double> sups;
        sups.reserve(end - begin);
        for (std::size_t rep = begin; rep < end; ++rep) {
          RandomStream stream = split_stream(seed, rep);
          sups.push_back(worker.run(stream));
        }
        return sups;
      });

  std::vector<double> out;
  out.reserve(reps);
  for (const auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace ostat::detail
