#pragma once

#include <array>
#include <cstdint>
#include <span>

namespace ostat {

/// Deterministic, splittable random stream.
///
/// Draws are produced by the Philox-4x32-10 counter-based generator keyed
/// by the master seed. The 128-bit counter is split into the stream index
/// (high half) and the draw position (low half), so distinct stream indices
/// address disjoint parts of the generator's output and never overlap.
class RandomStream {
 public:
  RandomStream(std::uint64_t master_seed, std::uint64_t stream_index);

  std::uint64_t master_seed() const { return seed_; }
  std::uint64_t stream_index() const { return index_; }

  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1).
  double uniform();

  /// Standard normal via Box-Muller; pairs are consumed in order.
  double normal();
  void fill_normal(std::span<double> out);

  /// Unit exponential via inverse CDF, -ln(U).
  double exponential();

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t index_;
  std::uint64_t position_ = 0;
  std::array<std::uint64_t, 2> block_{};
  int block_used_ = 2;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

RandomStream split_stream(std::uint64_t seed, std::uint64_t index);

/// Mixes a seed with a tag so that separate experiment rows get unrelated
/// stream families from one configured seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

}  // namespace ostat
