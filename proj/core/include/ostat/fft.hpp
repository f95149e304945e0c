#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ostat {

/// Smallest even 5-smooth integer (2^a 3^b 5^c, a >= 1) that is >= n.
std::size_t next_fft_size(std::size_t n);

/// Eigenvalues of the real symmetric circulant matrix with the given first
/// row (first_row[j] == first_row[size - j]). Returns all `size` values.
std::vector<double> circulant_eigenvalues(std::span<const double> first_row);

/// Reusable complex-to-real inverse DFT of fixed length n (even):
///   x_j = sum_{k=0}^{n-1} Y_k exp(+2 pi i j k / n),
/// with Y Hermitian and only Y_0..Y_{n/2} stored. Unnormalized.
/// One instance per thread; execute() overwrites the spectrum buffer.
class RealInverseFft {
 public:
  explicit RealInverseFft(std::size_t n);
  ~RealInverseFft();
  RealInverseFft(const RealInverseFft&) = delete;
  RealInverseFft& operator=(const RealInverseFft&) = delete;
  RealInverseFft(RealInverseFft&& other) noexcept;
  RealInverseFft& operator=(RealInverseFft&& other) noexcept;

  std::size_t size() const { return n_; }
  std::span<std::complex<double>> spectrum();
  std::span<const double> signal() const;
  void execute();

 private:
  void release();

  std::size_t n_ = 0;
  void* plan_ = nullptr;
  std::complex<double>* spectrum_ = nullptr;
  double* signal_ = nullptr;
};

}  // namespace ostat
