#include "ostat/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <new>
#include <stdexcept>
#include <utility>

namespace ostat {
namespace {

// The FFTW planner is not re-entrant; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

bool is_5_smooth(std::size_t n) {
  for (std::size_t p : {2u, 3u, 5u}) {
    while (n % p == 0) n /= p;
  }
  return n == 1;
}

}  // namespace

std::size_t next_fft_size(std::size_t n) {
  std::size_t m = std::max<std::size_t>(n, 2);
  if (m % 2 != 0) ++m;
  while (!is_5_smooth(m)) m += 2;
  return m;
}

std::vector<double> circulant_eigenvalues(std::span<const double> first_row) {
  const std::size_t n = first_row.size();
  if (n == 0) return {};
  const std::size_t half = n / 2 + 1;
  double* in = fftw_alloc_real(n);
  fftw_complex* out = fftw_alloc_complex(half);
  if (in == nullptr || out == nullptr) {
    fftw_free(in);
    fftw_free(out);
    throw std::bad_alloc();
  }
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
  }
  std::copy(first_row.begin(), first_row.end(), in);
  fftw_execute(plan);
  std::vector<double> eig(n);
  for (std::size_t k = 0; k < half; ++k) eig[k] = out[k][0];
  for (std::size_t k = half; k < n; ++k) eig[k] = eig[n - k];
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(in);
  fftw_free(out);
  return eig;
}

RealInverseFft::RealInverseFft(std::size_t n) : n_(n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("RealInverseFft: size must be even and >= 2");
  spectrum_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(n / 2 + 1));
  signal_ = fftw_alloc_real(n);
  if (spectrum_ == nullptr || signal_ == nullptr) {
    release();
    throw std::bad_alloc();
  }
  std::lock_guard lock(planner_mutex());
  plan_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(spectrum_),
                               signal_, FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
}

RealInverseFft::~RealInverseFft() { release(); }

RealInverseFft::RealInverseFft(RealInverseFft&& other) noexcept
    : n_(std::exchange(other.n_, 0)),
      plan_(std::exchange(other.plan_, nullptr)),
      spectrum_(std::exchange(other.spectrum_, nullptr)),
      signal_(std::exchange(other.signal_, nullptr)) {}

RealInverseFft& RealInverseFft::operator=(RealInverseFft&& other) noexcept {
  if (this != &other) {
    release();
    n_ = std::exchange(other.n_, 0);
    plan_ = std::exchange(other.plan_, nullptr);
    spectrum_ = std::exchange(other.spectrum_, nullptr);
    signal_ = std::exchange(other.signal_, nullptr);
  }
  return *this;
}

void RealInverseFft::release() {
  if (plan_ != nullptr) {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
    plan_ = nullptr;
  }
  fftw_free(spectrum_);
  fftw_free(signal_);
  spectrum_ = nullptr;
  signal_ = nullptr;
}

std::span<std::complex<double>> RealInverseFft::spectrum() { return {spectrum_, n_ / 2 + 1}; }

std::span<const double> RealInverseFft::signal() const { return {signal_, n_}; }

void RealInverseFft::execute() { fftw_execute(static_cast<fftw_plan>(plan_)); }

}  // namespace ostat
