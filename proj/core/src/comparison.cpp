#include "ostat/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "ostat/errors.hpp"
#include "ostat/parallel.hpp"
#include "ostat/quadrature.hpp"

namespace ostat {
namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kEigenFloor = -1e-10;
constexpr double kMaxJitter = 1e-12;
constexpr double kAStarTol = 1e-10;
constexpr std::size_t kRepsPerBlock = 4096;

void check_thresholds(const GaussianPair& pair, std::span<const double> u) {
  pair.validate();
  if (u.size() != static_cast<std::size_t>(pair.dimension())) {
    throw std::invalid_argument("threshold vector length must equal the dimension");
  }
  for (double x : u) {
    if (!std::isfinite(x)) throw std::invalid_argument("thresholds must be finite");
  }
}

void check_extreme(int n, int k) {
  if (n < 1) throw std::invalid_argument("number of copies n must be >= 1");
  if (k != 1 && k != n) throw std::invalid_argument("k must be 1 (maximum) or n (minimum)");
}

Eigen::MatrixXd factorize(const Eigen::MatrixXd& sigma) {
  const Eigen::Index d = sigma.rows();
  for (double jitter : {0.0, 1e-14, 1e-13, kMaxJitter}) {
    Eigen::LLT<Eigen::MatrixXd> llt(sigma + jitter * Eigen::MatrixXd::Identity(d, d));
    if (llt.info() == Eigen::Success) return llt.matrixL();
  }
  throw FactorizationError("Cholesky factorization failed after diagonal jitter of " +
                           std::to_string(kMaxJitter));
}

struct CdfCounts {
  std::uint64_t hits1 = 0;
  std::uint64_t hits0 = 0;
  std::uint64_t disagreements = 0;
};

// Draws n i.i.d. standard normal d-vectors per replication and maps them
// through each factor, so both events share the same underlying numbers.
CdfCounts count_events(const std::vector<Eigen::MatrixXd>& factors, std::span<const double> u, int n,
                       int k, std::uint64_t reps, const RandomStream& root, unsigned threads) {
  const Eigen::Index d = static_cast<Eigen::Index>(u.size());
  const bool use_max = (k == 1);
  const std::uint64_t family = derive_seed(root.master_seed(), root.stream_index());
  struct Scratch {
    Eigen::VectorXd w;
    Eigen::VectorXd x;
    std::vector<Eigen::VectorXd> extreme;
  };
  auto blocks = run_blocks<CdfCounts>(
      reps, kRepsPerBlock, threads,
      [&] { return Scratch{Eigen::VectorXd(d), Eigen::VectorXd(d), std::vector<Eigen::VectorXd>(factors.size(), Eigen::VectorXd(d))}; },
      [&](Scratch& s, std::size_t begin, std::size_t end) {
        RandomStream stream = split_stream(family, begin / kRepsPerBlock);
        CdfCounts c;
        for (std::size_t rep = begin; rep < end; ++rep) {
          for (auto& e : s.extreme) {
            e.setConstant(use_max ? -std::numeric_limits<double>::infinity()
                                  : std::numeric_limits<double>::infinity());
          }
          for (int copy = 0; copy < n; ++copy) {
            for (Eigen::Index i = 0; i < d; ++i) s.w[i] = stream.normal();
            for (std::size_t f = 0; f < factors.size(); ++f) {
              s.x.noalias() = factors[f].triangularView<Eigen::Lower>() * s.w;
              if (use_max) {
                s.extreme[f] = s.extreme[f].cwiseMax(s.x);
              } else {
                s.extreme[f] = s.extreme[f].cwiseMin(s.x);
              }
            }
          }
          bool event[2] = {false, false};
          for (std::size_t f = 0; f < factors.size(); ++f) {
            bool all_below = true;
            for (Eigen::Index i = 0; i < d; ++i) all_below = all_below && (s.extreme[f][i] <= u[i]);
            event[f] = all_below;
          }
          c.hits1 += event[0];
          if (factors.size() > 1) {
            c.hits0 += event[1];
            c.disagreements += (event[0] != event[1]);
          }
        }
        return c;
      });
  CdfCounts total;
  for (const auto& b : blocks) {
    total.hits1 += b.hits1;
    total.hits0 += b.hits0;
    total.disagreements += b.disagreements;
  }
  return total;
}

}  // namespace

void validate_correlation_matrix(const Eigen::MatrixXd& sigma) {
  if (sigma.rows() != sigma.cols() || sigma.rows() < 1) {
    throw std::invalid_argument("correlation matrix must be square and non-empty");
  }
  const Eigen::Index d = sigma.rows();
  for (Eigen::Index i = 0; i < d; ++i) {
    if (std::abs(sigma(i, i) - 1.0) > kSymmetryTol) throw std::invalid_argument("correlation matrix needs unit diagonal");
    for (Eigen::Index j = 0; j < d; ++j) {
      if (!std::isfinite(sigma(i, j))) throw std::invalid_argument("correlation matrix has non-finite entries");
      if (std::abs(sigma(i, j) - sigma(j, i)) > kSymmetryTol) throw std::invalid_argument("correlation matrix must be symmetric");
      if (std::abs(sigma(i, j)) > 1.0) throw std::invalid_argument("correlation entries must lie in [-1, 1]");
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < kEigenFloor) {
    throw std::invalid_argument("correlation matrix is not positive semidefinite");
  }
}

void GaussianPair::validate() const {
  if (sigma1.rows() != sigma0.rows() || sigma1.cols() != sigma0.cols()) {
    throw std::invalid_argument("GaussianPair: matrices differ in dimension");
  }
  validate_correlation_matrix(sigma1);
  validate_correlation_matrix(sigma0);
}

double li_shao_bound(const GaussianPair& pair, std::span<const double> u) {
  check_thresholds(pair, u);
  const int d = pair.dimension();
  double sum = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      const double s1 = pair.sigma1(i, j);
      const double s0 = pair.sigma0(i, j);
      const double a_ij = std::abs(std::asin(s1) - std::asin(s0));
      if (a_ij == 0.0) continue;
      const double rho = std::max(std::abs(s1), std::abs(s0));
      sum += a_ij * std::exp(-(u[i] * u[i] + u[j] * u[j]) / (2.0 * (1.0 + rho)));
    }
  }
  return sum / (2.0 * std::numbers::pi);
}

double orderstat_comparison_bound(const GaussianPair& pair, std::span<const double> u, int n, int k) {
  check_extreme(n, k);
  return n * li_shao_bound(pair, u);
}

double a_star(double sigma1, double sigma0, int n) {
  if (n < 1) throw std::invalid_argument("a_star: n must be >= 1");
  if (!(std::abs(sigma1) < 1.0 && std::abs(sigma0) < 1.0)) {
    throw std::domain_error("a_star: endpoints must lie strictly inside (-1, 1)");
  }
  if (sigma1 == sigma0) return 0.0;
  // h = sin(theta): dh / sqrt(1-h^2)^n = cos(theta)^(1-n) dtheta.
  const int power = 2 * (n - 1);
  auto integrand = [n, power](double theta) {
    return std::pow(1.0 + std::abs(std::sin(theta)), power) * std::pow(std::cos(theta), 1 - n);
  };
  const double t0 = std::asin(sigma0);
  const double t1 = std::asin(sigma1);
  const double lo = std::min(t0, t1);
  const double hi = std::max(t0, t1);
  double value;
  if (lo < 0.0 && hi > 0.0) {
    // |sin| has a kink at the origin.
    value = adaptive_simpson(integrand, lo, 0.0, 0.5 * kAStarTol) +
            adaptive_simpson(integrand, 0.0, hi, 0.5 * kAStarTol);
  } else {
    value = adaptive_simpson(integrand, lo, hi, kAStarTol);
  }
  return t1 >= t0 ? value : -value;
}

double minstat_sharp_bound(const GaussianPair& pair, std::span<const double> u, int n) {
  check_thresholds(pair, u);
  if (n < 1) throw std::invalid_argument("minstat_sharp_bound: n must be >= 1");
  for (double x : u) {
    if (!(x > 0.0)) throw std::invalid_argument("minstat_sharp_bound: thresholds must be positive");
  }
  const double ubar = *std::min_element(u.begin(), u.end());
  const int d = pair.dimension();
  double sum = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int l = i + 1; l < d; ++l) {
      const double s1 = pair.sigma1(i, l);
      const double s0 = pair.sigma0(i, l);
      if (s1 == s0) continue;
      const double rho = std::max(std::abs(s1), std::abs(s0));
      sum += std::abs(a_star(s1, s0, n)) * std::exp(-n * ubar * ubar / (1.0 + rho));
    }
  }
  return n / std::pow(2.0 * std::numbers::pi, n) * std::pow(ubar, -2.0 * (n - 1)) * sum;
}

McEstimate mc_orderstat_cdf(const Eigen::MatrixXd& sigma, std::span<const double> u, int n, int k,
                            std::uint64_t reps, const RandomStream& stream, unsigned threads) {
  validate_correlation_matrix(sigma);
  check_extreme(n, k);
  if (u.size() != static_cast<std::size_t>(sigma.rows())) {
    throw std::invalid_argument("mc_orderstat_cdf: threshold length must equal the dimension");
  }
  if (reps == 0) throw std::invalid_argument("mc_orderstat_cdf: reps must be positive");
  const auto counts = count_events({factorize(sigma)}, u, n, k, reps, stream, threads);
  const double p = static_cast<double>(counts.hits1) / static_cast<double>(reps);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(reps))};
}

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::orderstat: return "orderstat";
    case BoundKind::sharp_minimum: return "sharp_minimum";
  }
  return "unknown";
}

BoundReport verify_bound(const GaussianPair& pair, std::span<const double> u, int n, int k,
                         std::uint64_t reps, const RandomStream& stream, BoundKind kind,
                         unsigned threads) {
  check_thresholds(pair, u);
  check_extreme(n, k);
  if (reps == 0) throw std::invalid_argument("verify_bound: reps must be positive");

  BoundReport report;
  report.kind = kind;
  if (kind == BoundKind::sharp_minimum) {
    if (k != n) throw std::invalid_argument("verify_bound: the sharp bound covers the minimum (k = n) only");
    report.bound = minstat_sharp_bound(pair, u, n);
  } else {
    report.bound = orderstat_comparison_bound(pair, u, n, k);
  }

  const auto counts =
      count_events({factorize(pair.sigma1), factorize(pair.sigma0)}, u, n, k, reps, stream, threads);
  const double N = static_cast<double>(reps);
  const double mean = (static_cast<double>(counts.hits1) - static_cast<double>(counts.hits0)) / N;
  const double second = static_cast<double>(counts.disagreements) / N;
  report.lhs_estimate = mean;
  report.lhs_std_err = std::sqrt(std::max(0.0, second - mean * mean) / N);
  const double slack = report.bound - std::abs(report.lhs_estimate);
  report.pass = std::abs(report.lhs_estimate) <= report.bound + 3.0 * report.lhs_std_err;
  if (report.lhs_std_err > 0.0) {
    report.margin_sigmas = slack / report.lhs_std_err;
  } else {
    report.margin_sigmas = slack >= 0.0 ? std::numeric_limits<double>::infinity()
                                        : -std::numeric_limits<double>::infinity();
  }
  return report;
}

}  // namespace ostat
