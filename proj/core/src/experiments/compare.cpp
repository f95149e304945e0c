#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "common.hpp"
#include "ostat/comparison.hpp"
#include "ostat/experiments.hpp"
#include "ostat/random.hpp"

namespace ostat {
namespace {

Eigen::MatrixXd to_matrix(const std::vector<double>& row_major, int d) {
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = row_major[static_cast<std::size_t>(i * d + j)];
  }
  return m;
}

std::vector<double> to_row_major(const Eigen::MatrixXd& m) {
  std::vector<double> out;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  }
  return out;
}

int uniform_int(RandomStream& s, int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(s.next_u64() % span);
}

// Correlation matrix of d + 2 Gaussian samples; full rank with probability one.
Eigen::MatrixXd random_correlation(RandomStream& s, int d) {
  Eigen::MatrixXd g(d, d + 2);
  for (int i = 0; i < g.rows(); ++i) {
    for (int j = 0; j < g.cols(); ++j) g(i, j) = s.normal();
  }
  Eigen::MatrixXd c = g * g.transpose();
  const Eigen::VectorXd inv = c.diagonal().cwiseSqrt().cwiseInverse();
  c = inv.asDiagonal() * c * inv.asDiagonal();
  c = 0.5 * (c + c.transpose());
  c.diagonal().setOnes();
  return c;
}

CompareCase random_case(const RandomCompareSpec& spec, RandomStream& s) {
  CompareCase c;
  c.d = uniform_int(s, 2, spec.max_d);
  c.sigma1 = to_row_major(random_correlation(s, c.d));
  c.sigma0 = to_row_major(random_correlation(s, c.d));
  c.n = uniform_int(s, 1, spec.max_n);
  c.k = s.uniform() < 0.5 ? 1 : c.n;
  for (int i = 0; i < c.d; ++i) c.u.push_back(spec.u_lo + (spec.u_hi - spec.u_lo) * s.uniform());
  return c;
}

std::string join(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", xs[i]);
    out += (i ? "/" : "") + std::string(buf);
  }
  return out;
}

}  // namespace

ExperimentResult run_compare(const ExperimentConfig& config) {
  const auto& p = std::get<CompareParams>(config.params);
  const std::uint64_t family = derive_seed(config.seed, detail::kTagCompare);

  std::vector<std::pair<CompareCase, std::string>> cases;
  for (const auto& c : p.cases) cases.emplace_back(c, "explicit");
  if (p.random) {
    RandomStream gen = split_stream(family, 0);
    for (int i = 0; i < p.random->count; ++i) cases.emplace_back(random_case(*p.random, gen), "random");
  }

  ExperimentResult result;
  for (std::size_t ci = 0; ci < cases.size(); ++ci) {
    const auto& [c, origin] = cases[ci];
    GaussianPair pair{to_matrix(c.sigma1, c.d), to_matrix(c.sigma0, c.d)};
    const RandomStream stream = split_stream(derive_seed(family, 1), ci);

    std::vector<BoundKind> kinds{BoundKind::orderstat};
    const bool positive = std::all_of(c.u.begin(), c.u.end(), [](double x) { return x > 0.0; });
    if (c.k == c.n && positive) kinds.push_back(BoundKind::sharp_minimum);

    for (BoundKind kind : kinds) {
      const auto report = verify_bound(pair, c.u, c.n, c.k, config.reps, stream, kind, config.threads);
      if (!report.pass) result.verification_failed = true;

      ResultRow row;
      row.kind = "compare";
      row.n = c.n;
      row.u = *std::min_element(c.u.begin(), c.u.end());
      row.reps = config.reps;
      row.seed = config.seed;
      row.mc = report.lhs_estimate;
      row.mc_se = report.lhs_std_err;
      row.formula = report.bound;
      if (report.bound > 0.0) row.ratio = std::abs(report.lhs_estimate) / report.bound;
      row.flags = std::string("src=") +
                  (kind == BoundKind::orderstat ? "orderstat_comparison_bound" : "minstat_sharp_bound") +
                  detail::flag("case", static_cast<double>(ci)) + detail::flag("origin", origin) +
                  detail::flag("d", c.d) + detail::flag("k", c.k) + detail::flag("u_vec", join(c.u)) +
                  detail::flag("verdict", report.pass ? "pass" : "fail") +
                  detail::flag("margin_sigmas", report.margin_sigmas);
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

}  // namespace ostat
