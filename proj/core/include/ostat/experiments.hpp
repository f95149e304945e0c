#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ostat {

/// Malformed or out-of-range experiment configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ExperimentKind { tailprob, gumbel, moments, albin, compare };
enum class OutputFormat { csv, json };

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view name);

/// Where an Albin constant comes from: a fixed number, or a Monte Carlo
/// ladder run with these settings (r and alpha come from the experiment).
struct AlbinLadderSettings {
  std::vector<double> a_ladder{0.04, 0.02, 0.01};
  double horizon = 30.0;
  std::uint64_t reps = 100000;
  double margin_sigmas = 2.5;
  /// <= 0 selects alpha / 2.
  double rate_exponent = 0.0;
};

struct AlbinSource {
  std::optional<double> fixed;
  std::optional<AlbinLadderSettings> estimate;
};

enum class ProcessKind { gaussian, skew };

struct TailprobParams {
  int r = 1;
  int n = 1;
  ProcessKind process = ProcessKind::gaussian;
  int m = 1;
  double delta = 1.0;
  double alpha = 1.0;
  double T = 10.0;
  std::vector<double> u;
  double spacing = 0.01;
  bool refine = true;
  double band_lo = 0.7;
  double band_hi = 1.3;
  AlbinSource albin;
};

struct GumbelParams {
  int n = 1;
  double alpha = 1.0;
  std::vector<double> T;
  /// Exactly one of the two is set: a fixed spacing, or a fraction of the
  /// excursion scale q(b_T) so every T is resolved equally finely.
  std::optional<double> spacing;
  std::optional<double> spacing_per_q;
  AlbinSource albin;
};

enum class MomentNormalization { sqrt_log, log_linear };

struct MomentsParams {
  int n = 1;
  double alpha = 1.0;
  std::vector<double> T;
  std::vector<double> p{1.0};
  double spacing = 0.01;
  MomentNormalization normalization = MomentNormalization::sqrt_log;
};

struct AlbinCell {
  int r = 1;
  double alpha = 1.0;
};

struct AlbinTableParams {
  std::vector<AlbinCell> cells;
  std::vector<double> a_ladder{0.04, 0.02, 0.01};
  double horizon = 30.0;
  double margin_sigmas = 2.5;
  double rate_exponent = 0.0;
};

/// One comparison case: two correlation matrices (row-major, d x d),
/// thresholds, number of copies and the extreme (k = 1 max, k = n min).
struct CompareCase {
  int d = 2;
  std::vector<double> sigma1;
  std::vector<double> sigma0;
  std::vector<double> u;
  int n = 1;
  int k = 1;
};

struct RandomCompareSpec {
  int count = 0;
  int max_d = 4;
  int max_n = 3;
  double u_lo = 0.5;
  double u_hi = 3.0;
};

struct CompareParams {
  std::vector<CompareCase> cases;
  std::optional<RandomCompareSpec> random;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::tailprob;
  std::uint64_t seed = 0;
  std::uint64_t reps = 0;
  unsigned threads = 0;
  std::string output_path;
  OutputFormat format = OutputFormat::csv;
  std::variant<TailprobParams, GumbelParams, MomentsParams, AlbinTableParams, CompareParams> params;
};

/// Parses a JSON document. Unknown keys, missing mandatory keys (including
/// the seed, unless `seed_override` is given) and out-of-range values raise
/// ConfigError.
ExperimentConfig parse_config(std::string_view json_text, std::optional<ExperimentKind> expected = {},
                              std::optional<std::uint64_t> seed_override = {});
ExperimentConfig load_config(const std::string& path, std::optional<ExperimentKind> expected = {},
                             std::optional<std::uint64_t> seed_override = {});

/// One output row. Empty optionals are written as empty CSV fields / JSON null.
struct ResultRow {
  std::string kind;
  std::optional<int> r, n, m;
  std::optional<double> delta, alpha, T, u, spacing;
  std::uint64_t reps = 0;
  std::uint64_t seed = 0;
  double mc = 0.0;
  std::optional<double> mc_se;
  std::optional<double> formula;
  std::optional<double> ratio;
  /// ';'-separated; always starts with "src=<formula identifier>".
  std::string flags;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  bool verification_failed = false;
};

inline constexpr std::string_view kCsvHeader =
    "kind,r,n,m,delta,alpha,T,u,spacing,reps,seed,mc,mc_se,formula,ratio,flags";

void write_csv(std::ostream& os, const ExperimentResult& result);
void write_json(std::ostream& os, const ExperimentResult& result);
void write_result(std::ostream& os, const ExperimentResult& result, OutputFormat format);

ExperimentResult run_tailprob(const ExperimentConfig& config);
ExperimentResult run_gumbel(const ExperimentConfig& config);
ExperimentResult run_moments(const ExperimentConfig& config);
ExperimentResult run_albin_table(const ExperimentConfig& config);
ExperimentResult run_compare(const ExperimentConfig& config);
ExperimentResult run_experiment(const ExperimentConfig& config);

struct ResolvedAlbin {
  double value = 0.0;
  /// Zero for a fixed value.
  double std_err = 0.0;
  bool estimated = false;
};

/// Resolves an Albin constant A_{r,alpha}: the fixed value, or the
/// extrapolated ladder estimate seeded from `seed`.
ResolvedAlbin resolve_albin(const AlbinSource& source, int r, double alpha, std::uint64_t seed,
                            unsigned threads);

/// Known Pickands values for r = 1 (alpha = 1 and alpha = 2); empty otherwise.
std::optional<double> known_albin_value(int r, double alpha);

/// sup_x |F_n(x) - F(x)| for the empirical distribution of `samples`.
template <typename Cdf>
double ks_distance(std::vector<double> samples, Cdf&& cdf);

/// Asymptotic Kolmogorov-Smirnov critical value at level 0.01, 1.628 / sqrt(N).
double ks_critical_01(std::size_t n_samples);

}  // namespace ostat

#include <algorithm>
#include <cmath>

namespace ostat {

template <typename Cdf>
double ks_distance(std::vector<double> samples, Cdf&& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

}  // namespace ostat
