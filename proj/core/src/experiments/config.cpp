#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ostat/experiments.hpp"

namespace ostat {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw ConfigError("config: " + what); }

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) fail(where + " must be a JSON object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) fail("unknown key '" + key + "' in " + where);
  }
}

const json& require(const json& obj, const std::string& key) {
  if (!obj.contains(key)) fail("missing mandatory key '" + key + "'");
  return obj.at(key);
}

double as_double(const json& v, const std::string& key) {
  if (!v.is_number()) fail("'" + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail("'" + key + "' must be finite");
  return x;
}

std::uint64_t as_uint(const json& v, const std::string& key) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    const auto x = v.get<std::int64_t>();
    if (x < 0) fail("'" + key + "' must be non-negative");
    return static_cast<std::uint64_t>(x);
  }
  if (v.is_number_float()) {
    const double x = v.get<double>();
    if (!(x >= 0.0) || x != std::floor(x) || x > 1.8e19) fail("'" + key + "' must be a non-negative integer");
    return static_cast<std::uint64_t>(x);
  }
  fail("'" + key + "' must be an integer");
}

int as_int(const json& v, const std::string& key) {
  const auto x = as_uint(v, key);
  if (x > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) fail("'" + key + "' is too large");
  return static_cast<int>(x);
}

std::vector<double> as_double_list(const json& v, const std::string& key) {
  std::vector<double> out;
  if (v.is_array()) {
    for (const auto& x : v) out.push_back(as_double(x, key));
  } else {
    out.push_back(as_double(v, key));
  }
  if (out.empty()) fail("'" + key + "' must not be empty");
  return out;
}

double get_double(const json& obj, const std::string& key, double fallback) {
  return obj.contains(key) ? as_double(obj.at(key), key) : fallback;
}

int get_int(const json& obj, const std::string& key, int fallback) {
  return obj.contains(key) ? as_int(obj.at(key), key) : fallback;
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0)) fail("'alpha' must lie in (0, 2]");
}

void check_orderstat(int r, int n) {
  if (n < 1 || n > 64) fail("'n' must lie in [1, 64]");
  if (r < 1 || r > n) fail("'r' must lie in [1, n]");
}

void check_positive(double x, const std::string& key) {
  if (!(x > 0.0)) fail("'" + key + "' must be positive");
}

void check_ladder(const std::vector<double>& ladder) {
  if (ladder.size() < 3) fail("'a_ladder' needs at least 3 values");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    check_positive(ladder[i], "a_ladder");
    if (i > 0 && !(ladder[i] < ladder[i - 1])) fail("'a_ladder' must be strictly decreasing");
  }
}

AlbinSource parse_albin(const json& v) {
  AlbinSource src;
  if (v.is_number()) {
    src.fixed = as_double(v, "albin");
    check_positive(*src.fixed, "albin");
    return src;
  }
  check_keys(v, {"a_ladder", "horizon", "reps", "margin_sigmas", "rate_exponent"}, "'albin'");
  AlbinLadderSettings s;
  if (v.contains("a_ladder")) s.a_ladder = as_double_list(v.at("a_ladder"), "a_ladder");
  check_ladder(s.a_ladder);
  s.horizon = get_double(v, "horizon", s.horizon);
  check_positive(s.horizon, "horizon");
  if (v.contains("reps")) s.reps = as_uint(v.at("reps"), "reps");
  if (s.reps == 0) fail("'albin.reps' must be positive");
  s.margin_sigmas = get_double(v, "margin_sigmas", s.margin_sigmas);
  if (!(s.margin_sigmas >= 0.0)) fail("'margin_sigmas' must be >= 0");
  s.rate_exponent = get_double(v, "rate_exponent", s.rate_exponent);
  src.estimate = s;
  return src;
}

const std::set<std::string> kCommonKeys = {"kind", "seed", "reps", "threads", "output", "format"};

std::set<std::string> with_common(std::set<std::string> keys) {
  keys.insert(kCommonKeys.begin(), kCommonKeys.end());
  return keys;
}

TailprobParams parse_tailprob(const json& j) {
  check_keys(j, with_common({"r", "n", "process", "m", "delta", "alpha", "T", "u", "spacing", "refine",
                             "band", "albin"}),
             "tailprob config");
  TailprobParams p;
  p.r = get_int(j, "r", p.r);
  p.n = get_int(j, "n", p.n);
  check_orderstat(p.r, p.n);
  if (j.contains("process")) {
    const auto& v = j.at("process");
    if (v == "gaussian") p.process = ProcessKind::gaussian;
    else if (v == "skew") p.process = ProcessKind::skew;
    else fail("'process' must be \"gaussian\" or \"skew\"");
  }
  if (p.process == ProcessKind::gaussian && (j.contains("m") || j.contains("delta"))) {
    fail("'m' and 'delta' apply only to process \"skew\"");
  }
  p.m = get_int(j, "m", p.m);
  if (p.m < 1) fail("'m' must be >= 1");
  p.delta = get_double(j, "delta", p.delta);
  if (!(p.delta > 0.0 && p.delta <= 1.0)) fail("'delta' must lie in (0, 1]");
  if (p.n * (p.m + 1) > 256) fail("n * (m + 1) must not exceed 256");
  p.alpha = get_double(j, "alpha", p.alpha);
  check_alpha(p.alpha);
  p.T = as_double(require(j, "T"), "T");
  check_positive(p.T, "T");
  p.u = as_double_list(require(j, "u"), "u");
  for (double u : p.u) check_positive(u, "u");
  p.spacing = as_double(require(j, "spacing"), "spacing");
  check_positive(p.spacing, "spacing");
  if (j.contains("refine")) {
    if (!j.at("refine").is_boolean()) fail("'refine' must be a boolean");
    p.refine = j.at("refine").get<bool>();
  }
  if (j.contains("band")) {
    const auto band = as_double_list(j.at("band"), "band");
    if (band.size() != 2 || !(band[0] < band[1])) fail("'band' must be [lo, hi] with lo < hi");
    p.band_lo = band[0];
    p.band_hi = band[1];
  }
  p.albin = parse_albin(require(j, "albin"));
  return p;
}

std::vector<double> parse_T_ladder(const json& j, std::size_t min_len) {
  auto T = as_double_list(require(j, "T"), "T");
  if (T.size() < min_len) fail("'T' needs at least " + std::to_string(min_len) + " values");
  for (double t : T) {
    if (!(t > std::exp(1.0))) fail("every 'T' must exceed e");
  }
  return T;
}

GumbelParams parse_gumbel(const json& j) {
  check_keys(j, with_common({"n", "alpha", "T", "spacing", "spacing_per_q", "albin"}), "gumbel config");
  GumbelParams p;
  p.n = get_int(j, "n", p.n);
  check_orderstat(1, p.n);
  p.alpha = get_double(j, "alpha", p.alpha);
  check_alpha(p.alpha);
  p.T = parse_T_ladder(j, 2);
  if (j.contains("spacing") == j.contains("spacing_per_q")) {
    fail("gumbel needs exactly one of 'spacing' and 'spacing_per_q'");
  }
  if (j.contains("spacing")) {
    p.spacing = as_double(j.at("spacing"), "spacing");
    check_positive(*p.spacing, "spacing");
  } else {
    p.spacing_per_q = as_double(j.at("spacing_per_q"), "spacing_per_q");
    check_positive(*p.spacing_per_q, "spacing_per_q");
  }
  p.albin = parse_albin(require(j, "albin"));
  return p;
}

MomentsParams parse_moments(const json& j) {
  check_keys(j, with_common({"n", "alpha", "T", "p", "spacing", "normalization"}), "moments config");
  MomentsParams p;
  p.n = get_int(j, "n", p.n);
  check_orderstat(1, p.n);
  p.alpha = get_double(j, "alpha", p.alpha);
  check_alpha(p.alpha);
  p.T = parse_T_ladder(j, 1);
  if (j.contains("p")) p.p = as_double_list(j.at("p"), "p");
  for (double x : p.p) check_positive(x, "p");
  p.spacing = as_double(require(j, "spacing"), "spacing");
  check_positive(p.spacing, "spacing");
  if (j.contains("normalization")) {
    const auto& v = j.at("normalization");
    if (v == "sqrt_log") p.normalization = MomentNormalization::sqrt_log;
    else if (v == "log_linear") p.normalization = MomentNormalization::log_linear;
    else fail("'normalization' must be \"sqrt_log\" or \"log_linear\"");
  }
  return p;
}

AlbinTableParams parse_albin_table(const json& j) {
  check_keys(j, with_common({"cells", "a_ladder", "horizon", "margin_sigmas", "rate_exponent"}), "albin config");
  AlbinTableParams p;
  const auto& cells = require(j, "cells");
  if (!cells.is_array() || cells.empty()) fail("'cells' must be a non-empty array");
  for (const auto& c : cells) {
    check_keys(c, {"r", "alpha"}, "'cells' entry");
    AlbinCell cell{as_int(require(c, "r"), "r"), as_double(require(c, "alpha"), "alpha")};
    if (cell.r < 1 || cell.r > 64) fail("cell 'r' must lie in [1, 64]");
    check_alpha(cell.alpha);
    p.cells.push_back(cell);
  }
  if (j.contains("a_ladder")) p.a_ladder = as_double_list(j.at("a_ladder"), "a_ladder");
  check_ladder(p.a_ladder);
  p.horizon = get_double(j, "horizon", p.horizon);
  check_positive(p.horizon, "horizon");
  p.margin_sigmas = get_double(j, "margin_sigmas", p.margin_sigmas);
  if (!(p.margin_sigmas >= 0.0)) fail("'margin_sigmas' must be >= 0");
  p.rate_exponent = get_double(j, "rate_exponent", p.rate_exponent);
  return p;
}

std::vector<double> parse_matrix(const json& v, int& d, const std::string& key) {
  if (!v.is_array() || v.empty()) fail("'" + key + "' must be a non-empty array of rows");
  const int rows = static_cast<int>(v.size());
  if (d == 0) d = rows;
  if (rows != d) fail("'" + key + "' has the wrong dimension");
  std::vector<double> out;
  for (const auto& row : v) {
    if (!row.is_array() || static_cast<int>(row.size()) != d) fail("'" + key + "' must be square");
    for (const auto& x : row) out.push_back(as_double(x, key));
  }
  return out;
}

CompareParams parse_compare(const json& j) {
  check_keys(j, with_common({"cases", "random"}), "compare config");
  CompareParams p;
  if (j.contains("cases")) {
    const auto& cases = j.at("cases");
    if (!cases.is_array()) fail("'cases' must be an array");
    for (const auto& c : cases) {
      check_keys(c, {"sigma1", "sigma0", "u", "n", "k"}, "'cases' entry");
      CompareCase cc;
      int d = 0;
      cc.sigma1 = parse_matrix(require(c, "sigma1"), d, "sigma1");
      cc.sigma0 = parse_matrix(require(c, "sigma0"), d, "sigma0");
      cc.d = d;
      cc.u = as_double_list(require(c, "u"), "u");
      if (static_cast<int>(cc.u.size()) != d) fail("'u' length must equal the matrix dimension");
      cc.n = get_int(c, "n", 1);
      if (cc.n < 1) fail("'n' must be >= 1");
      cc.k = get_int(c, "k", 1);
      if (cc.k != 1 && cc.k != cc.n) fail("'k' must be 1 or n");
      p.cases.push_back(std::move(cc));
    }
  }
  if (j.contains("random")) {
    const auto& r = j.at("random");
    check_keys(r, {"count", "max_d", "max_n", "u_range"}, "'random'");
    RandomCompareSpec spec;
    spec.count = as_int(require(r, "count"), "count");
    spec.max_d = get_int(r, "max_d", spec.max_d);
    spec.max_n = get_int(r, "max_n", spec.max_n);
    if (spec.max_d < 2) fail("'max_d' must be >= 2");
    if (spec.max_n < 1) fail("'max_n' must be >= 1");
    if (r.contains("u_range")) {
      const auto range = as_double_list(r.at("u_range"), "u_range");
      if (range.size() != 2 || !(range[0] <= range[1])) fail("'u_range' must be [lo, hi]");
      spec.u_lo = range[0];
      spec.u_hi = range[1];
    }
    p.random = spec;
  }
  if (p.cases.empty() && (!p.random || p.random->count == 0)) fail("compare needs 'cases' or 'random'");
  return p;
}

}  // namespace

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::tailprob: return "tailprob";
    case ExperimentKind::gumbel: return "gumbel";
    case ExperimentKind::moments: return "moments";
    case ExperimentKind::albin: return "albin";
    case ExperimentKind::compare: return "compare";
  }
  return "unknown";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
  for (auto k : {ExperimentKind::tailprob, ExperimentKind::gumbel, ExperimentKind::moments,
                 ExperimentKind::albin, ExperimentKind::compare}) {
    if (to_string(k) == name) return k;
  }
  throw ConfigError("config: unknown experiment kind '" + std::string(name) + "'");
}

ExperimentConfig parse_config(std::string_view json_text, std::optional<ExperimentKind> expected,
                              std::optional<std::uint64_t> seed_override) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) fail("top level must be a JSON object");

  ExperimentConfig cfg;
  if (j.contains("kind")) {
    if (!j.at("kind").is_string()) fail("'kind' must be a string");
    cfg.kind = parse_experiment_kind(j.at("kind").get<std::string>());
    if (expected && *expected != cfg.kind) {
      fail("config kind '" + std::string(to_string(cfg.kind)) + "' does not match subcommand '" +
           std::string(to_string(*expected)) + "'");
    }
  } else if (expected) {
    cfg.kind = *expected;
  } else {
    fail("missing mandatory key 'kind'");
  }

  if (seed_override) {
    cfg.seed = *seed_override;
  } else {
    cfg.seed = as_uint(require(j, "seed"), "seed");
  }
  if (j.contains("seed") && seed_override) as_uint(j.at("seed"), "seed");
  cfg.reps = as_uint(require(j, "reps"), "reps");
  if (cfg.reps == 0) fail("'reps' must be positive");
  if (j.contains("threads")) cfg.threads = static_cast<unsigned>(as_int(j.at("threads"), "threads"));
  if (j.contains("output")) {
    if (!j.at("output").is_string()) fail("'output' must be a string path");
    cfg.output_path = j.at("output").get<std::string>();
  }
  if (j.contains("format")) {
    const auto& f = j.at("format");
    if (f == "csv") cfg.format = OutputFormat::csv;
    else if (f == "json") cfg.format = OutputFormat::json;
    else fail("'format' must be \"csv\" or \"json\"");
  }

  switch (cfg.kind) {
    case ExperimentKind::tailprob: cfg.params = parse_tailprob(j); break;
    case ExperimentKind::gumbel: cfg.params = parse_gumbel(j); break;
    case ExperimentKind::moments: cfg.params = parse_moments(j); break;
    case ExperimentKind::albin: cfg.params = parse_albin_table(j); break;
    case ExperimentKind::compare: cfg.params = parse_compare(j); break;
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path, std::optional<ExperimentKind> expected,
                             std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), expected, seed_override);
}

}  // namespace ostat
