#include <cinttypes>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "ostat/experiments.hpp"

namespace ostat {
namespace {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string field(const std::optional<double>& x) { return x ? format_double(*x) : std::string(); }
std::string field(const std::optional<int>& x) { return x ? std::to_string(*x) : std::string(); }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

template <typename T>
nlohmann::ordered_json opt(const std::optional<T>& x) {
  return x ? nlohmann::ordered_json(*x) : nlohmann::ordered_json(nullptr);
}

}  // namespace

void write_csv(std::ostream& os, const ExperimentResult& result) {
  os << kCsvHeader << '\n';
  for (const auto& row : result.rows) {
    os << csv_escape(row.kind) << ',' << field(row.r) << ',' << field(row.n) << ',' << field(row.m) << ','
       << field(row.delta) << ',' << field(row.alpha) << ',' << field(row.T) << ',' << field(row.u) << ','
       << field(row.spacing) << ',' << row.reps << ',' << row.seed << ',' << format_double(row.mc) << ','
       << field(row.mc_se) << ',' << field(row.formula) << ',' << field(row.ratio) << ','
       << csv_escape(row.flags) << '\n';
  }
}

void write_json(std::ostream& os, const ExperimentResult& result) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : result.rows) {
    nlohmann::ordered_json j;
    j["kind"] = row.kind;
    j["r"] = opt(row.r);
    j["n"] = opt(row.n);
    j["m"] = opt(row.m);
    j["delta"] = opt(row.delta);
    j["alpha"] = opt(row.alpha);
    j["T"] = opt(row.T);
    j["u"] = opt(row.u);
    j["spacing"] = opt(row.spacing);
    j["reps"] = row.reps;
    j["seed"] = row.seed;
    j["mc"] = row.mc;
    j["mc_se"] = opt(row.mc_se);
    j["formula"] = opt(row.formula);
    j["ratio"] = opt(row.ratio);
    j["flags"] = row.flags;
    rows.push_back(std::move(j));
  }
  nlohmann::ordered_json doc;
  doc["rows"] = std::move(rows);
  doc["verification_failed"] = result.verification_failed;
  os << doc.dump(2) << '\n';
}

void write_result(std::ostream& os, const ExperimentResult& result, OutputFormat format) {
  if (format == OutputFormat::json) {
    write_json(os, result);
  } else {
    write_csv(os, result);
  }
}

double ks_critical_01(std::size_t n_samples) {
  if (n_samples == 0) throw std::invalid_argument("ks_critical_01: need at least one sample");
  return 1.628 / std::sqrt(static_cast<double>(n_samples));
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  switch (config.kind) {
    case ExperimentKind::tailprob: return run_tailprob(config);
    case ExperimentKind::gumbel: return run_gumbel(config);
    case ExperimentKind::moments: return run_moments(config);
    case ExperimentKind::albin: return run_albin_table(config);
    case ExperimentKind::compare: return run_compare(config);
  }
  throw ConfigError("run_experiment: unknown kind");
}

}  // namespace ostat
