#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ostat/errors.hpp"
#include "ostat/experiments.hpp"

namespace {

enum ExitCode : int { kOk = 0, kBadConfig = 1, kNumerical = 2, kVerification = 3 };

struct Options {
  std::string config_path;
  std::string out_path;
  std::string format;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
};

int run(ostat::ExperimentKind kind, const Options& opt) {
  auto config = ostat::load_config(opt.config_path, kind, opt.seed);
  if (opt.threads) config.threads = *opt.threads;
  if (!opt.format.empty()) config.format = opt.format == "json" ? ostat::OutputFormat::json : ostat::OutputFormat::csv;
  if (!opt.out_path.empty()) config.output_path = opt.out_path;

  const auto result = ostat::run_experiment(config);
  if (config.output_path.empty() || config.output_path == "-") {
    ostat::write_result(std::cout, result, config.format);
  } else {
    std::ofstream out(config.output_path, std::ios::binary);
    if (!out) throw ostat::ConfigError("cannot open output file '" + config.output_path + "'");
    ostat::write_result(out, result, config.format);
    if (!out) throw std::runtime_error("failed writing '" + config.output_path + "'");
  }
  return result.verification_failed ? kVerification : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Order-statistics extremes: simulation versus asymptotic formulas"};
  app.require_subcommand(1, 1);
  Options opt;

  const std::pair<const char*, const char*> commands[] = {
      {"tailprob", "Exceedance probability of the order-statistics sup versus its tail formula"},
      {"gumbel", "Kolmogorov-Smirnov distance of the normalized minimum-process sup to the Gumbel law"},
      {"moments", "Normalized moments of the sup of the chi minimum process"},
      {"albin", "Table of extrapolated Albin constants"},
      {"compare", "Monte Carlo check of the normal comparison bounds"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opt.config_path, "JSON experiment configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out_path, "Output file (default: stdout)");
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--seed", opt.seed, "Seed overriding the configuration");
    sub->add_option("--threads", opt.threads, "Worker threads, 0 = all cores");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadConfig;
  }

  const auto kind = ostat::parse_experiment_kind(app.get_subcommands().front()->get_name());
  try {
    return run(kind, opt);
  } catch (const ostat::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kBadConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kBadConfig;
  } catch (const std::out_of_range& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
}
