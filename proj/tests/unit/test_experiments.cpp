#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ostat/asymptotics.hpp"
#include "ostat/experiments.hpp"
#include "ostat/random.hpp"
#include "sup_sim.hpp"

namespace {

using ostat::ConfigError;
using ostat::ExperimentKind;
using ostat::parse_config;

std::string csv(const ostat::ExperimentResult& r) {
  std::ostringstream os;
  ostat::write_csv(os, r);
  return os.str();
}

constexpr const char* kTail = R"({"kind": "tailprob", "seed": 5, "reps": 3000, "T": 5, "u": [2.5, 3],
  "spacing": 0.02, "albin": 1.0})";

TEST(Config, ParsesTailprobDefaults) {
  const auto cfg = parse_config(kTail);
  EXPECT_EQ(cfg.kind, ExperimentKind::tailprob);
  EXPECT_EQ(cfg.seed, 5u);
  EXPECT_EQ(cfg.reps, 3000u);
  const auto& p = std::get<ostat::TailprobParams>(cfg.params);
  EXPECT_EQ(p.u, (std::vector<double>{2.5, 3.0}));
  EXPECT_TRUE(p.refine);
  EXPECT_EQ(*p.albin.fixed, 1.0);
  EXPECT_EQ(p.band_lo, 0.7);
}

TEST(Config, RejectsUnknownKeysAndMissingSeed) {
  EXPECT_THROW(parse_config(R"({"kind":"tailprob","seed":1,"reps":10,"T":5,"u":3,"spacing":0.01,"albin":1,"uu":1})"),
               ConfigError);
  EXPECT_THROW(parse_config(R"({"kind":"tailprob","reps":10,"T":5,"u":3,"spacing":0.01,"albin":1})"), ConfigError);
  EXPECT_NO_THROW(parse_config(R"({"kind":"tailprob","reps":10,"T":5,"u":3,"spacing":0.01,"albin":1})", {}, 9));
  EXPECT_THROW(parse_config("{not json"), ConfigError);
  EXPECT_THROW(parse_config(R"({"kind":"gumbel","seed":1,"reps":10,"T":[100,1000],"spacing":0.01,
                                "spacing_per_q":0.1,"albin":1})"),
               ConfigError);
  EXPECT_THROW(parse_config(R"({"kind":"albin","seed":1,"reps":10,"cells":[{"r":1,"alpha":1,"x":2}]})"),
               ConfigError);
}

TEST(Config, SeedOverrideAndKindMatching) {
  const auto cfg = parse_config(kTail, ExperimentKind::tailprob, 77);
  EXPECT_EQ(cfg.seed, 77u);
  EXPECT_THROW(parse_config(kTail, ExperimentKind::gumbel), ConfigError);
  EXPECT_THROW(parse_config(R"({"seed":1,"reps":10})"), ConfigError);
}

TEST(Config, RangeChecks) {
  auto with = [](const std::string& extra) {
    return R"({"kind":"tailprob","seed":1,"reps":10,"T":5,"u":3,"spacing":0.01,"albin":1)" + extra + "}";
  };
  EXPECT_THROW(parse_config(with(R"(,"r":3,"n":2)")), ConfigError);
  EXPECT_THROW(parse_config(with(R"(,"alpha":2.5)")), ConfigError);
  EXPECT_THROW(parse_config(with(R"(,"delta":0.5)")), ConfigError);
  EXPECT_THROW(parse_config(with(R"(,"process":"skew","delta":1.5)")), ConfigError);
  EXPECT_THROW(parse_config(with(R"(,"band":[1.3,0.7])")), ConfigError);
  EXPECT_THROW(parse_config(R"({"kind":"tailprob","seed":1,"reps":0,"T":5,"u":3,"spacing":0.01,"albin":1})"),
               ConfigError);
  EXPECT_THROW(parse_config(R"({"kind":"gumbel","seed":1,"reps":10,"T":[100],"spacing":0.01,"albin":1})"),
               ConfigError);
  EXPECT_THROW(parse_config(R"({"kind":"moments","seed":1,"reps":10,"T":[2],"spacing":0.01})"), ConfigError);
  EXPECT_THROW(parse_config(R"({"kind":"albin","seed":1,"reps":10,"cells":[{"r":1,"alpha":1}],
                                "a_ladder":[0.01,0.02,0.04]})"),
               ConfigError);
  EXPECT_THROW(parse_config(R"({"kind":"compare","seed":1,"reps":10,"cases":[{"sigma1":[[1,0.5],[0.5,1]],
                                "sigma0":[[1,0],[0,1]],"u":[1,1],"n":2,"k":2},{"sigma1":[[1]],"sigma0":[[1]],
                                "u":[1],"n":3,"k":2}]})"),
               ConfigError);
}

TEST(Config, AlbinEstimateSource) {
  const auto cfg = parse_config(R"({"kind":"gumbel","seed":1,"reps":10,"n":2,"T":[100,1000],"spacing_per_q":0.03,
    "albin":{"reps":2e4,"a_ladder":[0.08,0.04,0.02]}})");
  const auto& p = std::get<ostat::GumbelParams>(cfg.params);
  ASSERT_TRUE(p.albin.estimate.has_value());
  EXPECT_EQ(p.albin.estimate->reps, 20000u);
  EXPECT_EQ(p.albin.estimate->horizon, 30.0);
  EXPECT_FALSE(p.spacing.has_value());
  EXPECT_EQ(*p.spacing_per_q, 0.03);
}

TEST(Output, CsvLayout) {
  ostat::ExperimentResult r;
  ostat::ResultRow row;
  row.kind = "tailprob";
  row.r = 1;
  row.alpha = 0.1;
  row.reps = 10;
  row.seed = 3;
  row.mc = 1.0 / 3.0;
  row.flags = "src=x;a=1";
  r.rows.push_back(row);
  EXPECT_EQ(csv(r), std::string(ostat::kCsvHeader) + "\ntailprob,1,,,,0.10000000000000001,,,,10,3,0.33333333333333331,,,,src=x;a=1\n");

  std::ostringstream js;
  ostat::write_json(js, r);
  const auto doc = nlohmann::json::parse(js.str());
  EXPECT_EQ(doc["rows"][0]["kind"], "tailprob");
  EXPECT_TRUE(doc["rows"][0]["n"].is_null());
  EXPECT_EQ(doc["rows"][0]["mc"].get<double>(), 1.0 / 3.0);
}

TEST(Ks, DistanceAndSelfConsistency) {
  EXPECT_DOUBLE_EQ(ostat::ks_distance(std::vector<double>{0.5}, [](double x) { return x; }), 0.5);
  EXPECT_NEAR(ostat::ks_distance(std::vector<double>{0.25, 0.75}, [](double x) { return x; }), 0.25, 1e-15);
  ostat::RandomStream s(1, 1);
  std::vector<double> draws(20000);
  for (auto& x : draws) x = -std::log(s.exponential());
  EXPECT_LT(ostat::ks_distance(draws, ostat::gumbel_cdf), ostat::ks_critical_01(draws.size()));
}

TEST(SupSimulation, SeedDeterminesOutputAcrossThreads) {
  ostat::detail::SupSimulation sim;
  sim.r = 2;
  sim.n = 3;
  sim.spacing = 0.05;
  sim.n_points = ostat::detail::grid_points_for(4.0, 0.05);
  EXPECT_EQ(sim.n_points, 81u);
  const auto a = ostat::detail::simulate_sups(sim, 300, 4, 1);
  EXPECT_EQ(a, ostat::detail::simulate_sups(sim, 300, 4, 3));
  EXPECT_NE(a, ostat::detail::simulate_sups(sim, 300, 5, 1));
}

TEST(SupSimulation, ChiCaseIsAbsoluteValue) {
  ostat::detail::SupSimulation plain, chi;
  plain.spacing = chi.spacing = 0.1;
  plain.n_points = chi.n_points = 21;
  chi.skew = true;
  const auto p = ostat::detail::simulate_sups(plain, 200, 8, 1);
  const auto c = ostat::detail::simulate_sups(chi, 200, 8, 1);
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_GE(c[i], p[i]);
}

TEST(Tailprob, GridTooCoarseIsAConfigError) {
  const auto cfg = parse_config(R"({"kind":"tailprob","seed":1,"reps":10,"T":5,"u":[3],"spacing":0.05,"albin":1})");
  EXPECT_THROW(ostat::run_tailprob(cfg), ConfigError);
}

TEST(Tailprob, RowsAndRefinement) {
  auto cfg = parse_config(kTail);
  const auto r = ostat::run_tailprob(cfg);
  ASSERT_EQ(r.rows.size(), 4u);
  EXPECT_EQ(*r.rows[0].u, 2.5);
  EXPECT_EQ(*r.rows[1].spacing, 0.01);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.flags.rfind("src=thm1_tail", 0), 0u);
    EXPECT_DOUBLE_EQ(*row.ratio, row.mc / *row.formula);
    EXPECT_NEAR(*row.formula, ostat::thm1_tail(1, 1, 5.0, *row.u, 1.0, 1.0).value, 1e-15);
  }
  EXPECT_NE(r.rows[1].flags.find("refinement="), std::string::npos);
  // Exceedance frequency is non-increasing in u on the same sample.
  EXPECT_GE(r.rows[0].mc, r.rows[2].mc);

  cfg.threads = 3;
  EXPECT_EQ(csv(r), csv(ostat::run_tailprob(cfg)));
}

TEST(Tailprob, SkewRowsUseChiFormula) {
  const auto cfg = parse_config(R"({"kind":"tailprob","seed":2,"reps":2000,"T":5,"u":[3],"spacing":0.02,
    "process":"skew","m":1,"delta":1,"refine":false,"albin":1})");
  const auto r = ostat::run_tailprob(cfg);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].flags.rfind("src=thmA_tail", 0), 0u);
  EXPECT_NEAR(*r.rows[0].formula, ostat::thmA_tail(1, 1, 1, 1.0, 1.0, 5.0, 3.0, 1.0).value, 1e-15);
}

TEST(Gumbel, ProducesOneRowPerHorizon) {
  const auto cfg = parse_config(R"({"kind":"gumbel","seed":3,"reps":300,"n":1,"T":[20,50],"spacing_per_q":0.25,
    "albin":1})");
  const auto r = ostat::run_gumbel(cfg);
  ASSERT_EQ(r.rows.size(), 2u);
  for (const auto& row : r.rows) {
    EXPECT_GT(row.mc, 0.0);
    EXPECT_LT(row.mc, 1.0);
    EXPECT_NEAR(*row.spacing, 0.25 * ostat::q_of_u(*row.u, 1.0), 1e-15);
    EXPECT_DOUBLE_EQ(*row.formula, ostat::ks_critical_01(300));
  }
}

TEST(Moments, SquareTracksFirstMoment) {
  const auto cfg = parse_config(R"({"kind":"moments","seed":4,"reps":2000,"n":1,"T":[50],"p":[1,2],"spacing":0.02})");
  const auto r = ostat::run_moments(cfg);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_GT(r.rows[0].mc, 0.8);
  EXPECT_LT(r.rows[0].mc, 1.3);
  EXPECT_NEAR(r.rows[1].mc, r.rows[0].mc * r.rows[0].mc, 0.05);
}

TEST(AlbinTable, LadderRowsThenExtrapolation) {
  const auto cfg = parse_config(R"({"kind":"albin","seed":6,"reps":1500,"cells":[{"r":1,"alpha":1},{"r":2,"alpha":1}],
    "a_ladder":[0.16,0.08,0.04]})");
  const auto r = ostat::run_albin_table(cfg);
  ASSERT_EQ(r.rows.size(), 8u);
  EXPECT_FALSE(r.rows[2].formula.has_value() && r.rows[2].spacing.has_value());
  EXPECT_EQ(*r.rows[3].formula, 1.0);
  EXPECT_FALSE(r.rows[7].formula.has_value());
  // Coupled streams: each rung for r = 2 dominates the same rung for r = 1.
  for (int i = 0; i < 3; ++i) EXPECT_GE(r.rows[4 + i].mc, r.rows[i].mc);
}

TEST(Compare, ExplicitAndRandomCases) {
  const auto cfg = parse_config(R"({"kind":"compare","seed":7,"reps":20000,
    "cases":[{"sigma1":[[1,0.5],[0.5,1]],"sigma0":[[1,0],[0,1]],"u":[1,1],"n":2,"k":2},
             {"sigma1":[[1,0.2],[0.2,1]],"sigma0":[[1,0.2],[0.2,1]],"u":[0,1],"n":1,"k":1}],
    "random":{"count":3}})");
  const auto r = ostat::run_compare(cfg);
  EXPECT_FALSE(r.verification_failed);
  ASSERT_GE(r.rows.size(), 6u);
  EXPECT_EQ(r.rows[0].flags.rfind("src=orderstat_comparison_bound", 0), 0u);
  EXPECT_EQ(r.rows[1].flags.rfind("src=minstat_sharp_bound", 0), 0u);
  EXPECT_EQ(r.rows[2].mc, 0.0);
  EXPECT_EQ(*r.rows[2].formula, 0.0);
}

}  // namespace
