// SPDX-License-Identifier: Apache-2.0
#include "datamarket/simulation.hpp"

#include "oracles.hpp"

#include "gtest/gtest.h"

#include <sstream>

using namespace datamarket;

namespace {

ScenarioConfig taxi_scenario()
{
  ScenarioConfig cfg;
  cfg.market = {10000, 0.5, 1.0, 100.0};
  cfg.curve  = {0.4944, 0.0079};
  cfg.q      = 50.0;
  cfg.tau    = 180.0;
  cfg.seed   = 1;
  cfg.trials = 100;
  return cfg;
}

std::vector<double> column(std::vector<SweepResultRow> const &rows, double SweepResultRow::*field)
{
  std::vector<double> out;
  for (auto const &r : rows)
  {
    out.push_back(r.*field);
  }
  return out;
}

}  // namespace

TEST(Summarize, MeanStdError)
{
  std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  auto const          s = summarize(xs);
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_NEAR(s.stddev, std::sqrt(5.0 / 3.0), 1e-15);
  EXPECT_NEAR(s.standard_error, std::sqrt(5.0 / 3.0) / 2.0, 1e-15);
  std::vector<double> one{3.0};
  EXPECT_EQ(summarize(one).stddev, 0.0);
}

TEST(Simulate, AgreesWithAnalyticProfit)
{
  auto const r = simulate(taxi_scenario());
  EXPECT_NEAR(r.analytic_profit, 1288.2624543572058, 1e-9);
  EXPECT_LE(std::abs(r.empirical.mean - r.analytic_profit), 3.0 * r.empirical.standard_error);
  EXPECT_FALSE(r.disagreement);
  EXPECT_GT(r.empirical.stddev, 0.0);
}

TEST(Simulate, SingleCustomerOutcomeSpace)
{
  auto cfg             = taxi_scenario();
  cfg.market.customers = 1;
  cfg.trials           = 200;
  auto const   model   = ValuationModel::from_market(cfg.curve, 50.0, 1.0);
  double const price   = optimal_price(cfg.curve, 50.0, 1.0);
  bool         saw_win = false, saw_loss = false;
  for (std::uint64_t t = 0; t < cfg.trials; ++t)
  {
    double const g = auction_trial(cfg.market, model, 50.0, cfg.seed + t);
    bool const   loss = g == -25.0;
    bool const   win  = g == price - 25.0;
    ASSERT_TRUE(loss || win) << g;
    saw_win |= win;
    saw_loss |= loss;
  }
  EXPECT_TRUE(saw_win && saw_loss);
}

TEST(Simulate, DeterministicReport)
{
  std::ostringstream a, b;
  write_report(a, simulate(taxi_scenario()));
  write_report(b, simulate(taxi_scenario()));
  EXPECT_EQ(a.str(), b.str());
  auto other = taxi_scenario();
  other.seed = 2;
  std::ostringstream c;
  write_report(c, simulate(other));
  EXPECT_NE(a.str(), c.str());
}

TEST(Simulate, RequiresFixedDataSize)
{
  auto cfg = taxi_scenario();
  cfg.q.reset();
  EXPECT_THROW(simulate(cfg), ConfigError);
}

TEST(Simulate, GapShrinksWithMoreSamples)
{
  // Standard error scales like 1 / sqrt(M * trials): check it at two sizes.
  auto small             = taxi_scenario();
  small.market.customers = 1000;
  small.trials           = 50;
  auto large             = small;
  large.market.customers = 16000;
  large.trials           = 200;
  auto const rs = simulate(small);
  auto const rl = simulate(large);
  // Relative standard error of the per-customer profit should drop ~8x.
  double const rel_small = rs.empirical.standard_error / small.market.customers;
  double const rel_large = rl.empirical.standard_error / large.market.customers;
  EXPECT_LT(rel_large, rel_small / 4.0);
  EXPECT_FALSE(rs.disagreement);
  EXPECT_FALSE(rl.disagreement);
}

TEST(Sweep, ParameterNames)
{
  EXPECT_EQ(parse_sweep_parameter("gamma"), SweepParameter::gamma);
  EXPECT_THROW(parse_sweep_parameter("budget"), UsageError);
}

TEST(Sweep, PriceSweepPeaksAtThreshold)
{
  auto cfg   = taxi_scenario();
  cfg.trials = 3;
  double const top  = 0.5253049817428823;
  auto const   rows = sweep(cfg, SweepParameter::price, 0.0, top, 1001);
  ASSERT_EQ(rows.size(), 1001u);
  auto const profits = column(rows, &SweepResultRow::expected_profit);
  auto const best    = std::max_element(profits.begin(), profits.end()) - profits.begin();
  EXPECT_NEAR(rows[best].value, 0.26265249087144116, top / 1000);
  EXPECT_EQ(oracle::difference_sign_changes(profits), 1u);
  for (auto const &r : rows)
  {
    ASSERT_GE(r.empirical_stddev, 0.0);
    ASSERT_NEAR(r.optimal_price, 0.26265249087144116, 1e-12);
  }
}

TEST(Sweep, QSweepConcave)
{
  auto cfg   = taxi_scenario();
  cfg.trials = 2;
  auto const rows    = sweep(cfg, SweepParameter::q, 1.0, 100.0, 100);
  auto const profits = column(rows, &SweepResultRow::expected_profit);
  EXPECT_EQ(oracle::difference_sign_changes(profits), 1u);
  for (auto const &r : rows)
  {
    ASSERT_NEAR(r.optimal_q, 39.5, 1e-12);
  }
}

TEST(Sweep, CostSweepMonotoneWithRejection)
{
  // Small market with a weak curve so that high unit costs reject the purchase.
  auto cfg             = taxi_scenario();
  cfg.market.customers = 10;
  cfg.curve            = {0.001, 0.01};
  cfg.q.reset();
  cfg.trials           = 2;
  auto const rows    = sweep(cfg, SweepParameter::k, 0.001, 1.0, 60);
  auto const profits = column(rows, &SweepResultRow::expected_profit);
  auto const qs      = column(rows, &SweepResultRow::optimal_q);
  for (std::size_t i = 1; i < rows.size(); ++i)
  {
    ASSERT_LE(profits[i], profits[i - 1]);
    ASSERT_LE(qs[i], qs[i - 1]);
  }
  EXPECT_NEAR(qs.front(), 25.0, 1e-12);
  EXPECT_GT(profits.front(), 0.0);
  EXPECT_EQ(qs.back(), 0.0);
  EXPECT_EQ(profits.back(), 0.0);
  EXPECT_EQ(rows.back().empirical_mean, 0.0);
}

TEST(Sweep, GammaSweepLinearThenClamped)
{
  auto cfg        = taxi_scenario();
  cfg.trials      = 2;
  auto const rows = sweep(cfg, SweepParameter::gamma, 0.5, 5.0, 46);
  auto const qs   = column(rows, &SweepResultRow::optimal_q);
  for (std::size_t i = 0; i < rows.size(); ++i)
  {
    double const unclamped = 10000 * rows[i].value * 0.0079 / 2.0;
    ASSERT_NEAR(qs[i], std::min(unclamped, 100.0), 1e-9);
  }
  EXPECT_EQ(qs.back(), 100.0);
}

TEST(Sweep, DomainAndDeterminism)
{
  auto cfg   = taxi_scenario();
  cfg.trials = 2;
  EXPECT_THROW(sweep(cfg, SweepParameter::q, 0.0, 50.0, 10), DomainError);
  EXPECT_THROW(sweep(cfg, SweepParameter::q, 1.0, 150.0, 10), DomainError);
  EXPECT_THROW(sweep(cfg, SweepParameter::k, 1.0, 0.5, 10), DomainError);
  EXPECT_THROW(sweep(cfg, SweepParameter::k, 0.1, 0.5, 1), DomainError);

  std::ostringstream a, b;
  write_sweep_csv(a, sweep(cfg, SweepParameter::q, 1.0, 100.0, 5));
  write_sweep_csv(b, sweep(cfg, SweepParameter::q, 1.0, 100.0, 5));
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(a.str().substr(0, a.str().find('\n')),
            "value,expected_profit,optimal_price,optimal_q,empirical_mean,empirical_std");
}

TEST(PostedPrice, MatchesAuctionAtThreshold)
{
  auto const   cfg   = taxi_scenario();
  auto const   model = ValuationModel::from_market(cfg.curve, 50.0, 1.0);
  double const price = optimal_price(cfg.curve, 50.0, 1.0);
  for (std::uint64_t s = 0; s < 10; ++s)
  {
    EXPECT_DOUBLE_EQ(posted_price_trial(cfg.market, model, 50.0, price, s),
                     auction_trial(cfg.market, model, 50.0, s));
  }
}
