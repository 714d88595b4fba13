// SPDX-License-Identifier: Apache-2.0
#pragma once

// Monte-Carlo harness. Each trial draws M truthful valuations with seed
// `seed + trial_index`, runs the mechanism, and records realised gross
// profit; results are compared against the analytic expected profit.
// Sweeps tabulate analytic and empirical profit over one parameter.

#include "datamarket/auction.hpp"
#include "datamarket/errors.hpp"
#include "datamarket/io.hpp"
#include "datamarket/market.hpp"
#include "datamarket/optimize.hpp"
#include "datamarket/scenario.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace datamarket {

struct SampleStats
{
  double mean{0.0};
  double stddev{0.0};          ///< sample (n - 1) standard deviation, 0 for n = 1
  double standard_error{0.0};  ///< stddev / sqrt(n)
};

inline SampleStats summarize(std::span<double const> xs)
{
  if (xs.empty())
  {
    throw InputError("cannot summarise an empty sample");
  }
  double const n = static_cast<double>(xs.size());
  SampleStats  s;
  for (double x : xs)
  {
    s.mean += x;
  }
  s.mean /= n;
  if (xs.size() > 1)
  {
    double ss = 0.0;
    for (double x : xs)
    {
      ss += (x - s.mean) * (x - s.mean);
    }
    s.stddev = std::sqrt(ss / (n - 1.0));
  }
  s.standard_error = s.stddev / std::sqrt(n);
  return s;
}

/// Realised profit of one truthful market under the optimal mechanism.
inline double auction_trial(MarketParams const &params, ValuationModel const &model, double q,
                            std::uint64_t seed)
{
  auto const valuations = sample_valuations(params.customers, model, seed);
  return run_auction(std::span<double const>(valuations), model, q, params.unit_cost)
      .outcome.gross_profit;
}

/// Realised profit of one truthful market when an arbitrary price is posted
/// and every customer with v >= price buys.
inline double posted_price_trial(MarketParams const &params, ValuationModel const &model,
                                 double q, double price, std::uint64_t seed)
{
  auto const valuations = sample_valuations(params.customers, model, seed);
  double     revenue    = 0.0;
  for (double v : valuations)
  {
    if (v >= price)
    {
      revenue += price;
    }
  }
  return revenue - data_cost(q, params.unit_cost);
}

struct SimulationReport
{
  std::size_t trials{0};
  double      q{0.0};
  double      price{0.0};
  double      analytic_profit{0.0};
  SampleStats empirical;
  bool        disagreement{false};  ///< |mean - analytic| > 3 standard errors
};

/// Requires a config with a fixed data size q.
inline SimulationReport simulate(ScenarioConfig const &config)
{
  config.validate();
  if (!config.q)
  {
    throw ConfigError("q", "simulate requires a fixed data size");
  }
  double const q     = *config.q;
  auto const   model = ValuationModel::from_market(config.curve, q, config.market.gamma);

  std::vector<double> profits(config.trials);
  for (std::size_t t = 0; t < config.trials; ++t)
  {
    profits[t] = auction_trial(config.market, model, q, config.seed + t);
  }

  SimulationReport report;
  report.trials          = config.trials;
  report.q               = q;
  report.price           = optimal_price(config.curve, q, config.market.gamma);
  report.analytic_profit = expected_profit(q, config.market, config.curve);
  report.empirical       = summarize(profits);
  report.disagreement =
      std::abs(report.empirical.mean - report.analytic_profit) > 3.0 * report.empirical.standard_error;
  return report;
}

inline void write_report(std::ostream &out, SimulationReport const &r)
{
  out << "trials = " << r.trials << '\n'
      << "q = " << format_number(r.q) << '\n'
      << "optimal_price = " << format_number(r.price) << '\n'
      << "analytic_profit = " << format_number(r.analytic_profit) << '\n'
      << "empirical_mean = " << format_number(r.empirical.mean) << '\n'
      << "empirical_std = " << format_number(r.empirical.stddev) << '\n'
      << "standard_error = " << format_number(r.empirical.standard_error) << '\n'
      << "agreement = " << (r.disagreement ? "FAIL" : "ok") << '\n';
}

enum class SweepParameter
{
  price,
  q,
  k,
  gamma,
};

inline SweepParameter parse_sweep_parameter(std::string_view name)
{
  if (name == "price")
  {
    return SweepParameter::price;
  }
  if (name == "q")
  {
    return SweepParameter::q;
  }
  if (name == "k")
  {
    return SweepParameter::k;
  }
  if (name == "gamma")
  {
    return SweepParameter::gamma;
  }
  throw UsageError("unknown sweep parameter '" + std::string(name) +
                   "' (expected price, q, k or gamma)");
}

struct SweepResultRow
{
  double value{0.0};
  double expected_profit{0.0};
  double optimal_price{0.0};
  double optimal_q{0.0};
  double empirical_mean{0.0};
  double empirical_stddev{0.0};
};

/// Evenly spaced grid lo, ..., hi with the last point pinned to hi.
inline std::vector<double> linear_grid(double lo, double hi, std::size_t steps)
{
  if (!(lo < hi))
  {
    throw DomainError("sweep requires lo < hi");
  }
  if (steps < 2)
  {
    throw DomainError("sweep requires at least two steps");
  }
  std::vector<double> grid(steps);
  double const        h = (hi - lo) / static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i)
  {
    grid[i] = lo + h * static_cast<double>(i);
  }
  grid.back() = hi;
  return grid;
}

namespace detail {

template <typename Trial>
SampleStats run_trials(ScenarioConfig const &config, Trial &&trial)
{
  std::vector<double> profits(config.trials);
  for (std::size_t t = 0; t < config.trials; ++t)
  {
    profits[t] = trial(config.seed + t);
  }
  return summarize(profits);
}

/// Row for a scenario evaluated at its own optimal (q*, p*).
inline SweepResultRow optimal_row(double value, ScenarioConfig const &scenario)
{
  auto const     report = optimal_data_size(scenario.market, scenario.curve);
  SweepResultRow row;
  row.value           = value;
  row.expected_profit = report.expected_profit_at_q_star;
  row.optimal_price   = report.price_at_q_star;
  row.optimal_q       = report.q_star;
  if (!report.rejected)
  {
    auto const model =
        ValuationModel::from_market(scenario.curve, report.q_star, scenario.market.gamma);
    auto const stats = run_trials(scenario, [&](std::uint64_t seed) {
      return auction_trial(scenario.market, model, report.q_star, seed);
    });
    row.empirical_mean   = stats.mean;
    row.empirical_stddev = stats.stddev;
  }
  return row;
}

}  // namespace detail

/// Tabulates profit over one parameter, all others held at config values.
///
/// - price: profit of posting p at the config's fixed q, M (1 - F(p)) p - k q.
/// - q:     expected profit at the threshold price p*(q).
/// - k, gamma: optimal profit g*, price and q* of the modified scenario; a
///   rejected scenario reports zeros.
///
/// Empirical columns come from `config.trials` Monte-Carlo markets per row.
inline std::vector<SweepResultRow> sweep(ScenarioConfig const &config, SweepParameter parameter,
                                         double lo, double hi, std::size_t steps)
{
  config.validate();
  auto const grid = linear_grid(lo, hi, steps);

  std::vector<SweepResultRow> rows;
  rows.reserve(steps);

  switch (parameter)
  {
  case SweepParameter::price:
  {
    if (!config.q)
    {
      throw ConfigError("q", "price sweep requires a fixed data size");
    }
    if (lo < 0.0)
    {
      throw DomainError("price sweep requires non-negative prices");
    }
    double const q      = *config.q;
    auto const   model  = ValuationModel::from_market(config.curve, q, config.market.gamma);
    double const p_star = optimal_price(config.curve, q, config.market.gamma);
    double const q_star = optimal_data_size(config.market, config.curve).q_star;
    for (double p : grid)
    {
      auto const stats = detail::run_trials(config, [&](std::uint64_t seed) {
        return posted_price_trial(config.market, model, q, p, seed);
      });
      rows.push_back({p, expected_profit_at_price(p, q, config.market, config.curve), p_star, q_star,
                      stats.mean, stats.stddev});
    }
    break;
  }
  case SweepParameter::q:
  {
    if (!(lo > 0.0) || hi > config.market.max_data)
    {
      throw DomainError("q sweep must stay within (0, N]");
    }
    double const q_star = optimal_data_size(config.market, config.curve).q_star;
    for (double q : grid)
    {
      auto const model  = ValuationModel::from_market(config.curve, q, config.market.gamma);
      auto const stats  = detail::run_trials(config, [&](std::uint64_t seed) {
        return auction_trial(config.market, model, q, seed);
      });
      rows.push_back({q, expected_profit(q, config.market, config.curve),
                      optimal_price(config.curve, q, config.market.gamma), q_star, stats.mean,
                      stats.stddev});
    }
    break;
  }
  case SweepParameter::k:
  case SweepParameter::gamma:
  {
    if (!(lo > 0.0))
    {
      throw DomainError("k and gamma sweeps require positive values");
    }
    for (double v : grid)
    {
      ScenarioConfig scenario = config;
      (parameter == SweepParameter::k ? scenario.market.unit_cost : scenario.market.gamma) = v;
      rows.push_back(detail::optimal_row(v, scenario));
    }
    break;
  }
  }
  return rows;
}

inline void write_sweep_csv(std::ostream &out, std::span<SweepResultRow const> rows)
{
  out << "value,expected_profit,optimal_price,optimal_q,empirical_mean,empirical_std\n";
  for (auto const &r : rows)
  {
    out << format_number(r.value) << ',' << format_number(r.expected_profit) << ','
        << format_number(r.optimal_price) << ',' << format_number(r.optimal_q) << ','
        << format_number(r.empirical_mean) << ',' << format_number(r.empirical_stddev) << '\n';
  }
}

}  // namespace datamarket
