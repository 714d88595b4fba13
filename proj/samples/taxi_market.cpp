// SPDX-License-Identifier: Apache-2.0
//
// Walks the taxi trip-time service through the full pipeline: fit the
// data-utility curve, pick the data size and price, then auction the
// service to a sampled customer base.

#include "datamarket/auction.hpp"
#include "datamarket/fitmetrics.hpp"
#include "datamarket/io.hpp"
#include "datamarket/optimize.hpp"

#include <cmath>
#include <iostream>
#include <vector>

using namespace datamarket;

int main()
{
  std::vector<ExperimentPoint> points;
  for (double q : {1.0, 5.0, 10.0, 25.0, 50.0, 75.0, 100.0})
  {
    points.push_back({q, 0.4944 + 0.0079 * std::log(q)});
  }
  auto const fit = fit_utility(points);
  std::cout << "r(q) = " << format_number(fit.curve.a) << " + " << format_number(fit.curve.b)
            << " ln q  (rmse " << format_number(fit.rmse) << ")\n";

  MarketParams const market{10000, 0.5, 1.0, 100.0};
  auto const         plan = optimal_data_size(market, fit.curve);
  if (plan.rejected)
  {
    std::cout << "buying data is unprofitable\n";
    return 0;
  }
  std::cout << "buy q* = " << format_number(plan.q_star) << ", post p* = "
            << format_number(plan.price_at_q_star) << ", expect g* = "
            << format_number(plan.expected_profit_at_q_star) << '\n';

  auto const model  = ValuationModel::from_market(fit.curve, plan.q_star, market.gamma);
  auto const bids   = sample_valuations(market.customers, model, 2024);
  auto const result = run_auction(std::span<double const>(bids), model, plan.q_star, market.unit_cost);
  std::cout << "auction: " << result.outcome.winner_count() << " winners, realised profit "
            << format_number(result.outcome.gross_profit) << '\n';
  return 0;
}
