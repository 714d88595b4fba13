// SPDX-License-Identifier: Apache-2.0
#pragma once

// Bayesian profit-maximising auction for a digital good with unlimited
// supply. Bids are mapped to virtual bids phi(b) = b - (1 - F(b)) / f(b);
// every customer with a non-negative virtual bid is served, and each winner
// pays the threshold phi^{-1}(0).
//
// With unlimited supply the VCG step on virtual bids has no competition
// between winners, so every winner's virtual payment is zero and the charged
// price collapses to p* = phi^{-1}(0). Winner determination is a single
// linear scan with no sorting.

#include "datamarket/errors.hpp"
#include "datamarket/market.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace datamarket {

struct MechanismResult
{
  AuctionOutcome           outcome;
  double                   threshold_price{0.0};
  std::vector<double>      virtual_bids;
  std::vector<std::string> customer_ids;  ///< empty for anonymous bid vectors

  /// Index of a customer by id. Throws LookupError if absent.
  std::size_t index_of(std::string const &customer_id) const
  {
    for (std::size_t i = 0; i < customer_ids.size(); ++i)
    {
      if (customer_ids[i] == customer_id)
      {
        return i;
      }
    }
    throw LookupError("unknown customer '" + customer_id + "'");
  }
};

/// phi(v) = v - (1 - F(v)) / f(v), which is 2v - support_max for the uniform
/// model. The closed form is exact at v = support_max / 2, so ties at the
/// threshold get phi = 0 and win.
inline double virtual_valuation(double v, ValuationModel const &model)
{
  if (!model.in_support(v))
  {
    throw DomainError("virtual valuation is undefined outside the valuation support");
  }
  return 2.0 * v - model.support_max();
}

inline double inverse_virtual(double y, ValuationModel const &model)
{
  double const top = model.support_max();
  if (!(y >= -top && y <= top))
  {
    throw DomainError("value is outside the image of the virtual valuation");
  }
  return (y + top) / 2.0;
}

/// Threshold price p* = phi^{-1}(0) = gamma * r(q) / 2.
inline double optimal_price(UtilityCurve const &curve, double q, double gamma)
{
  if (!(q > 0.0))
  {
    throw DomainError("optimal price requires q > 0");
  }
  if (!(gamma > 0.0))
  {
    throw DomainError("optimal price requires gamma > 0");
  }
  return gamma * data_utility(q, curve) / 2.0;
}

/// Runs the mechanism on a plain bid vector. Bids above the support are
/// clamped for the virtual-bid computation only.
inline MechanismResult run_auction(std::span<double const> bids, ValuationModel const &model,
                                   double q, double unit_cost)
{
  double const cost  = data_cost(q, unit_cost);
  double const price = inverse_virtual(0.0, model);

  MechanismResult result;
  result.threshold_price = price;
  result.virtual_bids.reserve(bids.size());
  result.outcome.allocations.reserve(bids.size());
  result.outcome.payments.reserve(bids.size());

  double revenue = 0.0;
  for (double bid : bids)
  {
    if (!(bid >= 0.0) || std::isnan(bid))
    {
      throw InputError("bids must be non-negative numbers");
    }
    double const phi = virtual_valuation(std::min(bid, model.support_max()), model);
    bool const   won = phi >= 0.0;

    result.virtual_bids.push_back(phi);
    result.outcome.allocations.push_back(won ? 1 : 0);
    result.outcome.payments.push_back(won ? price : 0.0);
    if (won)
    {
      revenue += price;
    }
  }
  result.outcome.gross_profit = revenue - cost;
  return result;
}

inline MechanismResult run_auction(std::span<CustomerBid const> bids, ValuationModel const &model,
                                   double q, double unit_cost)
{
  std::vector<double>      amounts;
  std::vector<std::string> ids;
  amounts.reserve(bids.size());
  ids.reserve(bids.size());
  for (auto const &b : bids)
  {
    amounts.push_back(b.bid);
    ids.push_back(b.customer_id);
  }
  auto result         = run_auction(std::span<double const>(amounts), model, q, unit_cost);
  result.customer_ids = std::move(ids);
  return result;
}

/// u_i = v_i * x_i - p_i for the customer that placed `bid`.
inline double customer_utility(CustomerBid const &bid, double true_valuation,
                               MechanismResult const &result)
{
  std::size_t const i = result.index_of(bid.customer_id);
  return true_valuation * result.outcome.allocations[i] - result.outcome.payments[i];
}

/// Same as customer_utility, addressed by position.
inline double customer_utility(std::size_t index, double true_valuation,
                               MechanismResult const &result)
{
  if (index >= result.outcome.allocations.size())
  {
    throw LookupError("customer index out of range");
  }
  return true_valuation * result.outcome.allocations[index] - result.outcome.payments[index];
}

/// Realised virtual surplus sum_i x_i * phi(v_i) - c(q) of a truthful profile.
inline double virtual_surplus(std::span<double const> valuations, MechanismResult const &result,
                              ValuationModel const &model, double q, double unit_cost)
{
  double surplus = 0.0;
  for (std::size_t i = 0; i < valuations.size(); ++i)
  {
    if (result.outcome.allocations[i])
    {
      surplus += virtual_valuation(valuations[i], model);
    }
  }
  return surplus - data_cost(q, unit_cost);
}

}  // namespace datamarket
