// SPDX-License-Identifier: Apache-2.0
#pragma once

// Expected provider profit as a function of purchased data size, its
// closed-form maximiser, and a brute-force grid maximiser used as an oracle.

#include "datamarket/errors.hpp"
#include "datamarket/market.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

namespace datamarket {

struct ProfitReport
{
  double q_star{0.0};
  double expected_profit_at_q_star{0.0};
  double price_at_q_star{0.0};
  bool   rejected{true};
};

/// Expected profit with the threshold price posted:
/// g(q) = M * gamma * (a + b ln q) / 4 - k q for q > 0, and 0 at q = 0.
inline double expected_profit(double q, MarketParams const &params, UtilityCurve const &curve)
{
  if (!(q >= 0.0) || q > params.max_data)
  {
    throw DomainError("data size must lie in [0, N]");
  }
  if (q == 0.0)
  {
    return 0.0;
  }
  double const m = static_cast<double>(params.customers);
  return m * params.gamma * data_utility(q, curve) / 4.0 - data_cost(q, params.unit_cost);
}

/// Expected profit of posting an arbitrary price p at data size q:
/// M * (1 - F(p)) * p - k q.
inline double expected_profit_at_price(double price, double q, MarketParams const &params,
                                       UtilityCurve const &curve)
{
  auto const   model = ValuationModel::from_market(curve, q, params.gamma);
  double const m     = static_cast<double>(params.customers);
  return m * (1.0 - model.cdf(price)) * price - data_cost(q, params.unit_cost);
}

/// g'(q) = M gamma b / (4 q) - k.
inline double profit_derivative(MarketParams const &params, UtilityCurve const &curve, double q)
{
  if (!(q > 0.0))
  {
    throw DomainError("derivative requires q > 0");
  }
  double const m = static_cast<double>(params.customers);
  return m * params.gamma * curve.b / (4.0 * q) - params.unit_cost;
}

/// g''(q) = -M gamma b / (4 q^2); non-positive whenever b > 0.
inline double concavity_check(MarketParams const &params, UtilityCurve const &curve, double q)
{
  if (!(q > 0.0))
  {
    throw DomainError("second derivative requires q > 0");
  }
  double const m = static_cast<double>(params.customers);
  return -m * params.gamma * curve.b / (4.0 * q * q);
}

/// Unclamped interior stationary point M gamma b / (4 k).
inline double stationary_data_size(MarketParams const &params, UtilityCurve const &curve)
{
  double const m = static_cast<double>(params.customers);
  return m * params.gamma * curve.b / (4.0 * params.unit_cost);
}

/// Globally optimal data size. g is concave on (0, N], so min(stationary, N)
/// is the maximiser there; the provider buys only if g at that point is
/// strictly positive.
inline ProfitReport optimal_data_size(MarketParams const &params, UtilityCurve const &curve)
{
  params.validate();
  curve.validate();

  double const q_plus = std::min(stationary_data_size(params, curve), params.max_data);
  double const profit = expected_profit(q_plus, params, curve);

  ProfitReport report;
  if (profit > 0.0)
  {
    report.q_star                    = q_plus;
    report.expected_profit_at_q_star = profit;
    report.price_at_q_star           = params.gamma * data_utility(q_plus, curve) / 2.0;
    report.rejected                  = false;
  }
  return report;
}

struct GridMax
{
  double argmax{0.0};
  double value{0.0};
};

/// Maximises f over `steps` evenly spaced points lo, ..., hi. The first
/// maximiser wins on exact ties.
template <typename Fn>
GridMax grid_argmax(Fn &&f, double lo, double hi, std::size_t steps)
{
  if (!(lo < hi))
  {
    throw DomainError("grid requires lo < hi");
  }
  if (steps < 2)
  {
    throw DomainError("grid requires at least two steps");
  }
  double const h = (hi - lo) / static_cast<double>(steps - 1);

  GridMax best;
  for (std::size_t i = 0; i < steps; ++i)
  {
    double const x = (i + 1 == steps) ? hi : lo + h * static_cast<double>(i);
    double const y = f(x);
    if (!std::isfinite(y))
    {
      throw EvaluationError("non-finite function value on grid");
    }
    if (i == 0 || y > best.value)
    {
      best = {x, y};
    }
  }
  return best;
}

}  // namespace datamarket
