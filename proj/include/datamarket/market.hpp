// SPDX-License-Identifier: Apache-2.0
#pragma once

// Core domain types of the data market: data cost, the logarithmic
// data-utility curve, and the uniform-preference valuation distribution.

#include "datamarket/errors.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace datamarket {

/// Service performance as a function of purchased data size:
/// r(q) = a + b * ln(q).
struct UtilityCurve
{
  double a{0.0};  ///< intercept
  double b{0.0};  ///< log-slope, must be positive for optimisation

  /// Throws DomainError unless a, b are finite and b > 0.
  void validate() const
  {
    if (!std::isfinite(a) || !std::isfinite(b))
    {
      throw DomainError("utility curve coefficients must be finite");
    }
    if (!(b > 0.0))
    {
      throw DomainError("utility curve slope b must be positive");
    }
  }
};

/// Market-wide constants of one scenario.
struct MarketParams
{
  std::size_t customers{1};  ///< M
  double      unit_cost{1};  ///< k, cost per data unit
  double      gamma{1};      ///< influence of performance on valuation
  double      max_data{1};   ///< N, data available from the collector

  void validate() const
  {
    if (customers < 1)
    {
      throw DomainError("customer count M must be at least 1");
    }
    if (!(unit_cost > 0.0) || !std::isfinite(unit_cost))
    {
      throw DomainError("unit cost k must be positive and finite");
    }
    if (!(gamma > 0.0) || !std::isfinite(gamma))
    {
      throw DomainError("influence coefficient gamma must be positive and finite");
    }
    if (!(max_data > 0.0) || !std::isfinite(max_data))
    {
      throw DomainError("maximum data size N must be positive and finite");
    }
  }
};

struct CustomerBid
{
  std::string customer_id;
  double      bid{0.0};
};

struct AuctionOutcome
{
  std::vector<std::uint8_t> allocations;  ///< x_i in {0, 1}
  std::vector<double>       payments;     ///< p_i, zero for losers
  double                    gross_profit{0.0};

  std::size_t winner_count() const noexcept
  {
    std::size_t n = 0;
    for (auto x : allocations)
    {
      n += x;
    }
    return n;
  }
};

inline double data_cost(double q, double unit_cost)
{
  if (!(q >= 0.0))
  {
    throw DomainError("data size must be non-negative");
  }
  if (!(unit_cost > 0.0))
  {
    throw DomainError("unit cost must be positive");
  }
  return unit_cost * q;
}

/// Not clamped to [0, 1]: the closed-form optimum relies on the raw logarithm.
inline double data_utility(double q, UtilityCurve const &curve)
{
  if (!(q > 0.0))
  {
    throw DomainError("data utility is undefined for q <= 0");
  }
  return curve.a + curve.b * std::log(q);
}

/// Distribution of v = d * r(q) * gamma with d ~ U[0, 1], i.e. U[0, support_max].
class ValuationModel
{
public:
  explicit ValuationModel(double support_max)
    : support_max_(support_max)
  {
    if (!(support_max > 0.0) || !std::isfinite(support_max))
    {
      throw DomainError("valuation support must be positive and finite");
    }
  }

  /// Model induced by a utility curve at data size q. Requires r(q) * gamma > 0.
  static ValuationModel from_market(UtilityCurve const &curve, double q, double gamma)
  {
    if (!(gamma > 0.0))
    {
      throw DomainError("influence coefficient gamma must be positive");
    }
    double const top = data_utility(q, curve) * gamma;
    if (!(top > 0.0))
    {
      throw DomainError("r(q) * gamma must be positive to define a valuation distribution");
    }
    return ValuationModel(top);
  }

  double support_max() const noexcept
  {
    return support_max_;
  }

  bool in_support(double v) const noexcept
  {
    return v >= 0.0 && v <= support_max_;
  }

  double pdf(double v) const noexcept
  {
    return in_support(v) ? 1.0 / support_max_ : 0.0;
  }

  double cdf(double v) const noexcept
  {
    if (v < 0.0)
    {
      return 0.0;
    }
    if (v > support_max_)
    {
      return 1.0;
    }
    return v / support_max_;
  }

private:
  double support_max_;
};

inline double valuation_cdf(double v, ValuationModel const &model) noexcept
{
  return model.cdf(v);
}

/// M i.i.d. valuations; the generator is seeded from `seed` and owned locally.
inline std::vector<double> sample_valuations(std::size_t count, ValuationModel const &model,
                                             std::uint64_t seed)
{
  if (count == 0)
  {
    throw DomainError("sample count must be at least 1");
  }
  std::mt19937_64                        rng(seed);
  std::uniform_real_distribution<double> preference(0.0, 1.0);

  std::vector<double> values(count);
  for (auto &v : values)
  {
    v = preference(rng) * model.support_max();
  }
  return values;
}

/// Plausibility warnings for a curve over (0, N]. Empty when r stays in [0, 1].
inline std::vector<std::string> curve_warnings(UtilityCurve const &curve, double max_data)
{
  std::vector<std::string> out;
  if (max_data > 0.0 && data_utility(max_data, curve) > 1.0)
  {
    out.emplace_back("r(N) exceeds 1; performance is not a probability at full data size");
  }
  if (curve.a < 0.0)
  {
    out.emplace_back("r(1) is negative");
  }
  return out;
}

}  // namespace datamarket
