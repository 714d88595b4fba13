// SPDX-License-Identifier: Apache-2.0
#pragma once

// Satisfaction-rate metric over prediction logs, and least-squares fitting
// of the logarithmic data-utility curve to (data size, performance) points.

#include "datamarket/errors.hpp"
#include "datamarket/market.hpp"

#include <cmath>
#include <cstddef>
#include <set>
#include <span>

namespace datamarket {

struct PredictionRecord
{
  double y_true{0.0};
  double y_pred{0.0};
};

struct ExperimentPoint
{
  double q{0.0};
  double alpha{0.0};  ///< measured performance in [0, 1]
};

struct FitReport
{
  UtilityCurve curve;
  double       rmse{0.0};
  std::size_t  n_points{0};
  bool         nonpositive_slope{false};  ///< b <= 0; unusable for optimisation
};

/// Fraction of records with |y_true - y_pred| strictly below tau.
inline double satisfaction_rate(std::span<PredictionRecord const> records, double tau)
{
  if (records.empty())
  {
    throw InputError("satisfaction rate needs at least one prediction record");
  }
  if (!(tau > 0.0))
  {
    throw DomainError("tolerance tau must be positive");
  }
  std::size_t hits = 0;
  for (auto const &r : records)
  {
    if (!std::isfinite(r.y_true) || !std::isfinite(r.y_pred))
    {
      throw InputError("prediction records must be finite");
    }
    if (std::abs(r.y_true - r.y_pred) < tau)
    {
      ++hits;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(records.size());
}

/// Root-mean-square residual alpha - r(q) over the points.
inline double evaluate_fit(UtilityCurve const &curve, std::span<ExperimentPoint const> points)
{
  if (points.empty())
  {
    throw InputError("cannot evaluate a fit on zero points");
  }
  double sum_sq = 0.0;
  for (auto const &p : points)
  {
    double const e = p.alpha - data_utility(p.q, curve);
    sum_sq += e * e;
  }
  return std::sqrt(sum_sq / static_cast<double>(points.size()));
}

namespace detail {

inline void check_point(ExperimentPoint const &p)
{
  if (!std::isfinite(p.q) || !std::isfinite(p.alpha))
  {
    throw InputError("experiment points must be finite");
  }
  if (!(p.q > 0.0))
  {
    throw InputError("experiment data size must be positive");
  }
  if (p.alpha < 0.0 || p.alpha > 1.0)
  {
    throw InputError("experiment performance must lie in [0, 1]");
  }
}

}  // namespace detail

/// Least-squares fit of alpha ~ a + b ln q. The model is linear in (a, b),
/// so the minimiser is the ordinary least-squares line in ln q, solved with
/// centred sums.
inline FitReport fit_utility(std::span<ExperimentPoint const> points)
{
  std::set<double> distinct;
  for (auto const &p : points)
  {
    detail::check_point(p);
    distinct.insert(p.q);
  }
  if (points.size() < 2 || distinct.size() < 2)
  {
    throw DegenerateDesignError("fit needs at least two distinct data sizes");
  }

  double const n      = static_cast<double>(points.size());
  double       mean_x = 0.0;
  double       mean_y = 0.0;
  for (auto const &p : points)
  {
    mean_x += std::log(p.q);
    mean_y += p.alpha;
  }
  mean_x /= n;
  mean_y /= n;

  double sxx = 0.0;
  double sxy = 0.0;
  for (auto const &p : points)
  {
    double const dx = std::log(p.q) - mean_x;
    sxx += dx * dx;
    sxy += dx * (p.alpha - mean_y);
  }
  if (!(sxx > 0.0))
  {
    throw DegenerateDesignError("data sizes are numerically indistinguishable on the log scale");
  }

  FitReport report;
  report.curve.b           = sxy / sxx;
  report.curve.a           = mean_y - report.curve.b * mean_x;
  report.n_points          = points.size();
  report.rmse              = evaluate_fit(report.curve, points);
  report.nonpositive_slope = !(report.curve.b > 0.0);
  return report;
}

}  // namespace datamarket
