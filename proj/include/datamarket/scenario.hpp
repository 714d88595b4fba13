// SPDX-License-Identifier: Apache-2.0
#pragma once

// Scenario configuration: line-oriented `key = value` text with `#`
// comments. Recognised keys are exactly M, k, gamma, N, a, b, q, tau, seed
// and trials; M, k, gamma, N, a and b are required.

#include "datamarket/errors.hpp"
#include "datamarket/io.hpp"
#include "datamarket/market.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace datamarket {

struct ScenarioConfig
{
  MarketParams          market;
  UtilityCurve          curve;
  std::optional<double> q;
  std::optional<double> tau;
  std::uint64_t         seed{0};
  std::size_t           trials{100};

  /// Re-checks every invariant, reporting the offending key in ConfigError.
  void validate() const
  {
    if (market.customers < 1)
    {
      throw ConfigError("M", "must be at least 1");
    }
    if (!(market.unit_cost > 0.0) || !std::isfinite(market.unit_cost))
    {
      throw ConfigError("k", "must be positive and finite");
    }
    if (!(market.gamma > 0.0) || !std::isfinite(market.gamma))
    {
      throw ConfigError("gamma", "must be positive and finite");
    }
    if (!(market.max_data > 0.0) || !std::isfinite(market.max_data))
    {
      throw ConfigError("N", "must be positive and finite");
    }
    if (!std::isfinite(curve.a))
    {
      throw ConfigError("a", "must be finite");
    }
    if (!(curve.b > 0.0) || !std::isfinite(curve.b))
    {
      throw ConfigError("b", "must be positive and finite");
    }
    if (trials < 1)
    {
      throw ConfigError("trials", "must be at least 1");
    }
    if (q)
    {
      if (!(*q > 0.0) || *q > market.max_data)
      {
        throw ConfigError("q", "must lie in (0, N]");
      }
      if (!(data_utility(*q, curve) * market.gamma > 0.0))
      {
        throw ConfigError("q", "r(q) * gamma must be positive to define customer valuations");
      }
    }
    if (tau && !(*tau > 0.0))
    {
      throw ConfigError("tau", "must be positive");
    }
  }

  std::vector<std::string> warnings() const
  {
    return curve_warnings(curve, market.max_data);
  }
};

namespace detail {

template <typename Int>
Int parse_config_integer(std::string const &key, std::string_view text)
{
  Int value{};
  auto const *end = text.data() + text.size();
  auto [ptr, ec]  = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end)
  {
    throw ConfigError(key, "expected a non-negative integer, got '" + std::string(text) + "'");
  }
  return value;
}

inline double parse_config_double(std::string const &key, std::string_view text)
{
  try
  {
    return csv::parse_double(text, key);
  }
  catch (InputError const &)
  {
    throw ConfigError(key, "expected a number, got '" + std::string(text) + "'");
  }
}

}  // namespace detail

inline ScenarioConfig parse_scenario(std::istream &in)
{
  static constexpr std::string_view known[] = {"M", "k",   "gamma", "N",    "a",
                                               "b", "q",   "tau",   "seed", "trials"};

  std::map<std::string, std::string, std::less<>> values;
  std::string                                     line;
  std::size_t                                     line_no = 0;
  while (std::getline(in, line))
  {
    ++line_no;
    std::string_view view = line;
    if (auto hash = view.find('#'); hash != std::string_view::npos)
    {
      view = view.substr(0, hash);
    }
    view = csv::trim(view);
    if (view.empty())
    {
      continue;
    }
    auto const eq = view.find('=');
    if (eq == std::string_view::npos)
    {
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
    }
    std::string key(csv::trim(view.substr(0, eq)));
    std::string value(csv::trim(view.substr(eq + 1)));
    if (std::find(std::begin(known), std::end(known), key) == std::end(known))
    {
      throw ConfigError(key, "unknown configuration key");
    }
    if (!values.emplace(key, value).second)
    {
      throw ConfigError(key, "duplicate configuration key");
    }
  }

  auto required = [&](char const *key) -> std::string const & {
    auto it = values.find(key);
    if (it == values.end())
    {
      throw ConfigError(key, "required key is missing");
    }
    return it->second;
  };

  ScenarioConfig cfg;
  cfg.market.customers = detail::parse_config_integer<std::size_t>("M", required("M"));
  cfg.market.unit_cost = detail::parse_config_double("k", required("k"));
  cfg.market.gamma     = detail::parse_config_double("gamma", required("gamma"));
  cfg.market.max_data  = detail::parse_config_double("N", required("N"));
  cfg.curve.a          = detail::parse_config_double("a", required("a"));
  cfg.curve.b          = detail::parse_config_double("b", required("b"));
  if (auto it = values.find("q"); it != values.end())
  {
    cfg.q = detail::parse_config_double("q", it->second);
  }
  if (auto it = values.find("tau"); it != values.end())
  {
    cfg.tau = detail::parse_config_double("tau", it->second);
  }
  if (auto it = values.find("seed"); it != values.end())
  {
    cfg.seed = detail::parse_config_integer<std::uint64_t>("seed", it->second);
  }
  if (auto it = values.find("trials"); it != values.end())
  {
    cfg.trials = detail::parse_config_integer<std::size_t>("trials", it->second);
  }
  cfg.validate();
  return cfg;
}

}  // namespace datamarket
