// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace datamarket {

/// Argument outside the mathematical domain of an operation (negative data
/// size, valuation outside the support, ...).
class DomainError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

/// Malformed or inconsistent input data (bad CSV rows, negative bids,
/// empty record sets).
class InputError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Design matrix of a fit is rank deficient.
class DegenerateDesignError : public InputError
{
public:
  using InputError::InputError;
};

/// A function under evaluation returned a non-finite value.
class EvaluationError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class LookupError : public std::out_of_range
{
public:
  using std::out_of_range::out_of_range;
};

/// Bad command-line usage: unknown subcommand, flag, or sweep parameter.
class UsageError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// Scenario configuration violates an invariant. Carries the offending key.
class ConfigError : public std::invalid_argument
{
public:
  ConfigError(std::string field, std::string const &message)
    : std::invalid_argument(field + ": " + message)
    , field_(std::move(field))
  {}

  std::string const &field() const noexcept
  {
    return field_;
  }

private:
  std::string field_;
};

}  // namespace datamarket
