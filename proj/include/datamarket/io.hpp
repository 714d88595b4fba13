// SPDX-License-Identifier: Apache-2.0
#pragma once

// Flat-file formats: bid, prediction and experiment-point CSVs (header row,
// comma separated, '.' decimal separator), and 6-significant-digit number
// formatting shared by every writer.

#include "datamarket/errors.hpp"
#include "datamarket/fitmetrics.hpp"
#include "datamarket/market.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

namespace datamarket {

/// Fixed 6-significant-digit rendering used by all output tables.
inline std::string format_number(double v)
{
  if (v == 0.0)
  {
    return "0";  // avoid "-0"
  }
  return fmt::format("{:.6g}", v);
}

namespace csv {

inline std::string_view trim(std::string_view s)
{
  auto const first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos)
  {
    return {};
  }
  auto const last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split(std::string_view line)
{
  std::vector<std::string_view> fields;
  std::size_t                   start = 0;
  while (true)
  {
    auto const comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos)
    {
      break;
    }
    start = comma + 1;
  }
  return fields;
}

/// Locale-independent strict double parse. Throws InputError on junk.
inline double parse_double(std::string_view text, std::string const &context)
{
  double value = 0.0;
  auto const *end = text.data() + text.size();
  auto [ptr, ec]  = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end)
  {
    throw InputError(context + ": cannot parse number '" + std::string(text) + "'");
  }
  return value;
}

/// Reads all data rows of a CSV whose header must equal `expected` exactly.
/// Blank lines are skipped. Each returned row has `expected.size()` fields.
inline std::vector<std::vector<std::string>> read_table(std::istream &in,
                                                        std::vector<std::string_view> const &expected,
                                                        std::string const &source)
{
  std::string line;
  std::size_t line_no = 0;

  // Header, tolerating a UTF-8 byte order mark.
  bool have_header = false;
  while (std::getline(in, line))
  {
    ++line_no;
    std::string_view view = line;
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF"))
    {
      view.remove_prefix(3);
    }
    if (trim(view).empty())
    {
      continue;
    }
    if (split(view) != expected)
    {
      std::string want;
      for (auto const &h : expected)
      {
        want += want.empty() ? "" : ",";
        want += h;
      }
      throw InputError(source + ": expected header '" + want + "'");
    }
    have_header = true;
    break;
  }
  if (!have_header)
  {
    throw InputError(source + ": missing header row");
  }

  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line))
  {
    ++line_no;
    if (trim(line).empty())
    {
      continue;
    }
    auto fields = split(line);
    if (fields.size() != expected.size())
    {
      throw InputError(source + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(expected.size()) + " fields");
    }
    rows.emplace_back(fields.begin(), fields.end());
  }
  return rows;
}

}  // namespace csv

/// `customer_id,bid`. Rejects negative or non-finite bids and duplicate ids.
inline std::vector<CustomerBid> read_bids_csv(std::istream &in, std::string const &source = "bids")
{
  std::vector<CustomerBid>        bids;
  std::unordered_set<std::string> seen;
  for (auto &row : csv::read_table(in, {"customer_id", "bid"}, source))
  {
    double const bid = csv::parse_double(row[1], source);
    if (!std::isfinite(bid) || bid < 0.0)
    {
      throw InputError(source + ": bid for '" + row[0] + "' must be a non-negative number");
    }
    if (row[0].empty())
    {
      throw InputError(source + ": empty customer_id");
    }
    if (!seen.insert(row[0]).second)
    {
      throw InputError(source + ": duplicate customer_id '" + row[0] + "'");
    }
    bids.push_back({std::move(row[0]), bid});
  }
  return bids;
}

/// `y_true,y_pred`.
inline std::vector<PredictionRecord> read_predictions_csv(std::istream &in,
                                                          std::string const &source = "predictions")
{
  std::vector<PredictionRecord> records;
  for (auto const &row : csv::read_table(in, {"y_true", "y_pred"}, source))
  {
    PredictionRecord r{csv::parse_double(row[0], source), csv::parse_double(row[1], source)};
    if (!std::isfinite(r.y_true) || !std::isfinite(r.y_pred))
    {
      throw InputError(source + ": prediction values must be finite");
    }
    records.push_back(r);
  }
  return records;
}

/// `q,performance`.
inline std::vector<ExperimentPoint> read_points_csv(std::istream &in,
                                                    std::string const &source = "points")
{
  std::vector<ExperimentPoint> points;
  for (auto const &row : csv::read_table(in, {"q", "performance"}, source))
  {
    ExperimentPoint p{csv::parse_double(row[0], source), csv::parse_double(row[1], source)};
    detail::check_point(p);
    points.push_back(p);
  }
  return points;
}

}  // namespace datamarket
