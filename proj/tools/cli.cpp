// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include "datamarket/auction.hpp"
#include "datamarket/errors.hpp"
#include "datamarket/fitmetrics.hpp"
#include "datamarket/io.hpp"
#include "datamarket/optimize.hpp"
#include "datamarket/scenario.hpp"
#include "datamarket/simulation.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace datamarket::cli {
namespace {

std::ifstream open_input(std::string const &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw InputError("cannot open '" + path + "'");
  }
  return in;
}

ScenarioConfig load_scenario(std::string const &path, std::ostream &err)
{
  auto in  = open_input(path);
  auto cfg = parse_scenario(in);
  for (auto const &w : cfg.warnings())
  {
    err << "warning: " << w << '\n';
  }
  return cfg;
}

/// Writes `body` to `path` when given, else to `out`.
void emit(std::string const &body, std::string const &path, std::ostream &out)
{
  if (path.empty())
  {
    out << body;
    return;
  }
  std::ofstream file(path);
  if (!file)
  {
    throw InputError("cannot open '" + path + "' for writing");
  }
  file << body;
}

struct Options
{
  std::string                  config;
  std::string                  bids;
  std::string                  points;
  std::string                  predictions;
  std::string                  out;
  std::string                  param;
  std::optional<double>        tau;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t>   trials;
  double                       lo{0.0};
  double                       hi{0.0};
  std::size_t                  steps{0};
};

void apply_overrides(ScenarioConfig &cfg, Options const &opt)
{
  if (opt.seed)
  {
    cfg.seed = *opt.seed;
  }
  if (opt.trials)
  {
    cfg.trials = *opt.trials;
  }
  cfg.validate();
}

int run_fit(Options const &opt, std::ostream &out, std::ostream &err)
{
  auto       in     = open_input(opt.points);
  auto const points = read_points_csv(in, opt.points);
  auto const report = fit_utility(points);
  if (report.nonpositive_slope)
  {
    err << "warning: fitted slope b <= 0; curve cannot be used for data-size optimisation\n";
  }
  std::ostringstream body;
  body << "a = " << format_number(report.curve.a) << '\n'
       << "b = " << format_number(report.curve.b) << '\n'
       << "rmse = " << format_number(report.rmse) << '\n'
       << "n_points = " << report.n_points << '\n';
  emit(body.str(), opt.out, out);
  return 0;
}

int run_metric(Options const &opt, std::ostream &out, std::ostream &err)
{
  std::optional<double> tau = opt.tau;
  if (!tau && !opt.config.empty())
  {
    tau = load_scenario(opt.config, err).tau;
  }
  if (!tau)
  {
    throw UsageError("metric needs --tau or a config with tau");
  }
  auto       in      = open_input(opt.predictions);
  auto const records = read_predictions_csv(in, opt.predictions);
  std::ostringstream body;
  body << "satisfaction_rate = " << format_number(satisfaction_rate(records, *tau)) << '\n'
       << "records = " << records.size() << '\n';
  emit(body.str(), opt.out, out);
  return 0;
}

int run_auction_cmd(Options const &opt, std::ostream &out, std::ostream &err)
{
  auto const cfg = load_scenario(opt.config, err);
  if (!cfg.q)
  {
    throw ConfigError("q", "auction requires a fixed data size");
  }
  auto       in     = open_input(opt.bids);
  auto const bids   = read_bids_csv(in, opt.bids);
  auto const model  = ValuationModel::from_market(cfg.curve, *cfg.q, cfg.market.gamma);
  auto const result = run_auction(std::span<CustomerBid const>(bids), model, *cfg.q,
                                  cfg.market.unit_cost);

  std::ostringstream body;
  body << "customer_id,bid,virtual_bid,allocated,payment\n";
  for (std::size_t i = 0; i < bids.size(); ++i)
  {
    body << bids[i].customer_id << ',' << format_number(bids[i].bid) << ','
         << format_number(result.virtual_bids[i]) << ','
         << static_cast<int>(result.outcome.allocations[i]) << ','
         << format_number(result.outcome.payments[i]) << '\n';
  }
  body << "# threshold_price = " << format_number(result.threshold_price) << '\n'
       << "# winners = " << result.outcome.winner_count() << '\n'
       << "# gross_profit = " << format_number(result.outcome.gross_profit) << '\n';
  emit(body.str(), opt.out, out);
  return 0;
}

int run_optimize(Options const &opt, std::ostream &out, std::ostream &err)
{
  auto const cfg    = load_scenario(opt.config, err);
  auto const report = optimal_data_size(cfg.market, cfg.curve);
  std::ostringstream body;
  body << "q_star = " << format_number(report.q_star) << '\n'
       << "optimal_price = " << format_number(report.price_at_q_star) << '\n'
       << "expected_profit = " << format_number(report.expected_profit_at_q_star) << '\n'
       << "rejected = " << (report.rejected ? "true" : "false") << '\n';
  emit(body.str(), opt.out, out);
  return 0;
}

int run_simulate(Options const &opt, std::ostream &out, std::ostream &err)
{
  auto cfg = load_scenario(opt.config, err);
  apply_overrides(cfg, opt);
  auto const report = simulate(cfg);
  std::ostringstream body;
  write_report(body, report);
  emit(body.str(), opt.out, out);
  return 0;
}

int run_sweep(Options const &opt, std::ostream &out, std::ostream &err)
{
  auto cfg = load_scenario(opt.config, err);
  apply_overrides(cfg, opt);
  auto const rows = sweep(cfg, parse_sweep_parameter(opt.param), opt.lo, opt.hi, opt.steps);
  std::ostringstream body;
  write_sweep_csv(body, rows);
  emit(body.str(), opt.out, out);
  return 0;
}

}  // namespace

int cli_main(int argc, char const *const *argv, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Data market pricing and data-size optimisation toolkit", "datamarket"};
  app.require_subcommand(1);

  Options opt;

  auto *fit = app.add_subcommand("fit", "Fit r(q) = a + b ln q to experiment points");
  fit->add_option("--points", opt.points, "CSV with header q,performance")->required();
  fit->add_option("--out", opt.out, "Output file (default: stdout)");

  auto *metric = app.add_subcommand("metric", "Satisfaction rate of a prediction log");
  metric->add_option("--predictions", opt.predictions, "CSV with header y_true,y_pred")->required();
  metric->add_option("--tau", opt.tau, "Error tolerance (overrides config tau)");
  metric->add_option("--config", opt.config, "Scenario config supplying tau");
  metric->add_option("--out", opt.out, "Output file (default: stdout)");

  auto *auction = app.add_subcommand("auction", "Run the optimal auction on sealed bids");
  auction->add_option("--bids", opt.bids, "CSV with header customer_id,bid")->required();
  auction->add_option("--config", opt.config, "Scenario config (must set q)")->required();
  auction->add_option("--out", opt.out, "Output file (default: stdout)");

  auto *optimize = app.add_subcommand("optimize", "Optimal data size, price and profit");
  optimize->add_option("--config", opt.config, "Scenario config")->required();
  optimize->add_option("--out", opt.out, "Output file (default: stdout)");

  auto *simulate_cmd = app.add_subcommand("simulate", "Monte-Carlo check of expected profit");
  simulate_cmd->add_option("--config", opt.config, "Scenario config (must set q)")->required();
  simulate_cmd->add_option("--seed", opt.seed, "Base seed (overrides config)");
  simulate_cmd->add_option("--trials", opt.trials, "Monte-Carlo trials (overrides config)");
  simulate_cmd->add_option("--out", opt.out, "Output file (default: stdout)");

  auto *sweep_cmd = app.add_subcommand("sweep", "Tabulate profit over one parameter");
  sweep_cmd->add_option("--config", opt.config, "Scenario config")->required();
  sweep_cmd->add_option("--param", opt.param, "price, q, k or gamma")->required();
  sweep_cmd->add_option("--lo", opt.lo, "Lower end of the grid")->required();
  sweep_cmd->add_option("--hi", opt.hi, "Upper end of the grid")->required();
  sweep_cmd->add_option("--steps", opt.steps, "Grid points (>= 2)")->required();
  sweep_cmd->add_option("--seed", opt.seed, "Base seed (overrides config)");
  sweep_cmd->add_option("--trials", opt.trials, "Monte-Carlo trials per row (overrides config)");
  sweep_cmd->add_option("--out", opt.out, "Output file (default: stdout)");

  try
  {
    app.parse(argc, argv);
  }
  catch (CLI::CallForHelp const &e)
  {
    app.exit(e, out, err);
    return 0;
  }
  catch (CLI::ParseError const &e)
  {
    err << "error: " << e.what() << '\n' << app.help();
    return 1;
  }

  try
  {
    if (*fit)
    {
      return run_fit(opt, out, err);
    }
    if (*metric)
    {
      return run_metric(opt, out, err);
    }
    if (*auction)
    {
      return run_auction_cmd(opt, out, err);
    }
    if (*optimize)
    {
      return run_optimize(opt, out, err);
    }
    if (*simulate_cmd)
    {
      return run_simulate(opt, out, err);
    }
    if (*sweep_cmd)
    {
      return run_sweep(opt, out, err);
    }
    return 1;
  }
  catch (ConfigError const &e)
  {
    err << "config error: " << e.what() << '\n';
  }
  catch (UsageError const &e)
  {
    err << "usage error: " << e.what() << '\n';
  }
  catch (InputError const &e)
  {
    err << "input error: " << e.what() << '\n';
  }
  catch (DomainError const &e)
  {
    err << "input error: " << e.what() << '\n';
  }
  catch (LookupError const &e)
  {
    err << "input error: " << e.what() << '\n';
  }
  catch (std::exception const &e)
  {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace datamarket::cli
