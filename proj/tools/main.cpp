#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"otslab - asynchronous opinion dynamics lab"};
  app.require_subcommand(1);

  otslab::cli::SimulateArgs simulate_args;
  std::string simulate_trace;
  std::string simulate_svg;
  std::string simulate_seeds;
  auto* simulate = app.add_subcommand("simulate", "run one experiment, emit a CSV trace");
  simulate->add_option("-c,--config", simulate_args.config_path, "experiment config JSON")
      ->required();
  simulate->add_option("-o,--output", simulate_trace, "trace CSV path");
  simulate->add_option("--svg", simulate_svg, "also write an SVG line plot");
  simulate->add_option("--seeds", simulate_seeds,
                       "seed range a..b: run all seeds concurrently");

  otslab::cli::FairnessArgs fairness_args;
  std::string fairness_trace, fairness_config, fairness_out;
  size_t fairness_horizon = 0;
  int fairness_m = 0;
  size_t fairness_k = 0, fairness_g = 0;
  auto* fairness =
      app.add_subcommand("fairness", "window/gap/multi-window diagnostics of a word");
  fairness->add_option("--trace", fairness_trace, "trace CSV to analyze");
  fairness->add_option("-c,--config", fairness_config,
                       "experiment config (word source, or alphabet for --trace)");
  fairness->add_option("--horizon", fairness_horizon,
                       "word length to generate from the config");
  fairness->add_option("-m", fairness_m, "multi-window count (default 1)");
  fairness->add_option("-k", fairness_k, "window length (default |E|)");
  fairness->add_option("-G", fairness_g, "density horizon (optional)");
  fairness->add_option("-o,--output", fairness_out, "write the JSON report here");

  otslab::cli::VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "run the numerical bound auditors");
  verify->add_option("-c,--config", verify_args.config_path, "experiment config JSON")
      ->required();
  verify->add_option("--delta-cap", verify_args.delta_agent_cap,
                     "max agent count for the recurrence scan (default 12)");

  otslab::cli::ReproduceArgs reproduce_args;
  auto* reproduce = app.add_subcommand("reproduce", "run a built-in demo scenario");
  reproduce->add_option("figure_id", reproduce_args.figure_id,
                        "one of the built-in scenario ids")
      ->required();
  reproduce->add_option("-o,--outdir", reproduce_args.out_dir, "output directory")
      ->default_val("out");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : otslab::cli::kValidationError;
  }

  if (simulate->parsed()) {
    if (!simulate_trace.empty()) simulate_args.trace_out = simulate_trace;
    if (!simulate_svg.empty()) simulate_args.svg_out = simulate_svg;
    if (!simulate_seeds.empty()) {
      const auto dots = simulate_seeds.find("..");
      if (dots == std::string::npos) {
        std::cerr << "error: --seeds expects a range like 1..8\n";
        return otslab::cli::kValidationError;
      }
      try {
        simulate_args.seeds = {std::stoull(simulate_seeds.substr(0, dots)),
                               std::stoull(simulate_seeds.substr(dots + 2))};
      } catch (const std::exception&) {
        std::cerr << "error: --seeds expects a range like 1..8\n";
        return otslab::cli::kValidationError;
      }
    }
    return otslab::cli::cmd_simulate(simulate_args, std::cout, std::cerr);
  }
  if (fairness->parsed()) {
    if (!fairness_trace.empty()) fairness_args.trace_path = fairness_trace;
    if (!fairness_config.empty()) fairness_args.config_path = fairness_config;
    if (fairness_horizon > 0) fairness_args.horizon = fairness_horizon;
    if (fairness_m > 0) fairness_args.multi_m = fairness_m;
    if (fairness_k > 0) fairness_args.multi_k = fairness_k;
    if (fairness_g > 0) fairness_args.density_g = fairness_g;
    if (!fairness_out.empty()) fairness_args.out_path = fairness_out;
    return otslab::cli::cmd_fairness(fairness_args, std::cout, std::cerr);
  }
  if (verify->parsed()) {
    return otslab::cli::cmd_verify(verify_args, std::cout, std::cerr);
  }
  if (reproduce->parsed()) {
    return otslab::cli::cmd_reproduce(reproduce_args, std::cout, std::cerr);
  }
  return otslab::cli::kValidationError;
}
