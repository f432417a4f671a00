#include "commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <ostream>
#include <set>

#include <json.hpp>

#include "otslab/analysis.hpp"
#include "otslab/fairness.hpp"
#include "otslab/presets.hpp"
#include "otslab/svg_plot.hpp"
#include "otslab/trace_csv.hpp"

namespace otslab::cli {

namespace {

using nlohmann::json;

// validation -> 1, runtime/guard/engine -> 2
int run_guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const std::invalid_argument& ex) {
    err << "error: " << ex.what() << "\n";
    return kValidationError;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kRuntimeError;
  }
}

// Word of the configured run without storing states.
std::vector<int> collect_word(const ExperimentConfig& config, size_t horizon) {
  const InfluenceFunction influence = make_influence(config);
  const SchedulerPtr scheduler = make_scheduler(config);
  std::vector<int> word;
  word.reserve(horizon);
  OpinionState current = config.initial;
  for (size_t t = 0; t < horizon; ++t) {
    const int e = scheduler->next(current);
    word.push_back(e);
    current = step(current, e, influence, config.graph);
  }
  return word;
}

json fairness_report_json(const FairnessReport& report,
                          const std::vector<std::string>& labels) {
  json j;
  j["length"] = report.length;
  j["alphabet"] = labels;
  json gaps;
  for (size_t s = 0; s < labels.size(); ++s) {
    gaps[labels[s]] = report.per_symbol_max_gap[s];
  }
  j["per_edge_max_gap"] = gaps;
  if (report.min_uniform_k) {
    j["minimal_uniform_k"] = *report.min_uniform_k;
  } else {
    j["minimal_uniform_k"] = nullptr;
  }
  json multi;
  multi["m"] = report.multi_m;
  multi["k"] = report.multi_k;
  multi["count"] = report.multiwindow_starts.size();
  const size_t keep = std::min<size_t>(report.multiwindow_starts.size(), 200);
  multi["first_starts"] = std::vector<size_t>(report.multiwindow_starts.begin(),
                                              report.multiwindow_starts.begin() +
                                                  static_cast<std::ptrdiff_t>(keep));
  if (report.density_gap) {
    multi["density_gap"] = *report.density_gap;
  } else {
    multi["density_gap"] = nullptr;
  }
  j["multiwindow"] = multi;
  j["analytic_tag"] = report.analytic_tag.describe();
  return j;
}

void emit_json(const json& j, const std::optional<std::string>& path,
               std::ostream& out) {
  if (path) {
    std::ofstream file(*path);
    if (!file) throw std::runtime_error("cannot write report file: " + *path);
    file << j.dump(2) << "\n";
  } else {
    out << j.dump(2) << "\n";
  }
}

}  // namespace

void apply_env_seed(ExperimentConfig& config) {
  if (const char* env = std::getenv("OTSLAB_SEED")) {
    config.seed = std::strtoull(env, nullptr, 10);
    config.scheduler.seed.reset();  // fall back to the overridden config seed
  }
}

namespace {

std::string with_seed_suffix(const std::string& path, uint64_t seed) {
  const auto dot = path.rfind('.');
  const std::string suffix = ".seed" + std::to_string(seed);
  if (dot == std::string::npos || dot == 0) return path + suffix;
  return path.substr(0, dot) + suffix + path.substr(dot);
}

ConvergenceReport run_one_simulation(const ExperimentConfig& config,
                                     const std::string& trace_out,
                                     const std::optional<std::string>& svg_out) {
  const InfluenceFunction influence = make_influence(config);
  const SchedulerPtr scheduler = make_scheduler(config);
  const RunTrace trace =
      execute(config.graph, config.initial, influence, *scheduler, config.steps);
  write_trace_csv_file(trace_out, trace, config.graph);
  if (svg_out) {
    write_trace_svg_file(*svg_out, trace, config.graph,
                         "opinions (" + scheduler->describe() + ")",
                         influence.dynamic());
  }
  return convergence(trace, config.tolerance);
}

}  // namespace

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&]() {
    ExperimentConfig config = load_config(args.config_path);
    apply_env_seed(config);

    const auto trace_out = args.trace_out ? args.trace_out : config.trace_path;
    if (!trace_out) {
      throw std::invalid_argument("simulate: no trace output path (-o or output.trace)");
    }
    const auto svg_out = args.svg_out ? args.svg_out : config.svg_path;

    if (!args.seeds) {
      const ConvergenceReport report = run_one_simulation(config, *trace_out, svg_out);
      out << "steps=" << config.steps << " gap=" << report.gap
          << " consensus=" << (report.consensus ? "yes" : "no")
          << " trace=" << *trace_out << (svg_out ? " svg=" + *svg_out : "") << "\n";
      return kOk;
    }

    // batch mode: independent runs fan out concurrently and the summaries
    // are merged
    const auto [first, last] = *args.seeds;
    if (last < first) throw std::invalid_argument("simulate: empty seed range");
    struct SeedRun {
      uint64_t seed;
      std::string trace_path;
      std::future<ConvergenceReport> report;
    };
    std::vector<SeedRun> runs;
    for (uint64_t seed = first; seed <= last; ++seed) {
      ExperimentConfig seeded = config;
      seeded.seed = seed;
      seeded.scheduler.seed.reset();  // let the run seed take effect
      std::string path = with_seed_suffix(*trace_out, seed);
      std::optional<std::string> svg =
          svg_out ? std::optional<std::string>(with_seed_suffix(*svg_out, seed))
                  : std::nullopt;
      runs.push_back({seed, path,
                      std::async(std::launch::async, run_one_simulation,
                                 std::move(seeded), path, svg)});
    }
    size_t consensual = 0;
    double min_gap = 0.0, max_gap = 0.0;
    bool first_report = true;
    for (auto& run : runs) {
      const ConvergenceReport report = run.report.get();
      if (report.consensus) ++consensual;
      min_gap = first_report ? report.gap : std::min(min_gap, report.gap);
      max_gap = first_report ? report.gap : std::max(max_gap, report.gap);
      first_report = false;
      out << "seed=" << run.seed << " gap=" << report.gap
          << " consensus=" << (report.consensus ? "yes" : "no")
          << " trace=" << run.trace_path << "\n";
    }
    out << "seeds=" << first << ".." << last << " consensus=" << consensual << "/"
        << runs.size() << " min_gap=" << min_gap << " max_gap=" << max_gap << "\n";
    return kOk;
  });
}

int cmd_fairness(const FairnessArgs& args, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&]() {
    if (!args.trace_path && !args.config_path) {
      throw std::invalid_argument("fairness: need --trace or a config");
    }

    std::vector<std::string> labels;
    std::vector<int> symbols;
    FairnessTag tag = FairnessTag::unknown();

    if (args.trace_path) {
      const ParsedTrace parsed = parse_trace_csv_file(*args.trace_path);
      if (args.config_path) {
        ExperimentConfig config = load_config(*args.config_path);
        for (const auto& edge : config.graph.edges()) labels.push_back(edge.label);
        for (const auto& action : parsed.actions) {
          const auto e = config.graph.edge_by_label(action);
          if (!e) {
            throw std::invalid_argument("fairness: trace action '" + action +
                                        "' is not in the configured graph");
          }
          symbols.push_back(*e);
        }
      } else {
        // alphabet = labels observed in the trace, in first-seen order
        for (const auto& action : parsed.actions) {
          auto it = std::find(labels.begin(), labels.end(), action);
          if (it == labels.end()) {
            labels.push_back(action);
            it = labels.end() - 1;
          }
          symbols.push_back(static_cast<int>(it - labels.begin()));
        }
      }
    } else {
      if (!args.horizon) {
        throw std::invalid_argument("fairness: config input needs --horizon");
      }
      ExperimentConfig config = load_config(*args.config_path);
      apply_env_seed(config);
      for (const auto& edge : config.graph.edges()) labels.push_back(edge.label);
      symbols = collect_word(config, *args.horizon);
      tag = make_scheduler(config)->tag();
    }

    if (labels.empty()) throw std::invalid_argument("fairness: empty word");
    const WordPrefix prefix =
        WordPrefix::from_indices(std::move(symbols), static_cast<int>(labels.size()));

    const int m = args.multi_m.value_or(1);
    const size_t k = args.multi_k.value_or(labels.size());
    FairnessReport report = analyze_fairness(prefix, m, k, tag);
    json j = fairness_report_json(report, labels);
    if (args.density_g) {
      json density;
      density["G"] = *args.density_g;
      density["ok"] = density_check(prefix, m, k, *args.density_g);
      j["density"] = density;
    }
    emit_json(j, args.out_path, out);
    return kOk;
  });
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&]() {
    ExperimentConfig config = load_config(args.config_path);
    apply_env_seed(config);

    const InfluenceFunction influence = make_influence(config);
    const SchedulerPtr scheduler = make_scheduler(config);
    const RunTrace trace =
        execute(config.graph, config.initial, influence, *scheduler, config.steps);

    AuditOptions options;
    // Influence values always lie in [0,1]; without a tighter interval the
    // rate-dependent bounds degenerate to statements that are still valid.
    options.rate_bounds = influence.rate_bounds(config.graph)
                              ? influence.rate_bounds(config.graph)
                              : std::make_pair(0.0, 1.0);
    const AuditReport audit = audit_bounds(trace, config.graph, options);

    size_t violations = audit.total_violations();
    for (const auto& entry : audit.entries) {
      out << entry.name << ": checks=" << entry.checks
          << " violations=" << entry.violations << "\n";
    }

    // Recurrence scan + guaranteed-decrement check, when the graph theory
    // applies (strong connectivity). Skipped above the agent cap: the scan
    // enumerates every simple path.
    if (config.graph.agent_count() > args.delta_agent_cap) {
      out << "delta_bound_scan: skipped (agents > " << args.delta_agent_cap
          << "; raise --delta-cap to force)\n";
    } else if (is_strongly_connected(config.graph)) {
      const size_t base_beta = static_cast<size_t>(config.graph.agent_count() - 1) *
                               static_cast<size_t>(config.graph.edge_count());
      auto hits = delta_bound_scan(trace, config.graph, base_beta);
      size_t beta = base_beta;
      if (hits.size() < 2) {
        // fall back to the largest observed delta across sampled suffixes
        size_t max_delta = 0;
        const size_t stride = std::max<size_t>(1, trace.steps() / 64);
        for (size_t t = 0; t < trace.steps(); t += stride) {
          const std::vector<int> suffix(trace.actions.begin() +
                                            static_cast<std::ptrdiff_t>(t),
                                        trace.actions.end());
          const auto d = delta_of_agent(suffix, config.graph,
                                        min_opinion_agent(trace.state_at(t)));
          if (d) max_delta = std::max(max_delta, *d);
        }
        if (max_delta > 0) {
          beta = max_delta;
          hits = delta_bound_scan(trace, config.graph, beta);
        }
      }
      const auto checks = epsilon_decrement(trace, config.graph, beta,
                                            trace.max_seq.back(),
                                            trace.min_seq.back(), options);
      size_t decrement_violations = 0;
      for (const auto& check : checks) {
        if (check.decrement < check.epsilon - options.slack) ++decrement_violations;
      }
      violations += decrement_violations;
      out << "delta_bound_scan: beta=" << beta << " hits=" << hits.size() << "\n";
      out << "decrement: checks=" << checks.size()
          << " violations=" << decrement_violations << "\n";
    }

    // Block growth for the shuttle process.
    if (config.scheduler.type == "cons12") {
      const auto counts = shuttle_block_c_counts(trace.actions, config.graph);
      size_t growth_violations = 0;
      const size_t lookahead = 10;
      if (counts.size() > lookahead) {
        for (size_t m = 0; m + lookahead < counts.size(); ++m) {
          bool grew = false;
          for (size_t t = 1; t <= lookahead; ++t) {
            if (counts[m + t] > counts[m]) {
              grew = true;
              break;
            }
          }
          if (!grew) ++growth_violations;
        }
      }
      violations += growth_violations;
      out << "block_growth: blocks=" << counts.size()
          << " violations=" << growth_violations << "\n";
    }

    out << (violations == 0 ? "verify: ok" : "verify: FAILED") << "\n";
    return violations == 0 ? kOk : kAuditViolations;
  });
}

int cmd_reproduce(const ReproduceArgs& args, std::ostream& out, std::ostream& err) {
  return run_guarded(err, [&]() {
    const ReproducePreset preset = reproduce_preset(args.figure_id);
    ExperimentConfig config = preset.config;
    apply_env_seed(config);

    std::filesystem::create_directories(args.out_dir);
    const std::string base = args.out_dir + "/" + preset.id;

    const InfluenceFunction influence = make_influence(config);
    const SchedulerPtr scheduler = make_scheduler(config);
    const RunTrace trace =
        execute(config.graph, config.initial, influence, *scheduler, config.steps);

    write_trace_csv_file(base + ".csv", trace, config.graph);
    write_trace_svg_file(base + ".svg", trace, config.graph,
                         preset.id + ": " + preset.description,
                         preset.plot_influences);
    {
      std::ofstream cfg(base + ".config.json");
      if (!cfg) throw std::runtime_error("cannot write " + base + ".config.json");
      cfg << config_to_json(config) << "\n";
    }

    const ConvergenceReport report = convergence(trace, config.tolerance);
    out << preset.id << ": " << preset.description << "\n"
        << "steps=" << trace.steps() << " gap=" << report.gap
        << " outputs=" << base << ".{csv,svg,config.json}" << "\n";
    return kOk;
  });
}

}  // namespace otslab::cli
