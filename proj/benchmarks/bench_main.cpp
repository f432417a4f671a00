// Micro-benchmarks for the hot paths backing the runtime budgets: run
// execution, the counter-example schedulers, the auditors, and the
// fairness scans. Self-contained chrono harness; each benchmark runs until
// it accumulates enough wall time for a stable per-op figure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "otslab/analysis.hpp"
#include "otslab/fairness.hpp"
#include "otslab/presets.hpp"
#include "otslab/rng.hpp"
#include "otslab/words.hpp"

using namespace otslab;
using Clock = std::chrono::steady_clock;

namespace {

volatile double sink = 0.0;  // keeps results alive

void run_bench(const std::string& name, const std::function<void()>& body,
               int min_reps = 3, double min_total_ms = 300.0) {
  body();  // warm up
  int reps = 0;
  const auto start = Clock::now();
  double elapsed_ms = 0.0;
  while (reps < min_reps || elapsed_ms < min_total_ms) {
    body();
    ++reps;
    elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    if (reps >= 10000) break;
  }
  std::printf("%-44s %8d reps  %10.3f ms/rep\n", name.c_str(), reps,
              elapsed_ms / reps);
}

}  // namespace

int main() {
  const auto chain3 = chain3_graph(0.5);
  const auto inf = InfluenceFunction::static_weights();
  const OpinionState init3(std::vector<double>{0.0, 0.5, 1.0});

  run_bench("execute: round-robin, n=3, T=5000", [&] {
    auto sched = periodic_scheduler(chain3, {"a", "b", "c", "d"});
    const auto trace = execute(chain3, init3, inf, *sched, 5000);
    sink = trace.max_seq.back();
  });

  run_bench("execute: shuttle feedback, n=3, T=100000", [&] {
    auto sched = shuttle_scheduler(chain3, 0.25, 0.75);
    const auto trace = execute(chain3, init3, inf, *sched, 100000);
    sink = trace.max_seq.back();
  });

  const auto big = random_graph(8, 0.45, 0.5, 17);
  std::vector<double> init8;
  for (int i = 0; i < 8; ++i) init8.push_back(i / 7.0);
  run_bench(
      "run_summary: random word, n=8, T=1e6",
      [&] {
        auto sched = random_scheduler(big, {}, 3);
        const auto summary =
            run_summary(big, OpinionState(init8), inf, *sched, 1000000, 1e-6);
        sink = summary.gap;
      },
      3, 600.0);

  {
    auto sched = random_scheduler(big, {}, 3);
    const auto trace = execute(big, OpinionState(init8), inf, *sched, 10000);
    run_bench("audit_bounds: n=8, T=1e4", [&] {
      const auto report = audit_bounds(trace, big);
      sink = static_cast<double>(report.total_violations());
    });
    run_bench("delta_bound_scan: n=8, T=1e4, stride=100", [&] {
      sink = static_cast<double>(delta_bound_scan(trace, big, 200).size());
    });
  }

  {
    auto sched = random_scheduler(chain3, {}, 5);
    const auto prefix = WordPrefix::from_indices(take_word(*sched, 100000), 4);
    run_bench("find_multiwindows: m=2, k=4, |w|=1e5", [&] {
      sink = static_cast<double>(find_multiwindows(prefix, 2, 4).size());
    });
    run_bench("minimal_uniform_k: |w|=1e5", [&] {
      const auto k = minimal_uniform_k(prefix);
      sink = k ? static_cast<double>(*k) : -1.0;
    });
    run_bench("density_check: m=2, k=4, G=4000, |w|=1e5", [&] {
      sink = density_check(prefix, 2, 4, 4000) ? 1.0 : 0.0;
    });
  }

  return 0;
}
