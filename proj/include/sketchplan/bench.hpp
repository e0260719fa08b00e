#ifndef SKETCHPLAN_BENCH_H
#define SKETCHPLAN_BENCH_H

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sketchplan/executor.hpp"
#include "sketchplan/generators.hpp"
#include "sketchplan/policy.hpp"
#include "sketchplan/task.hpp"

namespace sketchplan {
namespace bench {

struct RunRecord {
    std::string instance_id;
    bool solved = false;
    size_t subgoals = 0;
    size_t primitive = 0;
    std::optional<size_t> optimal;
    std::optional<double> pq;  // primitive / optimal, only when both known
    double wall_seconds = 0.0;
    std::string failure_reason;
    size_t characteristic = 0;  // object count for curves (packages, balls, ...)
    int agents = 1;
};

struct Aggregate {
    size_t count = 0;
    double coverage = 0.0;
    double mean_sl = 0.0;
    double mean_l = 0.0;
    std::optional<double> pq;  // ratio of means over oracle-covered runs
};

// Policy factory: one fresh policy per instance (sketch bindings may differ
// per task; tabular policies are shared frozen tables).
using PolicySource =
    std::function<std::unique_ptr<policy::SubgoalPolicy>(const GroundedTask &)>;

struct SuiteOptions {
    executor::ExecOptions exec;
    uint64_t suite_seed = 0;
    uint64_t oracle_state_cap = 2'000'000;
    bool compute_optimal = true;
    int jobs = 1;
};

std::vector<RunRecord> run_suite(const std::vector<generators::GenSpec> &specs,
                                 const PolicySource &source,
                                 const SuiteOptions &opts);

Aggregate aggregate(const std::vector<RunRecord> &records);

struct ValidationScore {
    double ratio;         // mean L_V / mean L_V*
    size_t states = 0;    // alive states rolled out
    size_t unsolved = 0;  // rollouts that failed (scored at max_calls cost)
};

ValidationScore validation_score(const std::vector<const GroundedTask *> &tasks,
                                 const policy::SubgoalPolicy &pol,
                                 const executor::ExecOptions &opts,
                                 uint64_t state_cap = 200'000);

std::string records_csv(const std::vector<RunRecord> &records);
std::string aggregate_csv(const Aggregate &agg);

// Fig.-style curve: one row per instance, x = characteristic object count,
// y = subgoal count, plus agent count.
std::string subgoal_curve_csv(const std::vector<RunRecord> &records);

}  // namespace bench
}  // namespace sketchplan

#endif
