#ifndef SKETCHPLAN_EXECUTOR_H
#define SKETCHPLAN_EXECUTOR_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sketchplan/policy.hpp"
#include "sketchplan/statespace.hpp"
#include "sketchplan/task.hpp"

namespace sketchplan {
namespace executor {

struct ExecOptions {
    int k = 1;
    bool cycle_prevention = false;
    uint64_t max_calls = 0;  // 0 = default 4 * (|goal atoms| + 1)
    enum class Selection { Greedy, Stochastic } selection = Selection::Greedy;
    uint64_t seed = 0;
};

struct TraceSegment {
    State subgoal;
    std::vector<uint32_t> actions;
};

struct Trace {
    State start;
    std::vector<TraceSegment> segments;
    bool solved = false;
    std::string failure_reason;  // max-calls | no-candidates | policy-failure

    size_t subgoal_count() const { return segments.size(); }
    size_t primitive_length() const {
        size_t n = 0;
        for (const auto &seg : segments) n += seg.actions.size();
        return n;
    }
};

Trace siw_pi(const GroundedTask &task, const policy::SubgoalPolicy &pol,
             const ExecOptions &opts,
             const std::optional<State> &start = std::nullopt);

std::string emit_trace(const Trace &trace, const GroundedTask &task);
std::string trace_json(const Trace &trace, const GroundedTask &task);
statespace::Plan flatten(const Trace &trace);

}  // namespace executor
}  // namespace sketchplan

#endif
