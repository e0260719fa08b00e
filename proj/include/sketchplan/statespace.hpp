#ifndef SKETCHPLAN_STATESPACE_H
#define SKETCHPLAN_STATESPACE_H

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sketchplan/task.hpp"

namespace sketchplan {
namespace statespace {

struct Plan {
    std::vector<uint32_t> actions;  // ground action indices
    size_t size() const { return actions.size(); }
};

// Scratch bitset over the task's atom universe for O(1) precondition tests.
// One context per search; not shareable across threads.
class TransitionContext {
public:
    explicit TransitionContext(const GroundedTask &task);

    std::vector<uint32_t> applicable(const State &s);
    bool is_applicable(const State &s, uint32_t action);
    State apply(const State &s, uint32_t action);

private:
    void load(const State &s);
    bool holds(AtomIndex a) const {
        return bits_[a >> 6] & (1ull << (a & 63));
    }

    const GroundedTask &task_;
    std::vector<uint64_t> bits_;
    std::vector<AtomIndex> loaded_;
};

std::vector<uint32_t> applicable(const GroundedTask &task, const State &s);
State apply(const GroundedTask &task, const State &s, uint32_t action);
bool is_goal(const GroundedTask &task, const State &s);
std::vector<std::pair<uint32_t, State>> successors(const GroundedTask &task,
                                                   const State &s);

constexpr uint64_t kDefaultBfsStateCap = 5'000'000;

// Exact shortest plan length from s to a goal state; no pruning.
std::optional<size_t> bfs_optimal(const GroundedTask &task, const State &s,
                                  int64_t horizon = -1,
                                  uint64_t state_cap = kDefaultBfsStateCap);

// Shortest distance from s to any state satisfying stop (bfs_optimal with an
// arbitrary target; used by sub-task oracles).
std::optional<size_t> bfs_distance(const GroundedTask &task, const State &s,
                                   const std::function<bool(const State &)> &stop,
                                   int64_t horizon = -1,
                                   uint64_t state_cap = kDefaultBfsStateCap);

// Full forward reachability graph from init with solvability marking
// (backward reachability from goal states). Immutable snapshot.
struct StateSpaceGraph {
    std::vector<State> states;  // id -> state; id 0 = init
    std::unordered_map<State, uint32_t, StateHash> ids;
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> edges;  // (action, succ id)
    std::vector<bool> goal;
    std::vector<bool> solvable;

    bool alive(uint32_t id) const { return solvable[id] && !goal[id]; }
    bool dead_end(uint32_t id) const { return !solvable[id]; }
    size_t size() const { return states.size(); }
};

StateSpaceGraph build_graph(const GroundedTask &task, uint64_t state_cap);

// All reachable, solvable, non-goal states.
std::vector<State> enumerate_alive(const GroundedTask &task, uint64_t state_cap);

struct ValidationResult {
    bool ok;
    size_t failure_index;  // meaningful when !ok; plan.size() = goal unmet
};

ValidationResult validate(const GroundedTask &task, const State &s0,
                          const Plan &plan);

// Plan files: one "(name obj1 obj2)" line per action.
std::string emit_plan(const GroundedTask &task, const Plan &plan);
Plan parse_plan(const GroundedTask &task, const std::string &text);

}  // namespace statespace
}  // namespace sketchplan

#endif
