#ifndef SKETCHPLAN_WIDTH_H
#define SKETCHPLAN_WIDTH_H

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_set>
#include <vector>

#include "sketchplan/statespace.hpp"
#include "sketchplan/task.hpp"

namespace sketchplan {
namespace width {

// Atom tuples (size 1..k) seen during one IW run; record-on-check.
class NoveltyTable {
public:
    NoveltyTable(int k, size_t num_atoms);

    // True iff some tuple of <= k atoms of s is unseen; records all tuples.
    bool check_and_record(const State &s);

    int k() const { return k_; }

private:
    int k_;
    size_t num_atoms_;
    std::vector<uint8_t> seen1_;
    // Pair table: dense matrix when affordable, hash set otherwise.
    bool dense2_;
    std::vector<uint8_t> seen2_;
    std::unordered_set<uint64_t> seen2_sparse_;
};

enum class IWMode { FirstHit, Closure };

struct IWResult {
    struct Node {
        State state;
        int32_t parent;   // -1 for root
        uint32_t action;  // action leading here (undefined for root)
        uint32_t depth;
    };
    // nodes[0] is the root; nodes 1.. are the generated-and-not-pruned states
    // in BFS order: the closure N_k(root).
    std::vector<Node> nodes;
    std::optional<size_t> found;  // node index satisfying stop (first-hit)

    uint64_t expanded = 0;
    uint64_t generated = 0;
    uint64_t pruned = 0;
    uint64_t depth1_children = 0;  // never pruned; tracked for the tuple bound

    size_t closure_size() const { return nodes.size() - 1; }
    std::vector<uint32_t> path(size_t node) const;
};

IWResult iw(const GroundedTask &task, const State &root, int k,
            const std::function<bool(const State &)> &stop, IWMode mode);

// Eq.-(1) closure: every state reachable from s via one full IW(k) run.
IWResult nk_successors(const GroundedTask &task, const State &s, int k);

size_t unachieved_goal_count(const GroundedTask &task, const State &s);

// Greedy sequence of IW calls, each decreasing #g; escalates k = 1..k_max.
std::optional<statespace::Plan> siw_classic(const GroundedTask &task, int k_max);

}  // namespace width
}  // namespace sketchplan

#endif
