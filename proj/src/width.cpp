#include "sketchplan/width.hpp"

#include <algorithm>

#include "sketchplan/errors.hpp"

namespace sketchplan {
namespace width {

namespace {
// Dense pair table up to 4096 atoms (16 MiB); hash set beyond that.
constexpr size_t kDensePairLimit = 4096;
}  // namespace

NoveltyTable::NoveltyTable(int k, size_t num_atoms)
    : k_(k),
      num_atoms_(num_atoms),
      seen1_(k >= 1 ? num_atoms : 0, 0),
      dense2_(num_atoms <= kDensePairLimit) {
    if (k_ >= 2 && dense2_) seen2_.assign(num_atoms * num_atoms, 0);
}

bool NoveltyTable::check_and_record(const State &s) {
    if (k_ == 0) return false;
    bool novel = false;
    for (AtomIndex a : s.atoms) {
        if (!seen1_[a]) {
            seen1_[a] = 1;
            novel = true;
        }
    }
    if (k_ >= 2) {
        const auto &v = s.atoms;
        for (size_t i = 0; i < v.size(); ++i) {
            for (size_t j = i + 1; j < v.size(); ++j) {
                if (dense2_) {
                    size_t idx = static_cast<size_t>(v[i]) * num_atoms_ + v[j];
                    if (!seen2_[idx]) {
                        seen2_[idx] = 1;
                        novel = true;
                    }
                } else {
                    uint64_t key = (static_cast<uint64_t>(v[i]) << 32) | v[j];
                    if (seen2_sparse_.insert(key).second) novel = true;
                }
            }
        }
    }
    return novel;
}

std::vector<uint32_t> IWResult::path(size_t node) const {
    std::vector<uint32_t> actions;
    int32_t cur = static_cast<int32_t>(node);
    while (cur > 0) {
        actions.push_back(nodes[cur].action);
        cur = nodes[cur].parent;
    }
    std::reverse(actions.begin(), actions.end());
    return actions;
}

IWResult iw(const GroundedTask &task, const State &root, int k,
            const std::function<bool(const State &)> &stop, IWMode mode) {
    IWResult res;
    res.nodes.push_back({root, -1, 0, 0});
    if (stop(root)) {
        res.found = 0;
        if (mode == IWMode::FirstHit) return res;
    }

    statespace::TransitionContext ctx(task);
    NoveltyTable table(k, task.num_atoms());
    table.check_and_record(root);

    std::unordered_set<State, StateHash> seen;
    seen.insert(root);

    // BFS over node indices; nodes[] doubles as the queue storage.
    std::vector<size_t> expand_queue{0};
    for (size_t qi = 0; qi < expand_queue.size(); ++qi) {
        size_t cur = expand_queue[qi];
        // IW(0): only the root is expanded.
        if (k == 0 && res.nodes[cur].depth >= 1) continue;
        ++res.expanded;
        State cur_state = res.nodes[cur].state;  // copy: nodes may reallocate
        uint32_t depth = res.nodes[cur].depth + 1;
        for (uint32_t a : ctx.applicable(cur_state)) {
            State succ = ctx.apply(cur_state, a);
            ++res.generated;
            if (!seen.insert(succ).second) continue;  // duplicate state
            bool novel = table.check_and_record(succ);
            if (depth == 1) {
                ++res.depth1_children;
                novel = true;  // depth-1 children are never pruned
            }
            if (!novel && k >= 1) {
                ++res.pruned;
                continue;
            }
            if (!novel && k == 0) {
                // unreachable: depth-1 forced novel, deeper never expanded
                ++res.pruned;
                continue;
            }
            size_t id = res.nodes.size();
            res.nodes.push_back(
                {std::move(succ), static_cast<int32_t>(cur), a, depth});
            if (!res.found && stop(res.nodes[id].state)) {
                res.found = id;
                if (mode == IWMode::FirstHit) return res;
            }
            expand_queue.push_back(id);
        }
    }
    return res;
}

IWResult nk_successors(const GroundedTask &task, const State &s, int k) {
    return iw(
        task, s, k, [](const State &) { return false; }, IWMode::Closure);
}

size_t unachieved_goal_count(const GroundedTask &task, const State &s) {
    size_t n = 0;
    for (AtomIndex g : task.goal)
        if (!s.contains(g)) ++n;
    return n;
}

std::optional<statespace::Plan> siw_classic(const GroundedTask &task,
                                            int k_max) {
    statespace::Plan plan;
    State s = task.init;
    while (!statespace::is_goal(task, s)) {
        size_t current = unachieved_goal_count(task, s);
        bool progressed = false;
        for (int k = 1; k <= k_max && !progressed; ++k) {
            IWResult res = iw(
                task, s, k,
                [&task, current](const State &x) {
                    return unachieved_goal_count(task, x) < current;
                },
                IWMode::FirstHit);
            if (res.found) {
                auto actions = res.path(*res.found);
                plan.actions.insert(plan.actions.end(), actions.begin(),
                                    actions.end());
                s = res.nodes[*res.found].state;
                progressed = true;
            }
        }
        if (!progressed) return std::nullopt;
    }
    return plan;
}

}  // namespace width
}  // namespace sketchplan
