#include "sketchplan/statespace.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "sketchplan/errors.hpp"

namespace sketchplan {
namespace statespace {

TransitionContext::TransitionContext(const GroundedTask &task)
    : task_(task), bits_((task.num_atoms() + 63) / 64, 0) {}

void TransitionContext::load(const State &s) {
    for (AtomIndex a : loaded_) bits_[a >> 6] &= ~(1ull << (a & 63));
    loaded_ = s.atoms;
    for (AtomIndex a : loaded_) bits_[a >> 6] |= 1ull << (a & 63);
}

std::vector<uint32_t> TransitionContext::applicable(const State &s) {
    load(s);
    std::vector<uint32_t> result;
    for (uint32_t i = 0; i < task_.actions.size(); ++i) {
        bool ok = true;
        for (AtomIndex p : task_.actions[i].pre)
            if (!holds(p)) {
                ok = false;
                break;
            }
        if (ok) result.push_back(i);
    }
    return result;
}

bool TransitionContext::is_applicable(const State &s, uint32_t action) {
    load(s);
    for (AtomIndex p : task_.actions[action].pre)
        if (!holds(p)) return false;
    return true;
}

State TransitionContext::apply(const State &s, uint32_t action) {
    const GroundAction &act = task_.actions[action];
    State succ;
    succ.atoms.reserve(s.atoms.size() + act.add.size());
    // s.atoms \ del, then merge-in add (all inputs sorted).
    std::set_difference(s.atoms.begin(), s.atoms.end(), act.del.begin(),
                        act.del.end(), std::back_inserter(succ.atoms));
    std::vector<AtomIndex> merged;
    merged.reserve(succ.atoms.size() + act.add.size());
    std::set_union(succ.atoms.begin(), succ.atoms.end(), act.add.begin(),
                   act.add.end(), std::back_inserter(merged));
    succ.atoms = std::move(merged);
    return succ;
}

std::vector<uint32_t> applicable(const GroundedTask &task, const State &s) {
    TransitionContext ctx(task);
    return ctx.applicable(s);
}

State apply(const GroundedTask &task, const State &s, uint32_t action) {
    TransitionContext ctx(task);
    if (!ctx.is_applicable(s, action))
        throw Inapplicable("action " + task.actions[action].name() +
                           " not applicable");
    return ctx.apply(s, action);
}

bool is_goal(const GroundedTask &task, const State &s) {
    for (AtomIndex g : task.goal)
        if (!s.contains(g)) return false;
    return true;
}

std::vector<std::pair<uint32_t, State>> successors(const GroundedTask &task,
                                                   const State &s) {
    TransitionContext ctx(task);
    std::vector<std::pair<uint32_t, State>> result;
    for (uint32_t a : ctx.applicable(s)) result.emplace_back(a, ctx.apply(s, a));
    return result;
}

std::optional<size_t> bfs_distance(
    const GroundedTask &task, const State &s,
    const std::function<bool(const State &)> &stop, int64_t horizon,
    uint64_t state_cap) {
    if (stop(s)) return 0;
    TransitionContext ctx(task);
    std::unordered_map<State, size_t, StateHash> seen;
    seen.emplace(s, 0);
    std::deque<const State *> frontier;
    frontier.push_back(&seen.find(s)->first);
    size_t depth = 0;
    while (!frontier.empty()) {
        if (horizon >= 0 && static_cast<int64_t>(depth) >= horizon)
            return std::nullopt;
        ++depth;
        size_t layer = frontier.size();
        for (size_t i = 0; i < layer; ++i) {
            const State *cur = frontier.front();
            frontier.pop_front();
            for (uint32_t a : ctx.applicable(*cur)) {
                State succ = ctx.apply(*cur, a);
                auto [it, inserted] = seen.emplace(std::move(succ), depth);
                if (!inserted) continue;
                if (stop(it->first)) return depth;
                if (seen.size() > state_cap)
                    throw StateSpaceTooLarge(
                        "breadth-first search exceeded state cap " +
                        std::to_string(state_cap));
                frontier.push_back(&it->first);
            }
        }
    }
    return std::nullopt;
}

std::optional<size_t> bfs_optimal(const GroundedTask &task, const State &s,
                                  int64_t horizon, uint64_t state_cap) {
    return bfs_distance(
        task, s, [&task](const State &x) { return is_goal(task, x); }, horizon,
        state_cap);
}

StateSpaceGraph build_graph(const GroundedTask &task, uint64_t state_cap) {
    StateSpaceGraph g;
    TransitionContext ctx(task);
    g.states.push_back(task.init);
    g.ids.emplace(task.init, 0);
    for (uint32_t i = 0; i < g.states.size(); ++i) {
        g.edges.emplace_back();
        // Copy: g.states may reallocate while we expand.
        State cur = g.states[i];
        for (uint32_t a : ctx.applicable(cur)) {
            State succ = ctx.apply(cur, a);
            auto [it, inserted] =
                g.ids.emplace(std::move(succ), static_cast<uint32_t>(g.states.size()));
            if (inserted) {
                g.states.push_back(it->first);
                if (g.states.size() > state_cap)
                    throw StateSpaceTooLarge(
                        "reachable state space exceeds cap " +
                        std::to_string(state_cap));
            }
            g.edges[i].emplace_back(a, it->second);
        }
    }

    g.goal.resize(g.states.size());
    for (uint32_t i = 0; i < g.states.size(); ++i)
        g.goal[i] = is_goal(task, g.states[i]);

    // Backward reachability from goal states over reversed edges.
    std::vector<std::vector<uint32_t>> rev(g.states.size());
    for (uint32_t i = 0; i < g.states.size(); ++i)
        for (const auto &[a, j] : g.edges[i]) rev[j].push_back(i);
    g.solvable.assign(g.states.size(), false);
    std::deque<uint32_t> queue;
    for (uint32_t i = 0; i < g.states.size(); ++i)
        if (g.goal[i]) {
            g.solvable[i] = true;
            queue.push_back(i);
        }
    while (!queue.empty()) {
        uint32_t j = queue.front();
        queue.pop_front();
        for (uint32_t i : rev[j])
            if (!g.solvable[i]) {
                g.solvable[i] = true;
                queue.push_back(i);
            }
    }
    return g;
}

std::vector<State> enumerate_alive(const GroundedTask &task,
                                   uint64_t state_cap) {
    StateSpaceGraph g = build_graph(task, state_cap);
    std::vector<State> alive;
    for (uint32_t i = 0; i < g.size(); ++i)
        if (g.alive(i)) alive.push_back(g.states[i]);
    return alive;
}

ValidationResult validate(const GroundedTask &task, const State &s0,
                          const Plan &plan) {
    TransitionContext ctx(task);
    State cur = s0;
    for (size_t i = 0; i < plan.actions.size(); ++i) {
        if (plan.actions[i] >= task.actions.size() ||
            !ctx.is_applicable(cur, plan.actions[i]))
            return {false, i};
        cur = ctx.apply(cur, plan.actions[i]);
    }
    if (!is_goal(task, cur)) return {false, plan.actions.size()};
    return {true, 0};
}

std::string emit_plan(const GroundedTask &task, const Plan &plan) {
    std::ostringstream out;
    for (uint32_t a : plan.actions) {
        const GroundAction &act = task.actions[a];
        out << "(" << act.schema;
        for (const auto &arg : act.args) out << " " << arg;
        out << ")\n";
    }
    return out.str();
}

Plan parse_plan(const GroundedTask &task, const std::string &text) {
    std::unordered_map<std::string, uint32_t> by_name;
    for (uint32_t i = 0; i < task.actions.size(); ++i) {
        const GroundAction &act = task.actions[i];
        std::string key = act.schema;
        for (const auto &arg : act.args) key += " " + arg;
        by_name[key] = i;
    }
    Plan plan;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t semi = line.find(';');
        if (semi != std::string::npos) line.erase(semi);
        size_t open = line.find('(');
        size_t close = line.rfind(')');
        std::string body;
        if (open != std::string::npos && close != std::string::npos &&
            close > open)
            body = line.substr(open + 1, close - open - 1);
        else
            body = line;
        std::istringstream toks(body);
        std::string tok, key;
        while (toks >> tok) {
            std::transform(tok.begin(), tok.end(), tok.begin(), [](unsigned char c) {
                return static_cast<char>(std::tolower(c));
            });
            if (!key.empty()) key += " ";
            key += tok;
        }
        if (key.empty()) continue;
        auto it = by_name.find(key);
        if (it == by_name.end())
            throw SyntaxError("unknown ground action '" + key + "'", lineno, 1);
        plan.actions.push_back(it->second);
    }
    return plan;
}

}  // namespace statespace
}  // namespace sketchplan
