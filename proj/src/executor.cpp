#include "sketchplan/executor.hpp"

#include <iomanip>
#include <random>
#include <sstream>

#include "json.hpp"
#include "sketchplan/errors.hpp"
#include "sketchplan/width.hpp"

namespace sketchplan {
namespace executor {

Trace siw_pi(const GroundedTask &task, const policy::SubgoalPolicy &pol,
             const ExecOptions &opts, const std::optional<State> &start) {
    Trace trace;
    trace.start = start.value_or(task.init);
    State s = trace.start;

    uint64_t max_calls =
        opts.max_calls ? opts.max_calls : 4 * (task.goal.size() + 1);
    std::mt19937_64 rng(opts.seed);
    policy::Exclusions selected;

    while (!statespace::is_goal(task, s)) {
        if (trace.segments.size() >= max_calls) {
            trace.failure_reason = "max-calls";
            return trace;
        }

        width::IWResult res = width::nk_successors(task, s, opts.k);
        std::vector<policy::Candidate> candidates;
        std::vector<size_t> node_of;
        candidates.reserve(res.closure_size());
        for (size_t n = 1; n < res.nodes.size(); ++n) {
            candidates.push_back({&res.nodes[n].state, res.nodes[n].depth});
            node_of.push_back(n);
        }
        if (candidates.empty()) {
            trace.failure_reason = "no-candidates";
            return trace;
        }

        // A reachable goal state short-circuits the policy: take the
        // shallowest one.
        size_t chosen = SIZE_MAX;
        for (size_t i = 0; i < candidates.size(); ++i) {
            if (statespace::is_goal(task, *candidates[i].state)) {
                chosen = i;
                break;  // BFS order: first hit is shallowest
            }
        }

        if (chosen == SIZE_MAX) {
            try {
                std::vector<double> probs = pol.distribution(task, s, candidates);
                chosen = opts.selection == ExecOptions::Selection::Greedy
                             ? policy::select_greedy(probs, candidates,
                                                     selected, rng)
                             : policy::select_stochastic(probs, candidates,
                                                         selected, rng);
            } catch (const NoSubgoalInCandidates &) {
                trace.failure_reason = "policy-failure";
                return trace;
            } catch (const AllCandidatesExcluded &) {
                trace.failure_reason = "no-candidates";
                return trace;
            }
        }

        size_t node = node_of[chosen];
        TraceSegment seg;
        seg.subgoal = res.nodes[node].state;
        seg.actions = res.path(node);
        if (opts.cycle_prevention) selected.insert(seg.subgoal);
        s = seg.subgoal;
        trace.segments.push_back(std::move(seg));
    }
    trace.solved = true;
    return trace;
}

statespace::Plan flatten(const Trace &trace) {
    statespace::Plan plan;
    for (const auto &seg : trace.segments)
        plan.actions.insert(plan.actions.end(), seg.actions.begin(),
                            seg.actions.end());
    return plan;
}

std::string emit_trace(const Trace &trace, const GroundedTask &task) {
    std::ostringstream out;
    out << "Primitive plan: " << trace.primitive_length() << "\n";
    out << "Plan: " << trace.subgoal_count() << "\n";
    int width = static_cast<int>(std::to_string(trace.segments.size()).size());
    for (size_t i = 0; i < trace.segments.size(); ++i) {
        out << std::left << std::setw(width) << (i + 1);
        for (size_t a = 0; a < trace.segments[i].actions.size(); ++a) {
            out << (a == 0 ? " " : " -> ");
            out << task.actions[trace.segments[i].actions[a]].name();
        }
        out << "\n";
    }
    return out.str();
}

std::string trace_json(const Trace &trace, const GroundedTask &task) {
    nlohmann::json j;
    j["instance"] = task.instance_name;
    j["start"] = trace.start.atoms;
    j["solved"] = trace.solved;
    j["failure_reason"] = trace.failure_reason;
    j["subgoals"] = trace.subgoal_count();
    j["primitive"] = trace.primitive_length();
    j["segments"] = nlohmann::json::array();
    for (const auto &seg : trace.segments) {
        nlohmann::json s;
        s["subgoal"] = seg.subgoal.atoms;
        s["actions"] = nlohmann::json::array();
        for (uint32_t a : seg.actions) s["actions"].push_back(task.actions[a].name());
        j["segments"].push_back(std::move(s));
    }
    return j.dump(2);
}

}  // namespace executor
}  // namespace sketchplan
