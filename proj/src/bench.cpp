#include "sketchplan/bench.hpp"

#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

#include "sketchplan/errors.hpp"
#include "sketchplan/pddl.hpp"
#include "sketchplan/statespace.hpp"
#include "sketchplan/width.hpp"

namespace sketchplan {
namespace bench {

namespace {

RunRecord run_one(const generators::GenSpec &spec, const PolicySource &source,
                  const SuiteOptions &opts) {
    RunRecord rec;
    auto start = std::chrono::steady_clock::now();
    try {
        generators::GeneratedInstance inst = generators::generate(spec);
        rec.instance_id = inst.name;
        rec.agents = spec.agents;

        pddl::DomainModel dom = pddl::parse_domain(inst.domain_pddl);
        pddl::InstanceModel prob = pddl::parse_problem(inst.problem_pddl, dom);
        GroundedTask base = pddl::ground(dom, prob);
        GroundedTask task = pddl::add_unsatisfied_goal_predicates(base);
        rec.characteristic = task.goal.size();

        std::unique_ptr<policy::SubgoalPolicy> pol = source(task);
        executor::ExecOptions exec = opts.exec;
        exec.seed = opts.suite_seed ^ spec.seed;
        executor::Trace trace = executor::siw_pi(task, *pol, exec);

        rec.solved = trace.solved;
        rec.subgoals = trace.subgoal_count();
        rec.primitive = trace.primitive_length();
        rec.failure_reason = trace.failure_reason;

        if (opts.compute_optimal) {
            try {
                rec.optimal = statespace::bfs_optimal(base, base.init, -1,
                                                      opts.oracle_state_cap);
            } catch (const StateSpaceTooLarge &) {
                rec.optimal = std::nullopt;
            }
            if (rec.solved && rec.optimal && *rec.optimal > 0)
                rec.pq = static_cast<double>(rec.primitive) /
                         static_cast<double>(*rec.optimal);
        }
    } catch (const Error &e) {
        rec.solved = false;
        rec.failure_reason = e.what();
    }
    rec.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return rec;
}

}  // namespace

std::vector<RunRecord> run_suite(const std::vector<generators::GenSpec> &specs,
                                 const PolicySource &source,
                                 const SuiteOptions &opts) {
    std::vector<RunRecord> records(specs.size());
    int jobs = std::max(1, opts.jobs);
    if (jobs == 1) {
        for (size_t i = 0; i < specs.size(); ++i)
            records[i] = run_one(specs[i], source, opts);
        return records;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w)
        workers.emplace_back([&]() {
            for (size_t i = next.fetch_add(1); i < specs.size();
                 i = next.fetch_add(1))
                records[i] = run_one(specs[i], source, opts);
        });
    for (auto &t : workers) t.join();
    return records;
}

Aggregate aggregate(const std::vector<RunRecord> &records) {
    Aggregate agg;
    agg.count = records.size();
    if (records.empty()) return agg;
    size_t solved = 0, oracle_covered = 0;
    double sum_sl = 0, sum_l = 0, sum_opt = 0, sum_l_oracle = 0;
    for (const auto &rec : records) {
        if (!rec.solved) continue;
        ++solved;
        sum_sl += static_cast<double>(rec.subgoals);
        sum_l += static_cast<double>(rec.primitive);
        if (rec.optimal) {
            ++oracle_covered;
            sum_opt += static_cast<double>(*rec.optimal);
            sum_l_oracle += static_cast<double>(rec.primitive);
        }
    }
    agg.coverage = static_cast<double>(solved) / static_cast<double>(agg.count);
    if (solved) {
        agg.mean_sl = sum_sl / static_cast<double>(solved);
        agg.mean_l = sum_l / static_cast<double>(solved);
    }
    if (oracle_covered && sum_opt > 0) agg.pq = sum_l_oracle / sum_opt;
    return agg;
}

ValidationScore validation_score(const std::vector<const GroundedTask *> &tasks,
                                 const policy::SubgoalPolicy &pol,
                                 const executor::ExecOptions &opts,
                                 uint64_t state_cap) {
    ValidationScore score{0.0, 0, 0};
    double sum_lv = 0.0, sum_lv_star = 0.0;
    for (const GroundedTask *task : tasks) {
        std::vector<State> alive = statespace::enumerate_alive(*task, state_cap);
        uint64_t max_calls =
            opts.max_calls ? opts.max_calls : 4 * (task->goal.size() + 1);

        // Optimal subgoal counts: BFS over IW(k) jumps, closures memoized.
        std::unordered_map<State, std::vector<State>, StateHash> closures;
        auto jumps = [&](const State &s) -> const std::vector<State> & {
            auto it = closures.find(s);
            if (it != closures.end()) return it->second;
            width::IWResult res = width::nk_successors(*task, s, opts.k);
            std::vector<State> cand;
            for (size_t n = 1; n < res.nodes.size(); ++n)
                cand.push_back(res.nodes[n].state);
            return closures.emplace(s, std::move(cand)).first->second;
        };
        auto optimal_calls = [&](const State &s) -> std::optional<size_t> {
            if (statespace::is_goal(*task, s)) return 0;
            std::unordered_set<State, StateHash> seen{s};
            std::vector<State> layer{s};
            for (size_t depth = 1; depth <= max_calls && !layer.empty();
                 ++depth) {
                std::vector<State> next;
                for (const State &cur : layer)
                    for (const State &succ : jumps(cur)) {
                        if (!seen.insert(succ).second) continue;
                        if (statespace::is_goal(*task, succ)) return depth;
                        next.push_back(succ);
                    }
                layer = std::move(next);
            }
            return std::nullopt;
        };

        for (const State &s : alive) {
            std::optional<size_t> star = optimal_calls(s);
            if (!star) continue;  // not solvable via IW(k) jumps
            executor::Trace trace = executor::siw_pi(*task, pol, opts, s);
            double lv = trace.solved
                            ? static_cast<double>(trace.subgoal_count())
                            : static_cast<double>(max_calls);
            if (!trace.solved) ++score.unsolved;
            sum_lv += lv;
            sum_lv_star += static_cast<double>(*star);
            ++score.states;
        }
    }
    score.ratio = sum_lv_star > 0 ? sum_lv / sum_lv_star : 0.0;
    return score;
}

std::string records_csv(const std::vector<RunRecord> &records) {
    std::ostringstream out;
    out << "instance,solved,subgoals,primitive,optimal,pq,wall_seconds,"
           "failure_reason,characteristic,agents\n";
    for (const auto &r : records) {
        out << r.instance_id << "," << (r.solved ? 1 : 0) << "," << r.subgoals
            << "," << r.primitive << ",";
        if (r.optimal) out << *r.optimal;
        out << ",";
        if (r.pq) out << *r.pq;
        out << "," << r.wall_seconds << "," << r.failure_reason << ","
            << r.characteristic << "," << r.agents << "\n";
    }
    return out.str();
}

std::string aggregate_csv(const Aggregate &agg) {
    std::ostringstream out;
    out << "count,coverage,mean_sl,mean_l,pq\n";
    out << agg.count << "," << agg.coverage << "," << agg.mean_sl << ","
        << agg.mean_l << ",";
    if (agg.pq) out << *agg.pq;
    out << "\n";
    return out.str();
}

std::string subgoal_curve_csv(const std::vector<RunRecord> &records) {
    std::ostringstream out;
    out << "instance,characteristic,agents,subgoals,solved\n";
    for (const auto &r : records)
        out << r.instance_id << "," << r.characteristic << "," << r.agents
            << "," << r.subgoals << "," << (r.solved ? 1 : 0) << "\n";
    return out.str();
}

}  // namespace bench
}  // namespace sketchplan
