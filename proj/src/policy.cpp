#include "sketchplan/policy.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sketchplan/errors.hpp"
#include "sketchplan/statespace.hpp"
#include "sketchplan/width.hpp"

namespace sketchplan {
namespace policy {

namespace {

std::vector<double> softmax(const std::vector<double> &logits) {
    double max_logit = *std::max_element(logits.begin(), logits.end());
    std::vector<double> probs(logits.size());
    double total = 0.0;
    for (size_t i = 0; i < logits.size(); ++i) {
        probs[i] = std::exp(logits[i] - max_logit);
        total += probs[i];
    }
    for (double &p : probs) p /= total;
    return probs;
}

double clip_logit(double x) {
    return std::clamp(x, -kLogitClip, kLogitClip);
}

}  // namespace

std::vector<double> policy_distribution(const TabularPolicy &pol,
                                        const State &s,
                                        const std::vector<State> &candidates) {
    if (candidates.empty())
        throw EmptyCandidateSet("no candidate subgoals for distribution");
    std::vector<double> logits(candidates.size(), 0.0);
    auto row = pol.logits.find(s);
    if (row != pol.logits.end()) {
        for (size_t i = 0; i < candidates.size(); ++i) {
            auto it = row->second.find(candidates[i]);
            if (it != row->second.end()) logits[i] = it->second;
        }
    }
    return softmax(logits);
}

TabularPolicy train_actor_critic(const std::vector<const GroundedTask *> &tasks,
                                 const PolicyConfig &cfg,
                                 const StopHook &stop_hook,
                                 uint64_t check_interval, uint64_t state_cap) {
    if (tasks.empty()) throw InvalidSpec("no training tasks");

    TabularPolicy pol;
    pol.config = cfg;
    for (const GroundedTask *t : tasks)
        pol.task_fingerprints.push_back(t->fingerprint());

    // Episode start pools and memoized IW closures, one slot per task.
    std::vector<std::vector<State>> start_pools(tasks.size());
    for (size_t t = 0; t < tasks.size(); ++t) {
        if (cfg.prior == PolicyConfig::Prior::UniformAlive) {
            start_pools[t] = statespace::enumerate_alive(*tasks[t], state_cap);
            if (start_pools[t].empty())
                throw NoAliveStates("training task " +
                                    tasks[t]->instance_name +
                                    " has no alive states");
        } else {
            start_pools[t] = {tasks[t]->init};
        }
    }
    std::vector<std::unordered_map<State, std::vector<State>, StateHash>>
        closures(tasks.size());
    auto candidates_for = [&](size_t t, const State &s) -> const std::vector<State> & {
        auto it = closures[t].find(s);
        if (it != closures[t].end()) return it->second;
        width::IWResult res = width::nk_successors(*tasks[t], s, cfg.k);
        std::vector<State> cand;
        cand.reserve(res.closure_size());
        for (size_t n = 1; n < res.nodes.size(); ++n)
            cand.push_back(res.nodes[n].state);
        return closures[t].emplace(s, std::move(cand)).first->second;
    };

    std::mt19937_64 rng(cfg.seed);
    for (uint64_t iter = 0; iter < cfg.iterations; ++iter) {
        size_t t = tasks.size() == 1
                       ? 0
                       : static_cast<size_t>(rng() % tasks.size());
        const GroundedTask &task = *tasks[t];
        const auto &pool = start_pools[t];
        State s = pool[static_cast<size_t>(rng() % pool.size())];

        // One episode: subgoal jumps until the goal, capped to avoid drift
        // from an untrained policy cycling forever.
        uint64_t max_steps = 4 * (task.goal.size() + 1);
        for (uint64_t step = 0;
             step < max_steps && !statespace::is_goal(task, s); ++step) {
            const std::vector<State> &cand = candidates_for(t, s);
            if (cand.empty()) break;  // dead-end under IW(k)
            std::vector<double> probs = policy_distribution(pol, s, cand);

            std::discrete_distribution<size_t> pick(probs.begin(), probs.end());
            size_t chosen = pick(rng);
            const State &succ = cand[chosen];

            bool terminal = statespace::is_goal(task, succ);
            double delta = 1.0 + cfg.gamma * pol.values[succ] - pol.values[s];
            pol.values[s] += cfg.beta * delta;
            if (terminal) {
                // Drive the terminal value toward its true cost-to-go of 0.
                pol.values[succ] -= cfg.beta * pol.values[succ];
            }

            auto &row = pol.logits[s];
            for (size_t i = 0; i < cand.size(); ++i) {
                double &logit = row[cand[i]];
                if (i == chosen)
                    logit = clip_logit(logit -
                                       cfg.alpha * delta * (1.0 - probs[i]));
                else
                    logit = clip_logit(logit + cfg.alpha * delta * probs[i]);
            }
            s = succ;
        }

        if (stop_hook && check_interval > 0 && (iter + 1) % check_interval == 0)
            if (stop_hook(pol, iter + 1)) break;
    }
    return pol;
}

size_t select_greedy(const std::vector<double> &probs,
                     const std::vector<Candidate> &candidates,
                     const Exclusions &exclusions, std::mt19937_64 &rng) {
    if (candidates.empty())
        throw EmptyCandidateSet("no candidate subgoals to select from");
    double best = -1.0;
    std::vector<size_t> ties;
    for (size_t i = 0; i < candidates.size(); ++i) {
        if (exclusions.count(*candidates[i].state)) continue;
        if (probs[i] > best + 1e-12) {
            best = probs[i];
            ties.assign(1, i);
        } else if (probs[i] > best - 1e-12) {
            ties.push_back(i);
        }
    }
    if (ties.empty())
        throw AllCandidatesExcluded("every candidate subgoal was excluded");
    if (ties.size() == 1) return ties[0];
    return ties[static_cast<size_t>(rng() % ties.size())];
}

size_t select_stochastic(const std::vector<double> &probs,
                         const std::vector<Candidate> &candidates,
                         const Exclusions &exclusions, std::mt19937_64 &rng) {
    if (candidates.empty())
        throw EmptyCandidateSet("no candidate subgoals to select from");
    std::vector<double> weights(candidates.size(), 0.0);
    double total = 0.0;
    for (size_t i = 0; i < candidates.size(); ++i) {
        if (exclusions.count(*candidates[i].state)) continue;
        weights[i] = probs[i];
        total += weights[i];
    }
    if (total <= 0.0)
        throw AllCandidatesExcluded("every candidate subgoal was excluded");
    std::discrete_distribution<size_t> pick(weights.begin(), weights.end());
    return pick(rng);
}

std::vector<double> TabularSubgoalPolicy::distribution(
    const GroundedTask &, const State &s,
    const std::vector<Candidate> &candidates) const {
    std::vector<State> states;
    states.reserve(candidates.size());
    for (const Candidate &c : candidates) states.push_back(*c.state);
    return policy_distribution(pol_, s, states);
}

std::vector<double> UniformSubgoalPolicy::distribution(
    const GroundedTask &, const State &,
    const std::vector<Candidate> &candidates) const {
    if (candidates.empty())
        throw EmptyCandidateSet("no candidate subgoals for distribution");
    return std::vector<double>(candidates.size(),
                               1.0 / static_cast<double>(candidates.size()));
}

std::vector<double> SketchSubgoalPolicy::distribution(
    const GroundedTask &task, const State &s,
    const std::vector<Candidate> &candidates) const {
    if (candidates.empty())
        throw EmptyCandidateSet("no candidate subgoals for distribution");
    sketch::Valuation v = sketch::eval_features(rs_, task, s);
    // G*_R: rule-satisfying candidates at the minimum depth.
    uint32_t best_depth = UINT32_MAX;
    std::vector<size_t> chosen;
    for (size_t i = 0; i < candidates.size(); ++i) {
        sketch::Valuation v2 =
            sketch::eval_features(rs_, task, *candidates[i].state);
        if (!sketch::pair_satisfies(rs_, v, v2)) continue;
        if (candidates[i].depth < best_depth) {
            best_depth = candidates[i].depth;
            chosen.assign(1, i);
        } else if (candidates[i].depth == best_depth) {
            chosen.push_back(i);
        }
    }
    if (chosen.empty())
        throw NoSubgoalInCandidates(
            "no candidate satisfies a rule of ruleset " + rs_.name);
    std::vector<double> probs(candidates.size(), 0.0);
    for (size_t i : chosen) probs[i] = 1.0 / static_cast<double>(chosen.size());
    return probs;
}

std::unique_ptr<SubgoalPolicy> sketch_policy(sketch::Ruleset rs) {
    return std::make_unique<SketchSubgoalPolicy>(std::move(rs));
}

namespace {

// Bit-exact double round-trips via the hex bit pattern.
std::string double_hex(double x) {
    uint64_t bits;
    std::memcpy(&bits, &x, sizeof(bits));
    char buf[17];
    snprintf(buf, sizeof(buf), "%016llx",
             static_cast<unsigned long long>(bits));
    return buf;
}

double hex_double(const std::string &s) {
    uint64_t bits = std::stoull(s, nullptr, 16);
    double x;
    std::memcpy(&x, &bits, sizeof(x));
    return x;
}

nlohmann::json state_json(const State &s) { return s.atoms; }

State json_state(const nlohmann::json &j) {
    return State(j.get<std::vector<AtomIndex>>());
}

}  // namespace

void save_policy(const TabularPolicy &pol, const std::string &path) {
    nlohmann::json j;
    j["gamma"] = double_hex(pol.config.gamma);
    j["alpha"] = double_hex(pol.config.alpha);
    j["beta"] = double_hex(pol.config.beta);
    j["iterations"] = pol.config.iterations;
    j["seed"] = pol.config.seed;
    j["k"] = pol.config.k;
    j["prior"] =
        pol.config.prior == PolicyConfig::Prior::UniformAlive ? "alive" : "init";
    j["task_fingerprints"] = pol.task_fingerprints;

    // Sort entries so files are byte-identical across runs.
    std::vector<std::pair<State, double>> values(pol.values.begin(),
                                                 pol.values.end());
    std::sort(values.begin(), values.end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });
    j["values"] = nlohmann::json::array();
    for (const auto &[s, v] : values)
        j["values"].push_back({{"state", state_json(s)}, {"v", double_hex(v)}});

    std::vector<std::pair<State, std::vector<std::pair<State, double>>>> rows;
    for (const auto &[s, row] : pol.logits) {
        std::vector<std::pair<State, double>> entries(row.begin(), row.end());
        std::sort(entries.begin(), entries.end(),
                  [](const auto &a, const auto &b) { return a.first < b.first; });
        rows.emplace_back(s, std::move(entries));
    }
    std::sort(rows.begin(), rows.end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });
    j["logits"] = nlohmann::json::array();
    for (const auto &[s, entries] : rows) {
        nlohmann::json row;
        row["state"] = state_json(s);
        row["entries"] = nlohmann::json::array();
        for (const auto &[s2, logit] : entries)
            row["entries"].push_back(
                {{"state", state_json(s2)}, {"logit", double_hex(logit)}});
        j["logits"].push_back(std::move(row));
    }

    std::ofstream out(path);
    if (!out) throw Error("cannot write policy file " + path);
    out << j.dump(1) << "\n";
}

TabularPolicy load_policy(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read policy file " + path);
    nlohmann::json j = nlohmann::json::parse(in);

    TabularPolicy pol;
    pol.config.gamma = hex_double(j.at("gamma").get<std::string>());
    pol.config.alpha = hex_double(j.at("alpha").get<std::string>());
    pol.config.beta = hex_double(j.at("beta").get<std::string>());
    pol.config.iterations = j.at("iterations").get<uint64_t>();
    pol.config.seed = j.at("seed").get<uint64_t>();
    pol.config.k = j.at("k").get<int>();
    pol.config.prior = j.at("prior").get<std::string>() == "alive"
                           ? PolicyConfig::Prior::UniformAlive
                           : PolicyConfig::Prior::InitOnly;
    pol.task_fingerprints =
        j.at("task_fingerprints").get<std::vector<uint64_t>>();

    for (const auto &entry : j.at("values"))
        pol.values[json_state(entry.at("state"))] =
            hex_double(entry.at("v").get<std::string>());
    for (const auto &row : j.at("logits")) {
        auto &dest = pol.logits[json_state(row.at("state"))];
        for (const auto &entry : row.at("entries"))
            dest[json_state(entry.at("state"))] =
                hex_double(entry.at("logit").get<std::string>());
    }
    return pol;
}

}  // namespace policy
}  // namespace sketchplan
