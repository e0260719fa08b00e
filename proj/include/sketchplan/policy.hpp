#ifndef SKETCHPLAN_POLICY_H
#define SKETCHPLAN_POLICY_H

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sketchplan/sketch.hpp"
#include "sketchplan/task.hpp"

namespace sketchplan {
namespace policy {

struct PolicyConfig {
    double gamma = 0.999;
    double alpha = 2e-4;
    double beta = 2e-4;
    uint64_t iterations = 0;
    uint64_t seed = 0;
    int k = 1;
    enum class Prior { UniformAlive, InitOnly } prior = Prior::UniformAlive;
};

// Candidate subgoal: a closure state plus its BFS depth within the IW run.
struct Candidate {
    const State *state;
    uint32_t depth;
};

// Interface the executor selects through.
class SubgoalPolicy {
public:
    virtual ~SubgoalPolicy() = default;
    // Probabilities over candidates; sums to 1. May throw
    // NoSubgoalInCandidates (sketch policies) or EmptyCandidateSet.
    virtual std::vector<double> distribution(
        const GroundedTask &task, const State &s,
        const std::vector<Candidate> &candidates) const = 0;
};

constexpr double kLogitClip = 30.0;

struct TabularPolicy {
    PolicyConfig config;
    std::unordered_map<State, double, StateHash> values;
    std::unordered_map<State, std::unordered_map<State, double, StateHash>,
                       StateHash>
        logits;
    std::vector<uint64_t> task_fingerprints;
};

std::vector<double> policy_distribution(const TabularPolicy &pol,
                                        const State &s,
                                        const std::vector<State> &candidates);

// Optional progress hook: called every check_interval iterations; returning
// true stops training early (wired to the validation score by the CLI).
using StopHook = std::function<bool(const TabularPolicy &, uint64_t iteration)>;

TabularPolicy train_actor_critic(const std::vector<const GroundedTask *> &tasks,
                                 const PolicyConfig &cfg,
                                 const StopHook &stop_hook = {},
                                 uint64_t check_interval = 0,
                                 uint64_t state_cap = 200'000);

using Exclusions = std::unordered_set<State, StateHash>;

size_t select_greedy(const std::vector<double> &probs,
                     const std::vector<Candidate> &candidates,
                     const Exclusions &exclusions, std::mt19937_64 &rng);
size_t select_stochastic(const std::vector<double> &probs,
                         const std::vector<Candidate> &candidates,
                         const Exclusions &exclusions, std::mt19937_64 &rng);

// SubgoalPolicy adapters.
class TabularSubgoalPolicy : public SubgoalPolicy {
public:
    explicit TabularSubgoalPolicy(TabularPolicy pol) : pol_(std::move(pol)) {}
    std::vector<double> distribution(
        const GroundedTask &task, const State &s,
        const std::vector<Candidate> &candidates) const override;
    const TabularPolicy &table() const { return pol_; }

private:
    TabularPolicy pol_;
};

class UniformSubgoalPolicy : public SubgoalPolicy {
public:
    std::vector<double> distribution(
        const GroundedTask &task, const State &s,
        const std::vector<Candidate> &candidates) const override;
};

// Uniform over the closest (minimum depth) members of G_R(s) within the
// candidate closure — the G*_R restriction; throws NoSubgoalInCandidates
// when the filter is empty.
class SketchSubgoalPolicy : public SubgoalPolicy {
public:
    explicit SketchSubgoalPolicy(sketch::Ruleset rs) : rs_(std::move(rs)) {}
    std::vector<double> distribution(
        const GroundedTask &task, const State &s,
        const std::vector<Candidate> &candidates) const override;
    const sketch::Ruleset &ruleset() const { return rs_; }

private:
    sketch::Ruleset rs_;
};

std::unique_ptr<SubgoalPolicy> sketch_policy(sketch::Ruleset rs);

void save_policy(const TabularPolicy &pol, const std::string &path);
TabularPolicy load_policy(const std::string &path);

}  // namespace policy
}  // namespace sketchplan

#endif
