#ifndef SKETCHPLAN_SKETCH_H
#define SKETCHPLAN_SKETCH_H

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sketchplan/task.hpp"

namespace sketchplan {
namespace sketch {

enum class FeatureKind { Boolean, Numeric };

struct Feature {
    std::string name;
    FeatureKind kind;
    // Deterministic pure evaluator; booleans as 0/1, counts >= 0.
    std::function<int64_t(const GroundedTask &, const State &)> eval;
};

enum class ConditionTest { IsTrue, IsFalse, EqZero, GtZero };
enum class EffectChange { SetTrue, SetFalse, Decrement, Increment, Arbitrary };

struct FeatureCondition {
    size_t feature;
    ConditionTest test;
};

struct FeatureEffect {
    size_t feature;
    EffectChange change;
};

// C -> E; features absent from effects must keep their value.
struct SketchRule {
    std::vector<FeatureCondition> conditions;
    std::vector<FeatureEffect> effects;
};

struct Ruleset {
    std::string name;
    std::vector<Feature> features;
    std::vector<SketchRule> rules;
};

using Valuation = std::vector<int64_t>;

Valuation eval_features(const Ruleset &rs, const GroundedTask &task,
                        const State &s);

// Lowest-index rule satisfied by the pair [s, s2], if any.
std::optional<size_t> pair_satisfies(const Ruleset &rs, const GroundedTask &task,
                                     const State &s, const State &s2);
// Valuation-based variant for callers that cache feature values.
std::optional<size_t> pair_satisfies(const Ruleset &rs, const Valuation &v,
                                     const Valuation &v2);

// Indices of candidates forming G_R(s); empty at goal states by executor
// convention (callers only query non-goal states).
std::vector<size_t> subgoal_indices(const Ruleset &rs, const GroundedTask &task,
                                    const State &s,
                                    const std::vector<State> &candidates);
std::vector<State> subgoal_set(const Ruleset &rs, const GroundedTask &task,
                               const State &s,
                               const std::vector<State> &candidates);

struct SafetyReport {
    bool safe_acyclic;
    std::string violation;        // empty when safe
    std::vector<State> witness;   // offending subgoal chain
};

// Exhaustive check over alive states: G*_R edges (closest subgoal states by
// BFS distance) must neither enter dead-ends nor form cycles.
SafetyReport check_safe_acyclic(const Ruleset &rs, const GroundedTask &task,
                                uint64_t state_cap = 200'000);

// R1..R4 with per-domain feature bindings (delivery, gripper, miconic,
// childsnack, spanner, reward). Throws UnknownBinding otherwise.
Ruleset builtin_ruleset(const std::string &name, const std::string &domain);

// JSON descriptions reference registered evaluators by name.
Ruleset load_ruleset_json(const std::string &json_text);

}  // namespace sketch
}  // namespace sketchplan

#endif
