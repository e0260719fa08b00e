#include "sketchplan/sketch.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <unordered_map>

#include "json.hpp"
#include "sketchplan/errors.hpp"
#include "sketchplan/statespace.hpp"

namespace sketchplan {
namespace sketch {

Valuation eval_features(const Ruleset &rs, const GroundedTask &task,
                        const State &s) {
    Valuation v;
    v.reserve(rs.features.size());
    for (const auto &f : rs.features) v.push_back(f.eval(task, s));
    return v;
}

namespace {

bool condition_holds(ConditionTest test, int64_t value) {
    switch (test) {
        case ConditionTest::IsTrue:
            return value != 0;
        case ConditionTest::IsFalse:
            return value == 0;
        case ConditionTest::EqZero:
            return value == 0;
        case ConditionTest::GtZero:
            return value > 0;
    }
    return false;
}

bool effect_holds(EffectChange change, int64_t before, int64_t after) {
    switch (change) {
        case EffectChange::SetTrue:
            return after != 0;
        case EffectChange::SetFalse:
            return after == 0;
        case EffectChange::Decrement:
            return after < before;
        case EffectChange::Increment:
            return after > before;
        case EffectChange::Arbitrary:
            return true;
    }
    return false;
}

bool rule_satisfied(const SketchRule &rule, size_t num_features,
                    const Valuation &v, const Valuation &v2) {
    for (const auto &c : rule.conditions)
        if (!condition_holds(c.test, v[c.feature])) return false;
    std::vector<bool> mentioned(num_features, false);
    for (const auto &e : rule.effects) {
        if (!effect_holds(e.change, v[e.feature], v2[e.feature])) return false;
        mentioned[e.feature] = true;
    }
    // Features without an effect must keep their value.
    for (size_t f = 0; f < num_features; ++f)
        if (!mentioned[f] && v[f] != v2[f]) return false;
    return true;
}

}  // namespace

std::optional<size_t> pair_satisfies(const Ruleset &rs, const Valuation &v,
                                     const Valuation &v2) {
    for (size_t r = 0; r < rs.rules.size(); ++r)
        if (rule_satisfied(rs.rules[r], rs.features.size(), v, v2)) return r;
    return std::nullopt;
}

std::optional<size_t> pair_satisfies(const Ruleset &rs, const GroundedTask &task,
                                     const State &s, const State &s2) {
    return pair_satisfies(rs, eval_features(rs, task, s),
                          eval_features(rs, task, s2));
}

std::vector<size_t> subgoal_indices(const Ruleset &rs, const GroundedTask &task,
                                    const State &s,
                                    const std::vector<State> &candidates) {
    Valuation v = eval_features(rs, task, s);
    std::vector<size_t> result;
    for (size_t i = 0; i < candidates.size(); ++i) {
        Valuation v2 = eval_features(rs, task, candidates[i]);
        if (pair_satisfies(rs, v, v2)) result.push_back(i);
    }
    return result;
}

std::vector<State> subgoal_set(const Ruleset &rs, const GroundedTask &task,
                               const State &s,
                               const std::vector<State> &candidates) {
    std::vector<State> result;
    for (size_t i : subgoal_indices(rs, task, s, candidates))
        result.push_back(candidates[i]);
    return result;
}

SafetyReport check_safe_acyclic(const Ruleset &rs, const GroundedTask &task,
                                uint64_t state_cap) {
    statespace::StateSpaceGraph g = statespace::build_graph(task, state_cap);

    std::vector<Valuation> vals(g.size());
    for (uint32_t i = 0; i < g.size(); ++i)
        vals[i] = eval_features(rs, task, g.states[i]);

    // Subgoal edges: for each alive state, the closest rule-satisfying states.
    std::vector<std::vector<uint32_t>> subgoal_edges(g.size());
    for (uint32_t i = 0; i < g.size(); ++i) {
        if (!g.alive(i)) continue;
        std::vector<int8_t> visited(g.size(), 0);
        visited[i] = 1;
        std::deque<uint32_t> layer{i};
        bool found = false;
        while (!layer.empty() && !found) {
            std::deque<uint32_t> next;
            for (uint32_t cur : layer)
                for (const auto &[a, succ] : g.edges[cur])
                    if (!visited[succ]) {
                        visited[succ] = 1;
                        next.push_back(succ);
                    }
            for (uint32_t cand : next) {
                if (pair_satisfies(rs, vals[i], vals[cand])) {
                    found = true;
                    subgoal_edges[i].push_back(cand);
                }
            }
            layer = std::move(next);
        }
        if (!found)
            return {false,
                    "alive state " + std::to_string(i) +
                        " has no reachable subgoal",
                    {g.states[i]}};
        for (uint32_t t : subgoal_edges[i])
            if (g.dead_end(t))
                return {false,
                        "subgoal from alive state " + std::to_string(i) +
                            " is a dead-end",
                        {g.states[i], g.states[t]}};
    }

    // Cycle detection over subgoal edges (iterative DFS, colors 0/1/2).
    std::vector<int8_t> color(g.size(), 0);
    std::vector<uint32_t> stack, parent(g.size(), 0);
    for (uint32_t root = 0; root < g.size(); ++root) {
        if (color[root] || !g.alive(root)) continue;
        stack.push_back(root);
        while (!stack.empty()) {
            uint32_t cur = stack.back();
            if (color[cur] == 0) {
                color[cur] = 1;
                for (uint32_t t : subgoal_edges[cur]) {
                    if (color[t] == 1) {
                        // Cycle: reconstruct the chain cur -> ... -> t -> cur.
                        std::vector<State> chain{g.states[t]};
                        uint32_t walk = cur;
                        while (walk != t) {
                            chain.push_back(g.states[walk]);
                            walk = parent[walk];
                        }
                        std::reverse(chain.begin() + 1, chain.end());
                        chain.push_back(g.states[t]);
                        return {false, "subgoal cycle detected", chain};
                    }
                    if (color[t] == 0) {
                        parent[t] = cur;
                        stack.push_back(t);
                    }
                }
            } else {
                color[cur] = 2;
                stack.pop_back();
            }
        }
    }
    return {true, "", {}};
}

// ---------------------------------------------------------------------------
// Builtin feature evaluators. Derived atom-index bindings are cached per task
// (keyed by address; tasks outlive policies in all call paths).

namespace {

struct TaskBindings {
    // goal atom -> goal object (first argument), e.g. at(p, target) -> p.
    std::vector<std::pair<AtomIndex, std::string>> goal_by_object;
    // delivery: carrying atoms -> package; gripper: carry atoms -> ball.
    std::vector<std::pair<AtomIndex, std::string>> held_by_object;
    // miconic: passenger -> boarded atom.
    std::unordered_map<std::string, AtomIndex> boarded;
    // gripper: free(gripper) atoms.
    std::vector<AtomIndex> free_atoms;
    // spanner: at(spanner, loc) atoms.
    std::vector<AtomIndex> spanner_at;
    // childsnack: ontray atoms -> sandwich; sandwich -> no_gluten atom.
    std::vector<std::pair<AtomIndex, std::string>> ontray_by_sandwich;
    std::unordered_map<std::string, AtomIndex> no_gluten_sandwich;
    // childsnack: children with a static allergic_gluten atom.
    std::vector<std::string> allergic_children;
};

const TaskBindings &bindings(const GroundedTask &task) {
    // Keyed by content fingerprint: task objects may be destroyed and their
    // addresses reused, and identical tasks share identical atom indices.
    static std::mutex mu;
    static std::unordered_map<uint64_t, TaskBindings> cache;
    uint64_t key = task.fingerprint();
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    TaskBindings b;
    for (AtomIndex g : task.goal) {
        const GroundAtom &atom = task.atoms[g];
        if (!atom.args.empty()) b.goal_by_object.emplace_back(g, atom.args[0]);
    }

    std::unordered_map<std::string, bool> carried_objects;
    for (AtomIndex i = 0; i < task.num_atoms(); ++i) {
        const GroundAtom &atom = task.atoms[i];
        if (atom.pred == "carrying") {
            b.held_by_object.emplace_back(i, atom.args[1]);
            carried_objects[atom.args[1]] = true;
        } else if (atom.pred == "carry") {
            b.held_by_object.emplace_back(i, atom.args[0]);
        } else if (atom.pred == "boarded") {
            b.boarded[atom.args[0]] = i;
        } else if (atom.pred == "free") {
            b.free_atoms.push_back(i);
        } else if (atom.pred == "ontray") {
            b.ontray_by_sandwich.emplace_back(i, atom.args[0]);
        } else if (atom.pred == "no_gluten_sandwich") {
            b.no_gluten_sandwich[atom.args[0]] = i;
        }
    }
    // at(x, loc) atoms for objects that can be carried: the spanner supply.
    for (AtomIndex i = 0; i < task.num_atoms(); ++i) {
        const GroundAtom &atom = task.atoms[i];
        if (atom.pred == "at" && carried_objects.count(atom.args[0]))
            b.spanner_at.push_back(i);
    }
    for (const auto &atom : task.static_init)
        if (atom.pred == "allergic_gluten")
            b.allergic_children.push_back(atom.args[0]);

    return cache.emplace(key, std::move(b)).first->second;
}

int64_t unsatisfied_goal_count(const GroundedTask &task, const State &s) {
    int64_t n = 0;
    for (AtomIndex g : task.goal)
        if (!s.contains(g)) ++n;
    return n;
}

// Delivery H: some undelivered goal package is currently carried.
int64_t undelivered_package_held(const GroundedTask &task, const State &s) {
    const TaskBindings &b = bindings(task);
    for (const auto &[carry_atom, obj] : b.held_by_object) {
        if (!s.contains(carry_atom)) continue;
        for (const auto &[goal_atom, goal_obj] : b.goal_by_object)
            if (goal_obj == obj && !s.contains(goal_atom)) return 1;
    }
    return 0;
}

// Miconic N2: goal passengers that are neither boarded nor served.
int64_t unboarded_unserved_passengers(const GroundedTask &task,
                                      const State &s) {
    const TaskBindings &b = bindings(task);
    int64_t n = 0;
    for (const auto &[goal_atom, passenger] : b.goal_by_object) {
        if (s.contains(goal_atom)) continue;
        auto it = b.boarded.find(passenger);
        if (it == b.boarded.end() || !s.contains(it->second)) ++n;
    }
    return n;
}

// Childsnack N2: demand for tray sandwiches not yet met,
// max(0, unserved - trayed, unserved_allergic - gluten_free_trayed).
int64_t pending_sandwich_demand(const GroundedTask &task, const State &s) {
    const TaskBindings &b = bindings(task);
    int64_t unserved = 0, unserved_allergic = 0;
    for (const auto &[goal_atom, child] : b.goal_by_object) {
        if (s.contains(goal_atom)) continue;
        ++unserved;
        for (const auto &a : b.allergic_children)
            if (a == child) {
                ++unserved_allergic;
                break;
            }
    }
    int64_t trayed = 0, gluten_free_trayed = 0;
    for (const auto &[ontray_atom, sandwich] : b.ontray_by_sandwich) {
        if (!s.contains(ontray_atom)) continue;
        ++trayed;
        auto it = b.no_gluten_sandwich.find(sandwich);
        if (it != b.no_gluten_sandwich.end() && s.contains(it->second))
            ++gluten_free_trayed;
    }
    return std::max<int64_t>(
        0, std::max(unserved - trayed, unserved_allergic - gluten_free_trayed));
}

// Spanner N2: spanners still lying at some location.
int64_t spanners_on_ground(const GroundedTask &task, const State &s) {
    const TaskBindings &b = bindings(task);
    int64_t n = 0;
    for (AtomIndex i : b.spanner_at)
        if (s.contains(i)) ++n;
    return n;
}

// Gripper N2: balls loadable right now, min(undelivered and not carried,
// free grippers).
int64_t loadable_balls(const GroundedTask &task, const State &s) {
    const TaskBindings &b = bindings(task);
    int64_t pending = 0;
    for (const auto &[goal_atom, ball] : b.goal_by_object) {
        if (s.contains(goal_atom)) continue;
        bool carried = false;
        for (const auto &[carry_atom, obj] : b.held_by_object)
            if (obj == ball && s.contains(carry_atom)) carried = true;
        if (!carried) ++pending;
    }
    int64_t free_grippers = 0;
    for (AtomIndex i : b.free_atoms)
        if (s.contains(i)) ++free_grippers;
    return std::min(pending, free_grippers);
}

struct RegisteredEval {
    const char *name;
    FeatureKind kind;
    int64_t (*eval)(const GroundedTask &, const State &);
};

const RegisteredEval kEvaluators[] = {
    {"unsatisfied_goal_count", FeatureKind::Numeric, unsatisfied_goal_count},
    {"undelivered_package_held", FeatureKind::Boolean,
     undelivered_package_held},
    {"unboarded_unserved_passengers", FeatureKind::Numeric,
     unboarded_unserved_passengers},
    {"pending_sandwich_demand", FeatureKind::Numeric, pending_sandwich_demand},
    {"spanners_on_ground", FeatureKind::Numeric, spanners_on_ground},
    {"loadable_balls", FeatureKind::Numeric, loadable_balls},
};

Feature make_feature(const std::string &display_name,
                     const std::string &eval_name) {
    for (const auto &reg : kEvaluators)
        if (eval_name == reg.name)
            return {display_name, reg.kind,
                    [fn = reg.eval](const GroundedTask &t, const State &s) {
                        return fn(t, s);
                    }};
    throw UnknownBinding("unknown feature evaluator '" + eval_name + "'");
}

}  // namespace

Ruleset builtin_ruleset(const std::string &name, const std::string &domain_tag) {
    // Accept both generator tags ("childsnack") and PDDL domain names
    // ("child-snack").
    std::string domain;
    for (char c : domain_tag)
        if (c != '-' && c != '_') domain += c;
    Ruleset rs;
    rs.name = name;
    if (name == "R1") {
        // {N > 0} -> {N dec}: any domain where goal atoms are achieved one at
        // a time (reward, visitall, delivery at width 2, ...).
        rs.features.push_back(make_feature("N", "unsatisfied_goal_count"));
        rs.rules.push_back({{{0, ConditionTest::GtZero}},
                            {{0, EffectChange::Decrement}}});
        return rs;
    }
    if (name == "R2") {
        if (domain != "delivery")
            throw UnknownBinding("R2 has no feature binding for domain '" +
                                 domain + "'");
        rs.features.push_back(make_feature("H", "undelivered_package_held"));
        rs.features.push_back(make_feature("N", "unsatisfied_goal_count"));
        rs.rules.push_back({{{0, ConditionTest::IsFalse}, {1, ConditionTest::GtZero}},
                            {{0, EffectChange::SetTrue}}});
        rs.rules.push_back({{{0, ConditionTest::IsTrue}, {1, ConditionTest::GtZero}},
                            {{0, EffectChange::SetFalse},
                             {1, EffectChange::Decrement}}});
        return rs;
    }
    if (name == "R3") {
        // {N2 > 0} -> {N2 dec}; {N1 > 0, N2 = 0} -> {N1 dec}.
        std::string n2;
        if (domain == "miconic")
            n2 = "unboarded_unserved_passengers";
        else if (domain == "childsnack")
            n2 = "pending_sandwich_demand";
        else if (domain == "spanner")
            n2 = "spanners_on_ground";
        else
            throw UnknownBinding("R3 has no feature binding for domain '" +
                                 domain + "'");
        rs.features.push_back(make_feature("N1", "unsatisfied_goal_count"));
        rs.features.push_back(make_feature("N2", n2));
        rs.rules.push_back({{{1, ConditionTest::GtZero}},
                            {{1, EffectChange::Decrement}}});
        rs.rules.push_back({{{0, ConditionTest::GtZero}, {1, ConditionTest::EqZero}},
                            {{0, EffectChange::Decrement}}});
        return rs;
    }
    if (name == "R4") {
        if (domain != "gripper")
            throw UnknownBinding("R4 has no feature binding for domain '" +
                                 domain + "'");
        // {N2 > 0} -> {N2 dec}; {N1 > 0, N2 = 0} -> {N1 dec, N2 ?}.
        rs.features.push_back(make_feature("N1", "unsatisfied_goal_count"));
        rs.features.push_back(make_feature("N2", "loadable_balls"));
        rs.rules.push_back({{{1, ConditionTest::GtZero}},
                            {{1, EffectChange::Decrement}}});
        rs.rules.push_back({{{0, ConditionTest::GtZero}, {1, ConditionTest::EqZero}},
                            {{0, EffectChange::Decrement},
                             {1, EffectChange::Arbitrary}}});
        return rs;
    }
    throw UnknownBinding("unknown ruleset '" + name + "'");
}

Ruleset load_ruleset_json(const std::string &json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    Ruleset rs;
    rs.name = j.value("name", "ruleset");
    std::unordered_map<std::string, size_t> feature_ids;
    for (const auto &f : j.at("features")) {
        std::string fname = f.at("name").get<std::string>();
        feature_ids[fname] = rs.features.size();
        rs.features.push_back(
            make_feature(fname, f.at("eval").get<std::string>()));
    }
    auto feature_id = [&feature_ids](const std::string &fname) {
        auto it = feature_ids.find(fname);
        if (it == feature_ids.end())
            throw InvalidSpec("rule references undeclared feature '" + fname +
                              "'");
        return it->second;
    };
    auto parse_test = [](const std::string &t) {
        if (t == "is_true") return ConditionTest::IsTrue;
        if (t == "is_false") return ConditionTest::IsFalse;
        if (t == "eq0") return ConditionTest::EqZero;
        if (t == "gt0") return ConditionTest::GtZero;
        throw InvalidSpec("unknown condition test '" + t + "'");
    };
    auto parse_change = [](const std::string &c) {
        if (c == "set_true") return EffectChange::SetTrue;
        if (c == "set_false") return EffectChange::SetFalse;
        if (c == "dec") return EffectChange::Decrement;
        if (c == "inc") return EffectChange::Increment;
        if (c == "any") return EffectChange::Arbitrary;
        throw InvalidSpec("unknown effect change '" + c + "'");
    };
    for (const auto &r : j.at("rules")) {
        SketchRule rule;
        for (const auto &c : r.at("conditions"))
            rule.conditions.push_back(
                {feature_id(c.at("feature").get<std::string>()),
                 parse_test(c.at("test").get<std::string>())});
        for (const auto &e : r.at("effects"))
            rule.effects.push_back(
                {feature_id(e.at("feature").get<std::string>()),
                 parse_change(e.at("change").get<std::string>())});
        rs.rules.push_back(std::move(rule));
    }
    if (rs.rules.empty()) throw InvalidSpec("ruleset has no rules");
    return rs;
}

}  // namespace sketch
}  // namespace sketchplan
