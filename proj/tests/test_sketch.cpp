#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sketchplan/errors.hpp"
#include "sketchplan/generators.hpp"
#include "sketchplan/pddl.hpp"
#include "sketchplan/sketch.hpp"
#include "sketchplan/statespace.hpp"
#include "sketchplan/width.hpp"

using namespace sketchplan;

namespace {

GroundedTask make_task(const generators::GenSpec &spec) {
    auto dom = pddl::parse_domain(generators::domain_pddl(spec.domain));
    auto inst = pddl::parse_problem(generators::generate(spec).problem_pddl, dom);
    return pddl::add_unsatisfied_goal_predicates(pddl::ground(dom, inst));
}

generators::GenSpec spec_of(const std::string &domain) {
    generators::GenSpec s;
    s.domain = domain;
    if (domain == "delivery") {
        s.grid_x = s.grid_y = 2;
        s.packages = 2;
    } else if (domain == "gripper") {
        s.balls = 2;
    } else if (domain == "spanner") {
        s.spanners = 2;
        s.nuts = 2;
        s.locations = 3;
    } else if (domain == "miconic") {
        s.floors = 3;
        s.passengers = 2;
    } else if (domain == "childsnack") {
        s.children = 2;
        s.trays = 1;
    }
    return s;
}

// Apply one named action (first applicable match by schema) to a state.
State step(const GroundedTask &t, const State &s, const std::string &schema) {
    statespace::TransitionContext ctx(t);
    for (uint32_t a : ctx.applicable(s))
        if (t.actions[a].schema == schema) return ctx.apply(s, a);
    FAIL("no applicable action with schema " << schema);
    return s;
}

}  // namespace

TEST_CASE("feature valuations on delivery") {
    GroundedTask t = make_task(spec_of("delivery"));
    auto rs = sketch::builtin_ruleset("R2", t.domain_name);
    REQUIRE(rs.features.size() == 2);
    sketch::Valuation v = sketch::eval_features(rs, t, t.init);
    CHECK(v[0] == 0);  // nothing held yet
    CHECK(v[1] == 2);  // both packages undelivered

    State picked = step(t, t.init, "pick_package");
    sketch::Valuation v2 = sketch::eval_features(rs, t, picked);
    CHECK(v2[0] == 1);
    CHECK(v2[1] == 2);
}

TEST_CASE("pair_satisfies returns the lowest matching rule") {
    GroundedTask t = make_task(spec_of("delivery"));
    auto rs = sketch::builtin_ruleset("R2", t.domain_name);
    State picked = step(t, t.init, "pick_package");
    auto hit = sketch::pair_satisfies(rs, t, t.init, picked);
    REQUIRE(hit.has_value());
    CHECK(*hit == 0);  // {not H, N > 0} -> {H}
    // Same state never satisfies a rule that requires a decrement or flip.
    CHECK(!sketch::pair_satisfies(rs, t, t.init, t.init).has_value());
}

TEST_CASE("unmentioned features must keep their value") {
    GroundedTask t = make_task(spec_of("delivery"));
    auto rs = sketch::builtin_ruleset("R2", t.domain_name);
    // Rule 0 only changes H; a pair that also drops N must not match rule 0.
    sketch::Valuation from{0, 2};
    CHECK(sketch::pair_satisfies(rs, from, {1, 2}) == size_t{0});
    CHECK(!sketch::pair_satisfies(rs, from, {1, 1}).has_value());
    // Rule 1: H -> not H with N decrement.
    CHECK(sketch::pair_satisfies(rs, {1, 2}, {0, 1}) == size_t{1});
    CHECK(!sketch::pair_satisfies(rs, {1, 2}, {0, 2}).has_value());
}

TEST_CASE("goal-count rule matches exactly the decrements") {
    GroundedTask t = make_task(spec_of("gripper"));
    auto rs = sketch::builtin_ruleset("R1", t.domain_name);
    CHECK(sketch::pair_satisfies(rs, {2}, {1}) == size_t{0});
    CHECK(sketch::pair_satisfies(rs, {2}, {0}) == size_t{0});
    CHECK(!sketch::pair_satisfies(rs, {2}, {2}).has_value());
    CHECK(!sketch::pair_satisfies(rs, {2}, {3}).has_value());
    CHECK(!sketch::pair_satisfies(rs, {0}, {0}).has_value());  // goal state
}

TEST_CASE("subgoal selection over a candidate closure") {
    GroundedTask t = make_task(spec_of("delivery"));
    auto rs = sketch::builtin_ruleset("R2", t.domain_name);
    auto res = width::nk_successors(t, t.init, 1);
    std::vector<State> candidates;
    for (size_t i = 1; i < res.nodes.size(); ++i)
        candidates.push_back(res.nodes[i].state);
    auto picks = sketch::subgoal_indices(rs, t, t.init, candidates);
    CHECK(!picks.empty());
    for (size_t i : picks) {
        auto hit = sketch::pair_satisfies(rs, t, t.init, candidates[i]);
        CHECK(hit.has_value());
    }
    auto states = sketch::subgoal_set(rs, t, t.init, candidates);
    CHECK(states.size() == picks.size());
}

TEST_CASE("builtin rulesets bind per domain") {
    CHECK_NOTHROW(sketch::builtin_ruleset("R1", "blocks"));
    CHECK_NOTHROW(sketch::builtin_ruleset("R3", "child-snack"));
    CHECK_THROWS_AS(sketch::builtin_ruleset("R2", "gripper"), UnknownBinding);
    CHECK_THROWS_AS(sketch::builtin_ruleset("R4", "delivery"), UnknownBinding);
    CHECK_THROWS_AS(sketch::builtin_ruleset("R9", "gripper"), UnknownBinding);
}

TEST_CASE("safety and acyclicity hold for the shipped rulesets") {
    struct Case {
        const char *ruleset;
        const char *domain;
    };
    for (Case c : {Case{"R1", "delivery"}, Case{"R2", "delivery"},
                   Case{"R3", "spanner"}, Case{"R3", "miconic"},
                   Case{"R3", "childsnack"}, Case{"R4", "gripper"}}) {
        GroundedTask t = make_task(spec_of(c.domain));
        auto rs = sketch::builtin_ruleset(c.ruleset, t.domain_name);
        auto report = sketch::check_safe_acyclic(rs, t);
        INFO(c.ruleset << " on " << c.domain << ": " << report.violation);
        CHECK(report.safe_acyclic);
    }
}

TEST_CASE("a flip-flop ruleset is reported cyclic with a witness") {
    GroundedTask t = make_task(spec_of("delivery"));
    // {H} -> {not H}; {not H} -> {H}: oscillates without progress.
    std::string json = R"({
      "name": "flipflop",
      "features": [{"name": "H", "eval": "undelivered_package_held"}],
      "rules": [
        {"conditions": [{"feature": "H", "test": "is_true"}],
         "effects": [{"feature": "H", "change": "set_false"}]},
        {"conditions": [{"feature": "H", "test": "is_false"}],
         "effects": [{"feature": "H", "change": "set_true"}]}
      ]
    })";
    auto rs = sketch::load_ruleset_json(json);
    auto report = sketch::check_safe_acyclic(rs, t);
    CHECK(!report.safe_acyclic);
    CHECK(!report.violation.empty());
    CHECK(report.witness.size() >= 2);
}

TEST_CASE("a ruleset that strands alive states is unsafe") {
    GroundedTask t = make_task(spec_of("delivery"));
    // Only fires while something is held: states with H = 0 have no subgoal.
    std::string json = R"({
      "features": [{"name": "H", "eval": "undelivered_package_held"},
                   {"name": "N", "eval": "unsatisfied_goal_count"}],
      "rules": [
        {"conditions": [{"feature": "H", "test": "is_true"}],
         "effects": [{"feature": "N", "change": "dec"},
                     {"feature": "H", "change": "set_false"}]}
      ]
    })";
    auto rs = sketch::load_ruleset_json(json);
    auto report = sketch::check_safe_acyclic(rs, t);
    CHECK(!report.safe_acyclic);
}

TEST_CASE("json loader round-trips the goal-count ruleset") {
    std::string json = R"({
      "name": "goal-counter",
      "features": [{"name": "N", "eval": "unsatisfied_goal_count"}],
      "rules": [
        {"conditions": [{"feature": "N", "test": "gt0"}],
         "effects": [{"feature": "N", "change": "dec"}]}
      ]
    })";
    auto rs = sketch::load_ruleset_json(json);
    CHECK(rs.name == "goal-counter");
    GroundedTask t = make_task(spec_of("gripper"));
    auto builtin = sketch::builtin_ruleset("R1", t.domain_name);
    // Behavioral equivalence on a sample of pairs.
    auto alive = statespace::enumerate_alive(t, 100000);
    for (size_t i = 0; i + 1 < alive.size(); i += 3) {
        auto a = sketch::pair_satisfies(rs, t, alive[i], alive[i + 1]);
        auto b = sketch::pair_satisfies(builtin, t, alive[i], alive[i + 1]);
        CHECK(a == b);
    }
}

TEST_CASE("json loader rejects malformed rulesets") {
    CHECK_THROWS_AS(sketch::load_ruleset_json("{\"features\": []}"),
                    std::exception);
    CHECK_THROWS_AS(sketch::load_ruleset_json(R"({
      "features": [{"name": "N", "eval": "nosuch"}],
      "rules": [{"conditions": [], "effects": []}]
    })"),
                    UnknownBinding);
    CHECK_THROWS_AS(sketch::load_ruleset_json(R"({
      "features": [{"name": "N", "eval": "unsatisfied_goal_count"}],
      "rules": [{"conditions": [{"feature": "M", "test": "gt0"}],
                 "effects": []}]
    })"),
                    InvalidSpec);
}

TEST_CASE("gripper load counter tracks free grippers and pending balls") {
    GroundedTask t = make_task(spec_of("gripper"));
    auto rs = sketch::builtin_ruleset("R4", t.domain_name);
    sketch::Valuation v = sketch::eval_features(rs, t, t.init);
    CHECK(v[0] == 2);  // two balls to deliver
    CHECK(v[1] == 2);  // both grippers free, two balls waiting
    State s1 = step(t, t.init, "pick");
    CHECK(sketch::eval_features(rs, t, s1)[1] == 1);
    State s2 = step(t, s1, "pick");
    CHECK(sketch::eval_features(rs, t, s2)[1] == 0);
}

TEST_CASE("spanner ground counter") {
    GroundedTask t = make_task(spec_of("spanner"));
    auto rs = sketch::builtin_ruleset("R3", t.domain_name);
    sketch::Valuation v = sketch::eval_features(rs, t, t.init);
    CHECK(v[0] == 2);  // two loose nuts
    CHECK(v[1] == 2);  // two spanners on the ground
}
