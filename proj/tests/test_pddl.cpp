#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "sketchplan/errors.hpp"
#include "sketchplan/generators.hpp"
#include "sketchplan/pddl.hpp"

using namespace sketchplan;

namespace {

GroundedTask ground_generated(const std::string &domain,
                              const generators::GenSpec &spec) {
    auto dom = pddl::parse_domain(generators::domain_pddl(domain));
    auto inst = pddl::parse_problem(generators::generate(spec).problem_pddl, dom);
    return pddl::ground(dom, inst);
}

generators::GenSpec gripper_spec(int balls) {
    generators::GenSpec s;
    s.domain = "gripper";
    s.balls = balls;
    return s;
}

generators::GenSpec delivery_spec(int x, int y, int packages) {
    generators::GenSpec s;
    s.domain = "delivery";
    s.grid_x = x;
    s.grid_y = y;
    s.packages = packages;
    return s;
}

}  // namespace

TEST_CASE("gripper domain parses with expected structure") {
    auto dom = pddl::parse_domain(generators::domain_pddl("gripper"));
    CHECK(dom.name == "gripper");
    CHECK(dom.schemas.size() == 3);
    CHECK(dom.find_predicate("at-robby") != nullptr);
    CHECK(dom.find_predicate("carry") != nullptr);
    CHECK(dom.find_predicate("nonexistent") == nullptr);
}

TEST_CASE("delivery domain uses types") {
    auto dom = pddl::parse_domain(generators::domain_pddl("delivery"));
    CHECK(dom.is_subtype("truck", "object"));
    CHECK(dom.is_subtype("package", "object"));
    CHECK(!dom.is_subtype("truck", "package"));
    auto pred = dom.find_predicate("adjacent");
    REQUIRE(pred != nullptr);
    CHECK(pred->param_types == std::vector<std::string>{"cell", "cell"});
}

TEST_CASE("spanner type hierarchy") {
    auto dom = pddl::parse_domain(generators::domain_pddl("spanner"));
    CHECK(dom.is_subtype("man", "locatable"));
    CHECK(dom.is_subtype("spanner", "locatable"));
    CHECK(dom.is_subtype("spanner", "object"));
    CHECK(!dom.is_subtype("location", "locatable"));
}

TEST_CASE("gripper one-ball task grounds to ten actions") {
    GroundedTask t = ground_generated("gripper", gripper_spec(1));
    // 2 move + 4 pick + 4 drop; move(r, r) is a no-op and must be dropped.
    CHECK(t.actions.size() == 10);
    size_t moves = 0, picks = 0, drops = 0;
    for (const auto &a : t.actions) {
        if (a.schema == "move") ++moves;
        if (a.schema == "pick") ++picks;
        if (a.schema == "drop") ++drops;
        CHECK(a.args[0] != a.args[1]);  // no degenerate self-moves survive
    }
    CHECK(moves == 2);
    CHECK(picks == 4);
    CHECK(drops == 4);
}

TEST_CASE("delivery 1x2 task grounds to six actions") {
    GroundedTask t = ground_generated("delivery", delivery_spec(1, 2, 1));
    // 2 moves along the only edge, pick/drop at each cell.
    CHECK(t.actions.size() == 6);
}

TEST_CASE("atom universe is sorted and static predicates are compiled out") {
    GroundedTask t = ground_generated("delivery", delivery_spec(2, 2, 1));
    CHECK(std::is_sorted(t.atoms.begin(), t.atoms.end()));
    for (const auto &a : t.atoms) CHECK(a.pred != "adjacent");
    bool found_static = false;
    for (const auto &a : t.static_init)
        if (a.pred == "adjacent") found_static = true;
    CHECK(found_static);
    CHECK(t.has_static("adjacent", {"c_0_0", "c_0_1"}));
    CHECK(!t.has_static("adjacent", {"c_0_0", "c_1_1"}));
}

TEST_CASE("ground actions are sorted by schema then arguments") {
    GroundedTask t = ground_generated("gripper", gripper_spec(2));
    auto key = [](const GroundAction &a) {
        return std::make_pair(a.schema, a.args);
    };
    for (size_t i = 1; i < t.actions.size(); ++i)
        CHECK(key(t.actions[i - 1]) < key(t.actions[i]));
}

TEST_CASE("action effects keep add and del disjoint") {
    for (const char *d : {"gripper", "delivery", "miconic", "blocks"}) {
        generators::GenSpec s;
        s.domain = d;
        s.grid_x = s.grid_y = 2;
        s.packages = 1;
        s.balls = 2;
        s.floors = 3;
        s.passengers = 2;
        s.blocks = 3;
        GroundedTask t = ground_generated(d, s);
        for (const auto &a : t.actions) {
            std::vector<AtomIndex> overlap;
            std::set_intersection(a.add.begin(), a.add.end(), a.del.begin(),
                                  a.del.end(), std::back_inserter(overlap));
            CHECK(overlap.empty());
            CHECK(std::is_sorted(a.pre.begin(), a.pre.end()));
            CHECK(std::is_sorted(a.add.begin(), a.add.end()));
            CHECK(std::is_sorted(a.del.begin(), a.del.end()));
        }
    }
}

TEST_CASE("domain and problem emit-parse round trip") {
    for (const char *d : {"gripper", "delivery", "spanner", "miconic",
                          "childsnack", "blocks", "visitall", "reward"}) {
        auto dom = pddl::parse_domain(generators::domain_pddl(d));
        auto dom2 = pddl::parse_domain(pddl::emit_domain(dom));
        CHECK(dom == dom2);

        generators::GenSpec s;
        s.domain = d;
        s.grid_x = s.grid_y = 2;
        s.packages = 1;
        s.balls = 1;
        s.spanners = 2;
        s.nuts = 1;
        s.locations = 2;
        s.floors = 2;
        s.passengers = 1;
        s.rewards = 1;
        s.blocks = 2;
        s.children = 1;
        auto inst = pddl::parse_problem(generators::generate(s).problem_pddl, dom);
        auto inst2 = pddl::parse_problem(pddl::emit_problem(inst), dom);
        CHECK(inst == inst2);
    }
}

TEST_CASE("unsatisfied-goal extension adds one marker per goal atom") {
    GroundedTask base = ground_generated("gripper", gripper_spec(2));
    GroundedTask ext = pddl::add_unsatisfied_goal_predicates(base);
    CHECK(ext.ug_pairs.size() == base.goal.size());
    CHECK(ext.num_atoms() == base.num_atoms() + base.goal.size());
    // Markers of unsatisfied goals are true initially.
    for (const auto &[goal_atom, marker] : ext.ug_pairs) {
        CHECK(ext.init.contains(goal_atom) != ext.init.contains(marker));
        // Every action adding the goal atom deletes the marker and vice versa.
        for (const auto &a : ext.actions) {
            bool adds = std::binary_search(a.add.begin(), a.add.end(), goal_atom);
            bool dels_marker =
                std::binary_search(a.del.begin(), a.del.end(), marker);
            CHECK(adds == dels_marker);
            bool dels = std::binary_search(a.del.begin(), a.del.end(), goal_atom);
            bool adds_marker =
                std::binary_search(a.add.begin(), a.add.end(), marker);
            CHECK(dels == adds_marker);
        }
    }
    // Original atoms keep their indices.
    for (size_t i = 0; i < base.num_atoms(); ++i)
        CHECK(base.atoms[i] == ext.atoms[i]);
}

TEST_CASE("fingerprint is stable and content sensitive") {
    GroundedTask a = ground_generated("gripper", gripper_spec(2));
    GroundedTask b = ground_generated("gripper", gripper_spec(2));
    GroundedTask c = ground_generated("gripper", gripper_spec(3));
    CHECK(a.fingerprint() == b.fingerprint());
    CHECK(a.fingerprint() != c.fingerprint());
}

TEST_CASE("task json dump mentions core fields") {
    GroundedTask t = ground_generated("gripper", gripper_spec(1));
    std::string j = pddl::task_json_dump(t);
    CHECK(j.find("\"atoms\"") != std::string::npos);
    CHECK(j.find("\"actions\"") != std::string::npos);
    CHECK(j.find("\"goal\"") != std::string::npos);
}

TEST_CASE("parser reports syntax errors with location") {
    CHECK_THROWS_AS(pddl::parse_domain("(define (domain x) (:predicates"),
                    SyntaxError);
    CHECK_THROWS_AS(pddl::parse_domain("definitely not pddl"), SyntaxError);
}

TEST_CASE("parser rejects unsupported constructs") {
    std::string dom = "(define (domain x) (:requirements :adl))";
    CHECK_THROWS_AS(pddl::parse_domain(dom), UnsupportedFeature);
    std::string neg =
        "(define (domain x) (:predicates (p ?a))"
        " (:action a :parameters (?a) :precondition (not (p ?a))"
        " :effect (p ?a)))";
    CHECK_THROWS_AS(pddl::parse_domain(neg), UnsupportedFeature);
    std::string forall =
        "(define (domain x) (:predicates (p ?a))"
        " (:action a :parameters (?a) :precondition (p ?a)"
        " :effect (forall (?b) (p ?b))))";
    CHECK_THROWS_AS(pddl::parse_domain(forall), UnsupportedFeature);
}

TEST_CASE("problem parsing validates names and arities") {
    auto dom = pddl::parse_domain(generators::domain_pddl("gripper"));
    std::string bad_pred =
        "(define (problem p) (:domain gripper) (:objects b)"
        " (:init (nosuch b)) (:goal (and (at b b))))";
    CHECK_THROWS_AS(pddl::parse_problem(bad_pred, dom), UnknownPredicate);
    std::string bad_arity =
        "(define (problem p) (:domain gripper) (:objects b)"
        " (:init (at b)) (:goal (and (at b b))))";
    CHECK_THROWS_AS(pddl::parse_problem(bad_arity, dom), ArityMismatch);

    auto tdom = pddl::parse_domain(generators::domain_pddl("delivery"));
    std::string bad_type =
        "(define (problem p) (:domain delivery) (:objects c1 - nosuchtype)"
        " (:init) (:goal (and (at c1 c1))))";
    CHECK_THROWS_AS(pddl::parse_problem(bad_type, tdom), UnknownObjectType);
}

TEST_CASE("grounding cap throws explosion error") {
    auto dom = pddl::parse_domain(generators::domain_pddl("gripper"));
    auto inst = pddl::parse_problem(
        generators::generate(gripper_spec(8)).problem_pddl, dom);
    CHECK_THROWS_AS(pddl::ground(dom, inst, 5), GroundingExplosion);
}

TEST_CASE("static goal atoms satisfied in init are dropped, otherwise error") {
    std::string dom_text =
        "(define (domain s) (:predicates (stat ?a) (dyn ?a))"
        " (:action flip :parameters (?a) :precondition (stat ?a)"
        " :effect (dyn ?a)))";
    auto dom = pddl::parse_domain(dom_text);
    std::string ok =
        "(define (problem p) (:domain s) (:objects o)"
        " (:init (stat o)) (:goal (and (stat o) (dyn o))))";
    auto inst = pddl::parse_problem(ok, dom);
    GroundedTask t = pddl::ground(dom, inst);
    CHECK(t.goal.size() == 1);  // static goal satisfied in init is dropped

    std::string bad =
        "(define (problem p) (:domain s) (:objects o)"
        " (:init) (:goal (and (stat o))))";
    auto inst2 = pddl::parse_problem(bad, dom);
    CHECK_THROWS_AS(pddl::ground(dom, inst2), Error);
}

TEST_CASE("childsnack constant kitchen is available in instances") {
    auto dom = pddl::parse_domain(generators::domain_pddl("childsnack"));
    REQUIRE(dom.constants.size() == 1);
    CHECK(dom.constants[0].name == "kitchen");
    CHECK(dom.constants[0].type == "place");
    generators::GenSpec s;
    s.domain = "childsnack";
    s.children = 1;
    auto inst = pddl::parse_problem(generators::generate(s).problem_pddl, dom);
    GroundedTask t = pddl::ground(dom, inst);
    CHECK(t.actions.size() > 0);
}
