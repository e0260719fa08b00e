#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "sketchplan/generators.hpp"
#include "sketchplan/pddl.hpp"
#include "sketchplan/statespace.hpp"
#include "sketchplan/width.hpp"

using namespace sketchplan;

namespace {

GroundedTask make_task(const generators::GenSpec &spec) {
    auto dom = pddl::parse_domain(generators::domain_pddl(spec.domain));
    auto inst = pddl::parse_problem(generators::generate(spec).problem_pddl, dom);
    return pddl::add_unsatisfied_goal_predicates(pddl::ground(dom, inst));
}

generators::GenSpec delivery(int x, int y, int packages, uint64_t seed = 0) {
    generators::GenSpec s;
    s.domain = "delivery";
    s.grid_x = x;
    s.grid_y = y;
    s.packages = packages;
    s.seed = seed;
    return s;
}

generators::GenSpec gripper(int balls) {
    generators::GenSpec s;
    s.domain = "gripper";
    s.balls = balls;
    return s;
}

std::set<State> closure_states(const width::IWResult &res) {
    std::set<State> out;
    for (size_t i = 1; i < res.nodes.size(); ++i) out.insert(res.nodes[i].state);
    return out;
}

}  // namespace

TEST_CASE("IW(0) expands only the root") {
    GroundedTask t = make_task(gripper(2));
    width::IWResult res = width::nk_successors(t, t.init, 0);
    CHECK(res.expanded == 1);
    CHECK(res.closure_size() == statespace::successors(t, t.init).size());
    for (size_t i = 1; i < res.nodes.size(); ++i) CHECK(res.nodes[i].depth == 1);
}

TEST_CASE("depth-1 children are never pruned") {
    GroundedTask t = make_task(delivery(3, 3, 2));
    for (int k : {1, 2}) {
        width::IWResult res = width::nk_successors(t, t.init, k);
        size_t depth1 = 0;
        for (size_t i = 1; i < res.nodes.size(); ++i)
            if (res.nodes[i].depth == 1) ++depth1;
        // every distinct applicable successor must be in the closure
        std::set<State> uniq;
        for (const auto &[a, s] : statespace::successors(t, t.init))
            uniq.insert(s);
        CHECK(depth1 == uniq.size());
    }
}

TEST_CASE("closures grow with k") {
    GroundedTask t = make_task(delivery(3, 3, 1));
    auto c0 = closure_states(width::nk_successors(t, t.init, 0));
    auto c1 = closure_states(width::nk_successors(t, t.init, 1));
    auto c2 = closure_states(width::nk_successors(t, t.init, 2));
    CHECK(std::includes(c1.begin(), c1.end(), c0.begin(), c0.end()));
    CHECK(std::includes(c2.begin(), c2.end(), c1.begin(), c1.end()));
    CHECK(c1.size() < c2.size());
}

TEST_CASE("iw is deterministic") {
    GroundedTask t = make_task(delivery(4, 4, 2, 3));
    auto r1 = width::nk_successors(t, t.init, 2);
    auto r2 = width::nk_successors(t, t.init, 2);
    REQUIRE(r1.nodes.size() == r2.nodes.size());
    for (size_t i = 0; i < r1.nodes.size(); ++i) {
        CHECK(r1.nodes[i].state == r2.nodes[i].state);
        CHECK(r1.nodes[i].parent == r2.nodes[i].parent);
        CHECK(r1.nodes[i].action == r2.nodes[i].action);
    }
}

TEST_CASE("root satisfying the stop condition is found at depth zero") {
    GroundedTask t = make_task(gripper(1));
    auto res = width::iw(
        t, t.init, 1, [](const State &) { return true; },
        width::IWMode::FirstHit);
    REQUIRE(res.found.has_value());
    CHECK(*res.found == 0);
    CHECK(res.path(*res.found).empty());
}

TEST_CASE("first hit returns a shortest path when width is sufficient") {
    // Single goal atom: at(ball, roomb) is reachable within width 2.
    GroundedTask t = make_task(gripper(1));
    auto stop = [&t](const State &s) { return statespace::is_goal(t, s); };
    auto res = width::iw(t, t.init, 2, stop, width::IWMode::FirstHit);
    REQUIRE(res.found.has_value());
    auto opt = statespace::bfs_optimal(t, t.init);
    REQUIRE(opt.has_value());
    CHECK(res.path(*res.found).size() == *opt);
    // and the path is executable
    statespace::Plan plan{res.path(*res.found)};
    CHECK(statespace::validate(t, t.init, plan).ok);
}

TEST_CASE("iw first hits match breadth-first optima on random subtasks") {
    // Random alive states with single-atom stop conditions of width <= 1.
    std::mt19937_64 rng(7);
    for (auto spec : {delivery(3, 3, 2, 1), gripper(2)}) {
        GroundedTask t = make_task(spec);
        auto alive = statespace::enumerate_alive(t, 100000);
        for (int trial = 0; trial < 25; ++trial) {
            const State &s = alive[rng() % alive.size()];
            AtomIndex target = static_cast<AtomIndex>(rng() % t.num_atoms());
            auto stop = [target](const State &x) { return x.contains(target); };
            auto d = statespace::bfs_distance(t, s, stop, -1, 1000000);
            if (!d) continue;  // unreachable atom
            auto res = width::iw(t, s, 1, stop, width::IWMode::FirstHit);
            if (!res.found) continue;  // width > 1 for this atom
            CHECK(res.path(*res.found).size() == *d);
        }
    }
}

TEST_CASE("novelty bound limits closure size") {
    GroundedTask t = make_task(delivery(3, 3, 2));
    size_t n = t.num_atoms();
    auto r1 = width::nk_successors(t, t.init, 1);
    CHECK(r1.closure_size() <= n + r1.depth1_children);
    auto r2 = width::nk_successors(t, t.init, 2);
    CHECK(r2.closure_size() <= n * n + r2.depth1_children);
}

TEST_CASE("unachieved goal counter") {
    GroundedTask t = make_task(gripper(3));
    CHECK(width::unachieved_goal_count(t, t.init) == 3);
    auto res = width::iw(
        t, t.init, 2,
        [&t](const State &s) { return width::unachieved_goal_count(t, s) < 3; },
        width::IWMode::FirstHit);
    REQUIRE(res.found.has_value());
    CHECK(width::unachieved_goal_count(t, res.nodes[*res.found].state) == 2);
}

TEST_CASE("classic serialized iteration solves the benchmark domains") {
    for (auto spec : {delivery(3, 3, 2, 5), delivery(2, 2, 1, 1)}) {
        GroundedTask t = make_task(spec);
        auto plan = width::siw_classic(t, 2);
        REQUIRE(plan.has_value());
        CHECK(statespace::validate(t, t.init, *plan).ok);
    }
    GroundedTask g = make_task(gripper(3));
    auto plan = width::siw_classic(g, 2);
    REQUIRE(plan.has_value());
    CHECK(statespace::validate(g, g.init, *plan).ok);
}

TEST_CASE("closure members are reachable via recorded parents") {
    GroundedTask t = make_task(delivery(2, 2, 1));
    auto res = width::nk_successors(t, t.init, 2);
    for (size_t i = 1; i < res.nodes.size(); ++i) {
        statespace::Plan plan{res.path(i)};
        CHECK(plan.actions.size() == res.nodes[i].depth);
        State cur = t.init;
        statespace::TransitionContext ctx(t);
        bool ok = true;
        for (uint32_t a : plan.actions) {
            if (!ctx.is_applicable(cur, a)) {
                ok = false;
                break;
            }
            cur = ctx.apply(cur, a);
        }
        CHECK(ok);
        CHECK(cur == res.nodes[i].state);
    }
}
