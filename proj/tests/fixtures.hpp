// Reference problem instances with published subgoal decompositions and
// plan lengths, reconstructed exactly (object names, initial placements,
// goals). Used by the executor tests and the acceptance checks.
#ifndef SKETCHPLAN_TESTS_FIXTURES_H
#define SKETCHPLAN_TESTS_FIXTURES_H

#include <sstream>
#include <string>

#include "sketchplan/generators.hpp"
#include "sketchplan/pddl.hpp"

namespace fixtures {

inline std::string grid_adjacency(int rows, int cols) {
    std::ostringstream out;
    auto cell = [](int i, int j) {
        return "c_" + std::to_string(i) + "_" + std::to_string(j);
    };
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            if (i + 1 < rows)
                out << "    (adjacent " << cell(i, j) << " " << cell(i + 1, j)
                    << ")\n    (adjacent " << cell(i + 1, j) << " " << cell(i, j)
                    << ")\n";
            if (j + 1 < cols)
                out << "    (adjacent " << cell(i, j) << " " << cell(i, j + 1)
                    << ")\n    (adjacent " << cell(i, j + 1) << " " << cell(i, j)
                    << ")\n";
        }
    return out.str();
}

// 5x5 grid, 4 packages, 1 truck, shared target c_1_1; 39 primitive steps,
// 8 subgoals under the pick/drop ruleset.
inline std::string delivery_5x5_p4() {
    std::ostringstream out;
    out << "(define (problem delivery_5x5_p4)\n  (:domain delivery)\n"
        << "  (:objects\n";
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            out << "    c_" << i << "_" << j << " - cell\n";
    out << "    p1 p2 p3 p4 - package\n    t1 - truck\n  )\n  (:init\n"
        << "    (at p4 c_0_0)\n    (at p3 c_0_3)\n    (at p1 c_2_3)\n"
        << "    (at t1 c_4_1)\n    (at p2 c_4_4)\n    (empty t1)\n"
        << grid_adjacency(5, 5) << "  )\n"
        << "  (:goal (and (at p1 c_1_1) (at p2 c_1_1) (at p3 c_1_1)"
           " (at p4 c_1_1)))\n)\n";
    return out.str();
}

// n balls in rooma, all to roomb; 85 primitive / 44 subgoals for n = 22.
inline std::string gripper_balls(int n) {
    std::ostringstream out;
    out << "(define (problem gripper_b" << n << ")\n  (:domain gripper)\n"
        << "  (:objects rooma roomb";
    for (int i = 1; i <= n; ++i) out << " ball" << i;
    out << " left right)\n  (:init\n    (room rooma)\n    (room roomb)\n"
        << "    (gripper left)\n    (gripper right)\n    (at-robby rooma)\n"
        << "    (free left)\n    (free right)\n";
    for (int i = 1; i <= n; ++i)
        out << "    (ball ball" << i << ")\n    (at ball" << i << " rooma)\n";
    out << "  )\n  (:goal (and";
    for (int i = 1; i <= n; ++i) out << " (at ball" << i << " roomb)";
    out << "))\n)\n";
    return out.str();
}

// 10 spanners / 10 nuts / 10 locations; 31 primitive / 20 subgoals.
inline std::string spanner_10_10_10() {
    std::ostringstream out;
    out << "(define (problem spanner_s10_n10_l10)\n  (:domain spanner)\n"
        << "  (:objects\n    shed gate";
    for (int i = 1; i <= 10; ++i) out << " location" << i;
    out << " - location\n    bob - man\n   ";
    for (int i = 1; i <= 10; ++i) out << " spanner" << i;
    out << " - spanner\n   ";
    for (int i = 1; i <= 10; ++i) out << " nut" << i;
    out << " - nut\n  )\n  (:init\n    (at bob shed)\n"
        << "    (at spanner1 location1)\n    (at spanner9 location3)\n"
        << "    (at spanner10 location6)\n    (at spanner3 location7)\n"
        << "    (at spanner4 location7)\n    (at spanner7 location7)\n"
        << "    (at spanner2 location8)\n    (at spanner5 location8)\n"
        << "    (at spanner6 location8)\n    (at spanner8 location10)\n";
    for (int i = 1; i <= 10; ++i)
        out << "    (useable spanner" << i << ")\n    (at nut" << i
            << " gate)\n    (loose nut" << i << ")\n";
    out << "    (link shed location1)\n";
    for (int i = 1; i < 10; ++i)
        out << "    (link location" << i << " location" << i + 1 << ")\n";
    out << "    (link location10 gate)\n  )\n  (:goal (and";
    for (int i = 1; i <= 10; ++i) out << " (tightened nut" << i << ")";
    out << "))\n)\n";
    return out.str();
}

// 1 passenger, 2 floors; 4 primitive / 2 subgoals.
inline std::string miconic_s1_0() {
    return "(define (problem miconic_s1_0)\n  (:domain miconic)\n"
           "  (:objects f0 f1 p0)\n  (:init\n"
           "    (floor f0)\n    (floor f1)\n    (passenger p0)\n"
           "    (origin p0 f1)\n    (destin p0 f0)\n    (above f0 f1)\n"
           "    (lift-at f0)\n  )\n  (:goal (and (served p0)))\n)\n";
}

// 1 child, no allergies; 4 primitive / 2 subgoals.
inline std::string childsnack_1() {
    return "(define (problem childsnack_p1)\n  (:domain child-snack)\n"
           "  (:objects\n    bread1 - bread-portion\n    child1 - child\n"
           "    content1 - content-portion\n    sandw1 - sandwich\n"
           "    table1 table2 table3 - place\n    tray1 - tray\n  )\n"
           "  (:init\n    (at_kitchen_bread bread1)\n"
           "    (at_kitchen_content content1)\n    (not_allergic_gluten child1)\n"
           "    (waiting child1 table3)\n    (at tray1 kitchen)\n"
           "    (notexist sandw1)\n  )\n  (:goal (and (served child1)))\n)\n";
}

inline sketchplan::GroundedTask load(const std::string &domain_tag,
                                     const std::string &problem_text) {
    auto dom = sketchplan::pddl::parse_domain(
        sketchplan::generators::domain_pddl(domain_tag));
    auto inst = sketchplan::pddl::parse_problem(problem_text, dom);
    return sketchplan::pddl::add_unsatisfied_goal_predicates(
        sketchplan::pddl::ground(dom, inst));
}

}  // namespace fixtures

#endif
