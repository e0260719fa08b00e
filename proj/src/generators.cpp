#include "sketchplan/generators.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "json.hpp"
#include "sketchplan/errors.hpp"

namespace sketchplan {
namespace generators {

namespace {

const char *kDeliveryDomain = R"((define (domain delivery)
  (:requirements :strips :typing)
  (:types truck package cell - object)
  (:predicates
    (adjacent ?c1 - cell ?c2 - cell)
    (at ?x - object ?c - cell)
    (carrying ?t - truck ?p - package)
    (empty ?t - truck))
  (:action pick_package
    :parameters (?t - truck ?p - package ?x - cell)
    :precondition (and (at ?p ?x) (at ?t ?x) (empty ?t))
    :effect (and (not (at ?p ?x)) (not (empty ?t)) (carrying ?t ?p)))
  (:action drop_package
    :parameters (?t - truck ?p - package ?x - cell)
    :precondition (and (at ?t ?x) (carrying ?t ?p))
    :effect (and (empty ?t) (not (carrying ?t ?p)) (at ?p ?x)))
  (:action move
    :parameters (?t - truck ?from - cell ?to - cell)
    :precondition (and (adjacent ?from ?to) (at ?t ?from))
    :effect (and (not (at ?t ?from)) (at ?t ?to)))
)
)";

const char *kGripperDomain = R"((define (domain gripper)
  (:requirements :strips)
  (:predicates
    (room ?r) (ball ?b) (gripper ?g)
    (at-robby ?r) (at ?b ?r) (free ?g) (carry ?o ?g))
  (:action move
    :parameters (?from ?to)
    :precondition (and (room ?from) (room ?to) (at-robby ?from))
    :effect (and (at-robby ?to) (not (at-robby ?from))))
  (:action pick
    :parameters (?obj ?room ?gripper)
    :precondition (and (ball ?obj) (room ?room) (gripper ?gripper)
                       (at ?obj ?room) (at-robby ?room) (free ?gripper))
    :effect (and (carry ?obj ?gripper) (not (at ?obj ?room))
                 (not (free ?gripper))))
  (:action drop
    :parameters (?obj ?room ?gripper)
    :precondition (and (ball ?obj) (room ?room) (gripper ?gripper)
                       (carry ?obj ?gripper) (at-robby ?room))
    :effect (and (at ?obj ?room) (free ?gripper)
                 (not (carry ?obj ?gripper))))
)
)";

const char *kSpannerDomain = R"((define (domain spanner)
  (:requirements :strips :typing)
  (:types location locatable - object
          man nut spanner - locatable)
  (:predicates
    (at ?m - locatable ?l - location)
    (carrying ?m - man ?s - spanner)
    (useable ?s - spanner)
    (link ?l1 - location ?l2 - location)
    (tightened ?n - nut)
    (loose ?n - nut))
  (:action walk
    :parameters (?start - location ?end - location ?m - man)
    :precondition (and (at ?m ?start) (link ?start ?end))
    :effect (and (not (at ?m ?start)) (at ?m ?end)))
  (:action pickup_spanner
    :parameters (?l - location ?s - spanner ?m - man)
    :precondition (and (at ?m ?l) (at ?s ?l))
    :effect (and (not (at ?s ?l)) (carrying ?m ?s)))
  (:action tighten_nut
    :parameters (?l - location ?s - spanner ?m - man ?n - nut)
    :precondition (and (at ?m ?l) (at ?n ?l) (carrying ?m ?s)
                       (useable ?s) (loose ?n))
    :effect (and (not (loose ?n)) (not (useable ?s)) (tightened ?n)))
)
)";

const char *kMiconicDomain = R"((define (domain miconic)
  (:requirements :strips)
  (:predicates
    (above ?f1 ?f2) (boarded ?p) (destin ?p ?f) (floor ?f)
    (lift-at ?f) (origin ?p ?f) (passenger ?p) (served ?p))
  (:action board
    :parameters (?f ?p)
    :precondition (and (floor ?f) (passenger ?p) (lift-at ?f) (origin ?p ?f))
    :effect (boarded ?p))
  (:action depart
    :parameters (?f ?p)
    :precondition (and (floor ?f) (passenger ?p) (lift-at ?f)
                       (destin ?p ?f) (boarded ?p))
    :effect (and (not (boarded ?p)) (served ?p)))
  (:action up
    :parameters (?f1 ?f2)
    :precondition (and (floor ?f1) (floor ?f2) (lift-at ?f1) (above ?f1 ?f2))
    :effect (and (lift-at ?f2) (not (lift-at ?f1))))
  (:action down
    :parameters (?f1 ?f2)
    :precondition (and (floor ?f1) (floor ?f2) (lift-at ?f1) (above ?f2 ?f1))
    :effect (and (lift-at ?f2) (not (lift-at ?f1))))
)
)";

const char *kRewardDomain = R"((define (domain reward)
  (:requirements :strips :typing)
  (:types cell - object)
  (:predicates
    (adjacent ?c1 - cell ?c2 - cell)
    (at ?c - cell)
    (picked ?c - cell)
    (reward ?c - cell)
    (unblocked ?c - cell))
  (:action move
    :parameters (?from - cell ?to - cell)
    :precondition (and (adjacent ?from ?to) (at ?from) (unblocked ?to))
    :effect (and (not (at ?from)) (at ?to)))
  (:action pick-reward
    :parameters (?x - cell)
    :precondition (and (at ?x) (reward ?x))
    :effect (and (not (reward ?x)) (picked ?x)))
)
)";

const char *kVisitallDomain = R"((define (domain visitall)
  (:requirements :strips :typing)
  (:types cell - object)
  (:predicates
    (connected ?c1 - cell ?c2 - cell)
    (at-robot ?c - cell)
    (visited ?c - cell))
  (:action move
    :parameters (?from - cell ?to - cell)
    :precondition (and (at-robot ?from) (connected ?from ?to))
    :effect (and (not (at-robot ?from)) (at-robot ?to) (visited ?to)))
)
)";

const char *kBlocksDomain = R"((define (domain blocks)
  (:requirements :strips)
  (:predicates
    (clear ?x) (handempty) (holding ?x) (on ?x ?y) (ontable ?x))
  (:action pick-up
    :parameters (?x)
    :precondition (and (clear ?x) (ontable ?x) (handempty))
    :effect (and (not (ontable ?x)) (not (clear ?x)) (not (handempty))
                 (holding ?x)))
  (:action put-down
    :parameters (?x)
    :precondition (holding ?x)
    :effect (and (not (holding ?x)) (clear ?x) (handempty) (ontable ?x)))
  (:action stack
    :parameters (?x ?y)
    :precondition (and (holding ?x) (clear ?y))
    :effect (and (not (holding ?x)) (not (clear ?y)) (clear ?x) (handempty)
                 (on ?x ?y)))
  (:action unstack
    :parameters (?x ?y)
    :precondition (and (on ?x ?y) (clear ?x) (handempty))
    :effect (and (holding ?x) (clear ?y) (not (clear ?x)) (not (handempty))
                 (not (on ?x ?y))))
)
)";

const char *kChildsnackDomain = R"((define (domain child-snack)
  (:requirements :strips :typing :constants)
  (:types bread-portion child content-portion place sandwich tray - object)
  (:constants kitchen - place)
  (:predicates
    (allergic_gluten ?c - child)
    (at ?t - tray ?p - place)
    (at_kitchen_bread ?b - bread-portion)
    (at_kitchen_content ?c - content-portion)
    (at_kitchen_sandwich ?s - sandwich)
    (no_gluten_bread ?b - bread-portion)
    (no_gluten_content ?c - content-portion)
    (no_gluten_sandwich ?s - sandwich)
    (not_allergic_gluten ?c - child)
    (notexist ?s - sandwich)
    (ontray ?s - sandwich ?t - tray)
    (served ?c - child)
    (waiting ?c - child ?p - place))
  (:action make_sandwich_no_gluten
    :parameters (?s - sandwich ?b - bread-portion ?c - content-portion)
    :precondition (and (at_kitchen_bread ?b) (at_kitchen_content ?c)
                       (no_gluten_bread ?b) (no_gluten_content ?c)
                       (notexist ?s))
    :effect (and (not (at_kitchen_bread ?b)) (not (at_kitchen_content ?c))
                 (at_kitchen_sandwich ?s) (no_gluten_sandwich ?s)
                 (not (notexist ?s))))
  (:action make_sandwich
    :parameters (?s - sandwich ?b - bread-portion ?c - content-portion)
    :precondition (and (at_kitchen_bread ?b) (at_kitchen_content ?c)
                       (notexist ?s))
    :effect (and (not (at_kitchen_bread ?b)) (not (at_kitchen_content ?c))
                 (at_kitchen_sandwich ?s) (not (notexist ?s))))
  (:action put_on_tray
    :parameters (?s - sandwich ?t - tray)
    :precondition (and (at_kitchen_sandwich ?s) (at ?t kitchen))
    :effect (and (not (at_kitchen_sandwich ?s)) (ontray ?s ?t)))
  (:action serve_sandwich_no_gluten
    :parameters (?s - sandwich ?c - child ?t - tray ?p - place)
    :precondition (and (allergic_gluten ?c) (ontray ?s ?t) (waiting ?c ?p)
                       (no_gluten_sandwich ?s) (at ?t ?p))
    :effect (and (not (ontray ?s ?t)) (served ?c)))
  (:action serve_sandwich
    :parameters (?s - sandwich ?c - child ?t - tray ?p - place)
    :precondition (and (not_allergic_gluten ?c) (waiting ?c ?p)
                       (ontray ?s ?t) (at ?t ?p))
    :effect (and (not (ontray ?s ?t)) (served ?c)))
  (:action move_tray
    :parameters (?t - tray ?p1 - place ?p2 - place)
    :precondition (at ?t ?p1)
    :effect (and (not (at ?t ?p1)) (at ?t ?p2)))
)
)";

// rng() % n: portable across platforms, unlike uniform_int_distribution.
int draw(std::mt19937_64 &rng, int n) {
    return static_cast<int>(rng() % static_cast<uint64_t>(n));
}

std::string cell_name(int i, int j) {
    return "c_" + std::to_string(i) + "_" + std::to_string(j);
}

void emit_grid_adjacency(std::ostringstream &init, const std::string &pred,
                         int rows, int cols) {
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            if (i + 1 < rows) {
                init << "    (" << pred << " " << cell_name(i, j) << " "
                     << cell_name(i + 1, j) << ")\n";
                init << "    (" << pred << " " << cell_name(i + 1, j) << " "
                     << cell_name(i, j) << ")\n";
            }
            if (j + 1 < cols) {
                init << "    (" << pred << " " << cell_name(i, j) << " "
                     << cell_name(i, j + 1) << ")\n";
                init << "    (" << pred << " " << cell_name(i, j + 1) << " "
                     << cell_name(i, j) << ")\n";
            }
        }
}

GeneratedInstance gen_delivery(const GenSpec &spec) {
    if (spec.grid_x < 1 || spec.grid_y < 1 || spec.packages < 1 ||
        spec.agents < 1)
        throw InvalidSpec("delivery needs a grid, >= 1 package, >= 1 truck");
    std::mt19937_64 rng(spec.seed);
    int rows = spec.grid_x, cols = spec.grid_y;
    auto random_cell = [&]() { return cell_name(draw(rng, rows), draw(rng, cols)); };

    std::ostringstream objects, init, goal;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            objects << "    " << cell_name(i, j) << " - cell\n";
    for (int p = 1; p <= spec.packages; ++p)
        objects << "    p" << p << " - package\n";
    for (int t = 0; t < spec.agents; ++t) objects << "    t" << t << " - truck\n";

    if (rows * cols < 2)
        throw InvalidSpec("delivery needs at least two cells");
    std::string shared_target = random_cell();
    for (int p = 1; p <= spec.packages; ++p) {
        std::string dest =
            spec.unique_destinations ? random_cell() : shared_target;
        // Start off the destination so every package needs a delivery.
        std::string start = random_cell();
        while (start == dest) start = random_cell();
        init << "    (at p" << p << " " << start << ")\n";
        goal << " (at p" << p << " " << dest << ")";
    }
    for (int t = 0; t < spec.agents; ++t) {
        init << "    (at t" << t << " " << random_cell() << ")\n";
        init << "    (empty t" << t << ")\n";
    }
    emit_grid_adjacency(init, "adjacent", rows, cols);

    std::ostringstream pddl;
    std::string name = "delivery_" + std::to_string(rows) + "x" +
                       std::to_string(cols) + "_p" +
                       std::to_string(spec.packages) + "_t" +
                       std::to_string(spec.agents) + "_s" +
                       std::to_string(spec.seed);
    pddl << "(define (problem " << name << ")\n  (:domain delivery)\n"
         << "  (:objects\n" << objects.str() << "  )\n"
         << "  (:init\n" << init.str() << "  )\n"
         << "  (:goal (and" << goal.str() << "))\n)\n";
    return {name, kDeliveryDomain, pddl.str()};
}

GeneratedInstance gen_gripper(const GenSpec &spec) {
    if (spec.balls < 1) throw InvalidSpec("gripper needs >= 1 ball");
    std::ostringstream objects, init, goal;
    for (int b = 1; b <= spec.balls; ++b) objects << "    ball" << b << " - object\n";
    objects << "    left - object\n    right - object\n"
            << "    rooma - object\n    roomb - object\n";
    init << "    (room rooma)\n    (room roomb)\n"
         << "    (gripper left)\n    (gripper right)\n"
         << "    (at-robby rooma)\n    (free left)\n    (free right)\n";
    for (int b = 1; b <= spec.balls; ++b) {
        init << "    (ball ball" << b << ")\n";
        init << "    (at ball" << b << " rooma)\n";
        goal << " (at ball" << b << " roomb)";
    }
    std::string name = "gripper_b" + std::to_string(spec.balls);
    std::ostringstream pddl;
    pddl << "(define (problem " << name << ")\n  (:domain gripper)\n"
         << "  (:objects\n" << objects.str() << "  )\n"
         << "  (:init\n" << init.str() << "  )\n"
         << "  (:goal (and" << goal.str() << "))\n)\n";
    return {name, kGripperDomain, pddl.str()};
}

GeneratedInstance gen_spanner(const GenSpec &spec) {
    if (spec.spanners < 1 || spec.nuts < 1 || spec.locations < 1)
        throw InvalidSpec("spanner needs spanners, nuts, and locations >= 1");
    if (spec.spanners < spec.nuts)
        throw InvalidSpec("spanner needs at least as many spanners as nuts");
    std::mt19937_64 rng(spec.seed);

    std::ostringstream objects, init, goal;
    objects << "    bob - man\n    shed - location\n    gate - location\n";
    for (int l = 1; l <= spec.locations; ++l)
        objects << "    location" << l << " - location\n";
    for (int s = 1; s <= spec.spanners; ++s)
        objects << "    spanner" << s << " - spanner\n";
    for (int n = 1; n <= spec.nuts; ++n) objects << "    nut" << n << " - nut\n";

    init << "    (at bob shed)\n";
    for (int s = 1; s <= spec.spanners; ++s) {
        init << "    (at spanner" << s << " location"
             << (draw(rng, spec.locations) + 1) << ")\n";
        init << "    (useable spanner" << s << ")\n";
    }
    for (int n = 1; n <= spec.nuts; ++n) {
        init << "    (at nut" << n << " gate)\n";
        init << "    (loose nut" << n << ")\n";
        goal << " (tightened nut" << n << ")";
    }
    init << "    (link shed location1)\n";
    for (int l = 1; l < spec.locations; ++l)
        init << "    (link location" << l << " location" << (l + 1) << ")\n";
    init << "    (link location" << spec.locations << " gate)\n";

    std::string name = "spanner_s" + std::to_string(spec.spanners) + "_n" +
                       std::to_string(spec.nuts) + "_l" +
                       std::to_string(spec.locations) + "_s" +
                       std::to_string(spec.seed);
    std::ostringstream pddl;
    pddl << "(define (problem " << name << ")\n  (:domain spanner)\n"
         << "  (:objects\n" << objects.str() << "  )\n"
         << "  (:init\n" << init.str() << "  )\n"
         << "  (:goal (and" << goal.str() << "))\n)\n";
    return {name, kSpannerDomain, pddl.str()};
}

GeneratedInstance gen_miconic(const GenSpec &spec) {
    if (spec.floors < 2 || spec.passengers < 1)
        throw InvalidSpec("miconic needs >= 2 floors and >= 1 passenger");
    std::mt19937_64 rng(spec.seed);

    std::ostringstream objects, init, goal;
    for (int f = 0; f < spec.floors; ++f) {
        objects << "    f" << f << " - object\n";
        init << "    (floor f" << f << ")\n";
    }
    for (int i = 0; i < spec.floors; ++i)
        for (int j = i + 1; j < spec.floors; ++j)
            init << "    (above f" << i << " f" << j << ")\n";
    init << "    (lift-at f0)\n";
    for (int p = 0; p < spec.passengers; ++p) {
        objects << "    p" << p << " - object\n";
        init << "    (passenger p" << p << ")\n";
        int origin = draw(rng, spec.floors);
        int destin = draw(rng, spec.floors - 1);
        if (destin >= origin) ++destin;  // distinct from origin
        init << "    (origin p" << p << " f" << origin << ")\n";
        init << "    (destin p" << p << " f" << destin << ")\n";
        goal << " (served p" << p << ")";
    }
    std::string name = "miconic_f" + std::to_string(spec.floors) + "_p" +
                       std::to_string(spec.passengers) + "_s" +
                       std::to_string(spec.seed);
    std::ostringstream pddl;
    pddl << "(define (problem " << name << ")\n  (:domain miconic)\n"
         << "  (:objects\n" << objects.str() << "  )\n"
         << "  (:init\n" << init.str() << "  )\n"
         << "  (:goal (and" << goal.str() << "))\n)\n";
    return {name, kMiconicDomain, pddl.str()};
}

GeneratedInstance gen_reward(const GenSpec &spec) {
    if (spec.grid_x < 1 || spec.grid_y < 1 || spec.rewards < 1)
        throw InvalidSpec("reward needs a grid and >= 1 reward");
    int rows = spec.grid_x, cols = spec.grid_y;
    if (spec.rewards >= rows * cols)
        throw InvalidSpec("more rewards than non-origin cells");
    std::mt19937_64 rng(spec.seed);

    // Rewards on distinct non-origin cells.
    std::vector<int> cells;
    for (int c = 1; c < rows * cols; ++c) cells.push_back(c);
    for (int i = 0; i < spec.rewards; ++i) {
        int j = i + draw(rng, static_cast<int>(cells.size()) - i);
        std::swap(cells[i], cells[j]);
    }

    std::ostringstream objects, init, goal;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            objects << "    " << cell_name(i, j) << " - cell\n";
            init << "    (unblocked " << cell_name(i, j) << ")\n";
        }
    init << "    (at " << cell_name(0, 0) << ")\n";
    for (int i = 0; i < spec.rewards; ++i) {
        std::string cell = cell_name(cells[i] / cols, cells[i] % cols);
        init << "    (reward " << cell << ")\n";
        goal << " (picked " << cell << ")";
    }
    emit_grid_adjacency(init, "adjacent", rows, cols);

    std::string name = "reward_" + std::to_string(rows) + "x" +
                       std::to_string(cols) + "_r" +
                       std::to_string(spec.rewards) + "_s" +
                       std::to_string(spec.seed);
    std::ostringstream pddl;
    pddl << "(define (problem " << name << ")\n  (:domain reward)\n"
         << "  (:objects\n" << objects.str() << "  )\n"
         << "  (:init\n" << init.str() << "  )\n"
         << "  (:goal (and" << goal.str() << "))\n)\n";
    return {name, kRewardDomain, pddl.str()};
}

GeneratedInstance gen_visitall(const GenSpec &spec) {
    if (spec.grid_x < 1 || spec.grid_y < 1)
        throw InvalidSpec("visitall needs a grid");
    if (spec.visit_fraction <= 0.0 || spec.visit_fraction > 1.0)
        throw InvalidSpec("visit fraction must be in (0, 1]");
    int rows = spec.grid_x, cols = spec.grid_y;
    std::mt19937_64 rng(spec.seed);

    int total = rows * cols;
    int to_visit = std::max(1, static_cast<int>(spec.visit_fraction * total));
    std::vector<int> cells;
    for (int c = 0; c < total; ++c) cells.push_back(c);
    for (int i = 0; i < to_visit; ++i) {
        int j = i + draw(rng, total - i);
        std::swap(cells[i], cells[j]);
    }

    std::ostringstream objects, init, goal;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            objects << "    " << cell_name(i, j) << " - cell\n";
    init << "    (at-robot " << cell_name(0, 0) << ")\n";
    init << "    (visited " << cell_name(0, 0) << ")\n";
    for (int i = 0; i < to_visit; ++i)
        goal << " (visited " << cell_name(cells[i] / cols, cells[i] % cols)
             << ")";
    emit_grid_adjacency(init, "connected", rows, cols);

    std::string name = "visitall_" + std::to_string(rows) + "x" +
                       std::to_string(cols) + "_s" + std::to_string(spec.seed);
    std::ostringstream pddl;
    pddl << "(define (problem " << name << ")\n  (:domain visitall)\n"
         << "  (:objects\n" << objects.str() << "  )\n"
         << "  (:init\n" << init.str() << "  )\n"
         << "  (:goal (and" << goal.str() << "))\n)\n";
    return {name, kVisitallDomain, pddl.str()};
}

// Random tower layout: a shuffled permutation split into `towers` stacks.
std::vector<std::vector<int>> tower_layout(std::mt19937_64 &rng, int blocks,
                                           int towers) {
    std::vector<int> order;
    for (int b = 1; b <= blocks; ++b) order.push_back(b);
    for (int i = 0; i < blocks - 1; ++i) {
        int j = i + draw(rng, blocks - i);
        std::swap(order[i], order[j]);
    }
    std::vector<std::vector<int>> result(towers);
    for (int i = 0; i < blocks; ++i)
        result[i < towers ? i : draw(rng, towers)].push_back(order[i]);
    return result;
}

GeneratedInstance gen_blocks(const GenSpec &spec) {
    if (spec.blocks < 1 || spec.towers < 1 || spec.towers > spec.blocks)
        throw InvalidSpec("blocks needs 1 <= towers <= blocks");
    std::mt19937_64 rng(spec.seed);

    std::ostringstream objects, init, goal;
    for (int b = 1; b <= spec.blocks; ++b) objects << "    b" << b << " - object\n";

    auto initial = tower_layout(rng, spec.blocks, 1 + draw(rng, spec.blocks));
    for (const auto &tower : initial) {
        if (tower.empty()) continue;
        init << "    (ontable b" << tower.front() << ")\n";
        for (size_t i = 1; i < tower.size(); ++i)
            init << "    (on b" << tower[i] << " b" << tower[i - 1] << ")\n";
        init << "    (clear b" << tower.back() << ")\n";
    }
    init << "    (handempty)\n";

    auto target = tower_layout(rng, spec.blocks, spec.towers);
    for (const auto &tower : target)
        for (size_t i = 1; i < tower.size(); ++i)
            goal << " (on b" << tower[i] << " b" << tower[i - 1] << ")";

    std::string name = "blocks_n" + std::to_string(spec.blocks) + "_t" +
                       std::to_string(spec.towers) + "_s" +
                       std::to_string(spec.seed);
    std::ostringstream pddl;
    pddl << "(define (problem " << name << ")\n  (:domain blocks)\n"
         << "  (:objects\n" << objects.str() << "  )\n"
         << "  (:init\n" << init.str() << "  )\n"
         << "  (:goal (and" << goal.str() << "))\n)\n";
    return {name, kBlocksDomain, pddl.str()};
}

GeneratedInstance gen_childsnack(const GenSpec &spec) {
    if (spec.children < 1 || spec.trays < 1)
        throw InvalidSpec("childsnack needs >= 1 child and >= 1 tray");
    if (spec.gluten_ratio < 0.0 || spec.gluten_ratio > 1.0)
        throw InvalidSpec("gluten ratio must be in [0, 1]");
    std::mt19937_64 rng(spec.seed);

    int n = spec.children;
    int allergic = static_cast<int>(spec.gluten_ratio * n + 0.5);
    std::vector<int> order;
    for (int c = 1; c <= n; ++c) order.push_back(c);
    for (int i = 0; i < allergic; ++i) {
        int j = i + draw(rng, n - i);
        std::swap(order[i], order[j]);
    }
    std::vector<bool> is_allergic(n + 1, false);
    for (int i = 0; i < allergic; ++i) is_allergic[order[i]] = true;

    std::ostringstream objects, init, goal;
    for (int c = 1; c <= n; ++c) {
        objects << "    child" << c << " - child\n";
        objects << "    bread" << c << " - bread-portion\n";
        objects << "    content" << c << " - content-portion\n";
        objects << "    sandw" << c << " - sandwich\n";
    }
    for (int t = 1; t <= spec.trays; ++t) objects << "    tray" << t << " - tray\n";
    objects << "    table1 - place\n    table2 - place\n    table3 - place\n";

    for (int c = 1; c <= n; ++c) {
        init << "    (at_kitchen_bread bread" << c << ")\n";
        init << "    (at_kitchen_content content" << c << ")\n";
        // All ingredients gluten-free: any sandwich can serve any child.
        init << "    (no_gluten_bread bread" << c << ")\n";
        init << "    (no_gluten_content content" << c << ")\n";
        init << "    (notexist sandw" << c << ")\n";
        init << "    (" << (is_allergic[c] ? "allergic_gluten" : "not_allergic_gluten")
             << " child" << c << ")\n";
        init << "    (waiting child" << c << " table" << (draw(rng, 3) + 1)
             << ")\n";
        goal << " (served child" << c << ")";
    }
    for (int t = 1; t <= spec.trays; ++t)
        init << "    (at tray" << t << " kitchen)\n";

    std::string name = "childsnack_c" + std::to_string(n) + "_t" +
                       std::to_string(spec.trays) + "_s" +
                       std::to_string(spec.seed);
    std::ostringstream pddl;
    pddl << "(define (problem " << name << ")\n  (:domain child-snack)\n"
         << "  (:objects\n" << objects.str() << "  )\n"
         << "  (:init\n" << init.str() << "  )\n"
         << "  (:goal (and" << goal.str() << "))\n)\n";
    return {name, kChildsnackDomain, pddl.str()};
}

}  // namespace

std::string domain_pddl(const std::string &domain) {
    if (domain == "delivery") return kDeliveryDomain;
    if (domain == "gripper") return kGripperDomain;
    if (domain == "spanner") return kSpannerDomain;
    if (domain == "miconic") return kMiconicDomain;
    if (domain == "reward") return kRewardDomain;
    if (domain == "visitall") return kVisitallDomain;
    if (domain == "blocks") return kBlocksDomain;
    if (domain == "childsnack") return kChildsnackDomain;
    throw InvalidSpec("unknown domain '" + domain + "'");
}

GeneratedInstance generate(const GenSpec &spec) {
    if (spec.domain == "delivery") return gen_delivery(spec);
    if (spec.domain == "gripper") return gen_gripper(spec);
    if (spec.domain == "spanner") return gen_spanner(spec);
    if (spec.domain == "miconic") return gen_miconic(spec);
    if (spec.domain == "reward") return gen_reward(spec);
    if (spec.domain == "visitall") return gen_visitall(spec);
    if (spec.domain == "blocks") return gen_blocks(spec);
    if (spec.domain == "childsnack") return gen_childsnack(spec);
    throw InvalidSpec("unknown domain '" + spec.domain + "'");
}

std::vector<GenSpec> suite(const std::string &manifest_json) {
    nlohmann::json j = nlohmann::json::parse(manifest_json);
    const nlohmann::json &entries =
        j.is_array() ? j : j.at("instances");
    std::vector<GenSpec> specs;
    for (const auto &e : entries) {
        GenSpec base;
        base.domain = e.at("domain").get<std::string>();
        base.seed = e.value("seed", 0ull);
        base.grid_x = e.value("grid_x", base.grid_x);
        base.grid_y = e.value("grid_y", base.grid_y);
        base.packages = e.value("packages", base.packages);
        base.agents = e.value("agents", base.agents);
        base.unique_destinations =
            e.value("unique_destinations", base.unique_destinations);
        base.balls = e.value("balls", base.balls);
        base.spanners = e.value("spanners", base.spanners);
        base.nuts = e.value("nuts", base.nuts);
        base.locations = e.value("locations", base.locations);
        base.floors = e.value("floors", base.floors);
        base.passengers = e.value("passengers", base.passengers);
        base.rewards = e.value("rewards", base.rewards);
        base.visit_fraction = e.value("visit_fraction", base.visit_fraction);
        base.blocks = e.value("blocks", base.blocks);
        base.towers = e.value("towers", base.towers);
        base.children = e.value("children", base.children);
        base.trays = e.value("trays", base.trays);
        base.gluten_ratio = e.value("gluten_ratio", base.gluten_ratio);
        uint64_t count = e.value("count", 1ull);
        for (uint64_t i = 0; i < count; ++i) {
            GenSpec spec = base;
            spec.seed = base.seed + i;
            specs.push_back(spec);
        }
    }
    return specs;
}

}  // namespace generators
}  // namespace sketchplan
