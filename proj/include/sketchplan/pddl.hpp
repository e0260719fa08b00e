#ifndef SKETCHPLAN_PDDL_H
#define SKETCHPLAN_PDDL_H

#include <cstdint>
#include <string>
#include <vector>

#include "sketchplan/task.hpp"

namespace sketchplan {
namespace pddl {

struct TypedName {
    std::string name;
    std::string type = "object";
    bool operator==(const TypedName &o) const {
        return name == o.name && type == o.type;
    }
};

struct Predicate {
    std::string name;
    std::vector<std::string> param_types;
    bool operator==(const Predicate &o) const {
        return name == o.name && param_types == o.param_types;
    }
};

// A positive literal whose arguments are variables (?x) or constants.
struct Literal {
    std::string pred;
    std::vector<std::string> args;
    bool operator==(const Literal &o) const {
        return pred == o.pred && args == o.args;
    }
};

struct ActionSchema {
    std::string name;
    std::vector<TypedName> params;
    std::vector<Literal> pre;
    std::vector<Literal> add;
    std::vector<Literal> del;
    bool operator==(const ActionSchema &o) const {
        return name == o.name && params == o.params && pre == o.pre &&
               add == o.add && del == o.del;
    }
};

struct DomainModel {
    std::string name;
    // type -> parent type; "object" is the implicit root.
    std::vector<std::pair<std::string, std::string>> types;
    std::vector<TypedName> constants;
    std::vector<Predicate> predicates;
    std::vector<ActionSchema> schemas;

    bool operator==(const DomainModel &o) const {
        return name == o.name && types == o.types && constants == o.constants &&
               predicates == o.predicates && schemas == o.schemas;
    }

    bool is_subtype(const std::string &t, const std::string &required) const;
    const Predicate *find_predicate(const std::string &name) const;
};

struct InstanceModel {
    std::string name;
    std::string domain_name;
    std::vector<TypedName> objects;
    std::vector<GroundAtom> init;
    std::vector<GroundAtom> goal;

    bool operator==(const InstanceModel &o) const {
        return name == o.name && domain_name == o.domain_name &&
               objects == o.objects && init == o.init && goal == o.goal;
    }
};

DomainModel parse_domain(const std::string &text);
InstanceModel parse_problem(const std::string &text, const DomainModel &dom);

std::string emit_domain(const DomainModel &dom);
std::string emit_problem(const InstanceModel &inst);

constexpr uint64_t kDefaultGroundActionCap = 10'000'000;

GroundedTask ground(const DomainModel &dom, const InstanceModel &inst,
                    uint64_t action_cap = kDefaultGroundActionCap);

// Unsatisfied-goal markers: one derived atom per goal atom p, true iff p is
// false; maintained by rewriting ground action effects.
GroundedTask add_unsatisfied_goal_predicates(const GroundedTask &task);

std::string task_json_dump(const GroundedTask &task);

}  // namespace pddl
}  // namespace sketchplan

#endif
