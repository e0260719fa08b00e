#ifndef SKETCHPLAN_TASK_H
#define SKETCHPLAN_TASK_H

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "sketchplan/state.hpp"

namespace sketchplan {

// A ground atom kept in structured form so feature evaluators can inspect
// predicate names and arguments without re-parsing strings.
struct GroundAtom {
    std::string pred;
    std::vector<std::string> args;

    bool operator==(const GroundAtom &o) const {
        return pred == o.pred && args == o.args;
    }
    bool operator<(const GroundAtom &o) const {
        if (pred != o.pred) return pred < o.pred;
        return args < o.args;
    }
    std::string str() const {
        std::string s = pred + "(";
        for (size_t i = 0; i < args.size(); ++i) {
            if (i) s += ", ";
            s += args[i];
        }
        s += ")";
        return s;
    }
};

struct GroundAction {
    std::string schema;
    std::vector<std::string> args;
    std::vector<AtomIndex> pre;  // dynamic preconditions only, sorted
    std::vector<AtomIndex> add;  // sorted
    std::vector<AtomIndex> del;  // sorted, disjoint from add

    std::string name() const {
        std::string s = schema + "(";
        for (size_t i = 0; i < args.size(); ++i) {
            if (i) s += ", ";
            s += args[i];
        }
        s += ")";
        return s;
    }
};

// The state model S(P): dynamic atoms with dense indices, ground actions in
// deterministic lexicographic order, initial state and goal atom set.
// Static atoms (predicates never added or deleted) are compiled out of the
// atom universe but kept around for feature evaluators.
struct GroundedTask {
    std::string domain_name;
    std::string instance_name;

    std::vector<GroundAtom> atoms;  // index -> atom
    std::unordered_map<std::string, AtomIndex> atom_ids;
    std::vector<GroundAction> actions;
    State init;
    std::vector<AtomIndex> goal;  // sorted

    std::vector<GroundAtom> static_init;  // static atoms true in init

    // Unsatisfied-goal extension bookkeeping: pairs (goal atom, marker atom),
    // empty when the task was not extended.
    std::vector<std::pair<AtomIndex, AtomIndex>> ug_pairs;

    size_t num_atoms() const { return atoms.size(); }

    AtomIndex atom_id(const GroundAtom &a) const {
        auto it = atom_ids.find(a.str());
        return it == atom_ids.end() ? static_cast<AtomIndex>(-1) : it->second;
    }

    bool has_static(const std::string &pred,
                    const std::vector<std::string> &args) const;

    // Stable content hash for manifests and policy files; memoized (the
    // task is immutable after grounding).
    uint64_t fingerprint() const;

private:
    mutable uint64_t fingerprint_cache_ = 0;
};

}  // namespace sketchplan

#endif
