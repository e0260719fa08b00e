#ifndef SKETCHPLAN_STATE_H
#define SKETCHPLAN_STATE_H

#include <algorithm>
#include <cstdint>
#include <vector>

namespace sketchplan {

using AtomIndex = uint32_t;

// A state is the canonical (sorted, duplicate-free) set of true atom indices.
struct State {
    std::vector<AtomIndex> atoms;

    State() = default;
    explicit State(std::vector<AtomIndex> a) : atoms(std::move(a)) {
        canonicalize();
    }

    void canonicalize() {
        std::sort(atoms.begin(), atoms.end());
        atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    }

    bool contains(AtomIndex i) const {
        return std::binary_search(atoms.begin(), atoms.end(), i);
    }

    size_t size() const { return atoms.size(); }

    bool operator==(const State &other) const { return atoms == other.atoms; }
    bool operator!=(const State &other) const { return atoms != other.atoms; }
    bool operator<(const State &other) const { return atoms < other.atoms; }
};

struct StateHash {
    size_t operator()(const State &s) const {
        // FNV-1a over the index sequence.
        uint64_t h = 14695981039346656037ull;
        for (AtomIndex a : s.atoms) {
            h ^= a;
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

}  // namespace sketchplan

#endif
