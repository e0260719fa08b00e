#ifndef SKETCHPLAN_GENERATORS_H
#define SKETCHPLAN_GENERATORS_H

#include <cstdint>
#include <string>
#include <vector>

namespace sketchplan {
namespace generators {

struct GenSpec {
    std::string domain;  // delivery gripper spanner miconic reward visitall blocks childsnack
    uint64_t seed = 0;

    int grid_x = 1, grid_y = 1;
    int packages = 0;
    int agents = 1;
    bool unique_destinations = false;
    int balls = 0;
    int spanners = 0, nuts = 0, locations = 0;
    int floors = 0, passengers = 0;
    int rewards = 0;
    double visit_fraction = 1.0;
    int blocks = 0, towers = 1;
    int children = 0, trays = 1;
    double gluten_ratio = 0.0;  // fraction of allergic children
};

struct GeneratedInstance {
    std::string name;
    std::string domain_pddl;
    std::string problem_pddl;
};

GeneratedInstance generate(const GenSpec &spec);

// Fixed domain texts (one per domain tag).
std::string domain_pddl(const std::string &domain);

// JSON manifest of parameter grids -> concrete specs.
std::vector<GenSpec> suite(const std::string &manifest_json);

}  // namespace generators
}  // namespace sketchplan

#endif
