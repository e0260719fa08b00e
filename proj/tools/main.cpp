// Command-line entry point: gen | solve | train | validate | bench |
// check-sketch. Exit codes: 0 success, 1 unsolved/invalid/violation,
// 2 usage error, 3 internal error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sketchplan/bench.hpp"
#include "sketchplan/errors.hpp"
#include "sketchplan/executor.hpp"
#include "sketchplan/generators.hpp"
#include "sketchplan/pddl.hpp"
#include "sketchplan/policy.hpp"
#include "sketchplan/sketch.hpp"
#include "sketchplan/statespace.hpp"
#include "sketchplan/width.hpp"

namespace fs = std::filesystem;
using namespace sketchplan;

namespace {

bool verbose() {
    const char *env = std::getenv("SKETCHPLAN_LOG");
    return env && *env && std::string(env) != "0";
}

void log_line(const std::string &msg) {
    if (verbose()) std::cerr << "[sketchplan] " << msg << "\n";
}

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &content) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write file " + path);
    out << content;
}

GroundedTask load_task(const std::string &domain_file,
                       const std::string &problem_file) {
    pddl::DomainModel dom = pddl::parse_domain(read_file(domain_file));
    pddl::InstanceModel inst =
        pddl::parse_problem(read_file(problem_file), dom);
    GroundedTask task = pddl::add_unsatisfied_goal_predicates(
        pddl::ground(dom, inst));
    log_line("grounded " + task.instance_name + ": " +
             std::to_string(task.num_atoms()) + " atoms, " +
             std::to_string(task.actions.size()) + " actions");
    return task;
}

// "sketch:R2" | "trained:PATH" | "uniform" -> policy for one task.
std::unique_ptr<policy::SubgoalPolicy> make_policy(const std::string &spec,
                                                   const GroundedTask &task) {
    if (spec == "uniform")
        return std::make_unique<policy::UniformSubgoalPolicy>();
    if (spec.rfind("sketch:", 0) == 0) {
        std::string name = spec.substr(7);
        if (name.size() > 5 && name.substr(name.size() - 5) == ".json")
            return policy::sketch_policy(
                sketch::load_ruleset_json(read_file(name)));
        return policy::sketch_policy(
            sketch::builtin_ruleset(name, task.domain_name));
    }
    if (spec.rfind("trained:", 0) == 0)
        return std::make_unique<policy::TabularSubgoalPolicy>(
            policy::load_policy(spec.substr(8)));
    throw Error("unknown policy spec '" + spec +
                "' (use uniform | sketch:NAME | trained:PATH)");
}

void write_manifest(const std::string &path, const nlohmann::json &j) {
    write_file(path, j.dump(2) + "\n");
    log_line("manifest written to " + path);
}

struct SolveFlags {
    std::string domain_file, problem_file, policy = "uniform";
    std::string selection = "greedy";
    std::string trace_out, json_out, manifest_out;
    int width = 1;
    bool cycle_prevention = false;
    uint64_t max_calls = 0;
    uint64_t seed = 0;
};

int cmd_solve(const SolveFlags &f) {
    GroundedTask task = load_task(f.domain_file, f.problem_file);
    auto pol = make_policy(f.policy, task);

    executor::ExecOptions opts;
    opts.k = f.width;
    opts.cycle_prevention = f.cycle_prevention;
    opts.max_calls = f.max_calls;
    opts.selection = f.selection == "stochastic"
                         ? executor::ExecOptions::Selection::Stochastic
                         : executor::ExecOptions::Selection::Greedy;
    opts.seed = f.seed;

    executor::Trace trace = executor::siw_pi(task, *pol, opts);
    std::string rendered = executor::emit_trace(trace, task);
    std::cout << rendered;
    if (!trace.solved)
        std::cout << "Unsolved: " << trace.failure_reason << "\n";
    if (!f.trace_out.empty()) write_file(f.trace_out, rendered);
    if (!f.json_out.empty())
        write_file(f.json_out, executor::trace_json(trace, task));

    if (!f.manifest_out.empty()) {
        nlohmann::json m;
        m["command"] = "solve";
        m["domain_file"] = f.domain_file;
        m["problem_file"] = f.problem_file;
        m["task_fingerprint"] = task.fingerprint();
        m["policy"] = f.policy;
        m["width"] = f.width;
        m["selection"] = f.selection;
        m["cycle_prevention"] = f.cycle_prevention;
        m["max_calls"] = f.max_calls;
        m["seed"] = f.seed;
        m["solved"] = trace.solved;
        m["subgoals"] = trace.subgoal_count();
        m["primitive"] = trace.primitive_length();
        write_manifest(f.manifest_out, m);
    }
    return trace.solved ? 0 : 1;
}

struct GenFlags {
    generators::GenSpec spec;
    std::string out_dir = ".";
    std::string manifest_out;
    uint64_t count = 1;
};

int cmd_gen(const GenFlags &f) {
    fs::create_directories(f.out_dir);
    nlohmann::json m;
    m["command"] = "gen";
    m["domain"] = f.spec.domain;
    m["seed"] = f.spec.seed;
    m["count"] = f.count;
    m["instances"] = nlohmann::json::array();

    write_file(f.out_dir + "/domain.pddl",
               generators::domain_pddl(f.spec.domain));
    for (uint64_t i = 0; i < f.count; ++i) {
        generators::GenSpec spec = f.spec;
        spec.seed = f.spec.seed + i;
        generators::GeneratedInstance inst = generators::generate(spec);
        std::string path = f.out_dir + "/" + inst.name + ".pddl";
        write_file(path, inst.problem_pddl);
        m["instances"].push_back({{"name", inst.name}, {"path", path}});
        log_line("wrote " + path);
    }
    write_manifest(f.manifest_out.empty() ? f.out_dir + "/gen_manifest.json"
                                          : f.manifest_out,
                   m);
    return 0;
}

struct TrainFlags {
    std::string instances_dir, out_path, manifest_out;
    int width = 1;
    double gamma = 0.999, alpha = 2e-4, beta = 2e-4;
    uint64_t iterations = 100000, seed = 0;
    double early_stop_ratio = 0.0;
};

int cmd_train(const TrainFlags &f) {
    std::string domain_file = f.instances_dir + "/domain.pddl";
    if (!fs::exists(domain_file))
        throw Error("training directory needs a domain.pddl");

    std::vector<GroundedTask> tasks;
    std::vector<std::string> problem_files;
    for (const auto &entry : fs::directory_iterator(f.instances_dir)) {
        if (entry.path().extension() != ".pddl" ||
            entry.path().filename() == "domain.pddl")
            continue;
        problem_files.push_back(entry.path().string());
    }
    std::sort(problem_files.begin(), problem_files.end());
    for (const auto &path : problem_files)
        tasks.push_back(load_task(domain_file, path));
    if (tasks.empty()) throw Error("no problem files in " + f.instances_dir);

    std::vector<const GroundedTask *> task_ptrs;
    for (const auto &t : tasks) task_ptrs.push_back(&t);

    policy::PolicyConfig cfg;
    cfg.gamma = f.gamma;
    cfg.alpha = f.alpha;
    cfg.beta = f.beta;
    cfg.iterations = f.iterations;
    cfg.seed = f.seed;
    cfg.k = f.width;

    policy::StopHook hook;
    uint64_t interval = 0;
    if (f.early_stop_ratio > 0.0) {
        interval = std::max<uint64_t>(1, f.iterations / 20);
        hook = [&](const policy::TabularPolicy &pol, uint64_t iter) {
            executor::ExecOptions opts;
            opts.k = f.width;
            policy::TabularSubgoalPolicy wrapped(pol);
            bench::ValidationScore score =
                bench::validation_score(task_ptrs, wrapped, opts);
            log_line("iteration " + std::to_string(iter) +
                     ": validation score " + std::to_string(score.ratio));
            return score.ratio > 0.0 && score.ratio <= f.early_stop_ratio;
        };
    }

    policy::TabularPolicy pol =
        policy::train_actor_critic(task_ptrs, cfg, hook, interval);
    policy::save_policy(pol, f.out_path);
    log_line("policy written to " + f.out_path);

    nlohmann::json m;
    m["command"] = "train";
    m["instances_dir"] = f.instances_dir;
    m["problem_files"] = problem_files;
    m["task_fingerprints"] = pol.task_fingerprints;
    m["width"] = f.width;
    m["gamma"] = f.gamma;
    m["alpha"] = f.alpha;
    m["beta"] = f.beta;
    m["iterations"] = f.iterations;
    m["seed"] = f.seed;
    m["early_stop_ratio"] = f.early_stop_ratio;
    m["prior"] = "uniform-alive";
    m["out"] = f.out_path;
    write_manifest(f.manifest_out.empty() ? f.out_path + ".manifest.json"
                                          : f.manifest_out,
                   m);
    return 0;
}

struct ValidateFlags {
    std::string plan_file, domain_file, problem_file;
};

int cmd_validate(const ValidateFlags &f) {
    GroundedTask task = load_task(f.domain_file, f.problem_file);
    statespace::Plan plan = statespace::parse_plan(task, read_file(f.plan_file));
    statespace::ValidationResult result =
        statespace::validate(task, task.init, plan);
    if (result.ok) {
        std::cout << "Plan valid: " << plan.size() << " actions\n";
        return 0;
    }
    if (result.failure_index == plan.size())
        std::cout << "Plan invalid: goal not satisfied after " << plan.size()
                  << " actions\n";
    else
        std::cout << "Plan invalid: action " << result.failure_index + 1
                  << " not applicable\n";
    return 1;
}

struct BenchFlags {
    std::string manifest_file, policy = "uniform", out_dir = "bench_out";
    std::string selection = "greedy";
    int width = 1;
    int jobs = 1;
    uint64_t seed = 0;
    bool cycle_prevention = false;
    bool no_optimal = false;
};

int cmd_bench(const BenchFlags &f) {
    std::vector<generators::GenSpec> specs =
        generators::suite(read_file(f.manifest_file));
    fs::create_directories(f.out_dir);

    bench::SuiteOptions opts;
    opts.exec.k = f.width;
    opts.exec.cycle_prevention = f.cycle_prevention;
    opts.exec.selection = f.selection == "stochastic"
                              ? executor::ExecOptions::Selection::Stochastic
                              : executor::ExecOptions::Selection::Greedy;
    opts.suite_seed = f.seed;
    opts.compute_optimal = !f.no_optimal;
    opts.jobs = f.jobs;

    bench::PolicySource source = [&f](const GroundedTask &task) {
        return make_policy(f.policy, task);
    };
    std::vector<bench::RunRecord> records = bench::run_suite(specs, source, opts);
    bench::Aggregate agg = bench::aggregate(records);

    write_file(f.out_dir + "/records.csv", bench::records_csv(records));
    write_file(f.out_dir + "/aggregate.csv", bench::aggregate_csv(agg));
    write_file(f.out_dir + "/subgoal_curve.csv",
               bench::subgoal_curve_csv(records));

    nlohmann::json m;
    m["command"] = "bench";
    m["manifest_file"] = f.manifest_file;
    m["policy"] = f.policy;
    m["width"] = f.width;
    m["selection"] = f.selection;
    m["cycle_prevention"] = f.cycle_prevention;
    m["seed"] = f.seed;
    m["jobs"] = f.jobs;
    m["compute_optimal"] = !f.no_optimal;
    m["instances"] = records.size();
    m["coverage"] = agg.coverage;
    write_manifest(f.out_dir + "/run_manifest.json", m);

    std::cout << "instances: " << agg.count << "  coverage: " << agg.coverage
              << "  mean SL: " << agg.mean_sl << "  mean L: " << agg.mean_l;
    if (agg.pq) std::cout << "  PQ: " << *agg.pq;
    std::cout << "\n";
    return agg.coverage == 1.0 ? 0 : 1;
}

struct CheckSketchFlags {
    std::string ruleset, domain_file, problem_file;
    uint64_t state_cap = 200000;
};

int cmd_check_sketch(const CheckSketchFlags &f) {
    GroundedTask task = load_task(f.domain_file, f.problem_file);
    sketch::Ruleset rs;
    if (f.ruleset.size() > 5 &&
        f.ruleset.substr(f.ruleset.size() - 5) == ".json")
        rs = sketch::load_ruleset_json(read_file(f.ruleset));
    else
        rs = sketch::builtin_ruleset(f.ruleset, task.domain_name);
    sketch::SafetyReport report =
        sketch::check_safe_acyclic(rs, task, f.state_cap);
    if (report.safe_acyclic) {
        std::cout << "Ruleset " << rs.name << " is safe and acyclic on "
                  << task.instance_name << "\n";
        return 0;
    }
    std::cout << "Violation: " << report.violation << "\n";
    for (const auto &s : report.witness) {
        std::cout << "  state:";
        for (AtomIndex a : s.atoms) std::cout << " " << task.atoms[a].str();
        std::cout << "\n";
    }
    return 1;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Width-based generalized planning toolkit"};
    app.require_subcommand(1);

    GenFlags gen;
    auto *gen_cmd = app.add_subcommand("gen", "Generate PDDL instances");
    gen_cmd->add_option("--domain", gen.spec.domain,
                        "delivery|gripper|spanner|miconic|reward|visitall|"
                        "blocks|childsnack")
        ->required();
    gen_cmd->add_option("--seed", gen.spec.seed);
    gen_cmd->add_option("--count", gen.count);
    gen_cmd->add_option("--grid-x", gen.spec.grid_x);
    gen_cmd->add_option("--grid-y", gen.spec.grid_y);
    gen_cmd->add_option("--packages", gen.spec.packages);
    gen_cmd->add_option("--agents", gen.spec.agents);
    gen_cmd->add_flag("--unique-destinations", gen.spec.unique_destinations);
    gen_cmd->add_option("--balls", gen.spec.balls);
    gen_cmd->add_option("--spanners", gen.spec.spanners);
    gen_cmd->add_option("--nuts", gen.spec.nuts);
    gen_cmd->add_option("--locations", gen.spec.locations);
    gen_cmd->add_option("--floors", gen.spec.floors);
    gen_cmd->add_option("--passengers", gen.spec.passengers);
    gen_cmd->add_option("--rewards", gen.spec.rewards);
    gen_cmd->add_option("--visit-fraction", gen.spec.visit_fraction);
    gen_cmd->add_option("--blocks", gen.spec.blocks);
    gen_cmd->add_option("--towers", gen.spec.towers);
    gen_cmd->add_option("--children", gen.spec.children);
    gen_cmd->add_option("--trays", gen.spec.trays);
    gen_cmd->add_option("--gluten-ratio", gen.spec.gluten_ratio);
    gen_cmd->add_option("--out-dir", gen.out_dir);
    gen_cmd->add_option("--manifest-out", gen.manifest_out);

    SolveFlags solve;
    auto *solve_cmd = app.add_subcommand("solve", "Run the subgoal executor");
    solve_cmd->add_option("--domain-file", solve.domain_file)->required();
    solve_cmd->add_option("--problem-file", solve.problem_file)->required();
    solve_cmd->add_option("--width", solve.width)
        ->check(CLI::Range(1, 2));
    solve_cmd->add_option("--policy", solve.policy,
                          "uniform | sketch:R1..R4 | sketch:FILE.json | "
                          "trained:PATH");
    solve_cmd->add_option("--selection", solve.selection)
        ->check(CLI::IsMember({"greedy", "stochastic"}));
    solve_cmd->add_flag("--cycle-prevention", solve.cycle_prevention);
    solve_cmd->add_option("--max-calls", solve.max_calls);
    solve_cmd->add_option("--seed", solve.seed);
    solve_cmd->add_option("--trace-out", solve.trace_out);
    solve_cmd->add_option("--json-out", solve.json_out);
    solve_cmd->add_option("--manifest-out", solve.manifest_out);

    TrainFlags train;
    auto *train_cmd = app.add_subcommand("train", "Train a tabular policy");
    train_cmd->add_option("--instances", train.instances_dir)->required();
    train_cmd->add_option("--width", train.width)->check(CLI::Range(1, 2));
    train_cmd->add_option("--gamma", train.gamma);
    train_cmd->add_option("--alpha", train.alpha);
    train_cmd->add_option("--beta", train.beta);
    train_cmd->add_option("--iterations", train.iterations);
    train_cmd->add_option("--seed", train.seed);
    train_cmd->add_option("--early-stop-ratio", train.early_stop_ratio);
    train_cmd->add_option("--out", train.out_path)->required();
    train_cmd->add_option("--manifest-out", train.manifest_out);

    ValidateFlags validate;
    auto *validate_cmd = app.add_subcommand("validate", "Check a plan file");
    validate_cmd->add_option("--plan", validate.plan_file)->required();
    validate_cmd->add_option("--domain-file", validate.domain_file)->required();
    validate_cmd->add_option("--problem-file", validate.problem_file)
        ->required();

    BenchFlags benchf;
    auto *bench_cmd = app.add_subcommand("bench", "Run a benchmark suite");
    bench_cmd->add_option("--manifest", benchf.manifest_file)->required();
    bench_cmd->add_option("--policy", benchf.policy);
    bench_cmd->add_option("--width", benchf.width)->check(CLI::Range(1, 2));
    bench_cmd->add_option("--selection", benchf.selection)
        ->check(CLI::IsMember({"greedy", "stochastic"}));
    bench_cmd->add_flag("--cycle-prevention", benchf.cycle_prevention);
    bench_cmd->add_option("--seed", benchf.seed);
    bench_cmd->add_option("--jobs", benchf.jobs);
    bench_cmd->add_flag("--no-optimal", benchf.no_optimal);
    bench_cmd->add_option("--out-dir", benchf.out_dir);

    CheckSketchFlags check;
    auto *check_cmd =
        app.add_subcommand("check-sketch", "Safety/acyclicity check");
    check_cmd->add_option("--ruleset", check.ruleset)->required();
    check_cmd->add_option("--domain-file", check.domain_file)->required();
    check_cmd->add_option("--problem-file", check.problem_file)->required();
    check_cmd->add_option("--state-cap", check.state_cap);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*gen_cmd) return cmd_gen(gen);
        if (*solve_cmd) return cmd_solve(solve);
        if (*train_cmd) return cmd_train(train);
        if (*validate_cmd) return cmd_validate(validate);
        if (*bench_cmd) return cmd_bench(benchf);
        if (*check_cmd) return cmd_check_sketch(check);
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
