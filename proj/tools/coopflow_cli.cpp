#include "coopflow/bounds.hpp"
#include "coopflow/experiment.hpp"
#include "coopflow/mcuh.hpp"
#include "coopflow/mosp.hpp"
#include "coopflow/oracle.hpp"
#include "coopflow/singleflow.hpp"
#include "coopflow/validator.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>

using namespace coopflow;

namespace {

constexpr int kOk = 0;
constexpr int kDomainFailure = 1;
constexpr int kUsage = 2;

// Thrown for bad input files or arguments discovered after parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

NetworkInstance load(const std::string& path) {
    try {
        return loadInstance(path);
    } catch (const std::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
}

void save(const Schedule& s, const std::string& path) {
    if (!path.empty()) saveSchedule(s, path);
}

struct GenArgs {
    GeneratorConfig gen;
    bool asymmetric = false;
    bool noClamp = false;
    int r = 1;
    int delay = 1;
    double noise = 1.0;
    double theta = 1.0;
    std::string output;
};

int runGen(const GenArgs& a) {
    GeneratorConfig g = a.gen;
    g.reciprocal = !a.asymmetric;
    g.clampGain = !a.noClamp;
    if (a.r < 1 || 2 * a.r > g.n) throw UsageError("need 1 <= r and 2r <= n");
    const NetworkInstance inst =
        makeInstance(generate(g), a.noise, a.theta, drawFlows(g.n, a.r, g.seed), a.delay);
    if (a.output.empty()) writeInstance(std::cout, inst);
    else saveInstance(inst, a.output);
    return kOk;
}

struct SingleArgs {
    std::string instance;
    int flow = 0;
    int delay = 0;
    std::string schedule;
};

int runSingle(const SingleArgs& a) {
    const NetworkInstance inst = load(a.instance);
    if (a.flow < 0 || a.flow >= inst.flowCount()) throw UsageError("no flow " + std::to_string(a.flow));
    const int T = a.delay > 0 ? a.delay : inst.delay;
    const SingleFlowResult res = solveSingle(inst, a.flow, T);
    if (!res.reachable()) {
        std::cout << "unreachable within " << T << " slots\n";
        return kDomainFailure;
    }
    std::cout << "cost " << real(res.cost) << '\n';
    std::cout << "path";
    const auto nodes = res.path->nodes(inst.flows[static_cast<std::size_t>(a.flow)].source);
    for (std::size_t i = 0; i < nodes.size(); ++i) std::cout << (i ? " -> " : " ") << nodes[i];
    std::cout << '\n';
    save(res.path->toSchedule(a.flow, T), a.schedule);
    return kOk;
}

struct BoundsArgs {
    std::string instance;
    std::string schedule;
};

int runBounds(const BoundsArgs& a) {
    const NetworkInstance inst = load(a.instance);
    const LowerBoundResult lb = lowerBound(inst);
    std::cout << "lb " << real(lb.value) << '\n' << lb.diagnostics;
    UpperBoundResult ub;
    try {
        ub = upperBound(inst);
    } catch (const InsufficientSlots& e) {
        std::cerr << e.what() << '\n';
        return kDomainFailure;
    }
    std::cout << "ub " << real(ub.value) << '\n';
    if (ub.value == kInfinity) return kDomainFailure;
    std::cout << "composition";
    for (int tau : ub.composition.parts) std::cout << ' ' << tau;
    std::cout << '\n';
    save(ub.schedule, a.schedule);
    return lb.value == kInfinity ? kDomainFailure : kOk;
}

struct HeuristicArgs {
    std::string instance;
    std::string schedule;
    double gamma = kDefaultGamma;
    RelayOrderingMode ordering = RelayOrderingMode::Path;
    std::vector<int> slotLadder;
    std::vector<double> thetaLadder;
    DisturbanceMode disturbance = DisturbanceMode::TrueTheta;
    bool noSweep = false;
    bool trace = false;
};

HeuristicConfig heuristicConfig(const HeuristicArgs& a) {
    HeuristicConfig c;
    c.gamma = a.gamma;
    c.ordering = a.ordering;
    c.slotLadder = a.slotLadder;
    c.thetaLadder = a.thetaLadder;
    c.disturbance = a.disturbance;
    c.horizonSweep = !a.noSweep;
    return c;
}

int runHeuristicCmd(const HeuristicArgs& a) {
    const NetworkInstance inst = load(a.instance);
    HeuristicResult res;
    try {
        res = runHeuristic(inst, heuristicConfig(a));
    } catch (const HeuristicConfigError& e) {
        std::cerr << e.what() << '\n';
        return kDomainFailure;
    }
    if (a.trace) std::cerr << res.diagnostics;
    if (!res.ok()) {
        std::cerr << res.diagnostics;
        std::cout << "unschedulable\n";
        return kDomainFailure;
    }
    std::cout << "total " << real(res.totalCost / inst.theta) << '\n';
    for (int k = 0; k < inst.flowCount(); ++k)
        std::cout << "flow " << k << ' ' << real(res.perFlowCosts[static_cast<std::size_t>(k)] / inst.theta)
                  << '\n';
    save(res.schedule, a.schedule);
    return kOk;
}

struct OracleArgs {
    std::string instance;
    double guard = kDefaultOracleGuard;
    int maxTx = 0;
    std::string dump;
};

int runOracle(const OracleArgs& a) {
    const NetworkInstance inst = load(a.instance);
    OracleOptions opt;
    opt.guard = a.guard;
    opt.maxTransmittersPerFlow = a.maxTx;
    OracleResult res;
    try {
        res = exactMcue(inst, opt);
    } catch (const OracleGuardExceeded& e) {
        std::cerr << e.what() << '\n';
        return kDomainFailure;
    }
    if (!res.feasible()) {
        std::cout << "no feasible schedule\n";
        return kDomainFailure;
    }
    std::cout << "optimum " << real(res.cost) << '\n';
    save(res.schedule, a.dump);
    return kOk;
}

struct ReduceArgs {
    std::string graph;
    bool dimacs = false;
    double theta = 2.0;
};

int runReduce(const ReduceArgs& a) {
    SimpleGraph g;
    try {
        g = loadGraph(a.graph, a.dimacs ? GraphFormat::Dimacs : GraphFormat::EdgeList);
    } catch (const std::exception& e) {
        throw UsageError(a.graph + ": " + e.what());
    }
    MospInstance m;
    try {
        m = reduceColoring(g, a.theta);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const MospSchedule greedy = greedyMosp(m);
    try {
        const MospSchedule exact = exactMospSchedule(m);
        std::cout << "chi " << chromaticNumber(g) << '\n';
        std::cout << "greedy_slots " << greedy.length() << '\n';
        std::cout << "exact_slots " << exact.length() << '\n';
        for (int t = 0; t < exact.length(); ++t) {
            std::cout << "slot " << t + 1 << ':';
            for (int p : exact.slots[static_cast<std::size_t>(t)]) std::cout << ' ' << p;
            std::cout << '\n';
        }
    } catch (const GuardExceeded& e) {
        std::cout << "greedy_slots " << greedy.length() << '\n';
        std::cerr << e.what() << '\n';
        return kDomainFailure;
    }
    return kOk;
}

struct VerifyArgs {
    std::string instance;
    std::string schedule;
    double tolerance = kDefaultDecodeTolerance;
};

int runVerify(const VerifyArgs& a) {
    const NetworkInstance inst = load(a.instance);
    Schedule s;
    try {
        s = loadSchedule(a.schedule);
    } catch (const std::exception& e) {
        throw UsageError(a.schedule + ": " + e.what());
    }
    ValidationReport report;
    try {
        report = validateSchedule(inst, s, a.tolerance);
    } catch (const ScheduleShapeError& e) {
        std::cout << e.what() << '\n';
        return kDomainFailure;
    }
    for (const Violation& v : report.violations) std::cout << describe(v) << '\n';
    if (!report.ok()) return kDomainFailure;
    std::cout << "ok, total power " << real(totalPower(s)) << '\n';
    return kOk;
}

int runExperimentCmd(ExperimentConfig config, const HeuristicArgs& h) {
    config.heuristic = heuristicConfig(h);
    try {
        validate(config);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const auto rows = runExperiment(config);
    int ok = 0;
    for (const auto& row : rows) ok += row.status == "ok";
    std::cout << rows.size() << " rows, " << ok << " ok -> " << config.output.string() << '\n';
    return kOk;
}

void addHeuristicFlags(CLI::App* cmd, HeuristicArgs& h) {
    const std::map<std::string, RelayOrderingMode> orderings{{"path", RelayOrderingMode::Path},
                                                            {"dijkstra", RelayOrderingMode::Dijkstra}};
    const std::map<std::string, DisturbanceMode> disturbances{
        {"true", DisturbanceMode::TrueTheta},
        {"scheduling", DisturbanceMode::SchedulingTheta},
        {"eq9", DisturbanceMode::SchedulingTheta}};  // older name, still accepted
    cmd->add_option("--gamma", h.gamma, "threshold ladder ratio");
    cmd->add_option("--ordering", h.ordering, "relay ordering: path or dijkstra")
        ->transform(CLI::CheckedTransformer(orderings, CLI::ignore_case));
    cmd->add_option("--slot-ladder", h.slotLadder, "per-position horizons T_1 < ... < T_r = T")
        ->delimiter(',');
    cmd->add_option("--theta-ladder", h.thetaLadder, "per-position thresholds, ending at theta")
        ->delimiter(',');
    cmd->add_option("--disturbance-theta", h.disturbance,
                    "threshold protecting earlier flows: true or scheduling")
        ->transform(CLI::CheckedTransformer(disturbances, CLI::ignore_case));
    cmd->add_flag("--no-horizon-sweep", h.noSweep, "only run the ladders built for the full T");
}

// CLI11 only reads the config option of the top-level app, so --config lives
// there and every flat key in the file is routed to the experiment subcommand.
class ExperimentConfigFile : public CLI::ConfigTOML {
public:
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        std::vector<CLI::ConfigItem> items;
        for (CLI::ConfigItem& item : CLI::ConfigTOML::from_config(input)) {
            if (item.name == "++" || item.name == "--") continue;
            item.parents.insert(item.parents.begin(), "experiment");
            items.push_back(std::move(item));
        }
        return items;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Minimum-energy delay-constrained multiflow scheduling"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* genCmd = app.add_subcommand("gen", "generate a random instance");
    genCmd->add_option("--n", gen.gen.n, "node count");
    genCmd->add_option("--side", gen.gen.side, "square side length");
    genCmd->add_option("--eta", gen.gen.eta, "path-loss exponent");
    genCmd->add_option("--seed", gen.gen.seed, "random seed");
    genCmd->add_flag("--asymmetric", gen.asymmetric, "independent gain per direction");
    genCmd->add_flag("--no-clamp", gen.noClamp, "allow gains above 1");
    genCmd->add_option("--r", gen.r, "number of flows");
    genCmd->add_option("--delay", gen.delay, "delay constraint T");
    genCmd->add_option("--noise", gen.noise, "noise power");
    genCmd->add_option("--theta", gen.theta, "SINR threshold");
    genCmd->add_option("-o,--output", gen.output, "instance file (default stdout)");

    SingleArgs single;
    auto* singleCmd = app.add_subcommand("single", "optimal single-flow route");
    singleCmd->add_option("instance", single.instance)->required();
    singleCmd->add_option("--flow", single.flow, "flow index");
    singleCmd->add_option("--delay", single.delay, "horizon (default: instance delay)");
    singleCmd->add_option("-o,--schedule", single.schedule, "schedule output file");

    BoundsArgs bounds;
    auto* boundsCmd = app.add_subcommand("bounds", "lower and multiplexing upper bound");
    boundsCmd->add_option("instance", bounds.instance)->required();
    boundsCmd->add_option("-o,--schedule", bounds.schedule, "multiplexed schedule output file");

    HeuristicArgs heur;
    auto* heurCmd = app.add_subcommand("heuristic", "multiflow heuristic");
    heurCmd->add_option("instance", heur.instance)->required();
    heurCmd->add_option("-o,--schedule", heur.schedule, "schedule output file");
    heurCmd->add_flag("--trace", heur.trace, "print per-flow diagnostics to stderr");
    addHeuristicFlags(heurCmd, heur);

    OracleArgs oracle;
    auto* oracleCmd = app.add_subcommand("oracle", "exact solver for tiny instances");
    oracleCmd->add_option("instance", oracle.instance)->required();
    oracleCmd->add_option("--guard", oracle.guard, "largest accepted search estimate");
    oracleCmd->add_option("--max-tx", oracle.maxTx, "transmitters per flow and slot (0: any)");
    oracleCmd->add_option("--dump-argmin", oracle.dump, "write the optimal schedule here");

    ReduceArgs reduce;
    auto* reduceCmd = app.add_subcommand("reduce", "coloring to one-hop scheduling");
    reduceCmd->add_option("graph", reduce.graph)->required();
    reduceCmd->add_flag("--dimacs", reduce.dimacs, "graph file is DIMACS (p edge / e, 1-based)");
    reduceCmd->add_option("--theta", reduce.theta, "threshold, must exceed 1");

    VerifyArgs verify;
    auto* verifyCmd = app.add_subcommand("verify", "audit a schedule");
    verifyCmd->add_option("instance", verify.instance)->required();
    verifyCmd->add_option("schedule", verify.schedule)->required();
    verifyCmd->add_option("--tolerance", verify.tolerance, "decode margin tolerance");

    ExperimentConfig exp;
    HeuristicArgs expHeur;
    std::string expOutput = exp.output.string();
    bool noTiming = false;
    auto* expCmd = app.add_subcommand("experiment", "seeded sweep to CSV");
    // `experiment --config FILE` falls through to the top-level option.
    expCmd->fallthrough();
    app.set_config("--config", "", "experiment config file, flat keys named like the flags");
    app.config_formatter(std::make_shared<ExperimentConfigFile>());
    expCmd->add_option("--seeds", exp.seeds, "seeds")->delimiter(',');
    expCmd->add_option("--n", exp.n, "node count");
    expCmd->add_option("--side", exp.side, "square side length");
    expCmd->add_option("--etas", exp.etas, "path-loss exponents")->delimiter(',');
    expCmd->add_option("--r", exp.r, "number of flows");
    expCmd->add_option("--t-min", exp.tMin, "smallest T");
    expCmd->add_option("--t-max", exp.tMax, "largest T");
    expCmd->add_option("--noise", exp.noise, "noise power");
    expCmd->add_option("--theta", exp.theta, "SINR threshold");
    expCmd->add_option("-o,--output", expOutput, "CSV file");
    expCmd->add_flag("--no-timing", noTiming, "leave runtime_ms empty");
    addHeuristicFlags(expCmd, expHeur);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*genCmd) return runGen(gen);
        if (*singleCmd) return runSingle(single);
        if (*boundsCmd) return runBounds(bounds);
        if (*heurCmd) return runHeuristicCmd(heur);
        if (*oracleCmd) return runOracle(oracle);
        if (*reduceCmd) return runReduce(reduce);
        if (*verifyCmd) return runVerify(verify);
        if (*expCmd) {
            exp.output = expOutput;
            exp.timing = !noTiming;
            return runExperimentCmd(exp, expHeur);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kDomainFailure;
    }
    return kUsage;
}
