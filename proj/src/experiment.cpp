#include "coopflow/experiment.hpp"

#include "coopflow/bounds.hpp"
#include "textio.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

namespace coopflow {

void validate(const ExperimentConfig& config) {
    if (config.seeds.empty()) throw std::invalid_argument("experiment needs at least one seed");
    if (config.etas.empty()) throw std::invalid_argument("experiment needs at least one eta");
    if (config.r < 1) throw std::invalid_argument("r must be at least 1");
    if (config.n < 2 * config.r)
        throw std::invalid_argument("n must allow 2r distinct flow endpoints");
    if (config.tMin < config.r) throw std::invalid_argument("min(T) must be at least r");
    if (config.tMax < config.tMin) throw std::invalid_argument("empty T range");
    if (!(config.side > 0.0)) throw std::invalid_argument("side must be positive");
    for (double eta : config.etas)
        if (!(eta >= 0.0)) throw std::invalid_argument("eta must be nonnegative");
    if (!(config.noise > 0.0) || !(config.theta > 0.0))
        throw std::invalid_argument("noise and theta must be positive");
}

NetworkInstance experimentInstance(const ExperimentConfig& config, std::uint64_t seed, double eta,
                                   int T) {
    GeneratorConfig g;
    g.n = config.n;
    g.side = config.side;
    g.eta = eta;
    g.seed = seed;
    return makeInstance(generate(g), config.noise, config.theta, drawFlows(config.n, config.r, seed), T);
}

ExperimentRow runPoint(const ExperimentConfig& config, std::uint64_t seed, double eta, int T) {
    const auto start = std::chrono::steady_clock::now();
    ExperimentRow row;
    row.seed = seed;
    row.n = config.n;
    row.r = config.r;
    row.eta = eta;
    row.T = T;
    try {
        const NetworkInstance inst = experimentInstance(config, seed, eta, T);
        row.lb = lowerBound(inst).value / inst.theta;
        row.ub = upperBound(inst).value / inst.theta;
        if (row.lb == kInfinity) {
            row.status = "unreachable";
        } else {
            const HeuristicResult h = runHeuristic(inst, config.heuristic);
            if (h.ok()) {
                row.heuristic = h.totalCost / inst.theta;
                for (double c : h.perFlowCosts) row.perFlow.push_back(c / inst.theta);
                row.status = "ok";
            } else {
                row.status = "unschedulable";
            }
        }
    } catch (const std::exception& e) {
        row.status = std::string("error: ") + e.what();
    }
    row.runtimeMs =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return row;
}

std::vector<ExperimentRow> runSweep(const ExperimentConfig& config) {
    validate(config);
    std::vector<std::uint64_t> seeds = config.seeds;
    std::vector<double> etas = config.etas;
    std::sort(seeds.begin(), seeds.end());
    std::sort(etas.begin(), etas.end());

    std::vector<ExperimentRow> rows;
    for (std::uint64_t seed : seeds)
        for (double eta : etas)
            for (int T = config.tMin; T <= config.tMax; ++T) rows.push_back(runPoint(config, seed, eta, T));

    for (const ExperimentRow& row : rows) {
        if (row.status != "ok") continue;
        if (row.lb > row.heuristic * (1.0 + 1e-9)) {
            std::ostringstream msg;
            msg << "post-check failed: lb " << formatReal(row.lb) << " exceeds heuristic "
                << formatReal(row.heuristic) << " at seed " << row.seed << " eta " << row.eta
                << " T " << row.T;
            throw std::logic_error(msg.str());
        }
    }
    return rows;
}

namespace {

std::string csvField(std::string s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

std::string csvReal(double v) { return v == kInfinity ? "inf" : formatReal(v); }

}  // namespace

void writeCsv(std::ostream& out, const std::vector<ExperimentRow>& rows, bool timing) {
    out << kExperimentHeader << '\n';
    for (const ExperimentRow& row : rows) {
        std::string perFlow;
        for (std::size_t k = 0; k < row.perFlow.size(); ++k)
            perFlow += (k ? ";" : "") + csvReal(row.perFlow[k]);
        char ms[32];
        std::snprintf(ms, sizeof ms, "%.3f", row.runtimeMs);
        out << row.seed << ',' << row.n << ',' << row.r << ',' << formatReal(row.eta) << ','
            << row.T << ',' << csvReal(row.lb) << ',' << csvReal(row.ub) << ','
            << csvReal(row.heuristic) << ',' << perFlow << ',' << (timing ? ms : "") << ','
            << csvField(row.status) << '\n';
    }
}

std::vector<ExperimentRow> runExperiment(const ExperimentConfig& config) {
    validate(config);
    std::ofstream out(config.output);
    if (!out) throw std::runtime_error("cannot write " + config.output.string());
    const std::vector<ExperimentRow> rows = runSweep(config);
    std::ostringstream csv;
    writeCsv(csv, rows, config.timing);
    out << csv.str();
    if (!out.flush()) throw std::runtime_error("failed writing " + config.output.string());
    return rows;
}

}  // namespace coopflow
