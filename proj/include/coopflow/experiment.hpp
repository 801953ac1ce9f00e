#pragma once

#include "coopflow/mcuh.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace coopflow {

struct ExperimentConfig {
    std::vector<std::uint64_t> seeds{1};
    int n = 100;
    double side = 20.0;
    std::vector<double> etas{2.0};
    int r = 3;
    int tMin = 3;
    int tMax = 8;
    double noise = 1.0;
    double theta = 1.0;
    HeuristicConfig heuristic;
    std::filesystem::path output = "experiment.csv";
    /// When false the runtime column is left empty so reruns are byte-identical.
    bool timing = true;
};

/// Throws std::invalid_argument naming the first broken invariant.
void validate(const ExperimentConfig& config);

struct ExperimentRow {
    std::uint64_t seed = 0;
    int n = 0;
    int r = 0;
    double eta = 0.0;
    int T = 0;
    /// All costs are divided by theta.
    double lb = kInfinity;
    double ub = kInfinity;
    double heuristic = kInfinity;
    std::vector<double> perFlow;
    double runtimeMs = 0.0;
    std::string status;
};

inline constexpr const char* kExperimentHeader =
    "seed,n,r,eta,T,lb,ub,heuristic,per_flow,runtime_ms,status";

/// The instance of one sweep point: topology from (seed, eta), flows from seed.
NetworkInstance experimentInstance(const ExperimentConfig& config, std::uint64_t seed, double eta,
                                   int T);

ExperimentRow runPoint(const ExperimentConfig& config, std::uint64_t seed, double eta, int T);

/// One row per (seed, eta, T), sorted in that order. Rows with status "ok"
/// are checked for lb <= heuristic before anything is written.
std::vector<ExperimentRow> runSweep(const ExperimentConfig& config);

void writeCsv(std::ostream& out, const std::vector<ExperimentRow>& rows, bool timing = true);

/// Validates, checks the output is writable, runs the sweep and writes the CSV.
std::vector<ExperimentRow> runExperiment(const ExperimentConfig& config);

}  // namespace coopflow
