#include "coopflow/experiment.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace coopflow;

namespace {

ExperimentConfig small() {
    ExperimentConfig c;
    c.seeds = {3, 1};
    c.n = 20;
    c.r = 2;
    c.tMin = 2;
    c.tMax = 3;
    c.etas = {3.0, 2.0};
    c.timing = false;
    return c;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("config validation") {
    ExperimentConfig c = small();
    c.tMin = 1;
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
    c = small();
    c.seeds.clear();
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
    c = small();
    c.etas.clear();
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
}

TEST_CASE("single point sweep has one row") {
    ExperimentConfig c = small();
    c.seeds = {5};
    c.etas = {2.0};
    c.tMax = c.tMin;
    const auto rows = runSweep(c);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].T == 2);
}

TEST_CASE("rows are sorted and checked") {
    const auto rows = runSweep(small());
    REQUIRE(rows.size() == 8);
    CHECK(rows.front().seed == 1);
    CHECK(rows.front().eta == 2.0);
    CHECK(rows.back().seed == 3);
    CHECK(rows.back().eta == 3.0);
    for (const auto& row : rows) {
        if (row.status != "ok") continue;
        CHECK(row.lb <= row.heuristic);
        CHECK(row.perFlow.size() == 2);
    }
}

TEST_CASE("topologies are shared across eta") {
    const auto a = experimentInstance(small(), 4, 2.0, 3);
    const auto b = experimentInstance(small(), 4, 3.0, 3);
    CHECK(a.positions == b.positions);
    CHECK(a.flows == b.flows);
}

TEST_CASE("csv output is deterministic without timing") {
    const auto dir = std::filesystem::temp_directory_path() / "coopflow_experiment_test";
    std::filesystem::create_directories(dir);
    ExperimentConfig c = small();
    c.output = dir / "a.csv";
    runExperiment(c);
    c.output = dir / "b.csv";
    runExperiment(c);
    const std::string a = slurp(dir / "a.csv");
    CHECK(a == slurp(dir / "b.csv"));
    CHECK(a.rfind(std::string(kExperimentHeader) + "\n", 0) == 0);
    std::filesystem::remove_all(dir);
}

TEST_CASE("unwritable output fails before solving") {
    ExperimentConfig c = small();
    c.output = "/nonexistent-dir/x.csv";
    CHECK_THROWS_AS(runExperiment(c), std::runtime_error);
}
