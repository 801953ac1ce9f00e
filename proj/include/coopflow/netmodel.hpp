#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace coopflow {

using NodeId = int;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Thrown when an instance violates one of its structural invariants.
class InstanceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown by the text readers; the message names the offending line.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Dense n x n channel gains, row i holding the gains from node i.
class ChannelMatrix {
public:
    ChannelMatrix() = default;
    explicit ChannelMatrix(int n) : n_(n), gains_(static_cast<std::size_t>(n) * n, 0.0) {}

    int size() const { return n_; }
    double operator()(NodeId from, NodeId to) const { return gains_[index(from, to)]; }
    double& operator()(NodeId from, NodeId to) { return gains_[index(from, to)]; }

    bool operator==(const ChannelMatrix&) const = default;

private:
    std::size_t index(NodeId from, NodeId to) const {
        return static_cast<std::size_t>(from) * n_ + to;
    }

    int n_ = 0;
    std::vector<double> gains_;
};

struct FlowSpec {
    NodeId source = 0;
    NodeId destination = 0;

    bool operator==(const FlowSpec&) const = default;
};

struct Position {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Position&) const = default;
};

struct NetworkInstance {
    ChannelMatrix channel;
    double noise = 1.0;
    double theta = 1.0;
    std::vector<FlowSpec> flows;
    int delay = 1;
    /// Informational only; empty when the instance was not generated.
    std::vector<Position> positions;

    int nodeCount() const { return channel.size(); }
    int flowCount() const { return static_cast<int>(flows.size()); }

    bool operator==(const NetworkInstance&) const = default;
};

/// Throws InstanceError naming the first violated invariant.
void validate(const NetworkInstance& instance);

struct GeneratorConfig {
    int n = 100;
    double side = 20.0;
    double eta = 2.0;
    std::uint64_t seed = 1;
    bool reciprocal = true;
    bool clampGain = true;
};

/// A generated deployment: positions plus the drawn channel.
struct Topology {
    std::vector<Position> positions;
    ChannelMatrix channel;
};

// Positions are drawn before any gain, so two configs that differ only in
// eta share node placement and the unit-mean fading draws.
Topology generate(const GeneratorConfig& config);

/// Draws r source/destination pairs with pairwise-distinct endpoints.
std::vector<FlowSpec> drawFlows(int n, int r, std::uint64_t seed);

NetworkInstance makeInstance(Topology topology, double noise, double theta,
                             std::vector<FlowSpec> flows, int delay);

void writeInstance(std::ostream& out, const NetworkInstance& instance);
NetworkInstance readInstance(std::istream& in);

void saveInstance(const NetworkInstance& instance, const std::filesystem::path& path);
NetworkInstance loadInstance(const std::filesystem::path& path);

}  // namespace coopflow
