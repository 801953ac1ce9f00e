#include "coopflow/netmodel.hpp"

#include "textio.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <set>

namespace coopflow {

namespace {

// mt19937_64 output is fixed by the standard; the distributions are not, so
// the conversions to real values are done here.
double unitUniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double unitExponential(std::mt19937_64& rng) {
    return -std::log1p(-unitUniform(rng));
}

}  // namespace

void validate(const NetworkInstance& instance) {
    const int n = instance.nodeCount();
    if (n < 2) throw InstanceError("instance needs at least two nodes");
    if (!(instance.noise > 0.0) || !std::isfinite(instance.noise))
        throw InstanceError("noise must be positive");
    if (!(instance.theta > 0.0) || !std::isfinite(instance.theta))
        throw InstanceError("theta must be positive");
    if (instance.delay < 1) throw InstanceError("delay must be at least 1");
    if (instance.flows.empty()) throw InstanceError("instance has no flows");
    if (!instance.positions.empty() && static_cast<int>(instance.positions.size()) != n)
        throw InstanceError("position count does not match node count");

    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = 0; j < n; ++j) {
            const double h = instance.channel(i, j);
            if (!(h >= 0.0 && h <= 1.0))
                throw InstanceError("gain out of range at (" + std::to_string(i) + ", " +
                                    std::to_string(j) + ")");
            if (i == j && h != 0.0)
                throw InstanceError("self gain must be zero at node " + std::to_string(i));
        }
    }

    std::set<NodeId> endpoints;
    for (std::size_t k = 0; k < instance.flows.size(); ++k) {
        const FlowSpec& f = instance.flows[k];
        if (f.source < 0 || f.source >= n || f.destination < 0 || f.destination >= n)
            throw InstanceError("flow " + std::to_string(k) + " endpoint out of range");
        if (f.source == f.destination)
            throw InstanceError("flow " + std::to_string(k) + ": source equals destination");
        if (!endpoints.insert(f.source).second || !endpoints.insert(f.destination).second)
            throw InstanceError("flow " + std::to_string(k) + " shares an endpoint with another flow");
    }
}

Topology generate(const GeneratorConfig& config) {
    if (config.n < 2) throw InstanceError("generator needs at least two nodes");
    if (!(config.side > 0.0)) throw InstanceError("side must be positive");
    if (!(config.eta >= 0.0)) throw InstanceError("eta must be nonnegative");

    std::mt19937_64 rng(config.seed);
    Topology topo;
    topo.positions.resize(config.n);
    for (Position& p : topo.positions) {
        p.x = unitUniform(rng) * config.side;
        p.y = unitUniform(rng) * config.side;
    }

    topo.channel = ChannelMatrix(config.n);
    auto distance = [&](NodeId i, NodeId j) {
        return std::hypot(topo.positions[i].x - topo.positions[j].x,
                          topo.positions[i].y - topo.positions[j].y);
    };

    for (NodeId i = 0; i < config.n; ++i) {
        for (NodeId j = config.reciprocal ? i + 1 : 0; j < config.n; ++j) {
            if (i == j) continue;
            const double fading = unitExponential(rng);
            const double d = distance(i, j);
            double h = 1.0;  // coincident nodes
            if (d > 0.0) {
                h = std::pow(d, -config.eta) * fading;
                if (config.clampGain) h = std::min(h, 1.0);
            }
            topo.channel(i, j) = h;
            if (config.reciprocal) topo.channel(j, i) = h;
        }
    }
    return topo;
}

std::vector<FlowSpec> drawFlows(int n, int r, std::uint64_t seed) {
    if (r < 1 || 2 * r > n) throw InstanceError("cannot place " + std::to_string(r) +
                                                " flows with distinct endpoints on " +
                                                std::to_string(n) + " nodes");
    // Separate stream from the topology so flow placement does not shift gains.
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::set<NodeId> used;
    std::vector<FlowSpec> flows;
    while (static_cast<int>(flows.size()) < r) {
        const NodeId s = static_cast<NodeId>(rng() % static_cast<std::uint64_t>(n));
        const NodeId d = static_cast<NodeId>(rng() % static_cast<std::uint64_t>(n));
        if (s == d || used.count(s) || used.count(d)) continue;
        used.insert(s);
        used.insert(d);
        flows.push_back({s, d});
    }
    return flows;
}

NetworkInstance makeInstance(Topology topology, double noise, double theta,
                             std::vector<FlowSpec> flows, int delay) {
    NetworkInstance inst;
    inst.channel = std::move(topology.channel);
    inst.positions = std::move(topology.positions);
    inst.noise = noise;
    inst.theta = theta;
    inst.flows = std::move(flows);
    inst.delay = delay;
    validate(inst);
    return inst;
}

void writeInstance(std::ostream& out, const NetworkInstance& instance) {
    const int n = instance.nodeCount();
    out << "coopflow-instance v1\n";
    out << "n " << n << '\n';
    out << "noise " << formatReal(instance.noise) << '\n';
    out << "theta " << formatReal(instance.theta) << '\n';
    out << "delay " << instance.delay << '\n';
    out << "flows " << instance.flows.size() << '\n';
    for (const FlowSpec& f : instance.flows) out << "flow " << f.source << ' ' << f.destination << '\n';
    out << "gains\n";
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = 0; j < n; ++j) {
            if (j) out << ' ';
            out << formatReal(instance.channel(i, j));
        }
        out << '\n';
    }
    if (!instance.positions.empty()) {
        out << "positions\n";
        for (const Position& p : instance.positions)
            out << formatReal(p.x) << ' ' << formatReal(p.y) << '\n';
    }
}

NetworkInstance readInstance(std::istream& in) {
    LineReader reader(in);
    reader.expectHeader("coopflow-instance v1");

    NetworkInstance inst;
    const int n = reader.keyedInt("n");
    if (n < 2) reader.fail("n must be at least 2");
    inst.noise = reader.keyedReal("noise");
    inst.theta = reader.keyedReal("theta");
    inst.delay = reader.keyedInt("delay");
    const int r = reader.keyedInt("flows");
    if (r < 0) reader.fail("negative flow count");
    for (int k = 0; k < r; ++k) {
        auto tokens = reader.next("flow");
        if (tokens.size() != 3 || tokens[0] != "flow") reader.fail("expected 'flow <src> <dst>'");
        inst.flows.push_back({reader.toInt(tokens[1], "flow source"),
                              reader.toInt(tokens[2], "flow destination")});
    }

    auto tokens = reader.next("gains");
    if (tokens.size() != 1 || tokens[0] != "gains") reader.fail("expected 'gains'");
    inst.channel = ChannelMatrix(n);
    for (NodeId i = 0; i < n; ++i) {
        auto row = reader.next("gain row " + std::to_string(i));
        if (static_cast<int>(row.size()) != n)
            reader.fail("gain row " + std::to_string(i) + " has " + std::to_string(row.size()) +
                        " entries, expected " + std::to_string(n));
        for (NodeId j = 0; j < n; ++j) inst.channel(i, j) = reader.toReal(row[j], "gain");
    }

    if (auto more = reader.tryNext()) {
        if (more->size() != 1 || (*more)[0] != "positions") reader.fail("unexpected content");
        for (NodeId i = 0; i < n; ++i) {
            auto xy = reader.next("position " + std::to_string(i));
            if (xy.size() != 2) reader.fail("expected '<x> <y>'");
            inst.positions.push_back({reader.toReal(xy[0], "x"), reader.toReal(xy[1], "y")});
        }
        if (reader.tryNext()) reader.fail("unexpected content after positions");
    }

    validate(inst);
    return inst;
}

void saveInstance(const NetworkInstance& instance, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    writeInstance(out, instance);
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

NetworkInstance loadInstance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return readInstance(in);
}

}  // namespace coopflow
