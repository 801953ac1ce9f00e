#pragma once

#include "coopflow/netmodel.hpp"
#include "coopflow/validator.hpp"

#include <optional>
#include <vector>

namespace coopflow {

/// Power for `from` alone to make `to` decode with no interference:
/// theta * N / h. Infinite when the link gain is zero.
double directCost(const NetworkInstance& instance, NodeId from, NodeId to);

/// DP values C(i, t) for t = 1..horizon with backpointers. back(i, t) is the
/// node that held the message at t - 1 on the optimal route to i; it equals i
/// for a wait transition and is empty for the source or unreachable entries.
class CostTable {
public:
    CostTable() = default;
    CostTable(int n, int horizon)
        : n_(n), horizon_(horizon),
          cost_(static_cast<std::size_t>(n) * horizon, kInfinity),
          back_(static_cast<std::size_t>(n) * horizon, -1) {}

    int nodeCount() const { return n_; }
    int horizon() const { return horizon_; }

    double cost(NodeId i, int t) const { return cost_[index(i, t)]; }
    std::optional<NodeId> back(NodeId i, int t) const {
        const NodeId b = back_[index(i, t)];
        return b < 0 ? std::nullopt : std::optional<NodeId>(b);
    }

    void set(NodeId i, int t, double c, NodeId b) {
        cost_[index(i, t)] = c;
        back_[index(i, t)] = b;
    }

private:
    std::size_t index(NodeId i, int t) const {
        return static_cast<std::size_t>(t - 1) * n_ + i;
    }

    int n_ = 0;
    int horizon_ = 0;
    std::vector<double> cost_;
    std::vector<NodeId> back_;
};

struct Hop {
    NodeId transmitter = 0;
    NodeId receiver = 0;
    double power = 0.0;
    int slot = 0;
};

struct PathSchedule {
    std::vector<Hop> hops;

    /// s -> a -> ... -> d, or just s when there are no hops.
    std::vector<NodeId> nodes(NodeId source) const;
    double cost() const;
    /// One action per hop for `flow`, on a schedule of `delay` slots.
    Schedule toSchedule(int flow, int delay, int slotOffset = 0) const;
};

struct SingleFlowResult {
    CostTable table;
    double cost = kInfinity;
    /// Empty when the destination is unreachable within the horizon.
    std::optional<PathSchedule> path;

    bool reachable() const { return path.has_value(); }
};

/// Minimum-energy route from `source` to `destination` within `horizon` slots,
/// ignoring all other flows. Ties go to the smaller predecessor index.
SingleFlowResult solveSingle(const NetworkInstance& instance, NodeId source, NodeId destination,
                             int horizon);
SingleFlowResult solveSingle(const NetworkInstance& instance, int flowIndex, int horizon);

inline constexpr int kPathBruteForceGuard = 12;

/// Exhaustive minimum over simple paths with at most `horizon` hops.
/// Refuses (std::length_error) instances with more than `guard` nodes.
double pathBruteForce(const NetworkInstance& instance, NodeId source, NodeId destination,
                      int horizon, int guard = kPathBruteForceGuard);

}  // namespace coopflow
