#pragma once

#include "coopflow/netmodel.hpp"
#include "coopflow/pam.hpp"
#include "coopflow/validator.hpp"

#include <map>
#include <string>
#include <vector>

namespace coopflow {

/// Per-position horizons and thresholds; entry p belongs to the p-th flow in
/// scheduling order.
struct LadderConfig {
    std::vector<int> slots;
    std::vector<double> thetas;
};

enum class RelayOrderingMode { Path, Dijkstra };

inline constexpr double kDefaultGamma = 1.15;

struct HeuristicConfig {
    double gamma = kDefaultGamma;
    RelayOrderingMode ordering = RelayOrderingMode::Path;
    /// Overrides of the default ladders; empty means "derive from gamma".
    std::vector<int> slotLadder;
    std::vector<double> thetaLadder;
    DisturbanceMode disturbance = DisturbanceMode::TrueTheta;
    PamOptions pam;
    /// Also run every shorter horizon r..T-1 and keep the cheapest schedule, so
    /// cost never grows with T. Ignored when slotLadder is given.
    bool horizonSweep = true;
};

/// Thrown for violated preconditions (T < r, bad ladders, gamma <= 1).
class HeuristicConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Flow indices by ascending interference-free cost C(d_k, T), ties by index.
std::vector<int> orderFlows(const NetworkInstance& instance);

/// T_k = T - r + k and theta_k = theta * gamma^(r - k).
LadderConfig buildLadders(const NetworkInstance& instance, double gamma);

/// buildLadders() with the config's overrides applied and checked.
LadderConfig resolveLadders(const NetworkInstance& instance, const HeuristicConfig& config);

struct RelayOrdering {
    std::vector<NodeId> nodes;  // source first, destination last
};

/// Thrown when a flow has no route within its horizon.
class UnreachableFlow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

RelayOrdering orderRelays(const NetworkInstance& instance, int flow, int horizon,
                          RelayOrderingMode mode = RelayOrderingMode::Path);

/// C_k(j, t) over ordering prefixes j and slots t = 1..horizon.
class FlowCostTable {
public:
    struct Cell {
        double cost = kInfinity;
        int from = -1;  // prefix index at t - 1; equal to the row for an idle step
        std::map<NodeId, double> powers;
    };

    FlowCostTable() = default;
    FlowCostTable(int prefixes, int horizon)
        : prefixes_(prefixes), horizon_(horizon),
          cells_(static_cast<std::size_t>(prefixes) * horizon) {}

    int prefixes() const { return prefixes_; }
    int horizon() const { return horizon_; }
    double cost(int j, int t) const { return cell(j, t).cost; }
    const Cell& cell(int j, int t) const { return cells_[index(j, t)]; }
    Cell& cell(int j, int t) { return cells_[index(j, t)]; }

private:
    std::size_t index(int j, int t) const { return static_cast<std::size_t>(t - 1) * prefixes_ + j; }

    int prefixes_ = 0;
    int horizon_ = 0;
    std::vector<Cell> cells_;
};

struct FlowScheduleResult {
    FlowCostTable table;
    bool scheduled = false;
    double cost = kInfinity;
    /// actions[t - 1]: this flow's transmitters (positive power only) and receivers at slot t.
    std::vector<SlotAction> actions;
    /// First slot where some transition was rejected (blacklisted receiver or
    /// infeasible LP); 0 if none.
    int blockingSlot = 0;
    /// PAM calls abandoned because the LP was ill-conditioned.
    int illConditionedCalls = 0;
};

/// Joint scheduling and power allocation for one flow over its ordering.
FlowScheduleResult scheduleFlow(const NetworkInstance& instance, int flow,
                                const RelayOrdering& ordering, int horizon, double theta,
                                const Blacklist& blacklist,
                                const DisturbanceThresholds& disturbance,
                                const PamOptions& pamOptions = {});

/// Appends a scheduled flow to the blacklist.
void commitFlow(Blacklist& blacklist, int flow, double theta, const FlowScheduleResult& result);

enum class HeuristicStatus { Ok, Unschedulable };

struct HeuristicResult {
    HeuristicStatus status = HeuristicStatus::Unschedulable;
    std::string diagnostics;
    Schedule schedule;
    double totalCost = kInfinity;
    /// Indexed by flow id.
    std::vector<double> perFlowCosts;
    std::vector<int> order;
    LadderConfig ladders;
    Blacklist blacklist;
    /// Horizon the ladders were built for; below the instance delay when a
    /// shorter run won the sweep (the schedule is padded with idle slots).
    int horizon = 0;

    bool ok() const { return status == HeuristicStatus::Ok; }
};

/// Order flows, build ladders, then schedule flows one by one, each against
/// the commitments of those before it. On failure no schedule is returned.
/// With horizonSweep the best result over horizons r..T is returned; ties keep
/// the longer horizon.
HeuristicResult runHeuristic(const NetworkInstance& instance, const HeuristicConfig& config = {});

}  // namespace coopflow
