#pragma once

#include "coopflow/linprog.hpp"
#include "coopflow/netmodel.hpp"

#include <iosfwd>
#include <map>
#include <set>
#include <vector>

namespace coopflow {

struct CommittedTransmitter {
    int flow = 0;
    double power = 0.0;
};

struct SlotCommitments {
    std::map<NodeId, CommittedTransmitter> tx;
    std::map<NodeId, int> rx;

    bool contains(NodeId node) const { return tx.count(node) || rx.count(node); }
};

/// Per-slot record of what earlier-scheduled flows committed: transmitters
/// with their powers and receivers. Also remembers each committed flow's
/// scheduling threshold. Append-only.
class Blacklist {
public:
    Blacklist() = default;
    explicit Blacklist(int delay) : slots_(static_cast<std::size_t>(delay)) {}

    int delay() const { return static_cast<int>(slots_.size()); }
    const SlotCommitments& slot(int t) const { return slots_.at(static_cast<std::size_t>(t - 1)); }
    bool contains(int t, NodeId node) const { return slot(t).contains(node); }

    /// Registers `flow` with its scheduling threshold; must precede commit().
    void addFlow(int flow, double theta);

    /// Records one slot of `flow`. Throws std::logic_error if any node is
    /// already committed in that slot or a power is not positive.
    void commit(int flow, int t, const std::map<NodeId, double>& transmitters,
                const std::set<NodeId>& receivers);

    /// Flows in registration order.
    const std::vector<int>& flows() const { return order_; }
    double flowTheta(int flow) const { return thetas_.at(flow); }

    /// The blacklist as it stood before `flow` was registered.
    Blacklist before(int flow) const;

private:
    std::vector<SlotCommitments> slots_;
    std::vector<int> order_;
    std::map<int, double> thetas_;
};

/// Threshold at which each earlier flow is protected from new interference.
enum class DisturbanceMode {
    TrueTheta,        // instance threshold for every earlier flow
    SchedulingTheta,  // each flow's own, raised scheduling threshold
};

using DisturbanceThresholds = std::map<int, double>;

DisturbanceThresholds disturbanceThresholds(const NetworkInstance& instance,
                                            const Blacklist& blacklist, DisturbanceMode mode);

struct PamRequest {
    int flow = 0;
    int slot = 1;
    std::vector<NodeId> transmitters;
    std::vector<NodeId> receivers;
    double theta = 1.0;
};

enum class PamStatus { Optimal, Infeasible };

struct PamResult {
    PamStatus status = PamStatus::Infeasible;
    /// One entry per requested transmitter (zeros included) when optimal.
    std::map<NodeId, double> powers;
    double omega = kInfinity;
    /// Infeasible because a receiver was already committed in this slot.
    bool receiverBlacklisted = false;

    bool feasible() const { return status == PamStatus::Optimal; }
};

struct PamOptions {
    LPOptions lp;
    /// Powers at or below this are reported as exact zeros.
    double powerFloor = 1e-12;
    /// When set, the constructed LP is dumped before solving.
    std::ostream* trace = nullptr;
};

/// Minimal total power for `request.transmitters` so that every requested
/// receiver decodes at `request.theta` against all committed interference,
/// while every earlier receiver in the slot still decodes at its disturbance
/// threshold. Blacklisted transmitters are pinned to zero.
PamResult pam(const NetworkInstance& instance, const PamRequest& request,
              const Blacklist& blacklist, const DisturbanceThresholds& disturbance,
              const PamOptions& options = {});

/// The LP pam() solves, exposed for tracing and tests. Variables follow the
/// order of request.transmitters.
LinearProgram buildPamProgram(const NetworkInstance& instance, const PamRequest& request,
                              const Blacklist& blacklist, const DisturbanceThresholds& disturbance);

}  // namespace coopflow
