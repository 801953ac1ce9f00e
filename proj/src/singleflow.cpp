#include "coopflow/singleflow.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace coopflow {

double directCost(const NetworkInstance& instance, NodeId from, NodeId to) {
    const double h = instance.channel(from, to);
    if (h <= 0.0) return kInfinity;
    return instance.theta * instance.noise / h;
}

std::vector<NodeId> PathSchedule::nodes(NodeId source) const {
    std::vector<NodeId> out{source};
    for (const Hop& h : hops) out.push_back(h.receiver);
    return out;
}

double PathSchedule::cost() const {
    double c = 0.0;
    for (const Hop& h : hops) c += h.power;
    return c;
}

Schedule PathSchedule::toSchedule(int flow, int delay, int slotOffset) const {
    Schedule schedule(delay);
    for (const Hop& h : hops) {
        SlotAction& a = schedule.action(h.slot + slotOffset, flow);
        a.transmitters[h.transmitter] = h.power;
        a.receivers.insert(h.receiver);
    }
    return schedule;
}

SingleFlowResult solveSingle(const NetworkInstance& instance, NodeId source, NodeId destination,
                             int horizon) {
    if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
    const int n = instance.nodeCount();

    SingleFlowResult result;
    result.table = CostTable(n, horizon);
    CostTable& table = result.table;

    for (NodeId i = 0; i < n; ++i) {
        if (i == source)
            table.set(i, 1, 0.0, -1);
        else {
            const double w = directCost(instance, source, i);
            table.set(i, 1, w, w < kInfinity ? source : -1);
        }
    }

    for (int t = 2; t <= horizon; ++t) {
        for (NodeId i = 0; i < n; ++i) {
            if (i == source) {
                table.set(i, t, 0.0, -1);
                continue;
            }
            double best = kInfinity;
            NodeId arg = -1;
            // Nr(i) includes i itself with zero weight (waiting).
            for (NodeId j = 0; j < n; ++j) {
                const double prev = table.cost(j, t - 1);
                if (prev == kInfinity) continue;
                const double w = (j == i) ? 0.0 : directCost(instance, j, i);
                const double c = prev + w;
                if (c < best) {
                    best = c;
                    arg = j;
                }
            }
            table.set(i, t, best, arg);
        }
    }

    result.cost = table.cost(destination, horizon);
    if (result.cost == kInfinity) return result;

    PathSchedule path;
    NodeId at = destination;
    for (int t = horizon; t >= 1 && at != source; --t) {
        const NodeId prev = *table.back(at, t);
        if (prev == at) continue;
        path.hops.push_back({prev, at, directCost(instance, prev, at), t});
        at = prev;
    }
    std::reverse(path.hops.begin(), path.hops.end());
    result.path = std::move(path);
    return result;
}

SingleFlowResult solveSingle(const NetworkInstance& instance, int flowIndex, int horizon) {
    if (flowIndex < 0 || flowIndex >= instance.flowCount())
        throw std::out_of_range("flow index " + std::to_string(flowIndex) + " out of range");
    const FlowSpec& f = instance.flows[flowIndex];
    return solveSingle(instance, f.source, f.destination, horizon);
}

double pathBruteForce(const NetworkInstance& instance, NodeId source, NodeId destination,
                      int horizon, int guard) {
    const int n = instance.nodeCount();
    if (n > guard)
        throw std::length_error("path enumeration refused: " + std::to_string(n) +
                                " nodes exceeds guard " + std::to_string(guard));
    if (source == destination) return 0.0;

    double best = kInfinity;
    std::vector<char> onPath(n, 0);
    onPath[source] = 1;
    std::function<void(NodeId, int, double)> extend = [&](NodeId at, int hops, double cost) {
        if (at == destination) {
            best = std::min(best, cost);
            return;
        }
        if (hops == horizon) return;
        for (NodeId next = 0; next < n; ++next) {
            if (onPath[next]) continue;
            const double w = directCost(instance, at, next);
            if (w == kInfinity) continue;
            onPath[next] = 1;
            extend(next, hops + 1, cost + w);
            onPath[next] = 0;
        }
    };
    extend(source, 0, 0.0);
    return best;
}

}  // namespace coopflow
