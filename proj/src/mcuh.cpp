#include "coopflow/mcuh.hpp"

#include "coopflow/singleflow.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

namespace coopflow {

std::vector<int> orderFlows(const NetworkInstance& instance) {
    const int r = instance.flowCount();
    std::vector<double> cost(r);
    for (int k = 0; k < r; ++k) cost[k] = solveSingle(instance, k, instance.delay).cost;
    std::vector<int> order(r);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return cost[a] < cost[b]; });
    return order;
}

LadderConfig buildLadders(const NetworkInstance& instance, double gamma) {
    const int r = instance.flowCount();
    const int T = instance.delay;
    if (T < r)
        throw HeuristicConfigError("the heuristic needs T >= r (T=" + std::to_string(T) +
                                   ", r=" + std::to_string(r) + ")");
    if (!(gamma > 1.0)) throw HeuristicConfigError("gamma must exceed 1");
    LadderConfig ladders;
    for (int k = 1; k <= r; ++k) {
        ladders.slots.push_back(T - r + k);
        ladders.thetas.push_back(instance.theta * std::pow(gamma, r - k));
    }
    return ladders;
}

LadderConfig resolveLadders(const NetworkInstance& instance, const HeuristicConfig& config) {
    LadderConfig ladders = buildLadders(instance, config.gamma);
    const std::size_t r = ladders.slots.size();
    if (!config.slotLadder.empty()) {
        const auto& s = config.slotLadder;
        if (s.size() != r) throw HeuristicConfigError("slot ladder needs one entry per flow");
        if (s.front() < 1) throw HeuristicConfigError("slot ladder must start at 1 or later");
        if (s.back() != instance.delay) throw HeuristicConfigError("slot ladder must end at T");
        for (std::size_t i = 1; i < r; ++i)
            if (s[i] <= s[i - 1]) throw HeuristicConfigError("slot ladder must be strictly increasing");
        ladders.slots = s;
    }
    if (!config.thetaLadder.empty()) {
        const auto& th = config.thetaLadder;
        if (th.size() != r) throw HeuristicConfigError("theta ladder needs one entry per flow");
        if (th.back() != instance.theta)
            throw HeuristicConfigError("theta ladder must end at the instance threshold");
        for (std::size_t i = 1; i < r; ++i)
            if (th[i] >= th[i - 1]) throw HeuristicConfigError("theta ladder must be strictly decreasing");
        ladders.thetas = th;
    }
    return ladders;
}

namespace {

std::vector<double> shortestPathCosts(const NetworkInstance& instance, NodeId source) {
    const int n = instance.nodeCount();
    std::vector<double> dist(n, kInfinity);
    std::vector<char> done(n, 0);
    using Entry = std::pair<double, NodeId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    dist[source] = 0.0;
    heap.push({0.0, source});
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (done[u]) continue;
        done[u] = 1;
        for (NodeId v = 0; v < n; ++v) {
            const double w = v == u ? kInfinity : directCost(instance, u, v);
            if (w == kInfinity) continue;
            if (d + w < dist[v]) {
                dist[v] = d + w;
                heap.push({dist[v], v});
            }
        }
    }
    return dist;
}

}  // namespace

RelayOrdering orderRelays(const NetworkInstance& instance, int flow, int horizon,
                          RelayOrderingMode mode) {
    const FlowSpec& f = instance.flows.at(static_cast<std::size_t>(flow));
    const SingleFlowResult single = solveSingle(instance, flow, horizon);
    if (!single.reachable())
        throw UnreachableFlow("flow " + std::to_string(flow) + " (" + std::to_string(f.source) +
                              " -> " + std::to_string(f.destination) +
                              ") is unreachable within " + std::to_string(horizon) + " slots");

    RelayOrdering ordering;
    if (mode == RelayOrderingMode::Path) {
        ordering.nodes = single.path->nodes(f.source);
        return ordering;
    }

    // Every node strictly closer to the source than the destination, nearest
    // first; nodes beyond the destination could never precede it.
    const std::vector<double> dist = shortestPathCosts(instance, f.source);
    std::vector<NodeId> nodes;
    for (NodeId i = 0; i < instance.nodeCount(); ++i)
        if (i != f.destination && dist[i] < dist[f.destination]) nodes.push_back(i);
    std::stable_sort(nodes.begin(), nodes.end(),
                     [&](NodeId a, NodeId b) { return dist[a] < dist[b]; });
    nodes.push_back(f.destination);
    ordering.nodes = std::move(nodes);
    return ordering;
}

FlowScheduleResult scheduleFlow(const NetworkInstance& instance, int flow,
                                const RelayOrdering& ordering, int horizon, double theta,
                                const Blacklist& blacklist,
                                const DisturbanceThresholds& disturbance,
                                const PamOptions& pamOptions) {
    const auto& order = ordering.nodes;
    const int m = static_cast<int>(order.size());
    if (m < 2) throw std::invalid_argument("ordering needs at least source and destination");
    if (horizon < 1 || horizon > blacklist.delay())
        throw std::invalid_argument("flow horizon outside the blacklist window");

    FlowScheduleResult result;
    result.table = FlowCostTable(m, horizon);
    FlowCostTable& table = result.table;

    // C(i, t - 1), with only the source holding the message before slot 1.
    auto previous = [&](int i, int t) {
        if (t == 1) return i == 0 ? 0.0 : kInfinity;
        return table.cost(i, t - 1);
    };

    for (int t = 1; t <= horizon; ++t) {
        for (int j = 0; j < m; ++j) {
            FlowCostTable::Cell& c = table.cell(j, t);
            c.cost = previous(j, t);
            c.from = c.cost < kInfinity ? j : -1;
        }

        for (int i = 0; i < m - 1; ++i) {
            const double base = previous(i, t);
            if (base == kInfinity) continue;
            PamRequest request;
            request.flow = flow;
            request.slot = t;
            request.theta = theta;
            request.transmitters.assign(order.begin(), order.begin() + i + 1);
            // Receiver sets grow with j, so the first infeasible one ends the scan.
            for (int j = i + 1; j < m; ++j) {
                request.receivers.assign(order.begin() + i + 1, order.begin() + j + 1);
                PamResult res;
                try {
                    res = pam(instance, request, blacklist, disturbance, pamOptions);
                } catch (const LPIllConditioned&) {
                    ++result.illConditionedCalls;
                }
                if (!res.feasible()) {
                    if (result.blockingSlot == 0) result.blockingSlot = t;
                    break;
                }
                const double candidate = base + res.omega;
                FlowCostTable::Cell& c = table.cell(j, t);
                if (candidate < c.cost) {
                    c.cost = candidate;
                    c.from = i;
                    c.powers = std::move(res.powers);
                }
            }
        }
    }

    result.cost = table.cost(m - 1, horizon);
    if (result.cost == kInfinity) return result;

    result.scheduled = true;
    result.actions.assign(static_cast<std::size_t>(horizon), SlotAction{flow, {}, {}});
    int j = m - 1;
    for (int t = horizon; t >= 1; --t) {
        const FlowCostTable::Cell& c = table.cell(j, t);
        if (c.from == j) continue;
        SlotAction& a = result.actions[static_cast<std::size_t>(t - 1)];
        for (const auto& [node, power] : c.powers)
            if (power > 0.0) a.transmitters[node] = power;
        for (int p = c.from + 1; p <= j; ++p) a.receivers.insert(order[static_cast<std::size_t>(p)]);
        j = c.from;
    }
    return result;
}

void commitFlow(Blacklist& blacklist, int flow, double theta, const FlowScheduleResult& result) {
    blacklist.addFlow(flow, theta);
    for (std::size_t t = 0; t < result.actions.size(); ++t) {
        const SlotAction& a = result.actions[t];
        if (a.transmitters.empty() && a.receivers.empty()) continue;
        blacklist.commit(flow, static_cast<int>(t) + 1, a.transmitters, a.receivers);
    }
}

namespace {

HeuristicResult runOnce(const NetworkInstance& instance, const HeuristicConfig& config) {
    HeuristicResult out;
    out.horizon = instance.delay;
    out.ladders = resolveLadders(instance, config);
    out.order = orderFlows(instance);
    out.perFlowCosts.assign(static_cast<std::size_t>(instance.flowCount()), kInfinity);
    out.blacklist = Blacklist(instance.delay);

    std::ostringstream diag;
    std::vector<FlowScheduleResult> scheduled(static_cast<std::size_t>(instance.flowCount()));
    for (std::size_t pos = 0; pos < out.order.size(); ++pos) {
        const int k = out.order[pos];
        const int horizon = out.ladders.slots[pos];
        const double theta = out.ladders.thetas[pos];

        RelayOrdering ordering;
        try {
            ordering = orderRelays(instance, k, horizon, config.ordering);
        } catch (const UnreachableFlow& e) {
            diag << e.what() << '\n';
            out.diagnostics = diag.str();
            return out;
        }

        const DisturbanceThresholds disturbance =
            disturbanceThresholds(instance, out.blacklist, config.disturbance);
        FlowScheduleResult res = scheduleFlow(instance, k, ordering, horizon, theta, out.blacklist,
                                              disturbance, config.pam);
        if (res.illConditionedCalls > 0)
            diag << "flow " << k << ": " << res.illConditionedCalls
                 << " ill-conditioned PAM calls treated as infeasible\n";
        if (!res.scheduled) {
            diag << "flow " << k << " unschedulable within " << horizon
                 << " slots given earlier commitments; earliest blocking slot "
                 << res.blockingSlot << '\n';
            out.diagnostics = diag.str();
            return out;
        }
        diag << "flow " << k << ": T_k=" << horizon << " theta_k=" << theta
             << " cost=" << res.cost << '\n';
        commitFlow(out.blacklist, k, theta, res);
        out.perFlowCosts[static_cast<std::size_t>(k)] = res.cost;
        scheduled[static_cast<std::size_t>(k)] = std::move(res);
    }

    out.schedule = Schedule(instance.delay);
    for (int k = 0; k < instance.flowCount(); ++k) {
        const auto& actions = scheduled[static_cast<std::size_t>(k)].actions;
        for (std::size_t t = 0; t < actions.size(); ++t)
            if (!actions[t].transmitters.empty() || !actions[t].receivers.empty())
                out.schedule.at(static_cast<int>(t) + 1).push_back(actions[t]);
    }
    out.totalCost = std::accumulate(out.perFlowCosts.begin(), out.perFlowCosts.end(), 0.0);
    out.status = HeuristicStatus::Ok;
    out.diagnostics = diag.str();
    return out;
}

}  // namespace

HeuristicResult runHeuristic(const NetworkInstance& instance, const HeuristicConfig& config) {
    HeuristicResult best = runOnce(instance, config);
    if (!config.horizonSweep || !config.slotLadder.empty()) return best;

    NetworkInstance shorter = instance;
    for (int h = instance.delay - 1; h >= instance.flowCount(); --h) {
        shorter.delay = h;
        HeuristicResult res = runOnce(shorter, config);
        if (!res.ok() || (best.ok() && !(res.totalCost < best.totalCost))) continue;
        best = std::move(res);
    }
    if (best.ok() && best.horizon < instance.delay) {
        Schedule padded(instance.delay);
        for (int t = 1; t <= best.horizon; ++t) padded.at(t) = best.schedule.at(t);
        best.schedule = std::move(padded);
        best.diagnostics += "horizon " + std::to_string(best.horizon) + " of " +
                            std::to_string(instance.delay) + " gave the cheapest schedule\n";
    }
    return best;
}

}  // namespace coopflow
