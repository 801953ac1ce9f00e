#include "coopflow/pam.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace coopflow {

void Blacklist::addFlow(int flow, double theta) {
    if (thetas_.count(flow)) throw std::logic_error("flow " + std::to_string(flow) + " already registered");
    thetas_[flow] = theta;
    order_.push_back(flow);
}

void Blacklist::commit(int flow, int t, const std::map<NodeId, double>& transmitters,
                       const std::set<NodeId>& receivers) {
    if (!thetas_.count(flow)) throw std::logic_error("flow " + std::to_string(flow) + " not registered");
    SlotCommitments& s = slots_.at(static_cast<std::size_t>(t - 1));
    for (const auto& [node, power] : transmitters) {
        if (!(power > 0.0)) throw std::logic_error("committed power must be positive");
        if (s.contains(node) || receivers.count(node))
            throw std::logic_error("node " + std::to_string(node) + " already committed in slot " +
                                   std::to_string(t));
    }
    for (NodeId node : receivers)
        if (s.contains(node))
            throw std::logic_error("node " + std::to_string(node) + " already committed in slot " +
                                   std::to_string(t));
    for (const auto& [node, power] : transmitters) s.tx[node] = {flow, power};
    for (NodeId node : receivers) s.rx[node] = flow;
}

Blacklist Blacklist::before(int flow) const {
    Blacklist out(delay());
    std::set<int> keep;
    for (int f : order_) {
        if (f == flow) break;
        keep.insert(f);
        out.addFlow(f, thetas_.at(f));
    }
    for (std::size_t t = 0; t < slots_.size(); ++t) {
        for (const auto& [node, c] : slots_[t].tx)
            if (keep.count(c.flow)) out.slots_[t].tx[node] = c;
        for (const auto& [node, f] : slots_[t].rx)
            if (keep.count(f)) out.slots_[t].rx[node] = f;
    }
    return out;
}

DisturbanceThresholds disturbanceThresholds(const NetworkInstance& instance,
                                            const Blacklist& blacklist, DisturbanceMode mode) {
    DisturbanceThresholds out;
    for (int f : blacklist.flows())
        out[f] = mode == DisturbanceMode::TrueTheta ? instance.theta : blacklist.flowTheta(f);
    return out;
}

namespace {

// Interference at `node` from every committed transmitter except those of `excludedFlow`.
double committedInterference(const NetworkInstance& instance, const SlotCommitments& s,
                             NodeId node, int excludedFlow) {
    double sum = 0.0;
    for (const auto& [tx, c] : s.tx)
        if (c.flow != excludedFlow) sum += c.power * instance.channel(tx, node);
    return sum;
}

}  // namespace

LinearProgram buildPamProgram(const NetworkInstance& instance, const PamRequest& request,
                              const Blacklist& blacklist, const DisturbanceThresholds& disturbance) {
    const SlotCommitments& s = blacklist.slot(request.slot);
    const auto& psi = request.transmitters;
    const std::size_t nv = psi.size();

    LinearProgram lp;
    lp.objective.assign(nv, 1.0);

    // Each new receiver decodes against all committed interference plus noise.
    for (NodeId j : request.receivers) {
        LinearRow row;
        row.coeffs.resize(nv);
        for (std::size_t q = 0; q < nv; ++q) row.coeffs[q] = instance.channel(psi[q], j);
        row.bound = request.theta *
                    (instance.noise + committedInterference(instance, s, j, request.flow));
        lp.geRows.push_back(std::move(row));
    }

    // Every committed receiver keeps decoding with the new powers added as interference.
    for (const auto& [z, f] : s.rx) {
        auto it = disturbance.find(f);
        if (it == disturbance.end())
            throw std::invalid_argument("no disturbance threshold for flow " + std::to_string(f));
        const double theta = it->second;
        double signal = 0.0;
        for (const auto& [tx, c] : s.tx)
            if (c.flow == f) signal += c.power * instance.channel(tx, z);
        LinearRow row;
        row.coeffs.resize(nv);
        for (std::size_t q = 0; q < nv; ++q) row.coeffs[q] = -theta * instance.channel(psi[q], z);
        row.bound = theta * (instance.noise + committedInterference(instance, s, z, f)) - signal;
        lp.geRows.push_back(std::move(row));
    }

    // Nodes busy with an earlier flow cannot transmit this one.
    for (std::size_t q = 0; q < nv; ++q) {
        if (!s.contains(psi[q])) continue;
        LinearRow row;
        row.coeffs.assign(nv, 0.0);
        row.coeffs[q] = 1.0;
        row.bound = 0.0;
        lp.eqRows.push_back(std::move(row));
    }
    return lp;
}

PamResult pam(const NetworkInstance& instance, const PamRequest& request,
              const Blacklist& blacklist, const DisturbanceThresholds& disturbance,
              const PamOptions& options) {
    for (NodeId j : request.receivers)
        if (std::find(request.transmitters.begin(), request.transmitters.end(), j) !=
            request.transmitters.end())
            throw std::invalid_argument("node " + std::to_string(j) +
                                        " cannot transmit and receive in one slot");

    PamResult result;
    const SlotCommitments& s = blacklist.slot(request.slot);
    for (NodeId j : request.receivers) {
        if (s.contains(j)) {
            result.receiverBlacklisted = true;
            return result;
        }
    }

    if (request.receivers.empty()) {
        result.status = PamStatus::Optimal;
        for (NodeId q : request.transmitters) result.powers[q] = 0.0;
        result.omega = 0.0;
        return result;
    }

    const LinearProgram lp = buildPamProgram(instance, request, blacklist, disturbance);
    if (options.trace) dumpLP(*options.trace, lp);
    const LPSolution sol = solveLP(lp, options.lp);
    if (sol.status != LPStatus::Optimal) return result;

    result.status = PamStatus::Optimal;
    result.omega = 0.0;
    for (std::size_t q = 0; q < request.transmitters.size(); ++q) {
        const double p = sol.x[q] <= options.powerFloor ? 0.0 : sol.x[q];
        result.powers[request.transmitters[q]] = p;
        result.omega += p;
    }
    return result;
}

}  // namespace coopflow
