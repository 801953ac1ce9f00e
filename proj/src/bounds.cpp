#include "coopflow/bounds.hpp"

#include "coopflow/singleflow.hpp"

#include <numeric>
#include <sstream>

namespace coopflow {

int Composition::total() const { return std::accumulate(parts.begin(), parts.end(), 0); }

LowerBoundResult lowerBound(const NetworkInstance& instance) {
    LowerBoundResult out;
    std::ostringstream diag;
    double sum = 0.0;
    for (int k = 0; k < instance.flowCount(); ++k) {
        const double c = solveSingle(instance, k, instance.delay).cost;
        out.perFlow.push_back(c);
        if (c == kInfinity) {
            const FlowSpec& f = instance.flows[static_cast<std::size_t>(k)];
            diag << "flow " << k << " (" << f.source << " -> " << f.destination
                 << ") unreachable within " << instance.delay << " slots\n";
        }
        sum += c;
    }
    out.value = sum;
    out.diagnostics = diag.str();
    return out;
}

Schedule multiplexedSchedule(const NetworkInstance& instance, const Composition& composition) {
    const int r = instance.flowCount();
    if (static_cast<int>(composition.parts.size()) != r)
        throw std::invalid_argument("composition needs one block per flow");
    Schedule schedule(instance.delay);
    int offset = 0;
    for (int k = 0; k < r; ++k) {
        const int tau = composition.parts[static_cast<std::size_t>(k)];
        const SingleFlowResult res = solveSingle(instance, k, tau);
        if (!res.reachable())
            throw std::invalid_argument("flow " + std::to_string(k) + " unreachable in its block");
        for (const Hop& h : res.path->hops) {
            SlotAction& a = schedule.action(h.slot + offset, k);
            a.transmitters[h.transmitter] = h.power;
            a.receivers.insert(h.receiver);
        }
        offset += tau;
    }
    return schedule;
}

UpperBoundResult upperBound(const NetworkInstance& instance) {
    const int r = instance.flowCount();
    const int T = instance.delay;
    if (T < r)
        throw InsufficientSlots("insufficient slots for multiplexing: T=" + std::to_string(T) +
                                " < r=" + std::to_string(r));

    // cost[k][tau] = C(d_k, tau), read off one table per flow.
    std::vector<std::vector<double>> cost(static_cast<std::size_t>(r));
    for (int k = 0; k < r; ++k) {
        const SingleFlowResult res = solveSingle(instance, k, T);
        const NodeId d = instance.flows[static_cast<std::size_t>(k)].destination;
        auto& row = cost[static_cast<std::size_t>(k)];
        row.assign(static_cast<std::size_t>(T) + 1, kInfinity);
        for (int tau = 1; tau <= T; ++tau) row[static_cast<std::size_t>(tau)] = res.table.cost(d, tau);
    }

    // best[k][s]: first k flows packed into exactly s slots.
    const std::size_t cols = static_cast<std::size_t>(T) + 1;
    std::vector<std::vector<double>> best(static_cast<std::size_t>(r) + 1,
                                          std::vector<double>(cols, kInfinity));
    std::vector<std::vector<int>> choice(static_cast<std::size_t>(r) + 1, std::vector<int>(cols, 0));
    best[0][0] = 0.0;
    for (int k = 1; k <= r; ++k) {
        for (int s = k; s <= T - (r - k); ++s) {
            for (int tau = 1; tau <= s - (k - 1); ++tau) {
                const double prev = best[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(s - tau)];
                const double c = prev + cost[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(tau)];
                if (c < best[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)]) {
                    best[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)] = c;
                    choice[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)] = tau;
                }
            }
        }
    }

    UpperBoundResult out;
    out.value = best[static_cast<std::size_t>(r)][static_cast<std::size_t>(T)];
    out.schedule = Schedule(T);
    if (out.value == kInfinity) return out;
    out.composition.parts.assign(static_cast<std::size_t>(r), 0);
    for (int k = r, s = T; k >= 1; --k) {
        const int tau = choice[static_cast<std::size_t>(k)][static_cast<std::size_t>(s)];
        out.composition.parts[static_cast<std::size_t>(k - 1)] = tau;
        s -= tau;
    }
    out.schedule = multiplexedSchedule(instance, out.composition);
    return out;
}

}  // namespace coopflow
