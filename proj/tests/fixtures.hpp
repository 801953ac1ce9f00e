#pragma once

#include "coopflow/netmodel.hpp"

#include <initializer_list>
#include <tuple>

namespace testkit {

using namespace coopflow;

/// Instance from a list of symmetric links (i, j, gain).
inline NetworkInstance linkInstance(int n, std::initializer_list<std::tuple<int, int, double>> links,
                                    std::vector<FlowSpec> flows, int delay, double noise = 1.0,
                                    double theta = 1.0) {
    NetworkInstance inst;
    inst.channel = ChannelMatrix(n);
    for (auto [i, j, g] : links) inst.channel(i, j) = inst.channel(j, i) = g;
    inst.flows = std::move(flows);
    inst.delay = delay;
    inst.noise = noise;
    inst.theta = theta;
    return inst;
}

/// 0 - 1 - 2 with unit gains; one hop costs 1.
inline NetworkInstance lineInstance(int delay = 2) {
    return linkInstance(3, {{0, 1, 1.0}, {1, 2, 1.0}}, {{0, 2}}, delay);
}

/// Two disjoint copies of the line: 0-1-2 and 3-4-5, no cross gains.
inline NetworkInstance twoLines(int delay = 2) {
    return linkInstance(6, {{0, 1, 1.0}, {1, 2, 1.0}, {3, 4, 1.0}, {4, 5, 1.0}}, {{0, 2}, {3, 5}},
                        delay);
}

}  // namespace testkit
