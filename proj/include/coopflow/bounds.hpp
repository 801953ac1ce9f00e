#pragma once

#include "coopflow/netmodel.hpp"
#include "coopflow/validator.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace coopflow {

/// Ordered split of T slots into one positive block per flow.
struct Composition {
    std::vector<int> parts;

    int total() const;
    bool operator==(const Composition&) const = default;
};

struct LowerBoundResult {
    double value = kInfinity;
    /// Interference-free optimum of each flow over the full horizon.
    std::vector<double> perFlow;
    /// One line per unreachable flow; empty when the bound is finite.
    std::string diagnostics;
};

/// Sum over flows of C(d_k, T), each flow alone in the network.
LowerBoundResult lowerBound(const NetworkInstance& instance);

class InsufficientSlots : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct UpperBoundResult {
    double value = kInfinity;
    /// Minimizing composition; empty when every composition is infinite.
    Composition composition;
    /// Flows run one after another in index order, each inside its block.
    Schedule schedule;
};

/// Best time-multiplexed solution: min over compositions of sum_k C(d_k, tau_k).
/// Throws InsufficientSlots when T < r.
UpperBoundResult upperBound(const NetworkInstance& instance);

/// Multiplexed schedule for a given composition, flow k inside block k.
Schedule multiplexedSchedule(const NetworkInstance& instance, const Composition& composition);

}  // namespace coopflow
