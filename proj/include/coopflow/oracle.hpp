#pragma once

#include "coopflow/linprog.hpp"
#include "coopflow/netmodel.hpp"
#include "coopflow/validator.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace coopflow {

inline constexpr double kDefaultOracleGuard = 1e7;

class OracleGuardExceeded : public std::length_error {
public:
    OracleGuardExceeded(double estimate, double guard);
    double estimate() const { return estimate_; }

private:
    double estimate_;
};

struct OracleOptions {
    double guard = kDefaultOracleGuard;
    /// Caps the transmitters any flow may use in one slot; 0 means no cap.
    /// A cap of 1 gives the best solution where every flow follows a path.
    int maxTransmittersPerFlow = 0;
    LPOptions lp;
};

enum class OracleStatus { Optimal, Infeasible };

struct OracleResult {
    OracleStatus status = OracleStatus::Infeasible;
    double cost = kInfinity;
    /// Argmin schedule; empty slots when infeasible.
    Schedule schedule;
    double estimate = 0.0;
    std::uint64_t patterns = 0;
    std::uint64_t lpSolves = 0;
    std::uint64_t illConditioned = 0;

    bool feasible() const { return status == OracleStatus::Optimal; }
};

/// Upper estimate of the enumeration size: T * prod_i (1 + flows reaching i) * 2^(reachable pairs).
double oracleEstimate(const NetworkInstance& instance, int maxTransmittersPerFlow = 0);

/// Exact minimum-energy schedule. Each slot assigns every node one role
/// (idle, transmit flow k, receive flow k); the powers of a role pattern come
/// from an LP at the true threshold. Patterns where a flow receives without
/// transmitting, or transmits without receiving, are skipped: the first is
/// infeasible and the second is dominated by leaving those nodes idle.
/// Throws OracleGuardExceeded when oracleEstimate() exceeds the guard.
OracleResult exactMcue(const NetworkInstance& instance, const OracleOptions& options = {});

/// Reference mode for property tests: depth-first over whole role
/// assignments, one joint LP per leaf, no pruning. Only for a handful of nodes.
OracleResult exactMcueUnpruned(const NetworkInstance& instance, const OracleOptions& options = {});

/// exactMcue on flow k alone with horizon T; cooperative transmission allowed.
double exactSingleFlowViaRoles(const NetworkInstance& instance, int k, int T,
                               const OracleOptions& options = {});

}  // namespace coopflow
