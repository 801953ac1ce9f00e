#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace coopflow {

struct LinearRow {
    std::vector<double> coeffs;
    double bound = 0.0;
};

/// minimize objective . x  subject to  geRows (a . x >= b), eqRows (a . x = b), x >= 0.
struct LinearProgram {
    std::vector<double> objective;
    std::vector<LinearRow> geRows;
    std::vector<LinearRow> eqRows;

    int variableCount() const { return static_cast<int>(objective.size()); }
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

std::string toString(LPStatus status);

struct LPSolution {
    LPStatus status = LPStatus::Infeasible;
    std::vector<double> x;
    double objective = 0.0;
};

struct LPOptions {
    double feasibilityTolerance = 1e-9;
    double optimalityTolerance = 1e-9;
    /// Pivots smaller than this abort the solve instead of risking a wrong answer.
    double pivotTolerance = 1e-11;
    /// When set, the tableau is dumped after every pivot.
    std::ostream* trace = nullptr;
};

/// Malformed program: row length differs from the objective, or non-finite data.
class LPStructureError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical breakdown: a required pivot fell below the pivot tolerance, the
/// iteration limit was hit, or the recovered point failed the feasibility
/// recheck.
class LPIllConditioned : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two-phase dense simplex with Bland's lowest-index rule. Deterministic for a
/// fixed input.
LPSolution solveLP(const LinearProgram& lp, const LPOptions& options = {});

/// Max violation of any row or sign constraint at x (0 when x is feasible).
double maxViolation(const LinearProgram& lp, const std::vector<double>& x);

/// Text dump used by the trace flags of the LP callers.
void dumpLP(std::ostream& out, const LinearProgram& lp);

}  // namespace coopflow
