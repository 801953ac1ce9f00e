#include "coopflow/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace coopflow {

std::string toString(LPStatus status) {
    switch (status) {
        case LPStatus::Optimal: return "optimal";
        case LPStatus::Infeasible: return "infeasible";
        case LPStatus::Unbounded: return "unbounded";
    }
    return "unknown";
}

namespace {

// Entries at or below this magnitude are treated as exact zeros in the ratio test.
constexpr double kZeroTolerance = 1e-13;

class Tableau {
public:
    Tableau(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * (cols + 1), 0.0),
          objective_(static_cast<std::size_t>(cols) + 1, 0.0), basis_(rows, -1) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& at(int r, int c) { return data_[static_cast<std::size_t>(r) * (cols_ + 1) + c]; }
    double at(int r, int c) const { return data_[static_cast<std::size_t>(r) * (cols_ + 1) + c]; }
    double& rhs(int r) { return at(r, cols_); }
    double rhs(int r) const { return at(r, cols_); }

    // Reduced costs; objective_[cols_] holds minus the current objective value.
    double& reduced(int c) { return objective_[c]; }
    double value() const { return -objective_[cols_]; }

    int& basis(int r) { return basis_[r]; }
    int basis(int r) const { return basis_[r]; }

    void pivot(int pr, int pc) {
        const double inv = 1.0 / at(pr, pc);
        for (int c = 0; c <= cols_; ++c) at(pr, c) *= inv;
        at(pr, pc) = 1.0;
        for (int r = 0; r < rows_; ++r) {
            if (r == pr) continue;
            const double f = at(r, pc);
            if (f == 0.0) continue;
            for (int c = 0; c <= cols_; ++c) at(r, c) -= f * at(pr, c);
            at(r, pc) = 0.0;
        }
        const double f = objective_[pc];
        if (f != 0.0) {
            for (int c = 0; c <= cols_; ++c) objective_[c] -= f * at(pr, c);
            objective_[pc] = 0.0;
        }
        basis_[pr] = pc;
    }

    void dropRow(int r) {
        data_.erase(data_.begin() + static_cast<std::ptrdiff_t>(r) * (cols_ + 1),
                    data_.begin() + static_cast<std::ptrdiff_t>(r + 1) * (cols_ + 1));
        basis_.erase(basis_.begin() + r);
        --rows_;
    }

    void setObjective(const std::vector<double>& costs) {
        std::fill(objective_.begin(), objective_.end(), 0.0);
        for (int c = 0; c < cols_; ++c) objective_[c] = costs[c];
        for (int r = 0; r < rows_; ++r) {
            const double cb = costs[basis_[r]];
            if (cb == 0.0) continue;
            for (int c = 0; c <= cols_; ++c) objective_[c] -= cb * at(r, c);
        }
    }

    void dump(std::ostream& out, const char* label) const {
        out << "-- " << label << " (" << rows_ << " x " << cols_ << ")\n";
        out << std::setprecision(6);
        for (int r = 0; r < rows_; ++r) {
            out << "  x" << basis_[r] << " |";
            for (int c = 0; c <= cols_; ++c) out << ' ' << std::setw(11) << at(r, c);
            out << '\n';
        }
        out << "  obj |";
        for (int c = 0; c <= cols_; ++c) out << ' ' << std::setw(11) << objective_[c];
        out << '\n';
    }

private:
    int rows_;
    int cols_;
    std::vector<double> data_;
    std::vector<double> objective_;
    std::vector<int> basis_;
};

enum class Outcome { Optimal, Unbounded };

Outcome runSimplex(Tableau& tab, const std::vector<char>& enterable, const LPOptions& opt,
                   const char* phase) {
    const int limit = 100 * (tab.rows() + tab.cols()) + 1000;
    for (int iter = 0; iter < limit; ++iter) {
        int enter = -1;
        for (int c = 0; c < tab.cols(); ++c) {
            if (enterable[c] && tab.reduced(c) < -opt.optimalityTolerance) {
                enter = c;
                break;
            }
        }
        if (enter < 0) return Outcome::Optimal;

        int leave = -1;
        double bestRatio = 0.0;
        double bestPivot = 0.0;
        for (int r = 0; r < tab.rows(); ++r) {
            const double a = tab.at(r, enter);
            if (a <= kZeroTolerance) continue;
            const double ratio = std::max(tab.rhs(r), 0.0) / a;
            const double slack = 1e-12 * std::max(1.0, std::abs(bestRatio));
            if (leave < 0 || ratio < bestRatio - slack ||
                (ratio <= bestRatio + slack && tab.basis(r) < tab.basis(leave))) {
                leave = r;
                bestRatio = ratio;
                bestPivot = a;
            }
        }
        if (leave < 0) return Outcome::Unbounded;
        if (bestPivot < opt.pivotTolerance)
            throw LPIllConditioned(std::string("ill-conditioned: pivot ") + std::to_string(bestPivot) +
                                   " below tolerance in " + phase);
        tab.pivot(leave, enter);
        if (opt.trace) tab.dump(*opt.trace, phase);
    }
    throw LPIllConditioned(std::string("ill-conditioned: iteration limit reached in ") + phase);
}

void checkStructure(const LinearProgram& lp) {
    const std::size_t nv = lp.objective.size();
    auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(lp.objective.begin(), lp.objective.end(), finite))
        throw LPStructureError("objective has non-finite coefficients");
    auto checkRows = [&](const std::vector<LinearRow>& rows, const char* kind) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].coeffs.size() != nv)
                throw LPStructureError(std::string(kind) + " row " + std::to_string(i) + " has " +
                                       std::to_string(rows[i].coeffs.size()) +
                                       " coefficients, expected " + std::to_string(nv));
            if (!std::all_of(rows[i].coeffs.begin(), rows[i].coeffs.end(), finite) ||
                !std::isfinite(rows[i].bound))
                throw LPStructureError(std::string(kind) + " row " + std::to_string(i) +
                                       " has non-finite data");
        }
    };
    checkRows(lp.geRows, "ge");
    checkRows(lp.eqRows, "eq");
}

}  // namespace

double maxViolation(const LinearProgram& lp, const std::vector<double>& x) {
    double worst = 0.0;
    for (double v : x) worst = std::max(worst, -v);
    auto activity = [&](const LinearRow& row) {
        double s = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) s += row.coeffs[j] * x[j];
        return s;
    };
    for (const LinearRow& row : lp.geRows) worst = std::max(worst, row.bound - activity(row));
    for (const LinearRow& row : lp.eqRows) worst = std::max(worst, std::abs(row.bound - activity(row)));
    return worst;
}

LPSolution solveLP(const LinearProgram& lp, const LPOptions& opt) {
    checkStructure(lp);
    const int nv = lp.variableCount();

    // Equilibrate every row by its largest coefficient; all-zero rows are
    // decided on the spot.
    struct Scaled {
        std::vector<double> a;
        double b;
        bool ge;
    };
    std::vector<Scaled> rows;
    LPSolution infeasible{LPStatus::Infeasible, {}, 0.0};
    auto addRow = [&](const LinearRow& row, bool ge) {
        double scale = 0.0;
        for (double v : row.coeffs) scale = std::max(scale, std::abs(v));
        if (scale == 0.0) {
            const bool ok = ge ? row.bound <= opt.feasibilityTolerance
                               : std::abs(row.bound) <= opt.feasibilityTolerance;
            return ok;
        }
        Scaled s{row.coeffs, row.bound / scale, ge};
        for (double& v : s.a) v /= scale;
        rows.push_back(std::move(s));
        return true;
    };
    for (const LinearRow& row : lp.geRows)
        if (!addRow(row, true)) return infeasible;
    for (const LinearRow& row : lp.eqRows)
        if (!addRow(row, false)) return infeasible;

    const int m = static_cast<int>(rows.size());
    int slackCount = 0;
    for (const Scaled& s : rows) slackCount += s.ge;

    // Columns: structural | slacks | artificials (one per row that needs one).
    std::vector<int> slackCol(m, -1), artCol(m, -1);
    int next = nv;
    for (int r = 0; r < m; ++r)
        if (rows[r].ge) slackCol[r] = next++;
    const int firstArtificial = next;
    for (int r = 0; r < m; ++r) {
        // a.x - s = b with b <= 0 flips to -a.x + s = -b, so the slack is a
        // ready-made basic variable.
        const bool slackBasic = rows[r].ge && rows[r].b <= 0.0;
        if (!slackBasic) artCol[r] = next++;
    }
    const int cols = next;

    Tableau tab(m, cols);
    for (int r = 0; r < m; ++r) {
        const bool flip = rows[r].ge ? rows[r].b <= 0.0 : rows[r].b < 0.0;
        const double sign = flip ? -1.0 : 1.0;
        for (int j = 0; j < nv; ++j) tab.at(r, j) = sign * rows[r].a[j];
        if (slackCol[r] >= 0) tab.at(r, slackCol[r]) = -sign;
        tab.rhs(r) = sign * rows[r].b;
        if (artCol[r] >= 0) {
            tab.at(r, artCol[r]) = 1.0;
            tab.basis(r) = artCol[r];
        } else {
            tab.basis(r) = slackCol[r];
        }
    }

    std::vector<char> enterable(cols, 1);
    if (firstArtificial < cols) {
        std::vector<double> phase1(cols, 0.0);
        for (int c = firstArtificial; c < cols; ++c) phase1[c] = 1.0;
        tab.setObjective(phase1);
        if (opt.trace) tab.dump(*opt.trace, "phase 1 start");
        runSimplex(tab, enterable, opt, "phase 1");
        if (tab.value() > opt.feasibilityTolerance * std::max(1.0, static_cast<double>(m)))
            return infeasible;

        // Pivot zero-level artificials out of the basis; rows where that is
        // impossible are redundant.
        for (int r = tab.rows() - 1; r >= 0; --r) {
            if (tab.basis(r) < firstArtificial) continue;
            int col = -1;
            double best = 0.0;
            for (int c = 0; c < firstArtificial; ++c) {
                if (std::abs(tab.at(r, c)) > best) {
                    best = std::abs(tab.at(r, c));
                    col = c;
                }
            }
            if (col >= 0 && best >= opt.pivotTolerance) {
                tab.pivot(r, col);
            } else {
                tab.dropRow(r);
            }
        }
        for (int c = firstArtificial; c < cols; ++c) enterable[c] = 0;
    }

    std::vector<double> phase2(cols, 0.0);
    for (int j = 0; j < nv; ++j) phase2[j] = lp.objective[j];
    tab.setObjective(phase2);
    if (opt.trace) tab.dump(*opt.trace, "phase 2 start");
    if (runSimplex(tab, enterable, opt, "phase 2") == Outcome::Unbounded)
        return {LPStatus::Unbounded, {}, 0.0};

    LPSolution sol;
    sol.status = LPStatus::Optimal;
    sol.x.assign(nv, 0.0);
    for (int r = 0; r < tab.rows(); ++r)
        if (tab.basis(r) < nv) sol.x[tab.basis(r)] = std::max(tab.rhs(r), 0.0);

    // Recheck against the original, unscaled rows.
    for (const auto* group : {&lp.geRows, &lp.eqRows}) {
        const bool ge = group == &lp.geRows;
        for (const LinearRow& row : *group) {
            double activity = 0.0, magnitude = std::abs(row.bound);
            for (int j = 0; j < nv; ++j) {
                activity += row.coeffs[j] * sol.x[j];
                magnitude += std::abs(row.coeffs[j] * sol.x[j]);
            }
            const double gap = ge ? row.bound - activity : std::abs(row.bound - activity);
            if (gap > opt.feasibilityTolerance * std::max(1.0, magnitude))
                throw LPIllConditioned("ill-conditioned: recovered point violates a row by " +
                                       std::to_string(gap));
        }
    }

    sol.objective = 0.0;
    for (int j = 0; j < nv; ++j) sol.objective += lp.objective[j] * sol.x[j];
    return sol;
}

void dumpLP(std::ostream& out, const LinearProgram& lp) {
    auto row = [&](const std::vector<double>& a) {
        for (double v : a) out << ' ' << std::setprecision(17) << v;
    };
    out << "minimize";
    row(lp.objective);
    out << '\n';
    for (const LinearRow& r : lp.geRows) {
        out << "ge";
        row(r.coeffs);
        out << " >= " << std::setprecision(17) << r.bound << '\n';
    }
    for (const LinearRow& r : lp.eqRows) {
        out << "eq";
        row(r.coeffs);
        out << " = " << std::setprecision(17) << r.bound << '\n';
    }
}

}  // namespace coopflow
