#pragma once
// Independent reference implementations used only by the tests.

#include "coopflow/linprog.hpp"
#include "coopflow/mosp.hpp"
#include "coopflow/netmodel.hpp"
#include "coopflow/singleflow.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <vector>

namespace testkit {

using namespace coopflow;

inline double uniform(std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline int uniformInt(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

/// Random instance with gains in (0.05, 1] on a fraction `density` of links,
/// the rest zero.
inline NetworkInstance randomInstance(int n, int r, int T, std::uint64_t seed, double density = 0.7,
                                      bool symmetric = false) {
    std::mt19937_64 rng(seed);
    NetworkInstance inst;
    inst.channel = ChannelMatrix(n);
    for (int i = 0; i < n; ++i)
        for (int j = symmetric ? i + 1 : 0; j < n; ++j) {
            if (i == j) continue;
            const double g = uniform(rng) < density ? uniform(rng, 0.05, 1.0) : 0.0;
            inst.channel(i, j) = g;
            if (symmetric) inst.channel(j, i) = g;
        }
    inst.noise = uniform(rng, 0.2, 2.0);
    inst.theta = uniform(rng, 0.5, 3.0);
    inst.delay = T;
    std::vector<int> nodes(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) nodes[static_cast<std::size_t>(i)] = i;
    std::shuffle(nodes.begin(), nodes.end(), rng);
    for (int k = 0; k < r; ++k)
        inst.flows.push_back({nodes[static_cast<std::size_t>(2 * k)], nodes[static_cast<std::size_t>(2 * k + 1)]});
    return inst;
}

// ---------------------------------------------------------------- LP

/// Solves A x = b by Gaussian elimination with partial pivoting; empty when singular.
inline std::optional<std::vector<double>> solveSquare(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
        if (std::abs(a[p][c]) < 1e-12) return std::nullopt;
        std::swap(a[p], a[c]);
        std::swap(b[p], b[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

// Feasible by construction (a point x0 satisfies every row) and bounded by a
// budget row on sum(x).
inline LinearProgram randomFeasibleLP(std::mt19937_64& rng) {
    const int nv = uniformInt(rng, 1, 6);
    const int nr = uniformInt(rng, 1, 7);
    std::vector<double> x0(static_cast<std::size_t>(nv));
    for (double& x : x0) x = uniform(rng) < 0.3 ? 0.0 : uniform(rng, 0.0, 3.0);
    LinearProgram lp;
    for (int j = 0; j < nv; ++j) lp.objective.push_back(uniform(rng, -1.0, 2.0));
    double sum = 0.0;
    for (double x : x0) sum += x;
    lp.geRows.push_back(LinearRow{std::vector<double>(static_cast<std::size_t>(nv), -1.0), -(sum + 5.0)});
    for (int r = 1; r < nr; ++r) {
        LinearRow rw;
        double ax = 0.0;
        for (int j = 0; j < nv; ++j) {
            const double a = uniform(rng) < 0.25 ? 0.0 : uniform(rng, -2.0, 2.0);
            rw.coeffs.push_back(a);
            ax += a * x0[static_cast<std::size_t>(j)];
        }
        if (uniform(rng) < 0.2) {
            rw.bound = ax;
            lp.eqRows.push_back(rw);
        } else {
            rw.bound = ax - uniform(rng, 0.0, 1.0);
            lp.geRows.push_back(rw);
        }
    }
    return lp;
}

/// Minimum of the objective over all basic feasible points: every choice of
/// nvars active constraints among rows and x_i = 0 bounds. Empty when no vertex
/// is feasible. Valid for bounded problems.
inline std::optional<double> vertexEnumerationLP(const LinearProgram& lp, double tol = 1e-9) {
    const std::size_t nv = lp.objective.size();
    struct Con {
        std::vector<double> a;
        double b;
    };
    std::vector<Con> eq, ineq;
    for (const auto& r : lp.eqRows) eq.push_back({r.coeffs, r.bound});
    for (const auto& r : lp.geRows) ineq.push_back({r.coeffs, r.bound});
    for (std::size_t i = 0; i < nv; ++i) {
        std::vector<double> e(nv, 0.0);
        e[i] = 1.0;
        ineq.push_back({e, 0.0});
    }
    // Vertices come from any nv independent tight rows; equalities are then
    // checked like every other row, so dependent equality rows are harmless.
    std::vector<Con> all = eq;
    all.insert(all.end(), ineq.begin(), ineq.end());
    const std::size_t pick = nv;

    auto feasible = [&](const std::vector<double>& x) {
        for (const auto& c : eq) {
            double s = 0.0;
            for (std::size_t i = 0; i < nv; ++i) s += c.a[i] * x[i];
            if (std::abs(s - c.b) > tol * (1.0 + std::abs(c.b))) return false;
        }
        for (const auto& c : ineq) {
            double s = 0.0;
            for (std::size_t i = 0; i < nv; ++i) s += c.a[i] * x[i];
            if (s < c.b - tol * (1.0 + std::abs(c.b))) return false;
        }
        return true;
    };

    std::optional<double> best;
    std::vector<std::size_t> chosen;
    std::function<void(std::size_t)> rec = [&](std::size_t from) {
        if (chosen.size() == pick) {
            std::vector<std::vector<double>> a;
            std::vector<double> b;
            for (std::size_t idx : chosen) a.push_back(all[idx].a), b.push_back(all[idx].b);
            auto x = solveSquare(a, b);
            if (!x || !feasible(*x)) return;
            double v = 0.0;
            for (std::size_t i = 0; i < nv; ++i) v += lp.objective[i] * (*x)[i];
            if (!best || v < *best) best = v;
            return;
        }
        for (std::size_t i = from; i < all.size(); ++i) {
            chosen.push_back(i);
            rec(i + 1);
            chosen.pop_back();
        }
    };
    rec(0);
    return best;
}

// ---------------------------------------------------------------- bounds

/// Minimum over every composition of T into r positive parts, listed explicitly.
inline double compositionEnumerationUB(const NetworkInstance& inst) {
    const int r = inst.flowCount();
    const int T = inst.delay;
    std::vector<std::vector<double>> cost(static_cast<std::size_t>(r));
    for (int k = 0; k < r; ++k)
        for (int tau = 0; tau <= T; ++tau)
            cost[static_cast<std::size_t>(k)].push_back(tau == 0 ? kInfinity : solveSingle(inst, k, tau).cost);

    double best = kInfinity;
    std::vector<int> parts;
    std::function<void(int)> rec = [&](int left) {
        const int k = static_cast<int>(parts.size());
        if (k == r) {
            if (left != 0) return;
            double s = 0.0;
            for (int q = 0; q < r; ++q) s += cost[static_cast<std::size_t>(q)][static_cast<std::size_t>(parts[q])];
            best = std::min(best, s);
            return;
        }
        for (int tau = 1; tau <= left - (r - k - 1); ++tau) {
            parts.push_back(tau);
            rec(left - tau);
            parts.pop_back();
        }
    };
    rec(T);
    return best;
}

// ---------------------------------------------------------------- coloring

/// Smallest k for which some assignment in {0..k-1}^n is proper; every
/// assignment is generated.
inline int exhaustiveChromatic(const SimpleGraph& g) {
    const int n = g.size();
    if (n == 0) return 0;
    for (int k = 1; k <= n; ++k) {
        std::vector<int> color(static_cast<std::size_t>(n), 0);
        while (true) {
            bool proper = true;
            for (const auto& [u, v] : g.edges())
                if (color[u] == color[v]) {
                    proper = false;
                    break;
                }
            if (proper) return k;
            int i = 0;
            while (i < n && ++color[i] == k) color[i++] = 0;
            if (i == n) break;
        }
    }
    return n;
}

}  // namespace testkit
