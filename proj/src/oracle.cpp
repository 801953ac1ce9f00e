#include "coopflow/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <unordered_map>
#include <vector>

namespace coopflow {

namespace {

std::string estimateMessage(double estimate, double guard) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "exact search refused: estimated %.3g candidate assignments exceed the guard of %.3g",
                  estimate, guard);
    return buf;
}

// Role codes: 0 idle, 1 + k transmit flow k, 1 + r + k receive flow k.
using Roles = std::string;

struct Context {
    const NetworkInstance& inst;
    int n;
    int r;

    int txFlow(char code) const { return code >= 1 && code <= r ? code - 1 : -1; }
    int rxFlow(char code) const { return code > r ? code - 1 - r : -1; }
};

std::vector<std::vector<char>> reachability(const NetworkInstance& inst) {
    const int n = inst.nodeCount();
    std::vector<std::vector<char>> reach;
    for (const FlowSpec& f : inst.flows) {
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::vector<NodeId> stack{f.source};
        seen[f.source] = 1;
        while (!stack.empty()) {
            const NodeId u = stack.back();
            stack.pop_back();
            for (NodeId v = 0; v < n; ++v)
                if (!seen[v] && inst.channel(u, v) > 0.0) {
                    seen[v] = 1;
                    stack.push_back(v);
                }
        }
        reach.push_back(std::move(seen));
    }
    return reach;
}

// Appends the decode rows of one slot pattern. Variables of transmitters are
// numbered from `offset` in node order; returns the number added.
int addPatternRows(const Context& c, const Roles& roles, int offset, LinearProgram& lp) {
    std::vector<int> var(static_cast<std::size_t>(c.n), -1);
    int count = 0;
    for (int i = 0; i < c.n; ++i)
        if (c.txFlow(roles[i]) >= 0) var[i] = offset + count++;
    lp.objective.resize(static_cast<std::size_t>(offset + count), 1.0);
    for (auto& row : lp.geRows) row.coeffs.resize(lp.objective.size(), 0.0);

    const double theta = c.inst.theta;
    for (int j = 0; j < c.n; ++j) {
        const int k = c.rxFlow(roles[j]);
        if (k < 0) continue;
        LinearRow row;
        row.coeffs.assign(lp.objective.size(), 0.0);
        for (int i = 0; i < c.n; ++i) {
            const int f = c.txFlow(roles[i]);
            if (f < 0) continue;
            const double h = c.inst.channel(i, j);
            row.coeffs[static_cast<std::size_t>(var[i])] = f == k ? h : -theta * h;
        }
        row.bound = theta * c.inst.noise;
        lp.geRows.push_back(std::move(row));
    }
    return count;
}

struct PatternValue {
    bool feasible = false;
    double cost = kInfinity;
    std::vector<double> powers;  // per node, 0 for non-transmitters
};

PatternValue solvePattern(const Context& c, const Roles& roles, const LPOptions& opts,
                          OracleResult& stats) {
    PatternValue v;
    v.powers.assign(static_cast<std::size_t>(c.n), 0.0);
    LinearProgram lp;
    const int vars = addPatternRows(c, roles, 0, lp);
    if (lp.geRows.empty()) {
        v.feasible = true;
        v.cost = 0.0;
        return v;
    }
    ++stats.lpSolves;
    LPSolution sol;
    try {
        sol = solveLP(lp, opts);
    } catch (const LPIllConditioned&) {
        ++stats.illConditioned;
        return v;
    }
    if (sol.status != LPStatus::Optimal) return v;
    v.feasible = true;
    v.cost = 0.0;
    for (int i = 0, q = 0; i < c.n && q < vars; ++i)
        if (c.txFlow(roles[i]) >= 0) {
            v.powers[i] = sol.x[static_cast<std::size_t>(q++)];
            v.cost += v.powers[i];
        }
    return v;
}

void appendActions(const Context& c, const Roles& roles, const std::vector<double>& powers,
                   int slot, Schedule& schedule) {
    for (int i = 0; i < c.n; ++i) {
        if (const int k = c.txFlow(roles[i]); k >= 0 && powers[i] > 0.0)
            schedule.action(slot, k).transmitters[i] = powers[i];
        if (const int k = c.rxFlow(roles[i]); k >= 0) schedule.action(slot, k).receivers.insert(i);
    }
    // Actions come out sorted by flow so equal schedules compare equal.
    auto& actions = schedule.at(slot);
    std::sort(actions.begin(), actions.end(),
              [](const SlotAction& a, const SlotAction& b) { return a.flow < b.flow; });
}

// Decoded sets, one bitmask per flow.
using State = std::vector<std::uint64_t>;

bool holds(const State& s, int k, int i) { return (s[static_cast<std::size_t>(k)] >> i) & 1u; }

State initialState(const NetworkInstance& inst) {
    State s;
    for (const FlowSpec& f : inst.flows) s.push_back(std::uint64_t{1} << f.source);
    return s;
}

bool complete(const NetworkInstance& inst, const State& s) {
    for (int k = 0; k < inst.flowCount(); ++k)
        if (!holds(s, k, inst.flows[static_cast<std::size_t>(k)].destination)) return false;
    return true;
}

State advance(const Context& c, State s, const Roles& roles) {
    for (int i = 0; i < c.n; ++i)
        if (const int k = c.rxFlow(roles[i]); k >= 0) s[static_cast<std::size_t>(k)] |= std::uint64_t{1} << i;
    return s;
}

// Enumerates the role patterns open to a state, calling visit(roles) for each.
// With prune set, flows must transmit and receive together and every receiver
// must hear some transmitter of its flow.
template <class Visit>
void enumeratePatterns(const Context& c, const State& s, const std::vector<std::vector<char>>& reach,
                       int maxTx, bool prune, Visit&& visit) {
    Roles roles(static_cast<std::size_t>(c.n), 0);
    std::vector<int> txCount(static_cast<std::size_t>(c.r), 0);

    auto leaf = [&] {
        if (prune) {
            std::vector<char> hasRx(static_cast<std::size_t>(c.r), 0);
            for (int j = 0; j < c.n; ++j) {
                const int k = c.rxFlow(roles[j]);
                if (k < 0) continue;
                hasRx[k] = 1;
                bool heard = false;
                for (int i = 0; i < c.n && !heard; ++i)
                    heard = c.txFlow(roles[i]) == k && c.inst.channel(i, j) > 0.0;
                if (!heard) return;
            }
            for (int k = 0; k < c.r; ++k)
                if ((txCount[k] > 0) != (hasRx[k] != 0)) return;
        }
        visit(roles);
    };

    auto rec = [&](auto&& self, int i) -> void {
        if (i == c.n) {
            leaf();
            return;
        }
        roles[i] = 0;
        self(self, i + 1);
        for (int k = 0; k < c.r; ++k) {
            if (holds(s, k, i)) {
                if (maxTx > 0 && txCount[k] >= maxTx) continue;
                roles[i] = static_cast<char>(1 + k);
                ++txCount[k];
                self(self, i + 1);
                --txCount[k];
            } else if (reach[k][i]) {
                roles[i] = static_cast<char>(1 + c.r + k);
                self(self, i + 1);
            }
        }
        roles[i] = 0;
    };
    rec(rec, 0);
}

void checkGuard(const NetworkInstance& inst, const OracleOptions& options, OracleResult& out) {
    validate(inst);
    if (inst.nodeCount() > 64) throw OracleGuardExceeded(kInfinity, options.guard);
    out.estimate = oracleEstimate(inst, options.maxTransmittersPerFlow);
    if (out.estimate > options.guard) throw OracleGuardExceeded(out.estimate, options.guard);
}

}  // namespace

OracleGuardExceeded::OracleGuardExceeded(double estimate, double guard)
    : std::length_error(estimateMessage(estimate, guard)), estimate_(estimate) {}

double oracleEstimate(const NetworkInstance& instance, int) {
    const auto reach = reachability(instance);
    double patterns = 1.0;
    int pairs = 0;
    for (int i = 0; i < instance.nodeCount(); ++i) {
        int flows = 0;
        for (int k = 0; k < instance.flowCount(); ++k) {
            if (!reach[k][i]) continue;
            ++flows;
            if (i != instance.flows[static_cast<std::size_t>(k)].source) ++pairs;
        }
        patterns *= 1.0 + flows;
    }
    return instance.delay * patterns * std::ldexp(1.0, pairs);
}

OracleResult exactMcue(const NetworkInstance& instance, const OracleOptions& options) {
    OracleResult out;
    checkGuard(instance, options, out);
    const Context c{instance, instance.nodeCount(), instance.flowCount()};
    const auto reach = reachability(instance);
    const int T = instance.delay;

    std::unordered_map<Roles, PatternValue> memo;
    auto value = [&](const Roles& roles) -> const PatternValue& {
        auto it = memo.find(roles);
        if (it == memo.end()) it = memo.emplace(roles, solvePattern(c, roles, options.lp, out)).first;
        return it->second;
    };

    struct Entry {
        double cost = kInfinity;
        State prev;
        Roles roles;
    };
    // layers[t] maps the decoded sets after slot t to the cheapest way there.
    std::vector<std::map<State, Entry>> layers(static_cast<std::size_t>(T) + 1);
    layers[0][initialState(instance)] = Entry{0.0, {}, {}};

    for (int t = 1; t <= T; ++t) {
        auto& next = layers[static_cast<std::size_t>(t)];
        for (const auto& [state, entry] : layers[static_cast<std::size_t>(t - 1)]) {
            const double base = entry.cost;
            enumeratePatterns(c, state, reach, options.maxTransmittersPerFlow, true,
                              [&](const Roles& roles) {
                                  ++out.patterns;
                                  const PatternValue& v = value(roles);
                                  if (!v.feasible) return;
                                  const State to = advance(c, state, roles);
                                  Entry& e = next[to];
                                  if (base + v.cost < e.cost) e = Entry{base + v.cost, state, roles};
                              });
        }
    }

    const State* bestState = nullptr;
    for (const auto& [state, entry] : layers[static_cast<std::size_t>(T)])
        if (complete(instance, state) && entry.cost < out.cost) {
            out.cost = entry.cost;
            bestState = &state;
        }
    out.schedule = Schedule(T);
    if (!bestState) return out;

    out.status = OracleStatus::Optimal;
    State s = *bestState;
    for (int t = T; t >= 1; --t) {
        const Entry& e = layers[static_cast<std::size_t>(t)].at(s);
        appendActions(c, e.roles, memo.at(e.roles).powers, t, out.schedule);
        s = e.prev;
    }
    return out;
}

OracleResult exactMcueUnpruned(const NetworkInstance& instance, const OracleOptions& options) {
    OracleResult out;
    checkGuard(instance, options, out);
    const Context c{instance, instance.nodeCount(), instance.flowCount()};
    const int T = instance.delay;
    // Every node may try to receive every flow it does not hold.
    const std::vector<std::vector<char>> everywhere(
        static_cast<std::size_t>(c.r), std::vector<char>(static_cast<std::size_t>(c.n), 1));

    std::vector<Roles> chosen(static_cast<std::size_t>(T));
    std::vector<Roles> bestRoles;
    std::vector<double> bestX;

    auto solveLeaf = [&] {
        LinearProgram lp;
        int offset = 0;
        for (const Roles& roles : chosen) offset += addPatternRows(c, roles, offset, lp);
        double cost = 0.0;
        std::vector<double> x;
        if (!lp.geRows.empty()) {
            ++out.lpSolves;
            LPSolution sol;
            try {
                sol = solveLP(lp, options.lp);
            } catch (const LPIllConditioned&) {
                ++out.illConditioned;
                return;
            }
            if (sol.status != LPStatus::Optimal) return;
            cost = sol.objective;
            x = sol.x;
        }
        if (cost < out.cost) {
            out.cost = cost;
            bestRoles = chosen;
            bestX = x;
        }
    };

    auto rec = [&](auto&& self, int t, const State& s) -> void {
        if (t == T) {
            if (complete(instance, s)) solveLeaf();
            return;
        }
        enumeratePatterns(c, s, everywhere, options.maxTransmittersPerFlow, false,
                          [&](const Roles& roles) {
                              ++out.patterns;
                              chosen[static_cast<std::size_t>(t)] = roles;
                              self(self, t + 1, advance(c, s, roles));
                          });
    };
    rec(rec, 0, initialState(instance));

    out.schedule = Schedule(T);
    if (out.cost == kInfinity) return out;
    out.status = OracleStatus::Optimal;
    std::size_t q = 0;
    for (int t = 1; t <= T; ++t) {
        const Roles& roles = bestRoles[static_cast<std::size_t>(t - 1)];
        std::vector<double> powers(static_cast<std::size_t>(c.n), 0.0);
        for (int i = 0; i < c.n; ++i)
            if (c.txFlow(roles[i]) >= 0) powers[i] = q < bestX.size() ? bestX[q++] : 0.0;
        appendActions(c, roles, powers, t, out.schedule);
    }
    return out;
}

double exactSingleFlowViaRoles(const NetworkInstance& instance, int k, int T,
                               const OracleOptions& options) {
    NetworkInstance single = instance;
    single.flows = {instance.flows.at(static_cast<std::size_t>(k))};
    single.delay = T;
    return exactMcue(single, options).cost;
}

}  // namespace coopflow
