#include "coopflow/mosp.hpp"

#include "coopflow/netmodel.hpp"
#include "textio.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

namespace coopflow {

SimpleGraph::SimpleGraph(int n) : n_(n), adj_(static_cast<std::size_t>(n), std::vector<char>(n, 0)) {
    if (n < 0) throw std::invalid_argument("negative vertex count");
}

void SimpleGraph::addEdge(int u, int v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
        throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self-loop at " + std::to_string(u));
    if (u > v) std::swap(u, v);
    if (!edges_.insert({u, v}).second)
        throw std::invalid_argument("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    adj_[u][v] = adj_[v][u] = 1;
}

bool SimpleGraph::adjacent(int u, int v) const { return adj_[u][v] != 0; }

int SimpleGraph::degree(int v) const {
    return static_cast<int>(std::count(adj_[v].begin(), adj_[v].end(), 1));
}

int SimpleGraph::maxDegree() const {
    int d = 0;
    for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
    return d;
}

SimpleGraph randomGraph(int n, double p, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    SimpleGraph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < p) g.addEdge(u, v);
    return g;
}

SimpleGraph readGraph(std::istream& in, GraphFormat format) {
    LineReader reader(in);
    auto addEdge = [&](SimpleGraph& g, int u, int v) {
        try {
            g.addEdge(u, v);
        } catch (const std::invalid_argument& e) {
            reader.fail(e.what());
        }
    };

    if (format == GraphFormat::EdgeList) {
        SimpleGraph g(reader.keyedInt("n"));
        while (auto tokens = reader.tryNext()) {
            const auto& t = *tokens;
            if (t.size() != 3 || t[0] != "edge") reader.fail("expected 'edge <u> <v>'");
            addEdge(g, reader.toInt(t[1], "u"), reader.toInt(t[2], "v"));
        }
        return g;
    }

    SimpleGraph g;
    bool header = false;
    while (auto tokens = reader.tryNext()) {
        const auto& t = *tokens;
        if (t[0] == "c") continue;
        if (t[0] == "p") {
            if (header || t.size() != 4 || (t[1] != "edge" && t[1] != "col"))
                reader.fail("expected a single 'p edge <n> <m>' line");
            g = SimpleGraph(reader.toInt(t[2], "n"));
            header = true;
        } else if (t[0] == "e") {
            if (!header || t.size() != 3) reader.fail("expected 'e <u> <v>' after the header");
            const int u = reader.toInt(t[1], "u") - 1, v = reader.toInt(t[2], "v") - 1;
            // DIMACS files often list both directions of an edge.
            if (u >= 0 && v >= 0 && u < g.size() && v < g.size() && u != v && g.adjacent(u, v))
                continue;
            addEdge(g, u, v);
        } else {
            reader.fail("unexpected '" + t[0] + "'");
        }
    }
    if (!header) reader.fail("missing 'p edge' header");
    return g;
}

SimpleGraph loadGraph(const std::filesystem::path& path, GraphFormat format) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return readGraph(in, format);
}

void writeGraph(std::ostream& out, const SimpleGraph& g) {
    out << "n " << g.size() << '\n';
    for (const auto& [u, v] : g.edges()) out << "edge " << u << ' ' << v << '\n';
}

MospInstance reduceColoring(const SimpleGraph& g, double theta) {
    if (!(theta > 1.0)) throw std::invalid_argument("MOSP reduction needs theta > 1");
    MospInstance m;
    m.pairs = g.size();
    m.theta = theta;
    m.noise = 1.0 / (2.0 * theta);
    m.gain.assign(static_cast<std::size_t>(m.pairs), std::vector<double>(m.pairs, 0.0));
    for (int i = 0; i < m.pairs; ++i) m.gain[i][i] = 1.0;
    for (const auto& [u, v] : g.edges()) m.gain[u][v] = m.gain[v][u] = 1.0;
    return m;
}

namespace {

bool decodes(const MospInstance& m, const std::vector<int>& active, int pair) {
    double interference = 0.0;
    for (int q : active)
        if (q != pair) interference += m.gain[q][pair];
    return m.gain[pair][pair] >= m.theta * (interference + m.noise);
}

bool slotOk(const MospInstance& m, const std::vector<int>& active) {
    for (int p : active)
        if (!decodes(m, active, p)) return false;
    return true;
}

// Two pairs conflict when they cannot share a slot. With unit gains and theta > 1 a
// single interferer already blocks decoding, so pairwise conflicts are exact.
std::vector<std::vector<char>> conflicts(const MospInstance& m) {
    std::vector<std::vector<char>> c(static_cast<std::size_t>(m.pairs), std::vector<char>(m.pairs, 0));
    for (int i = 0; i < m.pairs; ++i)
        for (int j = 0; j < m.pairs; ++j)
            if (i != j && !slotOk(m, {i, j})) c[i][j] = 1;
    return c;
}

class Dsatur {
public:
    Dsatur(const MospInstance& m) : m_(m), conflict_(conflicts(m)), color_(m.pairs, -1) {}

    MospSchedule solve() {
        const MospSchedule greedy = greedyMosp(m_);
        best_ = greedy.length();
        bestColor_.assign(static_cast<std::size_t>(m_.pairs), 0);
        for (int t = 0; t < greedy.length(); ++t)
            for (int p : greedy.slots[t]) bestColor_[p] = t;
        if (m_.pairs > 0) search(0, 0);
        MospSchedule out;
        out.slots.resize(static_cast<std::size_t>(best_));
        for (int p = 0; p < m_.pairs; ++p) out.slots[bestColor_[p]].push_back(p);
        return out;
    }

private:
    int pick() const {
        int best = -1, bestSat = -1, bestDeg = -1;
        for (int v = 0; v < m_.pairs; ++v) {
            if (color_[v] >= 0) continue;
            std::set<int> seen;
            int deg = 0;
            for (int u = 0; u < m_.pairs; ++u) {
                if (!conflict_[v][u]) continue;
                if (color_[u] >= 0) seen.insert(color_[u]);
                else ++deg;
            }
            const int sat = static_cast<int>(seen.size());
            if (sat > bestSat || (sat == bestSat && deg > bestDeg)) {
                best = v;
                bestSat = sat;
                bestDeg = deg;
            }
        }
        return best;
    }

    void search(int colored, int used) {
        if (used >= best_) return;
        if (colored == m_.pairs) {
            best_ = used;
            bestColor_ = color_;
            return;
        }
        const int v = pick();
        for (int c = 0; c <= used; ++c) {
            if (std::max(used, c + 1) >= best_) break;
            bool free = true;
            for (int u = 0; u < m_.pairs && free; ++u)
                if (conflict_[v][u] && color_[u] == c) free = false;
            if (!free) continue;
            color_[v] = c;
            search(colored + 1, std::max(used, c + 1));
            color_[v] = -1;
        }
    }

    const MospInstance& m_;
    std::vector<std::vector<char>> conflict_;
    std::vector<int> color_;
    std::vector<int> bestColor_;
    int best_ = 0;
};

}  // namespace

MospSchedule greedyMosp(const MospInstance& instance) {
    MospSchedule s;
    for (int p = 0; p < instance.pairs; ++p) {
        bool placed = false;
        for (auto& slot : s.slots) {
            slot.push_back(p);
            if (slotOk(instance, slot)) {
                placed = true;
                break;
            }
            slot.pop_back();
        }
        if (!placed) s.slots.push_back({p});
    }
    return s;
}

MospSchedule exactMospSchedule(const MospInstance& instance, int guard) {
    if (instance.pairs > guard)
        throw GuardExceeded("exact MOSP search refused: " + std::to_string(instance.pairs) +
                            " pairs exceed the guard of " + std::to_string(guard));
    return Dsatur(instance).solve();
}

int exactMinSlots(const MospInstance& instance, int guard) {
    return exactMospSchedule(instance, guard).length();
}

namespace {

bool colorable(const SimpleGraph& g, int k, std::vector<int>& color, int v) {
    if (v == g.size()) return true;
    for (int c = 0; c < k; ++c) {
        bool ok = true;
        for (int u = 0; u < v && ok; ++u) ok = !(g.adjacent(u, v) && color[u] == c);
        if (!ok) continue;
        color[v] = c;
        if (colorable(g, k, color, v + 1)) return true;
    }
    return false;
}

}  // namespace

int chromaticNumber(const SimpleGraph& g, int guard) {
    if (g.size() > guard)
        throw GuardExceeded("coloring search refused: " + std::to_string(g.size()) +
                            " vertices exceed the guard of " + std::to_string(guard));
    if (g.size() == 0) return 0;
    std::vector<int> color(static_cast<std::size_t>(g.size()), -1);
    int k = 1;
    while (!colorable(g, k, color, 0)) ++k;
    return k;
}

MospCheck verifyMospSchedule(const MospInstance& instance, const MospSchedule& schedule) {
    MospCheck check;
    std::vector<int> seen(static_cast<std::size_t>(instance.pairs), 0);
    for (int t = 0; t < schedule.length(); ++t) {
        const auto& slot = schedule.slots[t];
        for (int p : slot) {
            if (p < 0 || p >= instance.pairs) {
                check.violations.push_back("slot " + std::to_string(t + 1) + ": unknown pair " +
                                           std::to_string(p));
                continue;
            }
            ++seen[p];
            if (!decodes(instance, slot, p))
                check.violations.push_back("slot " + std::to_string(t + 1) + ": pair " +
                                           std::to_string(p) + " does not decode");
        }
    }
    for (int p = 0; p < instance.pairs; ++p)
        if (seen[p] != 1)
            check.violations.push_back("pair " + std::to_string(p) + " scheduled " +
                                       std::to_string(seen[p]) + " times");
    check.ok = check.violations.empty();
    return check;
}

}  // namespace coopflow
