#pragma once

#include <filesystem>
#include <iosfwd>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace coopflow {

/// Undirected graph without loops or parallel edges. Edges are stored (u, v) with u < v.
class SimpleGraph {
public:
    SimpleGraph() = default;
    explicit SimpleGraph(int n);

    int size() const { return n_; }
    /// Throws std::invalid_argument on a loop or an out-of-range endpoint;
    /// duplicates are rejected too.
    void addEdge(int u, int v);
    bool adjacent(int u, int v) const;
    const std::set<std::pair<int, int>>& edges() const { return edges_; }
    int degree(int v) const;
    int maxDegree() const;

private:
    int n_ = 0;
    std::set<std::pair<int, int>> edges_;
    std::vector<std::vector<char>> adj_;
};

/// G(n, p) with a seeded mt19937_64.
SimpleGraph randomGraph(int n, double p, unsigned long long seed);

enum class GraphFormat { EdgeList, Dimacs };

/// `n <int>` then `edge <u> <v>` (0-based), or DIMACS `p edge n m` / `e u v` (1-based).
SimpleGraph readGraph(std::istream& in, GraphFormat format = GraphFormat::EdgeList);
SimpleGraph loadGraph(const std::filesystem::path& path, GraphFormat format = GraphFormat::EdgeList);
void writeGraph(std::ostream& out, const SimpleGraph& g);

/// One-hop pairs (u_i -> u'_i) with unit transmit power. gain[i][j] is the gain
/// from source u_i to receiver u'_j.
struct MospInstance {
    int pairs = 0;
    std::vector<std::vector<double>> gain;
    double theta = 2.0;
    double noise = 0.25;
};

/// Pair i hears its own source and the source of every neighbour of v_i, all at gain 1.
/// Noise is 1/(2 theta). Throws std::invalid_argument unless theta > 1.
MospInstance reduceColoring(const SimpleGraph& g, double theta = 2.0);

/// slots[t] holds the pairs transmitting in slot t.
struct MospSchedule {
    std::vector<std::vector<int>> slots;

    int length() const { return static_cast<int>(slots.size()); }
};

/// Pairs 0..n-1 in order, each into the first slot where every pair still decodes.
MospSchedule greedyMosp(const MospInstance& instance);

inline constexpr int kMospGuard = 10;

class GuardExceeded : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Minimum schedule length (DSATUR branch and bound). Refuses more than `guard` pairs.
int exactMinSlots(const MospInstance& instance, int guard = kMospGuard);
/// Same search, returning an optimal schedule.
MospSchedule exactMospSchedule(const MospInstance& instance, int guard = kMospGuard);

/// Chromatic number by backtracking k-colorings of g itself, k = 1, 2, ...
int chromaticNumber(const SimpleGraph& g, int guard = kMospGuard);

struct MospCheck {
    bool ok = true;
    std::vector<std::string> violations;
};

/// Every pair appears in exactly one slot and decodes there under unit powers.
MospCheck verifyMospSchedule(const MospInstance& instance, const MospSchedule& schedule);

}  // namespace coopflow
