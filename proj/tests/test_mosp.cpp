#include "coopflow/mosp.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <sstream>

using namespace coopflow;

namespace {

SimpleGraph graph(int n, std::initializer_list<std::pair<int, int>> edges) {
    SimpleGraph g(n);
    for (auto [u, v] : edges) g.addEdge(u, v);
    return g;
}

int crossEdges(const MospInstance& m) {
    int count = 0;
    for (int i = 0; i < m.pairs; ++i)
        for (int j = 0; j < m.pairs; ++j) count += m.gain[i][j] > 0.0;
    return count;
}

}  // namespace

TEST_CASE("reduction structure") {
    const auto k2 = reduceColoring(graph(2, {{0, 1}}));
    CHECK(k2.pairs == 2);
    CHECK(crossEdges(k2) == 4);
    CHECK(k2.noise == doctest::Approx(1.0 / (2.0 * k2.theta)));
    CHECK(crossEdges(reduceColoring(SimpleGraph(4))) == 4);
    CHECK_THROWS_AS(reduceColoring(graph(2, {{0, 1}}), 1.0), std::invalid_argument);
}

TEST_CASE("schedulers on small graphs") {
    const auto empty = reduceColoring(SimpleGraph(5));
    CHECK(greedyMosp(empty).length() == 1);
    CHECK(exactMinSlots(empty) == 1);

    const auto tri = reduceColoring(graph(3, {{0, 1}, {1, 2}, {0, 2}}));
    CHECK(greedyMosp(tri).length() == 3);
    CHECK(exactMinSlots(tri) == 3);

    const auto path = reduceColoring(graph(4, {{0, 1}, {1, 2}, {2, 3}}));
    CHECK(greedyMosp(path).length() == 2);
    CHECK(exactMinSlots(reduceColoring(graph(2, {{0, 1}}))) == 2);
}

TEST_CASE("greedy can be beaten") {
    // Crown-like order where first-fit needs 3 colors on a bipartite graph.
    const auto g = graph(6, {{0, 3}, {1, 2}, {0, 5}, {4, 1}, {2, 5}, {3, 4}});
    const auto m = reduceColoring(g);
    CHECK(exactMinSlots(m) == 2);
    CHECK(greedyMosp(m).length() >= 2);
}

TEST_CASE("verification") {
    const auto k2 = reduceColoring(graph(2, {{0, 1}}));
    CHECK_FALSE(verifyMospSchedule(k2, MospSchedule{{{0, 1}}}).ok);
    CHECK_FALSE(verifyMospSchedule(k2, MospSchedule{{{0}}}).ok);
    CHECK(verifyMospSchedule(k2, MospSchedule{{{0}, {1}}}).ok);
    CHECK_FALSE(verifyMospSchedule(k2, MospSchedule{{{0}, {1}, {1}}}).ok);
}

TEST_CASE("random graphs: chromatic number, greedy bound, independent slots") {
    for (unsigned long long seed = 1; seed <= 30; ++seed) {
        const SimpleGraph g = randomGraph(2 + static_cast<int>(seed % 7), 0.4, seed);
        const auto m = reduceColoring(g);
        const int chi = testkit::exhaustiveChromatic(g);
        const auto exact = exactMospSchedule(m);
        const auto greedy = greedyMosp(m);
        CHECK(exact.length() == chi);
        CHECK(chromaticNumber(g) == chi);
        CHECK(greedy.length() >= exact.length());
        CHECK(greedy.length() <= g.maxDegree() + 1);
        CHECK(verifyMospSchedule(m, exact).ok);
        CHECK(verifyMospSchedule(m, greedy).ok);
        for (const auto& slot : exact.slots)
            for (int a : slot)
                for (int b : slot) CHECK_FALSE(g.adjacent(a, b));
    }
}

TEST_CASE("a slot decodes exactly when its pairs are independent") {
    for (unsigned long long seed = 1; seed <= 10; ++seed) {
        const SimpleGraph g = randomGraph(5, 0.5, 100 + seed);
        const auto m = reduceColoring(g, 1.5);
        for (unsigned mask = 1; mask < 32u; ++mask) {
            std::vector<int> slot;
            for (int v = 0; v < 5; ++v)
                if (mask >> v & 1u) slot.push_back(v);
            bool independent = true;
            for (int a : slot)
                for (int b : slot) independent = independent && !g.adjacent(a, b);
            MospSchedule s{{slot}};
            for (int v = 0; v < 5; ++v)
                if (!(mask >> v & 1u)) s.slots.push_back({v});
            CHECK(verifyMospSchedule(m, s).ok == independent);
        }
    }
}

TEST_CASE("guard and graph files") {
    CHECK_THROWS_AS(exactMinSlots(reduceColoring(SimpleGraph(11))), GuardExceeded);

    std::stringstream in("n 3\nedge 0 1\n# comment\nedge 1 2\n");
    const auto g = readGraph(in);
    CHECK(g.edges().size() == 2);
    std::stringstream out;
    writeGraph(out, g);
    CHECK(out.str() == "n 3\nedge 0 1\nedge 1 2\n");

    std::stringstream dimacs("c tri\np edge 3 3\ne 1 2\ne 2 3\ne 3 1\ne 2 1\n");
    CHECK(readGraph(dimacs, GraphFormat::Dimacs).edges().size() == 3);

    std::stringstream loop("n 2\nedge 1 1\n");
    CHECK_THROWS_AS(readGraph(loop), ParseError);
}
