#include "coopflow/netmodel.hpp"
#include "fixtures.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

using namespace coopflow;

TEST_CASE("generated channels satisfy the matrix invariants") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        GeneratorConfig g;
        g.n = 12;
        g.seed = seed;
        const Topology t = generate(g);
        for (int i = 0; i < g.n; ++i) {
            CHECK(t.channel(i, i) == 0.0);
            for (int j = 0; j < g.n; ++j) {
                CHECK(t.channel(i, j) >= 0.0);
                CHECK(t.channel(i, j) <= 1.0);
                CHECK(t.channel(i, j) == t.channel(j, i));
            }
        }
    }
}

TEST_CASE("generation is a pure function of the config") {
    GeneratorConfig g;
    g.n = 30;
    g.seed = 7;
    const Topology a = generate(g), b = generate(g);
    CHECK(a.channel == b.channel);
    CHECK(a.positions == b.positions);
    g.seed = 8;
    CHECK_FALSE(generate(g).channel == a.channel);
}

TEST_CASE("eta = 0 gives unit-mean gains and shares placement across eta") {
    GeneratorConfig g;
    g.n = 40;
    g.eta = 0.0;
    g.clampGain = false;
    g.seed = 3;
    const Topology flat = generate(g);
    double sum = 0.0;
    int count = 0;
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j) sum += flat.channel(i, j), ++count;
    CHECK(sum / count == doctest::Approx(1.0).epsilon(0.15));
    g.eta = 3.0;
    CHECK(generate(g).positions == flat.positions);
}

TEST_CASE("asymmetric mode draws each direction") {
    GeneratorConfig g;
    g.n = 10;
    g.reciprocal = false;
    const Topology t = generate(g);
    int differ = 0;
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j) differ += t.channel(i, j) != t.channel(j, i);
    CHECK(differ > 0);
}

TEST_CASE("mean gain at distance about 5 follows d^-eta") {
    double sum = 0.0;
    int count = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        GeneratorConfig g;
        g.n = 100;
        g.seed = 6 + seed;
        g.clampGain = false;
        const Topology t = generate(g);
        for (int i = 0; i < g.n; ++i)
            for (int j = i + 1; j < g.n; ++j) {
                const double d = std::hypot(t.positions[i].x - t.positions[j].x,
                                            t.positions[i].y - t.positions[j].y);
                if (std::abs(d - 5.0) < 0.25) sum += t.channel(i, j), ++count;
            }
    }
    REQUIRE(count > 100);
    CHECK(sum / count == doctest::Approx(std::pow(5.0, -2.0)).epsilon(0.2));
}

TEST_CASE("drawFlows gives distinct endpoints deterministically") {
    const auto a = drawFlows(20, 5, 11);
    CHECK(a == drawFlows(20, 5, 11));
    std::set<NodeId> seen;
    for (const auto& f : a) {
        CHECK(f.source != f.destination);
        seen.insert(f.source);
        seen.insert(f.destination);
    }
    CHECK(seen.size() == 10);
    CHECK_THROWS_AS(drawFlows(5, 3, 1), InstanceError);
}

TEST_CASE("instance text round trip") {
    GeneratorConfig g;
    g.n = 6;
    g.seed = 5;
    NetworkInstance inst = makeInstance(generate(g), 0.7, 1.3, drawFlows(6, 2, 5), 4);
    std::stringstream ss;
    writeInstance(ss, inst);
    CHECK(readInstance(ss) == inst);

    NetworkInstance line = testkit::lineInstance();
    std::stringstream s2;
    writeInstance(s2, line);
    CHECK(readInstance(s2) == line);
}

TEST_CASE("instance validation messages") {
    NetworkInstance inst = testkit::lineInstance();
    inst.channel(0, 1) = 1.5;
    CHECK_THROWS_WITH_AS(validate(inst), doctest::Contains("gain out of range"), InstanceError);

    inst = testkit::lineInstance();
    inst.flows = {{2, 2}};
    CHECK_THROWS_WITH_AS(validate(inst), doctest::Contains("source equals destination"), InstanceError);

    inst = testkit::twoLines();
    inst.flows[1].source = 2;
    CHECK_THROWS_AS(validate(inst), InstanceError);

    inst = testkit::lineInstance();
    inst.delay = 0;
    CHECK_THROWS_AS(validate(inst), InstanceError);
}

TEST_CASE("reader reports the offending line") {
    std::stringstream ss("coopflow-instance v1\nn 3\nnoise x\n");
    try {
        readInstance(ss);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }

    std::stringstream bad;
    NetworkInstance inst = testkit::lineInstance();
    writeInstance(bad, inst);
    std::string text = bad.str();
    text.replace(text.find("flow 0 2"), 8, "flow 1 1");
    std::stringstream in(text);
    CHECK_THROWS_WITH(readInstance(in), doctest::Contains("source equals destination"));
}
