#include "coopflow/pam.hpp"
#include "fixtures.hpp"

#include <doctest.h>

using namespace coopflow;

namespace {

// Flow 0: 0 -> 1. Flow 1: 2 -> 3, with 2 also reaching 1 at gain g and 0 reaching 3 at gain g.
NetworkInstance crossed(double g) {
    return testkit::linkInstance(5, {{0, 1, 1.0}, {2, 3, 1.0}, {2, 1, g}, {0, 3, g}, {4, 3, 0.5}},
                                 {{0, 1}, {2, 3}}, 2);
}

PamRequest request(int flow, int slot, std::vector<NodeId> tx, std::vector<NodeId> rx, double theta) {
    PamRequest r;
    r.flow = flow;
    r.slot = slot;
    r.transmitters = std::move(tx);
    r.receivers = std::move(rx);
    r.theta = theta;
    return r;
}

}  // namespace

TEST_CASE("empty blacklist reduces to the direct cost") {
    const auto inst = testkit::linkInstance(2, {{0, 1, 0.5}}, {{0, 1}}, 1, 1.0, 2.0);
    const Blacklist bl(1);
    const auto res = pam(inst, request(0, 1, {0}, {1}, 2.0), bl, {});
    REQUIRE(res.feasible());
    CHECK(res.omega == doctest::Approx(4.0));
    CHECK(res.powers.at(0) == doctest::Approx(4.0));
}

TEST_CASE("no receivers costs nothing") {
    const auto inst = testkit::lineInstance();
    const auto res = pam(inst, request(0, 1, {0}, {}, 1.0), Blacklist(2), {});
    CHECK(res.feasible());
    CHECK(res.omega == 0.0);
}

TEST_CASE("committed interference raises the cost and earlier receivers are protected") {
    const auto inst = crossed(0.25);
    Blacklist bl(2);
    bl.addFlow(0, 1.5);
    bl.commit(0, 1, {{0, 3.0}}, {1});
    const auto dist = disturbanceThresholds(inst, bl, DisturbanceMode::TrueTheta);
    CHECK(dist.at(0) == 1.0);

    // Flow 1 at theta 1: needs p2 >= 1 + 0.25*3 = 1.75 at node 3.
    // Node 1 must keep 3 >= 1*(1 + 0.25 p2), so p2 <= 8.
    const auto res = pam(inst, request(1, 1, {2}, {3}, 1.0), bl, dist);
    REQUIRE(res.feasible());
    CHECK(res.omega == doctest::Approx(1.75));
    const auto lp = buildPamProgram(inst, request(1, 1, {2}, {3}, 1.0), bl, dist);
    CHECK(lp.geRows.size() == 2);

    // At the scheduling threshold of flow 0 there is no headroom: 3 >= 1.5 (1 + 0.25 p2) forces p2 <= 4.
    const auto raised = disturbanceThresholds(inst, bl, DisturbanceMode::SchedulingTheta);
    CHECK(raised.at(0) == 1.5);
    const auto tight = pam(inst, request(1, 1, {2}, {3}, 1.0), bl, raised);
    REQUIRE(tight.feasible());
    CHECK(tight.omega == doctest::Approx(1.75));
}

TEST_CASE("protection can make a transition infeasible") {
    const auto inst = crossed(1.0);
    Blacklist bl(2);
    bl.addFlow(0, 1.0);
    bl.commit(0, 1, {{0, 1.0}}, {1});  // exactly tight at node 1
    const auto dist = disturbanceThresholds(inst, bl, DisturbanceMode::TrueTheta);
    const auto res = pam(inst, request(1, 1, {2}, {3}, 1.0), bl, dist);
    CHECK_FALSE(res.feasible());
    CHECK_FALSE(res.receiverBlacklisted);
    // A different slot is free.
    CHECK(pam(inst, request(1, 2, {2}, {3}, 1.0), bl, dist).feasible());
}

TEST_CASE("blacklisted receivers and transmitters") {
    const auto inst = crossed(0.0);
    Blacklist bl(2);
    bl.addFlow(0, 1.0);
    bl.commit(0, 1, {{0, 1.0}}, {1});
    const auto dist = disturbanceThresholds(inst, bl, DisturbanceMode::TrueTheta);

    const auto busyRx = pam(inst, request(1, 1, {2}, {1}, 1.0), bl, dist);
    CHECK_FALSE(busyRx.feasible());
    CHECK(busyRx.receiverBlacklisted);

    // Node 0 is busy; only node 4 may carry flow 1 into node 3.
    const auto res = pam(inst, request(1, 1, {0, 4}, {3}, 1.0), bl, dist);
    REQUIRE(res.feasible());
    CHECK(res.powers.at(0) == 0.0);
    CHECK(res.powers.at(4) == doctest::Approx(2.0));
    CHECK_FALSE(pam(inst, request(1, 1, {0}, {3}, 1.0), bl, dist).feasible());
}

TEST_CASE("overlapping sets are rejected") {
    const auto inst = testkit::lineInstance();
    CHECK_THROWS_AS(pam(inst, request(0, 1, {0, 1}, {1}, 1.0), Blacklist(2), {}), std::invalid_argument);
}

TEST_CASE("blacklist bookkeeping") {
    Blacklist bl(2);
    CHECK_THROWS_AS(bl.commit(0, 1, {{0, 1.0}}, {1}), std::logic_error);
    bl.addFlow(0, 2.0);
    bl.commit(0, 1, {{0, 1.0}}, {1});
    CHECK(bl.contains(1, 0));
    CHECK(bl.contains(1, 1));
    CHECK_FALSE(bl.contains(2, 0));
    bl.addFlow(1, 1.0);
    CHECK_THROWS_AS(bl.commit(1, 1, {{1, 1.0}}, {2}), std::logic_error);
    CHECK_THROWS_AS(bl.commit(1, 2, {{2, 0.0}}, {3}), std::logic_error);
    bl.commit(1, 2, {{2, 1.0}}, {3});
    const Blacklist before = bl.before(1);
    CHECK(before.flows() == std::vector<int>{0});
    CHECK_FALSE(before.contains(2, 2));
    CHECK(before.contains(1, 0));
}
