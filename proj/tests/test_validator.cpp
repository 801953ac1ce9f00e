#include "coopflow/validator.hpp"
#include "fixtures.hpp"

#include <doctest.h>

#include <algorithm>
#include <sstream>

using namespace coopflow;
using testkit::lineInstance;

namespace {

Schedule relay(double p1 = 1.0, double p2 = 1.0) {
    Schedule s(2);
    s.action(1, 0) = {0, {{0, p1}}, {1}};
    s.action(2, 0) = {0, {{1, p2}}, {2}};
    return s;
}

bool has(const ValidationReport& r, ViolationKind kind) {
    return std::any_of(r.violations.begin(), r.violations.end(),
                       [&](const Violation& v) { return v.kind == kind; });
}

}  // namespace

TEST_CASE("a tight two-hop relay is valid") {
    const auto r = validateSchedule(lineInstance(), relay());
    CHECK(r.ok());
    CHECK(totalPower(relay()) == 2.0);
}

TEST_CASE("insufficient power fails to decode and breaks causality") {
    const auto r = validateSchedule(lineInstance(), relay(0.5));
    CHECK((has(r, ViolationKind::DecodeFailure)));
    CHECK((has(r, ViolationKind::TransmitBeforeDecode)));
    CHECK((has(r, ViolationKind::DestinationNeverDecodes)));
}

TEST_CASE("decode tolerance admits tiny shortfalls only") {
    CHECK(validateSchedule(lineInstance(), relay(1.0 - 1e-9)).ok());
    CHECK_FALSE(validateSchedule(lineInstance(), relay(1.0 - 1e-5)).ok());
}

TEST_CASE("half-duplex and role violations") {
    NetworkInstance inst = testkit::twoLines();
    Schedule s(2);
    s.action(1, 0) = {0, {{0, 1.0}}, {1}};
    s.action(1, 1) = {1, {{3, 1.0}}, {1}};
    auto r = validateSchedule(inst, s);
    CHECK((has(r, ViolationKind::MultipleRoles)));
    CHECK((has(r, ViolationKind::TransmitBeforeDecode) == false));

    Schedule t(2);
    t.action(1, 0) = {0, {{0, 1.0}}, {0, 1}};
    CHECK((has(validateSchedule(lineInstance(), t), ViolationKind::TransmitAndReceive)));

    Schedule u = relay();
    u.at(1).push_back({0, {}, {}});
    CHECK((has(validateSchedule(lineInstance(), u), ViolationKind::DuplicateFlowAction)));

    Schedule v = relay();
    v.action(2, 0).transmitters[1] = -1.0;
    CHECK((has(validateSchedule(lineInstance(), v), ViolationKind::NegativePower)));
}

TEST_CASE("cross-flow interference counts against decoding") {
    // 0 -> 1 and 2 -> 3 with 2 also reaching 1.
    NetworkInstance inst = testkit::linkInstance(4, {{0, 1, 1.0}, {2, 3, 1.0}, {2, 1, 0.5}},
                                                 {{0, 1}, {2, 3}}, 1);
    Schedule s(1);
    s.action(1, 0) = {0, {{0, 1.0}}, {1}};
    s.action(1, 1) = {1, {{2, 1.0}}, {3}};
    auto r = validateSchedule(inst, s);
    const auto failed = std::find_if(r.violations.begin(), r.violations.end(), [](const Violation& v) {
        return v.kind == ViolationKind::DecodeFailure;
    });
    REQUIRE(failed != r.violations.end());
    CHECK(failed->node == 1);
    s.action(1, 0).transmitters[0] = 1.5;
    CHECK(validateSchedule(inst, s).ok());
}

TEST_CASE("energy accumulates across same-flow transmitters") {
    NetworkInstance inst = testkit::linkInstance(3, {{0, 2, 0.5}, {1, 2, 0.5}, {0, 1, 1.0}}, {{0, 2}}, 2);
    Schedule s(2);
    s.action(1, 0) = {0, {{0, 1.0}}, {1}};
    s.action(2, 0) = {0, {{0, 1.0}, {1, 1.0}}, {2}};
    CHECK(validateSchedule(inst, s).ok());
    CHECK(decodeCheck(inst, s, 2, 0, 2).margin == doctest::Approx(0.0));
}

TEST_CASE("report order does not depend on action order") {
    NetworkInstance inst = testkit::twoLines();
    Schedule a(2), b(2);
    a.at(1) = {{0, {{0, 0.1}}, {1}}, {1, {{3, 0.1}}, {4}}};
    b.at(1) = {a.at(1)[1], a.at(1)[0]};
    CHECK(validateSchedule(inst, a).violations == validateSchedule(inst, b).violations);
}

TEST_CASE("shape errors") {
    Schedule s(3);
    CHECK_THROWS_AS(validateSchedule(lineInstance(2), s), ScheduleShapeError);
    Schedule t(2);
    t.action(1, 4);
    CHECK_THROWS_AS(validateSchedule(lineInstance(2), t), ScheduleShapeError);
}

TEST_CASE("schedule text round trip") {
    Schedule s = relay(0.123456789012345, 1.0 / 3.0);
    std::stringstream ss;
    writeSchedule(ss, s);
    CHECK(readSchedule(ss) == s);
}
