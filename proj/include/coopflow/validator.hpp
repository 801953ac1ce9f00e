#pragma once

#include "coopflow/netmodel.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace coopflow {

/// What one flow does in one slot: who transmits with what power, and which
/// nodes claim to decode.
struct SlotAction {
    int flow = 0;
    std::map<NodeId, double> transmitters;
    std::set<NodeId> receivers;

    bool operator==(const SlotAction&) const = default;
};

/// Slots are numbered 1..delay; slots[t - 1] holds the actions of slot t.
struct Schedule {
    int delay = 0;
    std::vector<std::vector<SlotAction>> slots;

    Schedule() = default;
    explicit Schedule(int delay) : delay(delay), slots(static_cast<std::size_t>(delay)) {}

    std::vector<SlotAction>& at(int slot) { return slots[static_cast<std::size_t>(slot - 1)]; }
    const std::vector<SlotAction>& at(int slot) const {
        return slots[static_cast<std::size_t>(slot - 1)];
    }

    /// Returns the action of `flow` in `slot`, creating an empty one if absent.
    SlotAction& action(int slot, int flow);

    bool operator==(const Schedule&) const = default;
};

inline constexpr double kDefaultDecodeTolerance = 1e-7;

struct DecodeMargin {
    NodeId node = 0;
    int flow = 0;
    int slot = 0;
    /// Received same-flow power minus theta times (interference + noise).
    double margin = 0.0;
};

/// Margin of `node` for `flow` given the actions of a single slot.
double decodeMargin(const NetworkInstance& instance, const std::vector<SlotAction>& slotActions,
                    NodeId node, int flow, double theta);

DecodeMargin decodeCheck(const NetworkInstance& instance, const Schedule& schedule, NodeId node,
                         int flow, int slot);

enum class ViolationKind {
    NegativePower,
    DuplicateFlowAction,
    TransmitAndReceive,
    MultipleRoles,
    TransmitBeforeDecode,
    DecodeFailure,
    DestinationNeverDecodes,
};

std::string toString(ViolationKind kind);

struct Violation {
    ViolationKind kind;
    int slot = 0;  // 0 when not tied to a slot
    NodeId node = -1;
    int flow = -1;
    std::string detail;

    bool operator==(const Violation&) const = default;
};

std::string describe(const Violation& v);

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }

    bool operator==(const ValidationReport&) const = default;
};

/// Thrown when a schedule does not even fit the instance (delay, node or flow
/// indices out of range).
class ScheduleShapeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Audits every schedule constraint. Decode claims are re-verified against the
/// SINR condition of their own slot at the instance threshold; a claim that
/// fails does not count as a decode for later causality checks. Violations
/// are reported in a canonical order, so the report does not depend on how
/// actions are ordered inside a slot.
ValidationReport validateSchedule(const NetworkInstance& instance, const Schedule& schedule,
                                  double tolerance = kDefaultDecodeTolerance);

double totalPower(const Schedule& schedule);

void writeSchedule(std::ostream& out, const Schedule& schedule);
Schedule readSchedule(std::istream& in);
void saveSchedule(const Schedule& schedule, const std::filesystem::path& path);
Schedule loadSchedule(const std::filesystem::path& path);

}  // namespace coopflow
