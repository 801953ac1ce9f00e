#include "coopflow/validator.hpp"

#include "textio.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <tuple>

namespace coopflow {

SlotAction& Schedule::action(int slot, int flow) {
    auto& actions = at(slot);
    for (SlotAction& a : actions)
        if (a.flow == flow) return a;
    actions.push_back(SlotAction{flow, {}, {}});
    return actions.back();
}

double decodeMargin(const NetworkInstance& instance, const std::vector<SlotAction>& slotActions,
                    NodeId node, int flow, double theta) {
    double signal = 0.0;
    double interference = 0.0;
    for (const SlotAction& a : slotActions) {
        for (const auto& [tx, power] : a.transmitters) {
            const double received = power * instance.channel(tx, node);
            if (a.flow == flow)
                signal += received;
            else
                interference += received;
        }
    }
    return signal - theta * (interference + instance.noise);
}

DecodeMargin decodeCheck(const NetworkInstance& instance, const Schedule& schedule, NodeId node,
                         int flow, int slot) {
    if (slot < 1 || slot > schedule.delay)
        throw ScheduleShapeError("slot " + std::to_string(slot) + " outside schedule");
    return {node, flow, slot,
            decodeMargin(instance, schedule.at(slot), node, flow, instance.theta)};
}

std::string toString(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::NegativePower: return "negative power";
        case ViolationKind::DuplicateFlowAction: return "duplicate flow action";
        case ViolationKind::TransmitAndReceive: return "transmit and receive in one slot";
        case ViolationKind::MultipleRoles: return "multiple roles in one slot";
        case ViolationKind::TransmitBeforeDecode: return "transmit before decode";
        case ViolationKind::DecodeFailure: return "decode failure";
        case ViolationKind::DestinationNeverDecodes: return "destination never decodes";
    }
    return "unknown";
}

std::string describe(const Violation& v) {
    std::string s = toString(v.kind);
    if (v.slot > 0) s += " slot=" + std::to_string(v.slot);
    if (v.node >= 0) s += " node=" + std::to_string(v.node);
    if (v.flow >= 0) s += " flow=" + std::to_string(v.flow);
    if (!v.detail.empty()) s += " (" + v.detail + ")";
    return s;
}

namespace {

void checkShape(const NetworkInstance& instance, const Schedule& schedule) {
    if (schedule.delay < 0 || static_cast<int>(schedule.slots.size()) != schedule.delay)
        throw ScheduleShapeError("schedule slot list does not match its delay");
    if (schedule.delay > instance.delay)
        throw ScheduleShapeError("schedule uses " + std::to_string(schedule.delay) +
                                 " slots, instance allows " + std::to_string(instance.delay));
    const int n = instance.nodeCount();
    for (const auto& actions : schedule.slots) {
        for (const SlotAction& a : actions) {
            if (a.flow < 0 || a.flow >= instance.flowCount())
                throw ScheduleShapeError("flow index " + std::to_string(a.flow) + " out of range");
            for (const auto& [node, power] : a.transmitters) {
                (void)power;
                if (node < 0 || node >= n)
                    throw ScheduleShapeError("node " + std::to_string(node) + " out of range");
            }
            for (NodeId node : a.receivers)
                if (node < 0 || node >= n)
                    throw ScheduleShapeError("node " + std::to_string(node) + " out of range");
        }
    }
}

}  // namespace

ValidationReport validateSchedule(const NetworkInstance& instance, const Schedule& schedule,
                                  double tolerance) {
    checkShape(instance, schedule);

    const int n = instance.nodeCount();
    const int r = instance.flowCount();
    ValidationReport report;
    auto add = [&](ViolationKind kind, int slot, NodeId node, int flow, std::string detail = {}) {
        report.violations.push_back({kind, slot, node, flow, std::move(detail)});
    };

    // holds[k][i]: node i has the message of flow k at the start of the current slot.
    std::vector<std::vector<char>> holds(r, std::vector<char>(n, 0));
    for (int k = 0; k < r; ++k) holds[k][instance.flows[k].source] = 1;

    for (int t = 1; t <= schedule.delay; ++t) {
        const auto& actions = schedule.at(t);
        std::vector<int> roles(n, 0);
        std::vector<int> seenFlow(r, 0);

        for (const SlotAction& a : actions) {
            if (seenFlow[a.flow]++ == 1) add(ViolationKind::DuplicateFlowAction, t, -1, a.flow);
            for (const auto& [node, power] : a.transmitters) {
                if (!(power >= 0.0))
                    add(ViolationKind::NegativePower, t, node, a.flow,
                        "power " + formatReal(power));
                if (power > 0.0) {
                    ++roles[node];
                    if (!holds[a.flow][node]) add(ViolationKind::TransmitBeforeDecode, t, node, a.flow);
                    if (a.receivers.count(node)) add(ViolationKind::TransmitAndReceive, t, node, a.flow);
                }
            }
            for (NodeId node : a.receivers) ++roles[node];
        }
        for (NodeId i = 0; i < n; ++i)
            if (roles[i] > 1) add(ViolationKind::MultipleRoles, t, i, -1);

        // A transmitter without the message carries nothing decodable; it is
        // already reported above and contributes no signal here.
        std::vector<SlotAction> effective = actions;
        for (SlotAction& a : effective)
            std::erase_if(a.transmitters, [&](const auto& e) { return !holds[a.flow][e.first]; });

        std::vector<std::pair<int, NodeId>> decoded;
        for (const SlotAction& a : actions) {
            for (NodeId node : a.receivers) {
                const double margin = decodeMargin(instance, effective, node, a.flow, instance.theta);
                if (margin >= -tolerance)
                    decoded.emplace_back(a.flow, node);
                else
                    add(ViolationKind::DecodeFailure, t, node, a.flow, "margin " + formatReal(margin));
            }
        }
        for (auto [k, node] : decoded) holds[k][node] = 1;
    }

    for (int k = 0; k < r; ++k)
        if (!holds[k][instance.flows[k].destination])
            add(ViolationKind::DestinationNeverDecodes, 0, instance.flows[k].destination, k);

    std::sort(report.violations.begin(), report.violations.end(),
              [](const Violation& a, const Violation& b) {
                  return std::tie(a.slot, a.node, a.flow, a.kind, a.detail) <
                         std::tie(b.slot, b.node, b.flow, b.kind, b.detail);
              });
    report.violations.erase(std::unique(report.violations.begin(), report.violations.end()),
                            report.violations.end());
    return report;
}

double totalPower(const Schedule& schedule) {
    double total = 0.0;
    for (const auto& actions : schedule.slots)
        for (const SlotAction& a : actions)
            for (const auto& [node, power] : a.transmitters) {
                (void)node;
                total += power;
            }
    return total;
}

void writeSchedule(std::ostream& out, const Schedule& schedule) {
    out << "coopflow-schedule v1\n";
    out << "delay " << schedule.delay << '\n';
    for (int t = 1; t <= schedule.delay; ++t) {
        std::vector<const SlotAction*> actions;
        for (const SlotAction& a : schedule.at(t)) actions.push_back(&a);
        std::sort(actions.begin(), actions.end(),
                  [](const SlotAction* a, const SlotAction* b) { return a->flow < b->flow; });
        for (const SlotAction* a : actions) {
            out << "slot " << t << " flow " << a->flow << '\n';
            for (const auto& [node, power] : a->transmitters)
                out << "tx " << node << ' ' << formatReal(power) << '\n';
            for (NodeId node : a->receivers) out << "rx " << node << '\n';
        }
    }
}

Schedule readSchedule(std::istream& in) {
    LineReader reader(in);
    reader.expectHeader("coopflow-schedule v1");
    const int delay = reader.keyedInt("delay");
    if (delay < 0) reader.fail("negative delay");
    Schedule schedule(delay);

    SlotAction* current = nullptr;
    while (auto tokens = reader.tryNext()) {
        const auto& tok = *tokens;
        if (tok[0] == "slot") {
            if (tok.size() != 4 || tok[2] != "flow") reader.fail("expected 'slot <t> flow <k>'");
            const int t = reader.toInt(tok[1], "slot");
            const int k = reader.toInt(tok[3], "flow");
            if (t < 1 || t > delay) reader.fail("slot " + tok[1] + " outside 1.." + std::to_string(delay));
            // A repeated (slot, flow) header is kept as a separate action so
            // the validator can flag it.
            schedule.at(t).push_back(SlotAction{k, {}, {}});
            current = &schedule.at(t).back();
        } else if (tok[0] == "tx") {
            if (!current) reader.fail("'tx' before any 'slot' line");
            if (tok.size() != 3) reader.fail("expected 'tx <node> <power>'");
            const NodeId node = reader.toInt(tok[1], "tx node");
            if (!current->transmitters.emplace(node, reader.toReal(tok[2], "tx power")).second)
                reader.fail("node " + tok[1] + " listed twice as transmitter");
        } else if (tok[0] == "rx") {
            if (!current) reader.fail("'rx' before any 'slot' line");
            if (tok.size() != 2) reader.fail("expected 'rx <node>'");
            current->receivers.insert(reader.toInt(tok[1], "rx node"));
        } else {
            reader.fail("unknown record '" + tok[0] + "'");
        }
    }
    return schedule;
}

void saveSchedule(const Schedule& schedule, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    writeSchedule(out, schedule);
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

Schedule loadSchedule(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return readSchedule(in);
}

}  // namespace coopflow
