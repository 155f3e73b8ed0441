#include "ctsdr/procedure.hpp"

#include "ctsdr/errors.hpp"

#include <array>

namespace ctsdr {

namespace {

constexpr std::array<std::pair<Phase, const char*>, 11> kPhaseNames = {{
    {Phase::Home, "home"},
    {Phase::Aligning, "aligning"},
    {Phase::SpinUp, "spin_up"},
    {Phase::StraightDrill, "straight_drill"},
    {Phase::CurvedDrill, "curved_drill"},
    {Phase::SpinDown, "spin_down"},
    {Phase::RetractCurved, "retract_curved"},
    {Phase::RetractStraight, "retract_straight"},
    {Phase::ReturnHome, "return_home"},
    {Phase::Done, "done"},
    {Phase::Faulted, "faulted"},
}};

constexpr std::array<std::pair<ProcedureEvent, const char*>, 5> kEventNames = {{
    {ProcedureEvent::Arrived, "arrived"},
    {ProcedureEvent::AtSpeed, "at_speed"},
    {ProcedureEvent::PhaseComplete, "phase_complete"},
    {ProcedureEvent::Fault, "fault"},
    {ProcedureEvent::Reset, "reset"},
}};

}  // namespace

const char* to_string(Phase phase) {
    for (const auto& [p, name] : kPhaseNames) {
        if (p == phase) return name;
    }
    return "unknown";
}

Phase phase_from_string(const std::string& name) {
    for (const auto& [p, pname] : kPhaseNames) {
        if (name == pname) return p;
    }
    throw SchemaError("unknown phase name: " + name);
}

const char* to_string(ProcedureEvent event) {
    for (const auto& [e, name] : kEventNames) {
        if (e == event) return name;
    }
    return "unknown";
}

ProcedureEvent event_from_string(const std::string& name) {
    for (const auto& [e, ename] : kEventNames) {
        if (name == ename) return e;
    }
    throw SchemaError("unknown event name: " + name);
}

double phase_length(Phase phase, const DrillPlan& plan) {
    switch (phase) {
        case Phase::StraightDrill:
        case Phase::RetractStraight:
            return plan.straight_travel;
        case Phase::CurvedDrill:
        case Phase::RetractCurved:
            return plan.arc_length;
        default:
            return 0.0;
    }
}

namespace {

StepResult rejected(const ProcedureState& state, ProcedureEvent event) {
    StepResult result;
    result.state = state;
    result.accepted = false;
    result.diagnostic = std::string("event '") + to_string(event) +
                        "' is illegal in phase '" + to_string(state.phase) + "'";
    return result;
}

StepResult accepted(const ProcedureState& state, Phase next, double rpm) {
    StepResult result;
    result.state = ProcedureState{next, 0.0, rpm};
    result.accepted = true;
    result.diagnostic = std::string(to_string(state.phase)) + " -> " + to_string(next);
    return result;
}

}  // namespace

StepResult step_procedure(const ProcedureState& state, ProcedureEvent event,
                          const DrillPlan& plan) {
    // Fault preempts everything except the two terminal-ish cases below.
    if (event == ProcedureEvent::Fault) {
        if (state.phase == Phase::Faulted) return rejected(state, event);
        return accepted(state, Phase::Faulted, 0.0);
    }
    if (event == ProcedureEvent::Reset) {
        if (state.phase == Phase::Faulted || state.phase == Phase::Done) {
            return accepted(state, Phase::Home, 0.0);
        }
        return rejected(state, event);
    }

    switch (state.phase) {
        case Phase::Home:
            if (event == ProcedureEvent::PhaseComplete) {
                return accepted(state, Phase::Aligning, state.spindle_rpm);
            }
            return rejected(state, event);
        case Phase::Aligning:
            if (event == ProcedureEvent::Arrived) {
                // Entering SpinUp commands the drilling set-point immediately.
                return accepted(state, Phase::SpinUp, plan.drill_rpm);
            }
            return rejected(state, event);
        case Phase::SpinUp:
            if (event == ProcedureEvent::AtSpeed) {
                if (state.spindle_rpm < 0.95 * plan.drill_rpm) return rejected(state, event);
                return accepted(state, Phase::StraightDrill, state.spindle_rpm);
            }
            return rejected(state, event);
        case Phase::StraightDrill:
            if (event == ProcedureEvent::PhaseComplete) {
                return accepted(state, Phase::CurvedDrill, state.spindle_rpm);
            }
            return rejected(state, event);
        case Phase::CurvedDrill:
            if (event == ProcedureEvent::PhaseComplete) {
                // Entering SpinDown commands the retraction set-point.
                return accepted(state, Phase::SpinDown, plan.retract_rpm);
            }
            return rejected(state, event);
        case Phase::SpinDown:
            if (event == ProcedureEvent::AtSpeed) {
                if (state.spindle_rpm > 1.1 * plan.retract_rpm) return rejected(state, event);
                return accepted(state, Phase::RetractCurved, state.spindle_rpm);
            }
            return rejected(state, event);
        case Phase::RetractCurved:
            if (event == ProcedureEvent::PhaseComplete) {
                return accepted(state, Phase::RetractStraight, state.spindle_rpm);
            }
            return rejected(state, event);
        case Phase::RetractStraight:
            if (event == ProcedureEvent::PhaseComplete) {
                // Spindle stops before the arm leaves the specimen area.
                return accepted(state, Phase::ReturnHome, 0.0);
            }
            return rejected(state, event);
        case Phase::ReturnHome:
            if (event == ProcedureEvent::Arrived) {
                return accepted(state, Phase::Done, 0.0);
            }
            return rejected(state, event);
        case Phase::Done:
        case Phase::Faulted:
            return rejected(state, event);
    }
    return rejected(state, event);
}

}  // namespace ctsdr
