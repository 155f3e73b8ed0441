#pragma once

#include <string>

namespace ctsdr {

/// Drilling-procedure phases, in execution order. Faulted is reachable from
/// any phase; Done and Faulted only exit through a reset.
enum class Phase {
    Home,
    Aligning,
    SpinUp,
    StraightDrill,
    CurvedDrill,
    SpinDown,
    RetractCurved,
    RetractStraight,
    ReturnHome,
    Done,
    Faulted,
};

/// Events the executor feeds into the state machine.
enum class ProcedureEvent {
    Arrived,
    AtSpeed,
    PhaseComplete,
    Fault,
    Reset,
};

const char* to_string(Phase phase);
Phase phase_from_string(const std::string& name);

const char* to_string(ProcedureEvent event);
ProcedureEvent event_from_string(const std::string& name);

}  // namespace ctsdr
