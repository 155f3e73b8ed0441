#pragma once

#include "ctsdr/phase.hpp"
#include "ctsdr/trajectory.hpp"

#include <string>

namespace ctsdr {

/// Mutable execution state of one drilling procedure.
struct ProcedureState {
    Phase phase = Phase::Home;
    double progress_mm = 0.0;   // distance covered within the current phase
    double spindle_rpm = 0.0;
};

/// Result of feeding one event to the state machine. A rejected event leaves
/// the state untouched and explains itself in `diagnostic`; rejection is an
/// expected outcome, not an exception.
struct StepResult {
    ProcedureState state;
    bool accepted = false;
    std::string diagnostic;
};

/// Motion length of a phase under `plan` (zero for stationary phases).
/// progress_mm must stay within [0, phase_length].
double phase_length(Phase phase, const DrillPlan& plan);

/// Advances the procedure by one event.
///
/// Legal order: Home -> Aligning -> SpinUp -> StraightDrill -> CurvedDrill
/// -> SpinDown -> RetractCurved -> RetractStraight -> ReturnHome -> Done.
/// `phase_complete` starts the procedure from Home and closes each motion
/// phase; `arrived` closes Aligning and ReturnHome; `at_speed` closes SpinUp
/// (guard: rpm >= 0.95 * drill_rpm) and SpinDown (guard:
/// rpm <= 1.1 * retract_rpm). Entering SpinUp or SpinDown sets the spindle
/// set-point instantly; the guards exist so a mis-set plan still refuses to
/// cut. `fault` moves any live phase to Faulted and stops the spindle;
/// `reset` returns to Home from Faulted or Done only.
StepResult step_procedure(const ProcedureState& state, ProcedureEvent event,
                          const DrillPlan& plan);

}  // namespace ctsdr
