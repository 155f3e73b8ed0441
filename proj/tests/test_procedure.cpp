#include "ctsdr/procedure.hpp"

#include "ctsdr/errors.hpp"

#include "doctest.h"

#include <algorithm>
#include <array>
#include <set>
#include <vector>

using namespace ctsdr;

namespace {

constexpr std::array<ProcedureEvent, 5> kAllEvents = {
    ProcedureEvent::Arrived, ProcedureEvent::AtSpeed, ProcedureEvent::PhaseComplete,
    ProcedureEvent::Fault, ProcedureEvent::Reset,
};

const std::vector<Phase> kFullRun = {
    Phase::Aligning,      Phase::SpinUp,           Phase::StraightDrill,
    Phase::CurvedDrill,   Phase::SpinDown,         Phase::RetractCurved,
    Phase::RetractStraight, Phase::ReturnHome,     Phase::Done,
};

// Exhaustively explores every event sequence up to the depth limit. Sequences
// collapse onto traces of accepted transitions (a rejected event provably
// leaves the state untouched, which is asserted at every node), so walking
// the accepted-transition tree with a depth budget covers all 5^12 sequences.
struct ExhaustiveSearch {
    const DrillPlan& plan;
    std::set<std::vector<Phase>> done_traces;
    long long nodes = 0;
    bool rejection_always_inert = true;
    bool faulted_absorbing = true;

    void walk(const ProcedureState& state, std::vector<Phase>& trace, int budget) {
        ++nodes;
        if (budget == 0) return;
        for (const ProcedureEvent event : kAllEvents) {
            const StepResult res = step_procedure(state, event, plan);
            if (!res.accepted) {
                if (res.state.phase != state.phase ||
                    res.state.spindle_rpm != state.spindle_rpm ||
                    res.state.progress_mm != state.progress_mm || res.diagnostic.empty()) {
                    rejection_always_inert = false;
                }
                continue;
            }
            if (state.phase == Phase::Faulted && event != ProcedureEvent::Reset) {
                faulted_absorbing = false;
            }
            trace.push_back(res.state.phase);
            if (res.state.phase == Phase::Done) done_traces.insert(trace);
            walk(res.state, trace, budget - 1);
            trace.pop_back();
        }
    }
};

ProcedureState run_happy_path(const DrillPlan& plan, int stop_after = 9) {
    const std::array<ProcedureEvent, 9> events = {
        ProcedureEvent::PhaseComplete, ProcedureEvent::Arrived,  ProcedureEvent::AtSpeed,
        ProcedureEvent::PhaseComplete, ProcedureEvent::PhaseComplete, ProcedureEvent::AtSpeed,
        ProcedureEvent::PhaseComplete, ProcedureEvent::PhaseComplete, ProcedureEvent::Arrived,
    };
    ProcedureState state;
    for (int i = 0; i < stop_after; ++i) {
        const StepResult res = step_procedure(state, events[static_cast<std::size_t>(i)], plan);
        REQUIRE(res.accepted);
        state = res.state;
    }
    return state;
}

}  // namespace

TEST_CASE("happy path walks every phase in order with the right spindle speeds") {
    const DrillPlan plan;
    ProcedureState state;
    CHECK(state.phase == Phase::Home);
    CHECK(state.spindle_rpm == 0.0);

    state = run_happy_path(plan, 1);
    CHECK(state.phase == Phase::Aligning);
    CHECK(state.spindle_rpm == 0.0);

    state = run_happy_path(plan, 2);
    CHECK(state.phase == Phase::SpinUp);
    CHECK(state.spindle_rpm == plan.drill_rpm);

    state = run_happy_path(plan, 3);
    CHECK(state.phase == Phase::StraightDrill);
    CHECK(state.spindle_rpm == plan.drill_rpm);

    state = run_happy_path(plan, 5);
    CHECK(state.phase == Phase::SpinDown);
    CHECK(state.spindle_rpm == plan.retract_rpm);

    state = run_happy_path(plan, 6);
    CHECK(state.phase == Phase::RetractCurved);
    CHECK(state.spindle_rpm == plan.retract_rpm);

    state = run_happy_path(plan, 8);
    CHECK(state.phase == Phase::ReturnHome);
    CHECK(state.spindle_rpm == 0.0);

    state = run_happy_path(plan, 9);
    CHECK(state.phase == Phase::Done);
    CHECK(state.spindle_rpm == 0.0);
}

TEST_CASE("illegal events are rejected with a diagnostic and unchanged state") {
    const DrillPlan plan;
    ProcedureState home;

    const StepResult res = step_procedure(home, ProcedureEvent::Arrived, plan);
    CHECK_FALSE(res.accepted);
    CHECK(res.state.phase == Phase::Home);
    CHECK(res.diagnostic.find("arrived") != std::string::npos);
    CHECK(res.diagnostic.find("home") != std::string::npos);

    CHECK_FALSE(step_procedure(home, ProcedureEvent::AtSpeed, plan).accepted);
    CHECK_FALSE(step_procedure(home, ProcedureEvent::Reset, plan).accepted);
}

TEST_CASE("fault is reachable from every non-faulted phase and zeroes the spindle") {
    const DrillPlan plan;
    for (int i = 0; i <= 9; ++i) {
        const ProcedureState state = run_happy_path(plan, i);
        const StepResult res = step_procedure(state, ProcedureEvent::Fault, plan);
        CHECK(res.accepted);
        CHECK(res.state.phase == Phase::Faulted);
        CHECK(res.state.spindle_rpm == 0.0);
    }

    ProcedureState faulted;
    faulted.phase = Phase::Faulted;
    CHECK_FALSE(step_procedure(faulted, ProcedureEvent::Fault, plan).accepted);
}

TEST_CASE("reset works only from Faulted or Done") {
    const DrillPlan plan;

    ProcedureState faulted;
    faulted.phase = Phase::Faulted;
    const StepResult from_fault = step_procedure(faulted, ProcedureEvent::Reset, plan);
    CHECK(from_fault.accepted);
    CHECK(from_fault.state.phase == Phase::Home);
    CHECK(from_fault.state.spindle_rpm == 0.0);

    const ProcedureState done = run_happy_path(plan, 9);
    const StepResult from_done = step_procedure(done, ProcedureEvent::Reset, plan);
    CHECK(from_done.accepted);
    CHECK(from_done.state.phase == Phase::Home);

    for (int i = 1; i <= 8; ++i) {
        const ProcedureState mid = run_happy_path(plan, i);
        CHECK_FALSE(step_procedure(mid, ProcedureEvent::Reset, plan).accepted);
    }
}

TEST_CASE("speed guards gate the drilling and retraction entries") {
    const DrillPlan plan;

    SUBCASE("straight drilling requires at least 95 percent of drill rpm") {
        ProcedureState spin_up;
        spin_up.phase = Phase::SpinUp;
        spin_up.spindle_rpm = 0.94 * plan.drill_rpm;
        CHECK_FALSE(step_procedure(spin_up, ProcedureEvent::AtSpeed, plan).accepted);
        spin_up.spindle_rpm = 0.96 * plan.drill_rpm;
        const StepResult ok = step_procedure(spin_up, ProcedureEvent::AtSpeed, plan);
        CHECK(ok.accepted);
        CHECK(ok.state.phase == Phase::StraightDrill);
    }

    SUBCASE("retraction requires the spindle to have slowed to 110 percent of retract rpm") {
        ProcedureState spin_down;
        spin_down.phase = Phase::SpinDown;
        spin_down.spindle_rpm = 1.2 * plan.retract_rpm;
        CHECK_FALSE(step_procedure(spin_down, ProcedureEvent::AtSpeed, plan).accepted);
        spin_down.spindle_rpm = plan.retract_rpm;
        const StepResult ok = step_procedure(spin_down, ProcedureEvent::AtSpeed, plan);
        CHECK(ok.accepted);
        CHECK(ok.state.phase == Phase::RetractCurved);
    }
}

TEST_CASE("(CurvedDrill, fault) lands in Faulted") {
    const DrillPlan plan;
    const ProcedureState curved = run_happy_path(plan, 4);
    REQUIRE(curved.phase == Phase::CurvedDrill);
    const StepResult res = step_procedure(curved, ProcedureEvent::Fault, plan);
    CHECK(res.accepted);
    CHECK(res.state.phase == Phase::Faulted);
}

TEST_CASE("exhaustive search: Done only via the full phase order, Faulted absorbing") {
    const DrillPlan plan;
    ExhaustiveSearch search{plan, {}, 0, true, true};
    std::vector<Phase> trace;
    search.walk(ProcedureState{}, trace, 12);

    CHECK(search.rejection_always_inert);
    CHECK(search.faulted_absorbing);
    CHECK(!search.done_traces.empty());

    for (const auto& t : search.done_traces) {
        // Everything after the last recovery (reset to Home) must be exactly
        // the full drilling order; each drilling phase appears exactly once.
        std::size_t start = 0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (t[i] == Phase::Home) start = i + 1;
        }
        const std::vector<Phase> suffix(t.begin() + static_cast<std::ptrdiff_t>(start), t.end());
        CHECK(suffix == kFullRun);
    }

    // Within 12 events a second pass is impossible, so exactly one Done per trace.
    for (const auto& t : search.done_traces) {
        CHECK(std::count(t.begin(), t.end(), Phase::Done) == 1);
    }
}

TEST_CASE("phase name round-trips") {
    for (const Phase p :
         {Phase::Home, Phase::Aligning, Phase::SpinUp, Phase::StraightDrill, Phase::CurvedDrill,
          Phase::SpinDown, Phase::RetractCurved, Phase::RetractStraight, Phase::ReturnHome,
          Phase::Done, Phase::Faulted}) {
        CHECK(phase_from_string(std::string(to_string(p))) == p);
    }
    CHECK_THROWS_AS(phase_from_string("drilling"), SchemaError);
    for (const ProcedureEvent e : kAllEvents) {
        CHECK(event_from_string(std::string(to_string(e))) == e);
    }
    CHECK_THROWS_AS(event_from_string("go"), SchemaError);
}

TEST_CASE("phase_length reports the geometric extent of each phase") {
    DrillPlan plan;
    CHECK(phase_length(Phase::StraightDrill, plan) == plan.straight_travel);
    CHECK(phase_length(Phase::RetractStraight, plan) == plan.straight_travel);
    CHECK(phase_length(Phase::CurvedDrill, plan) == plan.arc_length);
    CHECK(phase_length(Phase::RetractCurved, plan) == plan.arc_length);
    CHECK(phase_length(Phase::Home, plan) == 0.0);
    CHECK(phase_length(Phase::Done, plan) == 0.0);
}
