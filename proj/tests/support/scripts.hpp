#pragma once
// Happy-path derivation: the inputs a cooperative user produces when
// following a set step by step, built only from the set's until-events
// and a tracked physical state (door, load), never from the engine.

#include <vector>

#include "csa/dsl/types.hpp"
#include "csa/engine/codec.hpp"
#include "csa/host/transcript.hpp"

namespace csa::testkit {

/// Engine-level trace; each instruction is ended by exactly the event it
/// waits for (device steps by one Tick of their full duration).
std::vector<engine::TimedEvent> happy_path_events(const dsl::CookingInstructionSet& set);

/// Host-level script of physical actions. Preparatory actions (opening the
/// door before placing food, removing food before placing new food...)
/// are inserted where needed; none of them matches the step's until-event.
std::vector<host::ScriptLine> happy_path_script(const dsl::CookingInstructionSet& set);

/// Counts instruction advances in a sequence of phases: each record whose
/// position (instruction index, or the set length once Complete) is one
/// more than the previous position. Returns -1 if the position ever jumps
/// by more than one or moves backwards.
long count_advances(const std::vector<engine::Phase>& phases, std::size_t instruction_count);

}  // namespace csa::testkit
