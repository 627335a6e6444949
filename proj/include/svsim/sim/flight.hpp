#pragma once

#include <vector>

#include "svsim/preload/state.hpp"
#include "svsim/sim/scenario.hpp"

namespace svsim::sim {

// Kinematic trace at the scenario frame rate. Altitude ramps linearly within
// takeoff/landing phases and holds during cruise; heading steers toward the
// waypoints under the scenario turn-rate cap; theta follows the velocity
// vector, so level cruise yields exactly pi/2. Fully deterministic.
std::vector<preload::AircraftState> generate_flight(const Scenario& sc);

// Index into sc.phases for time t; t past the end clamps to the last phase.
int phase_at(const Scenario& sc, double t);

}  // namespace svsim::sim
