#pragma once

#include <span>
#include <vector>

#include "svsim/fatigue/warning.hpp"
#include "svsim/gaze/classify.hpp"
#include "svsim/gaze/interest.hpp"
#include "svsim/gaze/remap.hpp"
#include "svsim/sim/scenario.hpp"

namespace svsim::sim {

// Scripted segment the generator emitted; kept as ground truth for checks
// against the classifier.
struct GazeTruth {
    gaze::GazeKind kind;
    double start;
    double end;
};

struct GazeGenResult {
    std::vector<gaze::GazeSample> samples;  // 100 Hz
    std::vector<GazeTruth> truth;
};

// Seeded attention model over the flight: dwells on the point ahead and on
// projections of interest/risk spots, scripted saccades between dwells, and
// pursuit sweeps while the aircraft turns. eye_open follows the scenario's
// closure episodes (square wave at the scripted duty fraction) and reads 1
// everywhere else; rare tracker dropouts clear the valid flag away from
// episodes.
GazeGenResult generate_gaze(const Scenario& sc,
                            std::span<const preload::AircraftState> flight,
                            const gaze::InterestList& interests,
                            std::span<const fatigue::RiskSpot> spots,
                            const gaze::CameraModel& cam,
                            const terrain::HeightField& field);

}  // namespace svsim::sim
