#pragma once

#include <deque>
#include <span>
#include <vector>

#include "svsim/gaze/classify.hpp"

namespace svsim::fatigue {

struct EyeFrame {
    double timestamp = 0.0;
    double eye_open = 1.0;
    bool valid = true;
};

struct FatigueConfig {
    double window_s = 30.0;           // sliding window length
    double min_window_s = 5.0;        // span needed before level is trusted
    double closure_threshold = 0.2;   // eye_open below this counts as closed
    double blink_min_s = 0.1;         // closure episode bounds for a blink
    double blink_max_s = 0.4;
    double max_frame_gap_s = 0.25;    // larger gaps split closure runs
    double w_perclos = 0.7;
    double w_closure = 0.3;
    int relocalize_after = 5;         // consecutive invalid frames before reset
    double fatigue_threshold = 0.5;   // warning gate on level
    double risk_threshold = 0.8;      // warning gate on flight risk
    double cooldown_s = 10.0;         // minimum spacing between alerts
};

// Sliding-window fatigue estimate. level weighs the closed-frame fraction
// against the longest closure run, capped at blink_max_s so the term sits
// in [0,1]; an all-closed window scores exactly 1. Until the
// window spans min_window_s the level reads 0: a handful of frames after a
// reset says nothing about the pilot. Frames separated by more than
// max_frame_gap_s (dropped samples in between) never join one closure run.
struct FatigueState {
    double level = 0.0;
    std::deque<EyeFrame> window;
    int blink_count = 0;        // closure episodes within [blink_min, blink_max]
    double perclos = 0.0;
    double longest_closure = 0.0;
    bool tracking_lost = false;
    int invalid_streak = 0;
};

// Every tenth sample of the trace, fields copied.
std::vector<EyeFrame> decimate(std::span<const gaze::GazeSample> trace);

// Pushes one frame and rescores the window. Invalid frames freeze the level;
// after relocalize_after consecutive invalid frames the window clears and the
// level drops to 0, so recovery scores only post-reset frames.
FatigueState update_fatigue(const FatigueState& state, const EyeFrame& frame,
                            const FatigueConfig& cfg);

}  // namespace svsim::fatigue
