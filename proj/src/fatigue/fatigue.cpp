#include "svsim/fatigue/fatigue.hpp"

#include <algorithm>
#include <stdexcept>

namespace svsim::fatigue {

namespace {

// Duration of the closure run starting at index i; the run ends at the frame
// after its last closed member when that frame exists and is not across a
// data gap, otherwise at the last member (the true extent is unobserved).
double run_duration(const std::deque<EyeFrame>& w, std::size_t first, std::size_t last,
                    double max_gap) {
    double end = w[last].timestamp;
    if (last + 1 < w.size() && w[last + 1].timestamp - w[last].timestamp <= max_gap) {
        end = w[last + 1].timestamp;
    }
    return end - w[first].timestamp;
}

void rescore(FatigueState& st, const FatigueConfig& cfg) {
    st.blink_count = 0;
    st.perclos = 0.0;
    st.longest_closure = 0.0;
    if (st.window.empty()) {
        st.level = 0.0;
        return;
    }

    std::size_t closed = 0;
    std::size_t i = 0;
    while (i < st.window.size()) {
        if (st.window[i].eye_open >= cfg.closure_threshold) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < st.window.size() &&
               st.window[j + 1].eye_open < cfg.closure_threshold &&
               st.window[j + 1].timestamp - st.window[j].timestamp <= cfg.max_frame_gap_s) {
            ++j;
        }
        closed += j - i + 1;
        const double dur = run_duration(st.window, i, j, cfg.max_frame_gap_s);
        if (dur >= cfg.blink_min_s && dur <= cfg.blink_max_s) ++st.blink_count;
        st.longest_closure = std::max(st.longest_closure, dur);
        i = j + 1;
    }

    // The closure term uses the longest run, not the mean: averaging would let
    // an extra short blink lower the score, breaking the rule that pointwise
    // more-closed input never reads less fatigued.
    st.perclos = static_cast<double>(closed) / static_cast<double>(st.window.size());
    const double closure_term = std::min(st.longest_closure / cfg.blink_max_s, 1.0);
    const double span = st.window.back().timestamp - st.window.front().timestamp;
    st.level = span < cfg.min_window_s
                   ? 0.0
                   : std::clamp(cfg.w_perclos * st.perclos + cfg.w_closure * closure_term,
                                0.0, 1.0);
}

}  // namespace

std::vector<EyeFrame> decimate(std::span<const gaze::GazeSample> trace) {
    std::vector<EyeFrame> frames;
    frames.reserve(trace.size() / 10 + 1);
    for (std::size_t i = 0; i < trace.size(); i += 10) {
        frames.push_back({trace[i].timestamp, trace[i].eye_open, trace[i].valid});
    }
    return frames;
}

FatigueState update_fatigue(const FatigueState& state, const EyeFrame& frame,
                            const FatigueConfig& cfg) {
    if (!state.window.empty() && frame.timestamp < state.window.back().timestamp) {
        throw std::invalid_argument("eye frames must arrive in time order");
    }

    FatigueState st = state;
    if (!frame.valid) {
        ++st.invalid_streak;
        st.tracking_lost = true;
        if (st.invalid_streak >= cfg.relocalize_after) {
            st.window.clear();
            st.level = 0.0;
            st.perclos = 0.0;
            st.blink_count = 0;
            st.longest_closure = 0.0;
        }
        return st;  // level frozen until relocalization
    }

    st.invalid_streak = 0;
    st.tracking_lost = false;
    st.window.push_back(frame);
    while (st.window.front().timestamp < frame.timestamp - cfg.window_s) {
        st.window.pop_front();
    }
    rescore(st, cfg);
    return st;
}

}  // namespace svsim::fatigue
