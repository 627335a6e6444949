#include "svsim/preload/state.hpp"

#include <algorithm>
#include <cmath>

namespace svsim::preload {

PreloadRegion compute_preload_region(const AircraftState& state, const PreloadConfig& cfg) {
    PreloadRegion region;
    region.apex = state.position;
    region.heading = state.heading;

    const double theta_c = std::clamp(state.theta, cfg.theta_min, cfg.theta_max);
    const double reach = state.altitude + state.speed * cfg.delta_t * std::cos(state.theta);
    region.depth = std::max(0.0, cfg.d_gain * std::tan(theta_c) * reach);

    const double skew = cfg.eta_gain * state.turn_rate * std::sin(state.bank);
    region.sigma_l = std::clamp(cfg.sigma0 + skew, cfg.sigma_floor, cfg.sigma_ceil);
    region.sigma_r = std::clamp(cfg.sigma0 - skew, cfg.sigma_floor, cfg.sigma_ceil);

    region.area = region.depth * region.depth *
                  (std::tan(region.sigma_l) + std::tan(region.sigma_r)) / 2.0;
    return region;
}

Rect region_to_domain(const PreloadRegion& region) {
    auto corners = region.corners();
    return bounding_rect(corners.data(), static_cast<int>(corners.size()));
}

}  // namespace svsim::preload
