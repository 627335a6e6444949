#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "svsim/geometry.hpp"

namespace svsim::terrain {

// Regular elevation grid. Sample (i, j) sits at world coordinates
// (origin.x + i*cell_size, origin.y + j*cell_size); elevations are stored
// row-major, index j*width + i. All elevations must be finite and the grid
// needs at least 2x2 samples.
class HeightField {
public:
    HeightField(int width, int height, double cell_size, Vec2 origin, std::vector<float> elevations);

    int width() const { return width_; }
    int height() const { return height_; }
    double cell_size() const { return cell_size_; }
    Vec2 origin() const { return origin_; }
    std::int64_t sample_count() const { return static_cast<std::int64_t>(width_) * height_; }

    double at(int i, int j) const { return elevations_[static_cast<std::size_t>(j) * width_ + i]; }
    const std::vector<float>& elevations() const { return elevations_; }

    Vec2 sample_position(int i, int j) const {
        return {origin_.x + i * cell_size_, origin_.y + j * cell_size_};
    }
    Rect domain() const {
        return {origin_.x, origin_.x + (width_ - 1) * cell_size_,
                origin_.y, origin_.y + (height_ - 1) * cell_size_};
    }

    // Bilinear elevation at an arbitrary world point, clamped to the grid.
    double elevation_at(Vec2 p) const;

    double min_elevation() const { return min_elev_; }
    double max_elevation() const { return max_elev_; }

private:
    int width_;
    int height_;
    double cell_size_;
    Vec2 origin_;
    std::vector<float> elevations_;
    double min_elev_;
    double max_elev_;
};

// HF1 container: one ASCII header line "HF1 <m> <n> <cell_size> <origin_x> <origin_y>\n"
// followed by m*n little-endian IEEE-754 32-bit floats, row-major (n rows of
// m values, row j holds the samples with grid y index j).
HeightField load_hf1(const std::string& path);
void save_hf1(const HeightField& field, const std::string& path);

}  // namespace svsim::terrain
