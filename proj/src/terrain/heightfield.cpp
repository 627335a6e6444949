#include "svsim/terrain/heightfield.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace svsim::terrain {

HeightField::HeightField(int width, int height, double cell_size, Vec2 origin,
                         std::vector<float> elevations)
    : width_(width), height_(height), cell_size_(cell_size), origin_(origin),
      elevations_(std::move(elevations)) {
    if (width_ < 2 || height_ < 2)
        throw std::invalid_argument("heightfield needs at least 2x2 samples");
    if (!(cell_size_ > 0.0))
        throw std::invalid_argument("heightfield cell_size must be positive");
    if (elevations_.size() != static_cast<std::size_t>(width_) * height_)
        throw std::invalid_argument("heightfield elevation count does not match dimensions");
    min_elev_ = std::numeric_limits<double>::max();
    max_elev_ = std::numeric_limits<double>::lowest();
    for (float e : elevations_) {
        if (!std::isfinite(e)) throw std::invalid_argument("heightfield contains non-finite elevation");
        min_elev_ = std::min(min_elev_, static_cast<double>(e));
        max_elev_ = std::max(max_elev_, static_cast<double>(e));
    }
}

double HeightField::elevation_at(Vec2 p) const {
    const double fx = std::clamp((p.x - origin_.x) / cell_size_, 0.0, static_cast<double>(width_ - 1));
    const double fy = std::clamp((p.y - origin_.y) / cell_size_, 0.0, static_cast<double>(height_ - 1));
    const int i0 = std::min(static_cast<int>(fx), width_ - 2);
    const int j0 = std::min(static_cast<int>(fy), height_ - 2);
    const double u = fx - i0;
    const double v = fy - j0;
    const double a = at(i0, j0), b = at(i0 + 1, j0), c = at(i0, j0 + 1), d = at(i0 + 1, j0 + 1);
    return (1 - u) * (1 - v) * a + u * (1 - v) * b + (1 - u) * v * c + u * v * d;
}

namespace {

std::uint32_t to_le(std::uint32_t v) {
    if constexpr (std::endian::native == std::endian::little) return v;
    return ((v & 0xff) << 24) | ((v & 0xff00) << 8) | ((v >> 8) & 0xff00) | (v >> 24);
}

}  // namespace

HeightField load_hf1(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open heightfield file: " + path);

    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("truncated HF1 header in " + path);
    std::istringstream hs(header);
    std::string magic;
    int m = 0, n = 0;
    double cell = 0, ox = 0, oy = 0;
    if (!(hs >> magic >> m >> n >> cell >> ox >> oy) || magic != "HF1")
        throw std::runtime_error("bad HF1 header in " + path);

    if (m < 2 || n < 2 || !(cell > 0))
        throw std::invalid_argument("degenerate heightfield in " + path);

    const std::size_t count = static_cast<std::size_t>(m) * n;
    std::vector<std::uint32_t> raw(count);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(count * 4));
    if (in.gcount() != static_cast<std::streamsize>(count * 4))
        throw std::runtime_error("truncated HF1 payload in " + path);

    std::vector<float> elev(count);
    for (std::size_t k = 0; k < count; ++k) elev[k] = std::bit_cast<float>(to_le(raw[k]));
    return HeightField(m, n, cell, {ox, oy}, std::move(elev));
}

void save_hf1(const HeightField& field, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write heightfield file: " + path);

    char header[160];
    std::snprintf(header, sizeof(header), "HF1 %d %d %.17g %.17g %.17g\n", field.width(),
                  field.height(), field.cell_size(), field.origin().x, field.origin().y);
    out << header;

    std::vector<std::uint32_t> raw(field.elevations().size());
    for (std::size_t k = 0; k < raw.size(); ++k)
        raw[k] = to_le(std::bit_cast<std::uint32_t>(field.elevations()[k]));
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size() * 4));
    if (!out) throw std::runtime_error("failed writing heightfield file: " + path);
}

}  // namespace svsim::terrain
