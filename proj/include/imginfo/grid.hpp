// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the imginfo Project.

#ifndef IMGINFO_GRID_HPP
#define IMGINFO_GRID_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace imginfo {

/// Pixel coordinate, x to the right and y down.
struct Point {
    int x = 0;
    int y = 0;
    friend bool operator==(const Point&, const Point&) = default;
};

/// Raised when a grid or map is built from inconsistent data.
class GridError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Plain row-major raster used for the discrete per-pixel maps
/// (status bits, labels, tiers, edge marks).
template <typename T>
class Raster {
public:
    Raster() = default;
    Raster(int width, int height, T fill = T{})
        : width_(width), height_(height),
          data_(checked_size(width, height), fill) {}
    Raster(int width, int height, std::vector<T> data)
        : width_(width), height_(height), data_(std::move(data)) {
        if (data_.size() != checked_size(width, height)) {
            throw GridError("raster data size does not match " + std::to_string(width) + "x" +
                            std::to_string(height));
        }
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return data_.size(); }
    bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }

    const T& at(int x, int y) const { return data_[index(x, y)]; }
    T& at(int x, int y) { return data_[index(x, y)]; }
    const T& operator[](std::size_t i) const { return data_[i]; }
    T& operator[](std::size_t i) { return data_[i]; }

    std::span<const T> data() const& { return data_; }
    std::span<T> data() & { return data_; }
    std::span<const T> data() const&& = delete;

    friend bool operator==(const Raster&, const Raster&) = default;

private:
    static std::size_t checked_size(int width, int height) {
        if (width <= 0 || height <= 0) {
            throw GridError("raster dimensions must be positive, got " + std::to_string(width) +
                            "x" + std::to_string(height));
        }
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<T> data_;
};

/// Gray-level raster with real-valued samples (nominal range 0..255).
///
/// Immutable once built. Every derived scalar map (pyramid levels,
/// information maps, characteristic intensities, residuals) uses this type.
class ImageGrid {
public:
    /// Throws GridError on a non-positive dimension, a size mismatch, or a
    /// non-finite sample (the message names the offending index).
    ImageGrid(int width, int height, std::vector<double> values);

    static ImageGrid filled(int width, int height, double value);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return values_.size(); }
    bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }

    double at(int x, int y) const {
        return values_[static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
                       static_cast<std::size_t>(x)];
    }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const& { return values_; }
    std::span<const double> values() const&& = delete;

    friend bool operator==(const ImageGrid&, const ImageGrid&) = default;

private:
    int width_;
    int height_;
    std::vector<double> values_;
};

/// 3x3 support around one pixel. Neighbors run clockwise from the top-left:
/// TL, T, TR, R, BR, B, BL, L. Only filled in when `interior` is true.
struct Neighborhood3x3 {
    double center = 0.0;
    std::array<double, 8> neighbors{};
    bool interior = false;
};

/// Offsets matching the neighbor order of Neighborhood3x3.
inline constexpr std::array<Point, 8> kNeighborOffsets{{
    {-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0},
}};

/// 4-connected offsets: up, left, right, down.
inline constexpr std::array<Point, 4> kFourNeighbors{{{0, -1}, {-1, 0}, {1, 0}, {0, 1}}};

/// Throws std::out_of_range when (x, y) lies outside the grid.
Neighborhood3x3 neighborhood(const ImageGrid& grid, int x, int y);

inline bool is_interior(int width, int height, int x, int y) {
    return x >= 1 && y >= 1 && x + 1 < width && y + 1 < height;
}

}  // namespace imginfo

#endif  // IMGINFO_GRID_HPP
