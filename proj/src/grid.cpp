// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the imginfo Project.

#include "imginfo/grid.hpp"

#include <cmath>

namespace imginfo {

ImageGrid::ImageGrid(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
    if (width <= 0 || height <= 0) {
        throw GridError("grid dimensions must be positive, got " + std::to_string(width) + "x" +
                        std::to_string(height));
    }
    const auto expected = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (values_.size() != expected) {
        throw GridError("grid expects " + std::to_string(expected) + " values, got " +
                        std::to_string(values_.size()));
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw GridError("non-finite grid value at index " + std::to_string(i));
        }
    }
}

ImageGrid ImageGrid::filled(int width, int height, double value) {
    if (width <= 0 || height <= 0) {
        throw GridError("grid dimensions must be positive");
    }
    return ImageGrid(width, height,
                     std::vector<double>(static_cast<std::size_t>(width) *
                                             static_cast<std::size_t>(height),
                                         value));
}

Neighborhood3x3 neighborhood(const ImageGrid& grid, int x, int y) {
    if (!grid.contains(x, y)) {
        throw std::out_of_range("pixel (" + std::to_string(x) + ", " + std::to_string(y) +
                                ") outside " + std::to_string(grid.width()) + "x" +
                                std::to_string(grid.height()) + " grid");
    }
    Neighborhood3x3 n;
    n.center = grid.at(x, y);
    n.interior = is_interior(grid.width(), grid.height(), x, y);
    if (n.interior) {
        for (std::size_t k = 0; k < kNeighborOffsets.size(); ++k) {
            n.neighbors[k] = grid.at(x + kNeighborOffsets[k].x, y + kNeighborOffsets[k].y);
        }
    }
    return n;
}

}  // namespace imginfo
