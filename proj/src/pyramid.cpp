// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the imginfo Project.

#include "imginfo/pyramid.hpp"

#include <algorithm>

namespace imginfo {

ImageGrid reduce(const ImageGrid& grid) {
    const int w = grid.width();
    const int h = grid.height();
    const int out_w = (w + 1) / 2;
    const int out_h = (h + 1) / 2;
    std::vector<double> out(static_cast<std::size_t>(out_w) * static_cast<std::size_t>(out_h));
    for (int y = 0; y < out_h; ++y) {
        const int y0 = 2 * y;
        const int y1 = std::min(y0 + 1, h - 1);
        for (int x = 0; x < out_w; ++x) {
            const int x0 = 2 * x;
            const int x1 = std::min(x0 + 1, w - 1);
            out[static_cast<std::size_t>(y) * out_w + x] =
                (grid.at(x0, y0) + grid.at(x1, y0) + grid.at(x1, y1) + grid.at(x0, y1)) / 4.0;
        }
    }
    return ImageGrid(out_w, out_h, std::move(out));
}

ImageGrid expand(const ImageGrid& map, int target_w, int target_h) {
    if (target_w <= 0 || target_h <= 0 || (target_w + 1) / 2 != map.width() ||
        (target_h + 1) / 2 != map.height()) {
        throw GridError("expand target " + std::to_string(target_w) + "x" +
                        std::to_string(target_h) + " does not halve onto " +
                        std::to_string(map.width()) + "x" + std::to_string(map.height()));
    }
    std::vector<double> out(static_cast<std::size_t>(target_w) *
                            static_cast<std::size_t>(target_h));
    for (int y = 0; y < target_h; ++y) {
        for (int x = 0; x < target_w; ++x) {
            out[static_cast<std::size_t>(y) * target_w + x] = map.at(x / 2, y / 2);
        }
    }
    return ImageGrid(target_w, target_h, std::move(out));
}

int level_count(int width, int height, int top_target) {
    if (width < 1 || height < 1 || top_target < 1) {
        throw std::invalid_argument("level_count arguments must be >= 1");
    }
    int levels = 1;
    // A 1x1 level is a fixpoint of reduce; stop there even when top_target is 1.
    while (width > 1 || height > 1) {
        const int next_w = (width + 1) / 2;
        const int next_h = (height + 1) / 2;
        if (std::min(next_w, next_h) < top_target) {
            break;
        }
        width = next_w;
        height = next_h;
        ++levels;
    }
    return levels;
}

Pyramid build_pyramid(const ImageGrid& grid, int top_target) {
    const int n = level_count(grid.width(), grid.height(), top_target);
    Pyramid pyramid;
    pyramid.top_target = top_target;
    pyramid.levels.reserve(static_cast<std::size_t>(n));
    pyramid.levels.push_back(grid);
    for (int l = 1; l < n; ++l) {
        pyramid.levels.push_back(reduce(pyramid.levels.back()));
    }
    return pyramid;
}

}  // namespace imginfo
