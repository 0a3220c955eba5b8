// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the imginfo Project.

#ifndef IMGINFO_PYRAMID_HPP
#define IMGINFO_PYRAMID_HPP

#include <vector>

#include "imginfo/grid.hpp"

namespace imginfo {

/// Default minimum dimension of the pyramid top.
inline constexpr int kDefaultTopTarget = 12;

/// Multi-stage image pyramid. levels[0] is the input; levels[L + 1] is
/// reduce(levels[L]).
struct Pyramid {
    std::vector<ImageGrid> levels;
    int top_target = kDefaultTopTarget;

    int level_count() const { return static_cast<int>(levels.size()); }
    const ImageGrid& top() const { return levels.back(); }
};

/// 4-to-1 block average. Output is ceil(w/2) x ceil(h/2); on odd dimensions
/// the missing children of a block are replicated from the in-range pixel of
/// the same block.
ImageGrid reduce(const ImageGrid& grid);

/// Nearest-neighbor upsampling: child (x, y) takes parent (x/2, y/2).
/// Requires ceil(target_w/2) == map.width() and ceil(target_h/2) == map.height().
ImageGrid expand(const ImageGrid& map, int target_w, int target_h);

/// Same parent-to-children rule for discrete rasters (label maps).
template <typename T>
Raster<T> expand(const Raster<T>& map, int target_w, int target_h) {
    if (target_w <= 0 || target_h <= 0 || (target_w + 1) / 2 != map.width() ||
        (target_h + 1) / 2 != map.height()) {
        throw GridError("expand target does not halve onto the source map");
    }
    Raster<T> out(target_w, target_h);
    for (int y = 0; y < target_h; ++y) {
        for (int x = 0; x < target_w; ++x) {
            out.at(x, y) = map.at(x / 2, y / 2);
        }
    }
    return out;
}

/// Number of levels (level 0 included). Halving continues while the next
/// level's smaller side would still be at least `top_target`.
int level_count(int width, int height, int top_target);

Pyramid build_pyramid(const ImageGrid& grid, int top_target = kDefaultTopTarget);

/// Nearest-neighbor upsampling of a level-`level` map back to level-0 size,
/// following the pyramid's own dimension chain.
template <typename Map>
Map rescale_to_base(const Pyramid& pyramid, Map map, int level) {
    for (int l = level; l > 0; --l) {
        const ImageGrid& below = pyramid.levels.at(static_cast<std::size_t>(l - 1));
        map = expand(map, below.width(), below.height());
    }
    return map;
}

}  // namespace imginfo

#endif  // IMGINFO_PYRAMID_HPP
