// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the imginfo Project.

#include "imginfo/export.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace imginfo {

namespace {

template <typename T, typename Fn>
ImageGrid paint(const Raster<T>& raster, Fn&& to_gray) {
    std::vector<double> out(raster.size());
    for (std::size_t i = 0; i < raster.size(); ++i) {
        out[i] = to_gray(raster[i]);
    }
    return ImageGrid(raster.width(), raster.height(), std::move(out));
}

void require_same_dims(const ImageGrid& a, const ImageGrid& b) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw GridError("dimension mismatch between original and encoded maps");
    }
}

}  // namespace

ImageGrid label_image(const Raster<Label>& labels) {
    return paint(labels, [](Label l) {
        if (l > 65535) {
            throw GridError("label " + std::to_string(l) + " does not fit a 16-bit PGM");
        }
        return static_cast<double>(l);
    });
}

ImageGrid tier_image(const TierMap& tiers) {
    return paint(tiers, [](Tier t) {
        switch (t) {
            case Tier::Tier50: return kTier50Gray;
            case Tier::Tier70: return kTier70Gray;
            case Tier::Tier85: return kTier85Gray;
            case Tier::None: break;
        }
        return kTierNoneGray;
    });
}

ImageGrid edge_image(const EdgeMap& edges) {
    return paint(edges, [](EdgeMark e) {
        switch (e) {
            case EdgeMark::LowSide: return kEdgeLowGray;
            case EdgeMark::HighSide: return kEdgeHighGray;
            case EdgeMark::None: break;
        }
        return kEdgeNoneGray;
    });
}

ImageGrid status_image(const StatusMap& status) {
    return paint(status, [](std::uint8_t s) { return s ? 255.0 : 0.0; });
}

ImageGrid quantize_gray(const ImageGrid& grid) {
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out[i] = std::clamp(std::floor(grid[i] + 0.5), 0.0, 255.0);
    }
    return ImageGrid(grid.width(), grid.height(), std::move(out));
}

ImageGrid residual_image(const ImageGrid& original, const ImageGrid& quantized_intensity) {
    require_same_dims(original, quantized_intensity);
    std::vector<double> out(original.size());
    for (std::size_t i = 0; i < original.size(); ++i) {
        out[i] = original[i] - quantized_intensity[i] + kResidualOffset;
    }
    return ImageGrid(original.width(), original.height(), std::move(out));
}

std::size_t two_part_mismatches(const ImageGrid& original, const ImageGrid& intensity,
                                const ImageGrid& residual_offset) {
    require_same_dims(original, intensity);
    require_same_dims(original, residual_offset);
    std::size_t bad = 0;
    for (std::size_t i = 0; i < original.size(); ++i) {
        if (intensity[i] + (residual_offset[i] - kResidualOffset) != original[i]) {
            ++bad;
        }
    }
    return bad;
}

std::string histogram_csv(const CumulativeHistogram& hist) {
    std::string out = "lower_bound,sum,normalized\n";
    char buf[128];
    for (int b = 0; b < hist.bin_count; ++b) {
        std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g\n", hist.lower_bound(b),
                      hist.bins[static_cast<std::size_t>(b)],
                      hist.normalized[static_cast<std::size_t>(b)]);
        out += buf;
    }
    return out;
}

}  // namespace imginfo
