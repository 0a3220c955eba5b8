// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the imginfo Project.

#ifndef IMGINFO_EXPORT_HPP
#define IMGINFO_EXPORT_HPP

#include <cstddef>
#include <string>

#include "imginfo/grid.hpp"
#include "imginfo/lowlevel.hpp"
#include "imginfo/segmentation.hpp"

namespace imginfo {

// Fixed palettes for the discrete maps.
inline constexpr double kTierNoneGray = 255.0;
inline constexpr double kTier85Gray = 170.0;
inline constexpr double kTier70Gray = 85.0;
inline constexpr double kTier50Gray = 0.0;
inline constexpr double kEdgeNoneGray = 255.0;
inline constexpr double kEdgeLowGray = 64.0;
inline constexpr double kEdgeHighGray = 192.0;

/// Offset that makes signed residuals storable as 16-bit PGM samples.
inline constexpr int kResidualOffset = 32768;

/// Label numbers as samples. Throws GridError past 65535.
ImageGrid label_image(const Raster<Label>& labels);
ImageGrid tier_image(const TierMap& tiers);
ImageGrid edge_image(const EdgeMap& edges);
/// status one -> 255, zero -> 0
ImageGrid status_image(const StatusMap& status);

/// The 8-bit rendering of a gray map: round half up, clamp to [0, 255].
ImageGrid quantize_gray(const ImageGrid& grid);

/// original - intensity + kResidualOffset. Both inputs must be integer valued.
ImageGrid residual_image(const ImageGrid& original, const ImageGrid& quantized_intensity);

/// Count of pixels where intensity + (residual - offset) != original.
std::size_t two_part_mismatches(const ImageGrid& original, const ImageGrid& intensity,
                                const ImageGrid& residual_offset);

/// "lower_bound,sum,normalized" rows, 9 significant digits.
std::string histogram_csv(const CumulativeHistogram& hist);

}  // namespace imginfo

#endif  // IMGINFO_EXPORT_HPP
