// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the imginfo Project.

#ifndef IMGINFO_SEGMENTATION_HPP
#define IMGINFO_SEGMENTATION_HPP

#include <cstdint>
#include <vector>

#include "imginfo/grid.hpp"
#include "imginfo/lowlevel.hpp"
#include "imginfo/pyramid.hpp"

namespace imginfo {

using Label = std::uint32_t;

/// Region label per pixel (every label >= 1, each label one 4-connected
/// component). next_label is larger than any label ever issued in the run.
struct LabelMap {
    Raster<Label> labels;
    Label next_label = 1;

    int width() const { return labels.width(); }
    int height() const { return labels.height(); }
};

/// Per-pixel characteristic intensity: the mean reference value of the
/// pixel's region.
using IntensityMap = ImageGrid;

struct LevelSegmentation {
    int level = 0;
    LabelMap label_map;
    IntensityMap intensity_map;
};

/// original - reconstruction, stored so that intensity + residual
/// reproduces the original bit for bit.
struct ResidualMap {
    ImageGrid residual;
};

struct SegmentationParams {
    double similarity_delta = 16.0;  ///< top-level region growing tolerance
    double refine_delta = 16.0;      ///< deviation that flags a pixel on the way down
    int seed_min_size = 4;           ///< smallest deviant component that becomes a new object
    int bin_count = kDefaultBinCount;
    double border_fraction = kDefaultFractions[2];  ///< I_loc tier used as region border
};

/// Pixels whose I_loc is positive and reaches the prominence threshold for
/// `fraction`. Empty when the grid carries no information content.
Raster<std::uint8_t> border_mask(const InfoMaps& info, int bin_count, double fraction);

/// Mean of `reference` under each label, painted back over the label's pixels.
IntensityMap characteristic_intensities(const Raster<Label>& labels, const ImageGrid& reference);

/// Coarse segmentation of the pyramid top: border outline from I_loc, then
/// 4-connected region growing against the running cluster mean, then border
/// pixels join the adjacent cluster with the nearest mean.
/// Throws InfoError when the grid is smaller than 3x3.
LevelSegmentation top_level_segment(const ImageGrid& grid, const SegmentationParams& params,
                                    int level = 0);

/// Pixels (raster order) where |expanded - reference| > delta.
std::vector<Point> deviant_pixels(const IntensityMap& expanded_intensity,
                                  const ImageGrid& reference, double delta);

/// One top-down step: expand the parent maps onto `reference` and let the
/// deviant pixels settle into neighboring regions or seed new ones.
LevelSegmentation refine_level(const LevelSegmentation& parent, const ImageGrid& reference,
                               double delta, int seed_min_size);

/// Segmentations from the pyramid top (result.front()) down to level 0
/// (result.back()).
std::vector<LevelSegmentation> segment_full(const Pyramid& pyramid,
                                            const SegmentationParams& params = {});

ResidualMap residual(const ImageGrid& original, const LevelSegmentation& seg);

/// intensity + residual, elementwise.
ImageGrid reconstruct(const IntensityMap& intensity, const ResidualMap& residual);

/// Number of distinct labels in the map.
int label_count(const Raster<Label>& labels);

}  // namespace imginfo

#endif  // IMGINFO_SEGMENTATION_HPP
