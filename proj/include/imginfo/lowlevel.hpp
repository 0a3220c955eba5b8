// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the imginfo Project.

#ifndef IMGINFO_LOWLEVEL_HPP
#define IMGINFO_LOWLEVEL_HPP

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "imginfo/grid.hpp"

namespace imginfo {

/// Per-pixel status bit: 1 when the pixel is at or above its 8-neighborhood
/// (8*center - sum(neighbors) >= 0), 0 when below. Border pixels are 1.
using StatusMap = Raster<std::uint8_t>;

/// Local information maps over one grid. Border entries are 0 in all three.
struct InfoMaps {
    ImageGrid i_int;  ///< mean absolute difference over differing neighbors
    ImageGrid i_top;  ///< m * (8 - m), m = neighbors sharing the center's status
    ImageGrid i_loc;  ///< i_int * i_top
};

/// Sum of I_loc values at or above each bin's lower bound, over an axis
/// spanning [0, 3 * mean(I_loc)].
struct CumulativeHistogram {
    int bin_count = 0;
    double bin_width = 0.0;
    std::vector<double> bins;
    std::vector<double> normalized;

    double lower_bound(int bin) const { return bin * bin_width; }
    /// Mass that falls in exactly one bin: bins[b] - bins[b + 1] (last bin keeps everything above it).
    double bin_mass(int bin) const;
};

enum class Tier : std::uint8_t { None, Tier85, Tier70, Tier50 };
using TierMap = Raster<Tier>;

enum class EdgeMark : std::uint8_t { None, LowSide, HighSide };
using EdgeMap = Raster<EdgeMark>;

/// Raised for degenerate inputs to the information measures.
class InfoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultBinCount = 100;
inline constexpr std::array<double, 3> kDefaultFractions{0.50, 0.70, 0.85};

/// Prominence thresholds for the three tiers, most prominent first.
struct TierThresholds {
    double t50 = 0.0;
    double t70 = 0.0;
    double t85 = 0.0;
};

StatusMap status_map(const ImageGrid& grid);

/// Mean of the nonzero |center - neighbor| differences; 0 when all vanish.
double intensity_info(const Neighborhood3x3& nbhd);

/// 3x3 block of status bits: center plus the 8 neighbors in Neighborhood3x3 order.
struct StatusNeighborhood {
    std::uint8_t center = 1;
    std::array<std::uint8_t, 8> neighbors{};
};

/// m * (8 - m); one of {0, 7, 12, 15, 16}.
int topology_info(const StatusNeighborhood& nbhd);

/// Throws InfoError when the grid is smaller than 3x3.
InfoMaps local_info_map(const ImageGrid& grid);
InfoMaps local_info_map(const ImageGrid& grid, const StatusMap& status);

/// Throws InfoError("no information content") when every value is 0, and
/// std::invalid_argument when bin_count < 2.
CumulativeHistogram cumulative_histogram(std::span<const double> i_loc_values, int bin_count);
CumulativeHistogram cumulative_histogram(const InfoMaps& info, int bin_count = kDefaultBinCount);

/// For each fraction f in (0, 1), the largest bin lower bound whose
/// normalized cumulative mass is still >= f.
std::vector<double> prominence_thresholds(const CumulativeHistogram& hist,
                                          std::span<const double> fractions);

TierThresholds tier_thresholds(const CumulativeHistogram& hist,
                               std::span<const double, 3> fractions = kDefaultFractions);

/// Throws std::invalid_argument unless t50 >= t70 >= t85 >= 0.
TierMap prominence_mark(const InfoMaps& info, const TierThresholds& thresholds);

/// Marks pixels with I_loc >= threshold, tagged with the side given by the
/// status bit. Throws std::invalid_argument when threshold <= 0.
EdgeMap edge_map(const InfoMaps& info, const StatusMap& status, double threshold);

}  // namespace imginfo

#endif  // IMGINFO_LOWLEVEL_HPP
