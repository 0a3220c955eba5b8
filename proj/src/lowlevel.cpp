// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the imginfo Project.

#include "imginfo/lowlevel.hpp"

#include <cmath>
#include <string>

namespace imginfo {

namespace {

void require_same_dims(const ImageGrid& grid, const StatusMap& status) {
    if (grid.width() != status.width() || grid.height() != status.height()) {
        throw std::invalid_argument("status map dimensions do not match the grid");
    }
}

}  // namespace

double CumulativeHistogram::bin_mass(int bin) const {
    const auto b = static_cast<std::size_t>(bin);
    if (b + 1 < bins.size()) {
        return bins[b] - bins[b + 1];
    }
    return bins[b];
}

StatusMap status_map(const ImageGrid& grid) {
    StatusMap status(grid.width(), grid.height(), 1);
    for (int y = 1; y + 1 < grid.height(); ++y) {
        for (int x = 1; x + 1 < grid.width(); ++x) {
            double sum = 0.0;
            for (const Point& d : kNeighborOffsets) {
                sum += grid.at(x + d.x, y + d.y);
            }
            const double stat = 8.0 * grid.at(x, y) - sum;
            status.at(x, y) = stat < 0.0 ? 0 : 1;
        }
    }
    return status;
}

double intensity_info(const Neighborhood3x3& nbhd) {
    double sum = 0.0;
    int n = 0;
    for (double g : nbhd.neighbors) {
        const double d = std::abs(nbhd.center - g);
        if (d > 0.0) {
            sum += d;
            ++n;
        }
    }
    return n == 0 ? 0.0 : sum / n;
}

int topology_info(const StatusNeighborhood& nbhd) {
    int m = 0;
    for (auto s : nbhd.neighbors) {
        m += (s == nbhd.center) ? 1 : 0;
    }
    return m * (8 - m);
}

InfoMaps local_info_map(const ImageGrid& grid) {
    if (grid.width() < 3 || grid.height() < 3) {
        throw InfoError("local information needs at least a 3x3 grid, got " +
                        std::to_string(grid.width()) + "x" + std::to_string(grid.height()));
    }
    return local_info_map(grid, status_map(grid));
}

InfoMaps local_info_map(const ImageGrid& grid, const StatusMap& status) {
    if (grid.width() < 3 || grid.height() < 3) {
        throw InfoError("local information needs at least a 3x3 grid");
    }
    require_same_dims(grid, status);
    const int w = grid.width();
    const int h = grid.height();
    std::vector<double> i_int(grid.size(), 0.0);
    std::vector<double> i_top(grid.size(), 0.0);
    std::vector<double> i_loc(grid.size(), 0.0);
    for (int y = 1; y + 1 < h; ++y) {
        for (int x = 1; x + 1 < w; ++x) {
            const auto idx = static_cast<std::size_t>(y) * w + x;
            StatusNeighborhood sn;
            sn.center = status.at(x, y);
            for (std::size_t k = 0; k < kNeighborOffsets.size(); ++k) {
                sn.neighbors[k] = status.at(x + kNeighborOffsets[k].x, y + kNeighborOffsets[k].y);
            }
            i_int[idx] = intensity_info(neighborhood(grid, x, y));
            i_top[idx] = topology_info(sn);
            i_loc[idx] = i_int[idx] * i_top[idx];
        }
    }
    return InfoMaps{ImageGrid(w, h, std::move(i_int)), ImageGrid(w, h, std::move(i_top)),
                    ImageGrid(w, h, std::move(i_loc))};
}

CumulativeHistogram cumulative_histogram(std::span<const double> i_loc_values, int bin_count) {
    if (bin_count < 2) {
        throw std::invalid_argument("histogram needs at least 2 bins");
    }
    if (i_loc_values.empty()) {
        throw InfoError("no information content");
    }
    double total = 0.0;
    for (double v : i_loc_values) {
        total += v;
    }
    const double mean = total / static_cast<double>(i_loc_values.size());
    if (!(mean > 0.0)) {
        throw InfoError("no information content");
    }

    CumulativeHistogram hist;
    hist.bin_count = bin_count;
    hist.bin_width = 3.0 * mean / bin_count;
    hist.bins.assign(static_cast<std::size_t>(bin_count), 0.0);
    // Every value goes into each bin whose lower bound it reaches, so values
    // past the axis top land in all bins.
    for (double v : i_loc_values) {
        for (int b = 0; b < bin_count && v >= hist.lower_bound(b); ++b) {
            hist.bins[static_cast<std::size_t>(b)] += v;
        }
    }
    hist.normalized.resize(hist.bins.size());
    for (std::size_t b = 0; b < hist.bins.size(); ++b) {
        hist.normalized[b] = hist.bins[b] / hist.bins[0];
    }
    return hist;
}

CumulativeHistogram cumulative_histogram(const InfoMaps& info, int bin_count) {
    return cumulative_histogram(info.i_loc.values(), bin_count);
}

std::vector<double> prominence_thresholds(const CumulativeHistogram& hist,
                                          std::span<const double> fractions) {
    std::vector<double> thresholds;
    thresholds.reserve(fractions.size());
    for (double f : fractions) {
        if (!(f > 0.0 && f < 1.0)) {
            throw std::invalid_argument("prominence fraction must lie in (0, 1), got " +
                                        std::to_string(f));
        }
        int best = 0;  // normalized[0] == 1 always qualifies
        for (int b = 0; b < hist.bin_count; ++b) {
            if (hist.normalized[static_cast<std::size_t>(b)] >= f) {
                best = b;
            }
        }
        thresholds.push_back(hist.lower_bound(best));
    }
    return thresholds;
}

TierThresholds tier_thresholds(const CumulativeHistogram& hist,
                               std::span<const double, 3> fractions) {
    const auto t = prominence_thresholds(hist, fractions);
    return TierThresholds{t[0], t[1], t[2]};
}

TierMap prominence_mark(const InfoMaps& info, const TierThresholds& thresholds) {
    const auto& [t50, t70, t85] = thresholds;
    if (!(t50 >= t70 && t70 >= t85 && t85 >= 0.0)) {
        throw std::invalid_argument("tier thresholds must satisfy t50 >= t70 >= t85 >= 0");
    }
    TierMap tiers(info.i_loc.width(), info.i_loc.height(), Tier::None);
    for (std::size_t i = 0; i < info.i_loc.size(); ++i) {
        const double v = info.i_loc[i];
        if (v >= t50) {
            tiers[i] = Tier::Tier50;
        } else if (v >= t70) {
            tiers[i] = Tier::Tier70;
        } else if (v >= t85) {
            tiers[i] = Tier::Tier85;
        }
    }
    return tiers;
}

EdgeMap edge_map(const InfoMaps& info, const StatusMap& status, double threshold) {
    if (!(threshold > 0.0)) {
        throw std::invalid_argument("edge threshold must be positive");
    }
    require_same_dims(info.i_loc, status);
    EdgeMap edges(status.width(), status.height(), EdgeMark::None);
    for (std::size_t i = 0; i < info.i_loc.size(); ++i) {
        if (info.i_loc[i] >= threshold) {
            edges[i] = status[i] == 0 ? EdgeMark::LowSide : EdgeMark::HighSide;
        }
    }
    return edges;
}

}  // namespace imginfo
