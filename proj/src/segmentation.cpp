// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the imginfo Project.

#include "imginfo/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <unordered_map>
#include <unordered_set>

namespace imginfo {

namespace {

using PixelList = std::vector<std::size_t>;
using LabelValues = std::unordered_map<Label, double>;

struct Geometry {
    int width;
    int height;

    std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width + x; }
    Point point(std::size_t i) const {
        return {static_cast<int>(i % static_cast<std::size_t>(width)),
                static_cast<int>(i / static_cast<std::size_t>(width))};
    }

    template <typename Fn>
    void for_each_4(std::size_t i, Fn&& fn) const {
        const Point p = point(i);
        for (const Point& d : kFourNeighbors) {
            const int nx = p.x + d.x;
            const int ny = p.y + d.y;
            if (nx >= 0 && ny >= 0 && nx < width && ny < height) {
                fn(index(nx, ny));
            }
        }
    }
};

void require_same_dims(const ImageGrid& a, const ImageGrid& b, const char* what) {
    if (a.width() != b.width() || a.height() != b.height()) {
        throw GridError(std::string(what) + ": dimension mismatch (" + std::to_string(a.width()) +
                        "x" + std::to_string(a.height()) + " vs " + std::to_string(b.width()) +
                        "x" + std::to_string(b.height()) + ")");
    }
}

/// 4-connected components of the pixels selected by `member`, ordered by
/// their first pixel in raster order.
template <typename Pred>
std::vector<PixelList> components(const Geometry& geo, std::size_t count, Pred&& member) {
    std::vector<PixelList> out;
    std::vector<std::uint8_t> seen(count, 0);
    for (std::size_t start = 0; start < count; ++start) {
        if (seen[start] || !member(start)) {
            continue;
        }
        PixelList comp{start};
        seen[start] = 1;
        for (std::size_t head = 0; head < comp.size(); ++head) {
            const std::size_t cur = comp[head];
            geo.for_each_4(cur, [&](std::size_t q) {
                if (!seen[q] && member(q) && member.same(cur, q)) {
                    seen[q] = 1;
                    comp.push_back(q);
                }
            });
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

struct MaskMember {
    const std::vector<std::uint8_t>& mask;
    bool operator()(std::size_t i) const { return mask[i] != 0; }
    bool same(std::size_t, std::size_t) const { return true; }
};

struct LabelMember {
    const Raster<Label>& labels;
    bool operator()(std::size_t) const { return true; }
    bool same(std::size_t a, std::size_t b) const { return labels[a] == labels[b]; }
};

double mean_over(const PixelList& pixels, const ImageGrid& reference) {
    double sum = 0.0;
    for (std::size_t i : pixels) {
        sum += reference[i];
    }
    return sum / static_cast<double>(pixels.size());
}

LabelValues label_means(const Raster<Label>& labels, const ImageGrid& reference) {
    std::unordered_map<Label, std::pair<double, std::size_t>> acc;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto& [sum, n] = acc[labels[i]];
        sum += reference[i];
        ++n;
    }
    LabelValues means;
    for (const auto& [label, s] : acc) {
        means[label] = s.first / static_cast<double>(s.second);
    }
    return means;
}

/// Nearest-intensity choice among candidate labels; ties go to the lowest label.
struct NearestLabel {
    double value;
    Label best = 0;
    double best_dist = std::numeric_limits<double>::infinity();

    void offer(Label label, double label_value) {
        const double d = std::abs(value - label_value);
        if (d < best_dist || (d == best_dist && label < best)) {
            best = label;
            best_dist = d;
        }
    }
    bool found() const { return best != 0; }
};

/// Settles unresolved regions: regions of at least `seed_min_size` pixels
/// become new labels, smaller ones join the adjacent resolved label whose
/// value is nearest to the region's mean reference value.
void resolve_regions(const Geometry& geo, Raster<Label>& labels, std::vector<PixelList> regions,
                     const ImageGrid& reference, LabelValues& values, int seed_min_size,
                     Label& next_label) {
    std::vector<std::uint8_t> pending(labels.size(), 0);
    for (const auto& r : regions) {
        for (std::size_t i : r) {
            pending[i] = 1;
        }
    }
    auto settle = [&](const PixelList& region, Label label) {
        for (std::size_t i : region) {
            labels[i] = label;
            pending[i] = 0;
        }
    };
    auto mint = [&](const PixelList& region) {
        const Label fresh = next_label++;
        values[fresh] = mean_over(region, reference);
        settle(region, fresh);
    };

    std::vector<PixelList> small;
    for (auto& r : regions) {
        if (static_cast<int>(r.size()) >= seed_min_size) {
            mint(r);
        } else {
            small.push_back(std::move(r));
        }
    }

    while (!small.empty()) {
        std::vector<PixelList> deferred;
        for (auto& r : small) {
            NearestLabel nearest{mean_over(r, reference)};
            for (std::size_t i : r) {
                geo.for_each_4(i, [&](std::size_t q) {
                    if (!pending[q]) {
                        nearest.offer(labels[q], values.at(labels[q]));
                    }
                });
            }
            if (nearest.found()) {
                settle(r, nearest.best);
            } else {
                deferred.push_back(std::move(r));
            }
        }
        if (deferred.size() == small.size()) {
            // Nothing resolved anywhere around them: keep them as objects.
            for (const auto& r : deferred) {
                mint(r);
            }
            break;
        }
        small = std::move(deferred);
    }
}

}  // namespace

Raster<std::uint8_t> border_mask(const InfoMaps& info, int bin_count, double fraction) {
    Raster<std::uint8_t> mask(info.i_loc.width(), info.i_loc.height(), 0);
    double threshold = 0.0;
    try {
        const auto hist = cumulative_histogram(info, bin_count);
        const double f[] = {fraction};
        threshold = prominence_thresholds(hist, f).front();
    } catch (const InfoError&) {
        return mask;
    }
    for (std::size_t i = 0; i < mask.size(); ++i) {
        const double v = info.i_loc[i];
        mask[i] = (v > 0.0 && v >= threshold) ? 1 : 0;
    }
    return mask;
}

IntensityMap characteristic_intensities(const Raster<Label>& labels, const ImageGrid& reference) {
    if (labels.width() != reference.width() || labels.height() != reference.height()) {
        throw GridError("characteristic_intensities: dimension mismatch");
    }
    const LabelValues means = label_means(labels, reference);
    std::vector<double> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out[i] = means.at(labels[i]);
    }
    return ImageGrid(labels.width(), labels.height(), std::move(out));
}

LevelSegmentation top_level_segment(const ImageGrid& grid, const SegmentationParams& params,
                                    int level) {
    if (!(params.similarity_delta > 0.0)) {
        throw std::invalid_argument("similarity_delta must be positive");
    }
    const InfoMaps info = local_info_map(grid);  // throws below 3x3
    const auto border = border_mask(info, params.bin_count, params.border_fraction);
    const Geometry geo{grid.width(), grid.height()};
    const std::size_t n = grid.size();

    // Region growing over non-border pixels; provisional labels in seed order.
    std::vector<Label> provisional(n, 0);
    std::vector<double> cluster_mean{0.0};  // index 0 unused
    for (std::size_t seed = 0; seed < n; ++seed) {
        if (border[seed] || provisional[seed] != 0) {
            continue;
        }
        const auto id = static_cast<Label>(cluster_mean.size());
        double sum = grid[seed];
        std::size_t count = 1;
        provisional[seed] = id;
        std::deque<std::size_t> queue{seed};
        while (!queue.empty()) {
            const std::size_t cur = queue.front();
            queue.pop_front();
            geo.for_each_4(cur, [&](std::size_t q) {
                if (border[q] || provisional[q] != 0) {
                    return;
                }
                if (std::abs(grid[q] - sum / static_cast<double>(count)) <= params.similarity_delta) {
                    provisional[q] = id;
                    sum += grid[q];
                    ++count;
                    queue.push_back(q);
                }
            });
        }
        cluster_mean.push_back(sum / static_cast<double>(count));
    }

    // Border pixels join the 4-adjacent cluster with the nearest mean,
    // resolving progressively in raster order.
    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < n; ++i) {
        if (provisional[i] == 0) {
            pending.push_back(i);
        }
    }
    while (!pending.empty()) {
        std::vector<std::size_t> rest;
        for (std::size_t i : pending) {
            NearestLabel nearest{grid[i]};
            geo.for_each_4(i, [&](std::size_t q) {
                if (provisional[q] != 0) {
                    nearest.offer(provisional[q], cluster_mean[provisional[q]]);
                }
            });
            if (nearest.found()) {
                provisional[i] = nearest.best;
            } else {
                rest.push_back(i);
            }
        }
        if (rest.size() == pending.size()) {
            // Only reachable when no cluster exists at all.
            const auto id = static_cast<Label>(cluster_mean.size());
            cluster_mean.push_back(0.0);
            for (std::size_t i : rest) {
                provisional[i] = id;
            }
            break;
        }
        pending = std::move(rest);
    }

    // Final labels 1..K in raster order of each cluster's first pixel.
    std::unordered_map<Label, Label> renumber;
    Raster<Label> labels(grid.width(), grid.height(), 0);
    Label next = 1;
    for (std::size_t i = 0; i < n; ++i) {
        auto [it, inserted] = renumber.try_emplace(provisional[i], next);
        if (inserted) {
            ++next;
        }
        labels[i] = it->second;
    }

    IntensityMap intensity = characteristic_intensities(labels, grid);
    return LevelSegmentation{level, LabelMap{std::move(labels), next}, std::move(intensity)};
}

std::vector<Point> deviant_pixels(const IntensityMap& expanded_intensity,
                                  const ImageGrid& reference, double delta) {
    require_same_dims(expanded_intensity, reference, "deviant_pixels");
    std::vector<Point> out;
    for (int y = 0; y < reference.height(); ++y) {
        for (int x = 0; x < reference.width(); ++x) {
            if (std::abs(expanded_intensity.at(x, y) - reference.at(x, y)) > delta) {
                out.push_back({x, y});
            }
        }
    }
    return out;
}

LevelSegmentation refine_level(const LevelSegmentation& parent, const ImageGrid& reference,
                               double delta, int seed_min_size) {
    const int w = reference.width();
    const int h = reference.height();
    Raster<Label> labels = expand(parent.label_map.labels, w, h);
    const IntensityMap expanded = expand(parent.intensity_map, w, h);
    const Geometry geo{w, h};
    const std::size_t n = reference.size();
    Label next_label = parent.label_map.next_label;

    LabelValues values;
    for (std::size_t i = 0; i < parent.intensity_map.size(); ++i) {
        values.emplace(parent.label_map.labels[i], parent.intensity_map[i]);
    }

    std::vector<std::uint8_t> deviant(n, 0);
    std::vector<std::size_t> pending;
    for (const Point& p : deviant_pixels(expanded, reference, delta)) {
        deviant[geo.index(p.x, p.y)] = 1;
        pending.push_back(geo.index(p.x, p.y));
    }

    // Reassignment passes: a deviant pixel takes the label of a settled
    // 4-neighbor whose intensity is nearest its own value, provided that
    // intensity is within delta. Pixels settled earlier in the same pass count.
    while (!pending.empty()) {
        std::vector<std::size_t> rest;
        for (std::size_t i : pending) {
            NearestLabel nearest{reference[i]};
            geo.for_each_4(i, [&](std::size_t q) {
                if (!deviant[q]) {
                    nearest.offer(labels[q], values.at(labels[q]));
                }
            });
            if (nearest.found() && nearest.best_dist <= delta) {
                labels[i] = nearest.best;
                deviant[i] = 0;
            } else {
                rest.push_back(i);
            }
        }
        if (rest.size() == pending.size()) {
            break;
        }
        pending = std::move(rest);
    }

    // Leftover deviants: large components are newly emerging objects, small
    // ones are absorbed by a neighboring region.
    resolve_regions(geo, labels, components(geo, n, MaskMember{deviant}), reference, values,
                    seed_min_size, next_label);

    // Reassignment can cut a region in two. The largest piece keeps the
    // label; the other pieces are settled like leftover deviants.
    {
        std::unordered_map<Label, std::size_t> kept;  // label -> index into comps
        const auto comps = components(geo, n, LabelMember{labels});
        for (std::size_t c = 0; c < comps.size(); ++c) {
            const Label l = labels[comps[c].front()];
            auto [it, inserted] = kept.try_emplace(l, c);
            if (!inserted && comps[c].size() > comps[it->second].size()) {
                it->second = c;
            }
        }
        std::vector<PixelList> fragments;
        for (std::size_t c = 0; c < comps.size(); ++c) {
            if (kept.at(labels[comps[c].front()]) != c) {
                fragments.push_back(comps[c]);
            }
        }
        if (!fragments.empty()) {
            LabelValues current = label_means(labels, reference);
            resolve_regions(geo, labels, std::move(fragments), reference, current, seed_min_size,
                            next_label);
        }
    }

    IntensityMap intensity = characteristic_intensities(labels, reference);
    return LevelSegmentation{parent.level - 1, LabelMap{std::move(labels), next_label},
                             std::move(intensity)};
}

std::vector<LevelSegmentation> segment_full(const Pyramid& pyramid,
                                            const SegmentationParams& params) {
    if (pyramid.levels.empty()) {
        throw std::invalid_argument("segment_full: empty pyramid");
    }
    std::vector<LevelSegmentation> out;
    out.reserve(pyramid.levels.size());
    const int top = pyramid.level_count() - 1;
    out.push_back(top_level_segment(pyramid.top(), params, top));
    for (int level = top - 1; level >= 0; --level) {
        out.push_back(refine_level(out.back(), pyramid.levels[static_cast<std::size_t>(level)],
                                   params.refine_delta, params.seed_min_size));
    }
    return out;
}

ResidualMap residual(const ImageGrid& original, const LevelSegmentation& seg) {
    require_same_dims(original, seg.intensity_map, "residual");
    std::vector<double> r(original.size());
    for (std::size_t i = 0; i < original.size(); ++i) {
        const double target = original[i];
        const double base = seg.intensity_map[i];
        double d = target - base;
        // The rounded difference does not always add back exactly; step to a
        // neighboring double that does.
        for (int step = 0; step < 8 && base + d != target; ++step) {
            d = std::nextafter(d, base + d < target ? std::numeric_limits<double>::infinity()
                                                    : -std::numeric_limits<double>::infinity());
        }
        if (base + d != target) {
            throw std::runtime_error("residual: no exact representation at index " +
                                     std::to_string(i));
        }
        r[i] = d;
    }
    return ResidualMap{ImageGrid(original.width(), original.height(), std::move(r))};
}

ImageGrid reconstruct(const IntensityMap& intensity, const ResidualMap& residual) {
    require_same_dims(intensity, residual.residual, "reconstruct");
    std::vector<double> out(intensity.size());
    for (std::size_t i = 0; i < intensity.size(); ++i) {
        out[i] = intensity[i] + residual.residual[i];
    }
    return ImageGrid(intensity.width(), intensity.height(), std::move(out));
}

int label_count(const Raster<Label>& labels) {
    std::unordered_set<Label> seen(labels.data().begin(), labels.data().end());
    return static_cast<int>(seen.size());
}

}  // namespace imginfo
