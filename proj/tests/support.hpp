// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the imginfo Project.

// Synthetic images and brute-force reference computations shared by the
// unit and acceptance suites. Nothing here calls into the code under test
// except the ImageGrid container.

#ifndef IMGINFO_TESTS_SUPPORT_HPP
#define IMGINFO_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "imginfo/grid.hpp"

namespace imginfo::testing {

enum class StepOrientation { DarkLeft, DarkRight, DarkTop, DarkBottom };

/// Two flat halves. The boundary sits between index split-1 and split on the
/// step axis.
inline ImageGrid step_image(int w, int h, int split, double dark, double bright,
                            StepOrientation o = StepOrientation::DarkLeft) {
    std::vector<double> v(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            bool first_half = false;
            switch (o) {
                case StepOrientation::DarkLeft:
                case StepOrientation::DarkRight: first_half = x < split; break;
                case StepOrientation::DarkTop:
                case StepOrientation::DarkBottom: first_half = y < split; break;
            }
            const bool dark_side = (o == StepOrientation::DarkLeft || o == StepOrientation::DarkTop)
                                       ? first_half
                                       : !first_half;
            v[static_cast<std::size_t>(y) * w + x] = dark_side ? dark : bright;
        }
    }
    return ImageGrid(w, h, std::move(v));
}

/// Quadrants TL, TR, BL, BR.
inline ImageGrid quadrant_image(int w, int h, double tl, double tr, double bl, double br) {
    std::vector<double> v(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const bool left = x < w / 2;
            const bool top = y < h / 2;
            v[static_cast<std::size_t>(y) * w + x] = top ? (left ? tl : tr) : (left ? bl : br);
        }
    }
    return ImageGrid(w, h, std::move(v));
}

inline ImageGrid random_image(std::mt19937& rng, int w, int h, int lo = 0, int hi = 255) {
    std::uniform_int_distribution<int> dist(lo, hi);
    std::vector<double> v(static_cast<std::size_t>(w) * h);
    for (auto& x : v) {
        x = dist(rng);
    }
    return ImageGrid(w, h, std::move(v));
}

/// Multi-octave value noise with 1/f-like amplitude falloff, integer valued
/// in [0, 255]. Stands in for natural-image statistics.
inline ImageGrid fractal_noise(std::mt19937& rng, int w, int h, int octaves = 5,
                               double persistence = 0.55) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> acc(static_cast<std::size_t>(w) * h, 0.0);
    double amplitude = 1.0;
    int cells = 2;
    for (int o = 0; o < octaves; ++o) {
        const int gw = cells + 1;
        const int gh = cells + 1;
        std::vector<double> lattice(static_cast<std::size_t>(gw) * gh);
        for (auto& x : lattice) {
            x = unit(rng);
        }
        for (int y = 0; y < h; ++y) {
            const double fy = static_cast<double>(y) * cells / h;
            const int y0 = static_cast<int>(fy);
            const double ty = fy - y0;
            for (int x = 0; x < w; ++x) {
                const double fx = static_cast<double>(x) * cells / w;
                const int x0 = static_cast<int>(fx);
                const double tx = fx - x0;
                auto L = [&](int i, int j) { return lattice[static_cast<std::size_t>(j) * gw + i]; };
                const double top = L(x0, y0) * (1 - tx) + L(x0 + 1, y0) * tx;
                const double bot = L(x0, y0 + 1) * (1 - tx) + L(x0 + 1, y0 + 1) * tx;
                acc[static_cast<std::size_t>(y) * w + x] += amplitude * (top * (1 - ty) + bot * ty);
            }
        }
        amplitude *= persistence;
        cells *= 2;
    }
    const auto [mn, mx] = std::minmax_element(acc.begin(), acc.end());
    const double lo = *mn;
    const double span = std::max(*mx - lo, 1e-12);
    for (auto& x : acc) {
        x = std::round(255.0 * (x - lo) / span);
    }
    return ImageGrid(w, h, std::move(acc));
}

/// Direct transcription of the local information formulas, written
/// independently of the library code path.
struct OracleMaps {
    std::vector<int> status;
    std::vector<double> i_int;
    std::vector<double> i_top;
    std::vector<double> i_loc;
};

inline OracleMaps oracle_local_info(const ImageGrid& g) {
    const int w = g.width();
    const int h = g.height();
    const auto n = static_cast<std::size_t>(w) * h;
    OracleMaps o{std::vector<int>(n, 1), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0),
                 std::vector<double>(n, 0.0)};
    auto inner = [&](int x, int y) { return x > 0 && y > 0 && x < w - 1 && y < h - 1; };
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!inner(x, y)) continue;
            double sum = 0;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx)
                    if (dx || dy) sum += g.at(x + dx, y + dy);
            o.status[static_cast<std::size_t>(y) * w + x] = (8 * g.at(x, y) - sum < 0) ? 0 : 1;
        }
    }
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!inner(x, y)) continue;
            const auto i = static_cast<std::size_t>(y) * w + x;
            std::vector<double> diffs;
            int m = 0;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if (!dx && !dy) continue;
                    const double d = std::fabs(g.at(x, y) - g.at(x + dx, y + dy));
                    if (d > 0) diffs.push_back(d);
                    if (o.status[static_cast<std::size_t>(y + dy) * w + (x + dx)] == o.status[i]) ++m;
                }
            }
            double s = 0;
            for (double d : diffs) s += d;
            o.i_int[i] = diffs.empty() ? 0.0 : s / static_cast<double>(diffs.size());
            o.i_top[i] = m * (8 - m);
            o.i_loc[i] = o.i_int[i] * o.i_top[i];
        }
    }
    return o;
}

/// Cumulative histogram by the literal rule: every value adds itself to
/// every bin whose lower bound it reaches.
inline std::vector<double> oracle_cumulative_bins(const std::vector<double>& values, int bins) {
    double total = 0;
    for (double v : values) total += v;
    const double width = 3.0 * (total / static_cast<double>(values.size())) / bins;
    std::vector<double> out(static_cast<std::size_t>(bins), 0.0);
    for (int b = 0; b < bins; ++b) {
        for (double v : values) {
            if (v >= b * width) out[static_cast<std::size_t>(b)] += v;
        }
    }
    return out;
}

/// Number of 4-connected components per label, by flood fill.
template <typename LabelRaster>
inline int max_components_per_label(const LabelRaster& labels) {
    const int w = labels.width();
    const int h = labels.height();
    std::vector<int> seen(static_cast<std::size_t>(w) * h, 0);
    int worst = 0;
    std::vector<std::uint64_t> comps_for;  // indexed lazily by label
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (seen[static_cast<std::size_t>(y) * w + x]) continue;
            const auto l = labels.at(x, y);
            if (comps_for.size() <= l) comps_for.resize(static_cast<std::size_t>(l) + 1, 0);
            worst = std::max(worst, static_cast<int>(++comps_for[l]));
            std::vector<std::pair<int, int>> stack{{x, y}};
            seen[static_cast<std::size_t>(y) * w + x] = 1;
            while (!stack.empty()) {
                auto [cx, cy] = stack.back();
                stack.pop_back();
                const int nx[4] = {cx - 1, cx + 1, cx, cx};
                const int ny[4] = {cy, cy, cy - 1, cy + 1};
                for (int k = 0; k < 4; ++k) {
                    if (nx[k] < 0 || ny[k] < 0 || nx[k] >= w || ny[k] >= h) continue;
                    auto& s = seen[static_cast<std::size_t>(ny[k]) * w + nx[k]];
                    if (!s && labels.at(nx[k], ny[k]) == l) {
                        s = 1;
                        stack.push_back({nx[k], ny[k]});
                    }
                }
            }
        }
    }
    return worst;
}

}  // namespace imginfo::testing

#endif  // IMGINFO_TESTS_SUPPORT_HPP
