// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the imginfo Project.

#ifndef IMGINFO_CLI_HPP
#define IMGINFO_CLI_HPP

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "imginfo/lowlevel.hpp"
#include "imginfo/pyramid.hpp"
#include "imginfo/segmentation.hpp"

namespace imginfo {

struct RunConfig {
    int top_target = kDefaultTopTarget;
    double similarity_delta = 16.0;
    double refine_delta = 16.0;
    int seed_min_size = 4;
    int bin_count = kDefaultBinCount;
    std::array<double, 3> fractions = kDefaultFractions;
    std::filesystem::path output_dir = ".";
    bool rescale = false;

    /// Empty when valid, otherwise a description of the first problem.
    std::string validate() const;
    SegmentationParams segmentation_params() const;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitProcessing = 1;
inline constexpr int kExitUsage = 2;

/// Runs one command line (args[0] is the program name). Returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace imginfo

#endif  // IMGINFO_CLI_HPP
