// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the imginfo Project.

#ifndef IMGINFO_PGM_HPP
#define IMGINFO_PGM_HPP

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "imginfo/grid.hpp"

namespace imginfo {

/// Malformed PGM input. offset() is the byte position where parsing failed.
class PgmError : public std::runtime_error {
public:
    PgmError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"),
          offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

enum class PgmEncoding { Binary /* P5 */, Ascii /* P2 */ };

enum class PgmDepth {
    Gray8,  ///< clamp to [0, 255]
    Auto,   ///< 8-bit when every sample fits, 16-bit otherwise (clamped to 65535)
    Wide16, ///< always maxval 65535
};

struct PgmOptions {
    PgmEncoding encoding = PgmEncoding::Binary;
    PgmDepth depth = PgmDepth::Gray8;
};

/// Image input accepts maxval <= 255. Pass 65535 to also read 16-bit
/// label and residual maps.
ImageGrid parse_pgm(std::string_view bytes, int max_maxval = 255);
ImageGrid read_pgm(const std::filesystem::path& path, int max_maxval = 255);

/// Samples are rounded half up and clamped to the chosen depth.
std::string encode_pgm(const ImageGrid& grid, const PgmOptions& options = {});
void write_pgm(const ImageGrid& grid, const std::filesystem::path& path,
               const PgmOptions& options = {});

}  // namespace imginfo

#endif  // IMGINFO_PGM_HPP
