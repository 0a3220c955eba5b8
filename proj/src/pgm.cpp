// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the imginfo Project.

#include "imginfo/pgm.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

namespace imginfo {

namespace {

class HeaderReader {
public:
    explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

    std::size_t pos() const { return pos_; }
    bool at_end() const { return pos_ >= bytes_.size(); }
    unsigned char peek() const { return static_cast<unsigned char>(bytes_[pos_]); }

    void skip_space_and_comments() {
        while (!at_end()) {
            if (std::isspace(peek())) {
                ++pos_;
            } else if (peek() == '#') {
                while (!at_end() && peek() != '\n' && peek() != '\r') {
                    ++pos_;
                }
            } else {
                break;
            }
        }
    }

    long read_uint(const char* what) {
        skip_space_and_comments();
        if (at_end() || !std::isdigit(peek())) {
            throw PgmError(std::string("expected ") + what, pos_);
        }
        long v = 0;
        while (!at_end() && std::isdigit(peek())) {
            v = v * 10 + (peek() - '0');
            if (v > 1'000'000'000L) {
                throw PgmError(std::string(what) + " out of range", pos_);
            }
            ++pos_;
        }
        return v;
    }

    void advance(std::size_t n) { pos_ += n; }

private:
    std::string_view bytes_;
    std::size_t pos_ = 0;
};

long rounded_sample(double v, long maxval) {
    const double r = std::floor(v + 0.5);
    return static_cast<long>(std::clamp(r, 0.0, static_cast<double>(maxval)));
}

}  // namespace

ImageGrid parse_pgm(std::string_view bytes, int max_maxval) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2')) {
        throw PgmError("bad magic, expected P5 or P2", 0);
    }
    const bool binary = bytes[1] == '5';
    HeaderReader in(bytes);
    in.advance(2);
    const long width = in.read_uint("width");
    const long height = in.read_uint("height");
    const std::size_t maxval_pos = in.pos();
    const long maxval = in.read_uint("maxval");
    if (width <= 0 || height <= 0) {
        throw PgmError("image dimensions must be positive", maxval_pos);
    }
    if (maxval <= 0 || maxval > max_maxval) {
        throw PgmError("unsupported maxval " + std::to_string(maxval), maxval_pos);
    }
    const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::vector<double> values(count);

    if (binary) {
        if (in.at_end() || !std::isspace(in.peek())) {
            throw PgmError("expected whitespace after maxval", in.pos());
        }
        in.advance(1);
        const std::size_t sample_bytes = maxval > 255 ? 2 : 1;
        const std::size_t start = in.pos();
        if (bytes.size() - std::min(bytes.size(), start) < count * sample_bytes) {
            throw PgmError("truncated payload, expected " + std::to_string(count * sample_bytes) +
                               " bytes",
                           bytes.size());
        }
        for (std::size_t i = 0; i < count; ++i) {
            long v;
            if (sample_bytes == 1) {
                v = static_cast<unsigned char>(bytes[start + i]);
            } else {
                v = (static_cast<unsigned char>(bytes[start + 2 * i]) << 8) |
                    static_cast<unsigned char>(bytes[start + 2 * i + 1]);
            }
            if (v > maxval) {
                throw PgmError("sample exceeds maxval", start + i * sample_bytes);
            }
            values[i] = static_cast<double>(v);
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            in.skip_space_and_comments();
            if (in.at_end()) {
                throw PgmError("truncated payload, got " + std::to_string(i) + " of " +
                                   std::to_string(count) + " samples",
                               in.pos());
            }
            const std::size_t at = in.pos();
            const long v = in.read_uint("sample");
            if (v > maxval) {
                throw PgmError("sample exceeds maxval", at);
            }
            values[i] = static_cast<double>(v);
        }
    }
    return ImageGrid(static_cast<int>(width), static_cast<int>(height), std::move(values));
}

ImageGrid read_pgm(const std::filesystem::path& path, int max_maxval) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open " + path.string());
    }
    const std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return parse_pgm(bytes, max_maxval);
}

std::string encode_pgm(const ImageGrid& grid, const PgmOptions& options) {
    long maxval = 255;
    if (options.depth == PgmDepth::Wide16) {
        maxval = 65535;
    } else if (options.depth == PgmDepth::Auto) {
        for (double v : grid.values()) {
            if (rounded_sample(v, 65535) > 255) {
                maxval = 65535;
                break;
            }
        }
    }

    std::ostringstream out;
    out << (options.encoding == PgmEncoding::Binary ? "P5" : "P2") << '\n'
        << grid.width() << ' ' << grid.height() << '\n'
        << maxval << '\n';
    if (options.encoding == PgmEncoding::Binary) {
        for (double v : grid.values()) {
            const long s = rounded_sample(v, maxval);
            if (maxval > 255) {
                out.put(static_cast<char>((s >> 8) & 0xff));
            }
            out.put(static_cast<char>(s & 0xff));
        }
    } else {
        for (int y = 0; y < grid.height(); ++y) {
            for (int x = 0; x < grid.width(); ++x) {
                out << (x == 0 ? "" : " ") << rounded_sample(grid.at(x, y), maxval);
            }
            out << '\n';
        }
    }
    return out.str();
}

void write_pgm(const ImageGrid& grid, const std::filesystem::path& path,
               const PgmOptions& options) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw std::runtime_error("cannot write " + path.string());
    }
    const std::string bytes = encode_pgm(grid, options);
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) {
        throw std::runtime_error("write failed for " + path.string());
    }
}

}  // namespace imginfo
