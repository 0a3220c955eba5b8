// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the imginfo Project.

#include "imginfo/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "imginfo/export.hpp"
#include "imginfo/objects.hpp"
#include "imginfo/pgm.hpp"

namespace imginfo {

namespace {

namespace fs = std::filesystem;

/// Bad flag values found after CLI11 has accepted the syntax.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::array<double, 3> parse_fractions(const std::string& text) {
    std::array<double, 3> out{};
    std::istringstream in(text);
    std::string item;
    std::size_t n = 0;
    while (std::getline(in, item, ',')) {
        if (n == out.size()) {
            throw UsageError("--fractions takes exactly three values");
        }
        try {
            std::size_t used = 0;
            out[n] = std::stod(item, &used);
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception&) {
            throw UsageError("--fractions: '" + item + "' is not a number");
        }
        ++n;
    }
    if (n != out.size()) {
        throw UsageError("--fractions takes exactly three values");
    }
    return out;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw std::runtime_error("cannot write " + path.string());
    }
    f << text;
    if (!f) {
        throw std::runtime_error("write failed for " + path.string());
    }
}

std::string level_name(const char* stem, int level, const char* ext) {
    return std::string(stem) + "_L" + std::to_string(level) + ext;
}

const PgmOptions kGray{PgmEncoding::Binary, PgmDepth::Gray8};
const PgmOptions kAuto{PgmEncoding::Binary, PgmDepth::Auto};
const PgmOptions kWide{PgmEncoding::Binary, PgmDepth::Wide16};

int cmd_pyramid(const fs::path& input, const RunConfig& cfg, std::ostream& out) {
    const Pyramid pyramid = build_pyramid(read_pgm(input), cfg.top_target);
    for (int l = 0; l < pyramid.level_count(); ++l) {
        ImageGrid level = pyramid.levels[static_cast<std::size_t>(l)];
        if (cfg.rescale) {
            level = rescale_to_base(pyramid, level, l);
        }
        write_pgm(level, cfg.output_dir / level_name("level", l, ".pgm"), kGray);
    }
    out << "pyramid: " << pyramid.level_count() << " levels\n";
    return kExitOk;
}

struct LowLevelResult {
    StatusMap status;
    InfoMaps info;
    CumulativeHistogram hist;
    TierThresholds thresholds;
};

LowLevelResult analyze(const fs::path& input, const RunConfig& cfg) {
    const ImageGrid grid = read_pgm(input);
    StatusMap status = status_map(grid);
    InfoMaps info = local_info_map(grid, status);
    CumulativeHistogram hist = cumulative_histogram(info, cfg.bin_count);
    const TierThresholds thresholds = tier_thresholds(hist, cfg.fractions);
    return {std::move(status), std::move(info), std::move(hist), thresholds};
}

int cmd_lowlevel(const fs::path& input, const RunConfig& cfg, std::ostream& out) {
    const LowLevelResult r = analyze(input, cfg);
    write_pgm(r.info.i_int, cfg.output_dir / "i_int.pgm", kGray);
    write_pgm(r.info.i_top, cfg.output_dir / "i_top.pgm", kGray);
    write_pgm(r.info.i_loc, cfg.output_dir / "i_loc.pgm", kAuto);
    write_pgm(status_image(r.status), cfg.output_dir / "status.pgm", kGray);
    write_text(cfg.output_dir / "histogram.csv", histogram_csv(r.hist));
    out << "lowlevel: total I_loc " << r.hist.bins[0] << ", thresholds " << r.thresholds.t50
        << " / " << r.thresholds.t70 << " / " << r.thresholds.t85 << "\n";
    return kExitOk;
}

int cmd_edges(const fs::path& input, const RunConfig& cfg, std::ostream& out) {
    const LowLevelResult r = analyze(input, cfg);
    const EdgeMap edges = edge_map(r.info, r.status, r.thresholds.t85);
    write_pgm(edge_image(edges), cfg.output_dir / "edges.pgm", kGray);
    out << "edges: threshold " << r.thresholds.t85 << "\n";
    return kExitOk;
}

int cmd_tiers(const fs::path& input, const RunConfig& cfg, std::ostream& out) {
    const LowLevelResult r = analyze(input, cfg);
    write_pgm(tier_image(prominence_mark(r.info, r.thresholds)), cfg.output_dir / "tiers.pgm",
              kGray);
    out << "tiers: thresholds " << r.thresholds.t50 << " / " << r.thresholds.t70 << " / "
        << r.thresholds.t85 << "\n";
    return kExitOk;
}

int cmd_segment(const fs::path& input, const RunConfig& cfg, bool with_residual,
                std::ostream& out) {
    const ImageGrid original = read_pgm(input);
    const Pyramid pyramid = build_pyramid(original, cfg.top_target);
    const auto segs = segment_full(pyramid, cfg.segmentation_params());
    const auto lists = describe_levels(segs);
    for (std::size_t k = 0; k < segs.size(); ++k) {
        const LevelSegmentation& seg = segs[k];
        ImageGrid labels = label_image(seg.label_map.labels);
        ImageGrid intensity = seg.intensity_map;
        if (cfg.rescale) {
            labels = rescale_to_base(pyramid, labels, seg.level);
            intensity = rescale_to_base(pyramid, intensity, seg.level);
        }
        write_pgm(labels, cfg.output_dir / level_name("labels", seg.level, ".pgm"), kAuto);
        write_pgm(intensity, cfg.output_dir / level_name("intensity", seg.level, ".pgm"), kGray);
        write_text(cfg.output_dir / level_name("objects", seg.level, ".json"), to_json(lists[k]));
        out << "level " << seg.level << ": " << lists[k].records.size() << " objects, "
            << lists[k].cumulative_count << " cumulative\n";
    }
    if (with_residual) {
        const ImageGrid coded = quantize_gray(segs.back().intensity_map);
        write_pgm(residual_image(original, coded), cfg.output_dir / "residual.pgm", kWide);
    }
    return kExitOk;
}

int cmd_verify(const fs::path& original_path, const fs::path& intensity_path,
               const fs::path& residual_path, std::ostream& out) {
    const ImageGrid original = read_pgm(original_path);
    const ImageGrid intensity = read_pgm(intensity_path);
    const ImageGrid residual = read_pgm(residual_path, 65535);
    const std::size_t bad = two_part_mismatches(original, intensity, residual);
    if (bad != 0) {
        out << "verify: " << bad << " pixels differ\n";
        return kExitProcessing;
    }
    out << "verify: exact reconstruction (" << original.size() << " pixels)\n";
    return kExitOk;
}

}  // namespace

std::string RunConfig::validate() const {
    if (top_target < 1) return "--top-size must be positive";
    if (!(similarity_delta > 0.0)) return "--delta-sim must be positive";
    if (!(refine_delta > 0.0)) return "--delta-refine must be positive";
    if (seed_min_size < 1) return "--seed-min must be positive";
    if (bin_count < 2) return "--bins must be at least 2";
    for (double f : fractions) {
        if (!(f > 0.0 && f < 1.0)) return "--fractions values must lie in (0, 1)";
    }
    if (!(fractions[0] < fractions[1] && fractions[1] < fractions[2])) {
        return "--fractions must increase (most prominent tier first)";
    }
    return {};
}

SegmentationParams RunConfig::segmentation_params() const {
    SegmentationParams p;
    p.similarity_delta = similarity_delta;
    p.refine_delta = refine_delta;
    p.seed_min_size = seed_min_size;
    p.bin_count = bin_count;
    p.border_fraction = fractions[2];
    return p;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Image information content: pyramids, local information maps, top-down "
                 "segmentation",
                 "imginfo"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string fractions_text;
    std::string out_dir;
    fs::path input;
    bool with_residual = false;
    fs::path verify_original, verify_intensity, verify_residual;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--top-size", cfg.top_target, "Minimum side of the pyramid top");
        sub->add_option("--delta-sim", cfg.similarity_delta, "Top-level region growing tolerance");
        sub->add_option("--delta-refine", cfg.refine_delta, "Refinement deviation threshold");
        sub->add_option("--seed-min", cfg.seed_min_size, "Smallest new-object seed (pixels)");
        sub->add_option("--bins", cfg.bin_count, "Cumulative histogram bins");
        sub->add_option("--fractions", fractions_text, "Tier fractions a,b,c (default 0.5,0.7,0.85)");
        sub->add_option("--out", out_dir, "Output directory");
        sub->add_flag("--rescale", cfg.rescale, "Upsample level maps to the input size");
    };

    CLI::App* pyramid = app.add_subcommand("pyramid", "Write every pyramid level");
    CLI::App* lowlevel = app.add_subcommand("lowlevel", "Write I_int/I_top/I_loc/status maps and the histogram");
    CLI::App* edges = app.add_subcommand("edges", "Write the dual-line signed edge map");
    CLI::App* tiers = app.add_subcommand("tiers", "Write the prominence tier map");
    CLI::App* segment = app.add_subcommand("segment", "Top-down segmentation with object lists");
    for (CLI::App* sub : {pyramid, lowlevel, edges, tiers, segment}) {
        sub->add_option("input", input, "Input PGM")->required();
        add_common(sub);
    }
    segment->add_flag("--residual", with_residual, "Also write the two-part residual");

    CLI::App* verify = app.add_subcommand("verify", "Check intensity + residual == original");
    verify->add_option("original", verify_original)->required();
    verify->add_option("intensity", verify_intensity)->required();
    verify->add_option("residual", verify_residual)->required();

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (!fractions_text.empty()) {
            cfg.fractions = parse_fractions(fractions_text);
        }
        if (!out_dir.empty()) {
            cfg.output_dir = out_dir;
        }
        if (auto problem = cfg.validate(); !problem.empty()) {
            throw UsageError(problem);
        }
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        if (*verify) {
            return cmd_verify(verify_original, verify_intensity, verify_residual, out);
        }
        fs::create_directories(cfg.output_dir);
        if (*pyramid) return cmd_pyramid(input, cfg, out);
        if (*lowlevel) return cmd_lowlevel(input, cfg, out);
        if (*edges) return cmd_edges(input, cfg, out);
        if (*tiers) return cmd_tiers(input, cfg, out);
        if (*segment) return cmd_segment(input, cfg, with_residual, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitProcessing;
    }
    return kExitUsage;
}

}  // namespace imginfo
