// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the imginfo Project.

#ifndef IMGINFO_OBJECTS_HPP
#define IMGINFO_OBJECTS_HPP

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "imginfo/segmentation.hpp"

namespace imginfo {

/// Descriptor of one region at one level. Coordinates are in the level's
/// own pixel frame.
struct ObjectRecord {
    Label label = 0;
    int level_first_seen = 0;
    int size_px = 0;
    std::array<double, 2> centroid{};
    double mean_intensity = 0.0;
    std::array<int, 4> bbox{};  ///< min_x, min_y, max_x, max_y
    std::optional<Label> parent_label;

    friend bool operator==(const ObjectRecord&, const ObjectRecord&) = default;
};

enum class RelationKind { SubPartOf, LeftOf, RightOf, Above, Below, Contains };

std::string_view to_string(RelationKind kind);
/// Throws std::invalid_argument on an unknown name.
RelationKind relation_kind_from_string(std::string_view name);

struct Relation {
    Label subject = 0;
    RelationKind kind = RelationKind::LeftOf;
    Label object = 0;

    friend bool operator==(const Relation&, const Relation&) = default;
    friend auto operator<=>(const Relation&, const Relation&) = default;
};

/// The object appearance list of one level.
struct ObjectList {
    int level = 0;
    std::map<Label, ObjectRecord> records;
    std::vector<Relation> relations;  ///< sorted by (subject, kind, object)
    int cumulative_count = 0;
    /// Pairs (a < b) of labels sharing at least one 4-adjacent pixel pair.
    std::vector<std::pair<Label, Label>> adjacency;
};

/// One record per label, plus boundary adjacency. `parent` is the level
/// above; `parent_objects` (its list) supplies first-seen levels for
/// inherited labels. cumulative_count is set to the number of records.
ObjectList extract_objects(const LevelSegmentation& seg,
                           const LevelSegmentation* parent = nullptr,
                           const ObjectList* parent_objects = nullptr);

/// Lateral relations between adjacent regions (dominant centroid axis),
/// sub_part_of from objects that emerged at this level to their parent
/// region, and contains as its inverse.
ObjectList relate_objects(ObjectList list);

/// Distinct labels in the union of lists[0..k], for each k. Lists are
/// ordered top level first.
std::vector<int> accumulate(std::span<const ObjectList> lists);

/// extract + relate + accumulate over a full top-down run (top level first).
std::vector<ObjectList> describe_levels(std::span<const LevelSegmentation> segs);

/// Objects JSON: level, cumulative_count, objects[] with fixed field order
/// and 6-decimal floats.
std::string to_json(const ObjectList& list);

/// Inverse of to_json. Adjacency is not serialized and comes back empty.
ObjectList objects_from_json(std::string_view text);

}  // namespace imginfo

#endif  // IMGINFO_OBJECTS_HPP
