// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the imginfo Project.

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "imginfo/objects.hpp"
#include "support.hpp"

namespace imginfo {
namespace {

LevelSegmentation make_seg(int level, int w, int h, std::vector<Label> labels,
                           const ImageGrid& reference) {
    Raster<Label> r(w, h, std::move(labels));
    Label next = 1;
    for (Label l : r.data()) next = std::max(next, l + 1);
    IntensityMap intensity = characteristic_intensities(r, reference);
    return LevelSegmentation{level, LabelMap{std::move(r), next}, std::move(intensity)};
}

bool has_relation(const ObjectList& list, Label s, RelationKind k, Label o) {
    return std::find(list.relations.begin(), list.relations.end(), Relation{s, k, o}) !=
           list.relations.end();
}

int lateral_count(const ObjectList& list) {
    return static_cast<int>(std::count_if(list.relations.begin(), list.relations.end(), [](const Relation& r) {
        return r.kind != RelationKind::SubPartOf && r.kind != RelationKind::Contains;
    }));
}

TEST(ExtractObjects, SingleRegion) {
    const auto g = ImageGrid::filled(7, 5, 30.0);
    const auto list = extract_objects(make_seg(0, 7, 5, std::vector<Label>(35, 1), g));
    ASSERT_EQ(list.records.size(), 1u);
    const auto& r = list.records.at(1);
    EXPECT_EQ(r.size_px, 35);
    EXPECT_EQ(r.centroid, (std::array<double, 2>{3.0, 2.0}));
    EXPECT_EQ(r.bbox, (std::array<int, 4>{0, 0, 6, 4}));
    EXPECT_EQ(r.mean_intensity, 30.0);
    EXPECT_FALSE(r.parent_label.has_value());
}

TEST(ExtractObjects, TwoRegionStep) {
    const auto g = testing::step_image(8, 8, 4, 64, 192);
    std::vector<Label> labels;
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) labels.push_back(x < 4 ? 1 : 2);
    auto list = relate_objects(extract_objects(make_seg(0, 8, 8, labels, g)));
    EXPECT_EQ(list.records.at(1).size_px, 32);
    EXPECT_EQ(list.records.at(2).size_px, 32);
    EXPECT_EQ(list.records.at(1).centroid, (std::array<double, 2>{1.5, 3.5}));
    EXPECT_EQ(list.records.at(2).centroid, (std::array<double, 2>{5.5, 3.5}));
    EXPECT_EQ(list.records.at(1).mean_intensity, 64.0);
    EXPECT_EQ(list.records.at(2).mean_intensity, 192.0);
    EXPECT_TRUE(has_relation(list, 1, RelationKind::LeftOf, 2));
    EXPECT_TRUE(has_relation(list, 2, RelationKind::RightOf, 1));
    EXPECT_EQ(lateral_count(list), 2);
}

TEST(ExtractObjects, EmergedObjectIsSubPartOfParent) {
    const auto parent_ref = ImageGrid::filled(4, 4, 50.0);
    const auto parent = make_seg(1, 4, 4, std::vector<Label>(16, 1), parent_ref);
    std::vector<double> v(64, 50.0);
    std::vector<Label> labels(64, 1);
    for (int y = 2; y < 6; ++y)
        for (int x = 2; x < 6; ++x) {
            v[y * 8 + x] = 200;
            labels[y * 8 + x] = 2;
        }
    const auto child = make_seg(0, 8, 8, labels, ImageGrid(8, 8, v));
    const auto parent_list = extract_objects(parent);
    const auto list = relate_objects(extract_objects(child, &parent, &parent_list));
    EXPECT_EQ(list.records.at(2).parent_label, 1u);
    EXPECT_EQ(list.records.at(2).level_first_seen, 0);
    EXPECT_EQ(list.records.at(1).level_first_seen, 1);
    EXPECT_TRUE(has_relation(list, 2, RelationKind::SubPartOf, 1));
    EXPECT_TRUE(has_relation(list, 1, RelationKind::Contains, 2));
    // concentric centroids: no lateral relation
    EXPECT_EQ(lateral_count(list), 0);
}

TEST(RelateObjects, NonAdjacentRegionsAreUnrelated) {
    std::vector<Label> labels;
    for (int y = 0; y < 3; ++y)
        for (int x = 0; x < 9; ++x) labels.push_back(static_cast<Label>(x / 3 + 1));
    const auto list = relate_objects(extract_objects(make_seg(0, 9, 3, labels, ImageGrid::filled(9, 3, 1))));
    EXPECT_TRUE(has_relation(list, 1, RelationKind::LeftOf, 2));
    EXPECT_TRUE(has_relation(list, 2, RelationKind::LeftOf, 3));
    for (const auto& r : list.relations) {
        EXPECT_FALSE((r.subject == 1 && r.object == 3) || (r.subject == 3 && r.object == 1));
    }
}

TEST(RelateObjects, StackedBandsFormAboveBelowChain) {
    std::vector<Label> labels;
    for (int y = 0; y < 9; ++y)
        for (int x = 0; x < 4; ++x) labels.push_back(static_cast<Label>(y / 3 + 1));
    const auto list = relate_objects(extract_objects(make_seg(0, 4, 9, labels, ImageGrid::filled(4, 9, 1))));
    // centroids y = 1, 4, 7, all x = 1.5
    EXPECT_TRUE(has_relation(list, 1, RelationKind::Above, 2));
    EXPECT_TRUE(has_relation(list, 2, RelationKind::Below, 1));
    EXPECT_TRUE(has_relation(list, 2, RelationKind::Above, 3));
    EXPECT_TRUE(has_relation(list, 3, RelationKind::Below, 2));
    EXPECT_EQ(lateral_count(list), 4);
}

TEST(Accumulate, ConstantImageFourLevels) {
    const auto p = build_pyramid(ImageGrid::filled(96, 96, 10.0), 12);
    ASSERT_EQ(p.level_count(), 4);
    const auto lists = describe_levels(segment_full(p));
    EXPECT_EQ(accumulate(lists), (std::vector<int>{1, 1, 1, 1}));
}

TEST(Accumulate, ObjectMintedAtLevelTwo) {
    auto list_with = [](int level, Label n) {
        ObjectList l;
        l.level = level;
        for (Label i = 1; i <= n; ++i) l.records[i].label = i;
        return l;
    };
    const std::vector<ObjectList> lists{list_with(3, 5), list_with(2, 5), list_with(1, 6), list_with(0, 6)};
    EXPECT_EQ(accumulate(lists), (std::vector<int>{5, 5, 6, 6}));
}

TEST(Accumulate, CountsVanishedLabels) {
    ObjectList a, b;
    a.records[1].label = 1;
    a.records[2].label = 2;
    b.records[2].label = 2;
    b.records[3].label = 3;
    const std::vector<ObjectList> lists{a, b};
    EXPECT_EQ(accumulate(lists), (std::vector<int>{2, 3}));
}

TEST(DescribeLevels, PartitionCentroidAndForest) {
    std::mt19937 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
        const auto g = testing::fractal_noise(rng, 72, 56);
        const auto p = build_pyramid(g, 12);
        const auto segs = segment_full(p);
        const auto lists = describe_levels(segs);
        int prev = 0;
        for (std::size_t k = 0; k < lists.size(); ++k) {
            const auto& list = lists[k];
            const auto& seg = segs[k];
            const int w = seg.label_map.width(), h = seg.label_map.height();
            long total = 0;
            double cx = 0, cy = 0;
            for (const auto& [label, r] : list.records) {
                total += r.size_px;
                cx += r.size_px * r.centroid[0];
                cy += r.size_px * r.centroid[1];
                EXPECT_GE(r.centroid[0], r.bbox[0]);
                EXPECT_LE(r.centroid[0], r.bbox[2]);
                EXPECT_GE(r.centroid[1], r.bbox[1]);
                EXPECT_LE(r.centroid[1], r.bbox[3]);
                EXPECT_LE(r.level_first_seen, segs.front().level);
                EXPECT_GE(r.level_first_seen, list.level);
                EXPECT_EQ(r.parent_label.has_value(), k > 0);
            }
            EXPECT_EQ(total, static_cast<long>(w) * h);
            EXPECT_NEAR(cx / total, (w - 1) / 2.0, 1e-9);
            EXPECT_NEAR(cy / total, (h - 1) / 2.0, 1e-9);
            EXPECT_EQ(list.records.size(), static_cast<std::size_t>(label_count(seg.label_map.labels)));
            EXPECT_GE(list.cumulative_count, prev);
            prev = list.cumulative_count;
            // sub_part_of only points from objects that emerged here to labels of the level above.
            for (const auto& r : list.relations) {
                if (r.kind != RelationKind::SubPartOf) continue;
                EXPECT_EQ(list.records.at(r.subject).level_first_seen, list.level);
                EXPECT_LT(r.object, r.subject);
            }
            // lateral relations come in inverse pairs
            for (const auto& r : list.relations) {
                const auto inverse = [&] {
                    switch (r.kind) {
                        case RelationKind::LeftOf: return RelationKind::RightOf;
                        case RelationKind::RightOf: return RelationKind::LeftOf;
                        case RelationKind::Above: return RelationKind::Below;
                        case RelationKind::Below: return RelationKind::Above;
                        case RelationKind::SubPartOf: return RelationKind::Contains;
                        case RelationKind::Contains: return RelationKind::SubPartOf;
                    }
                    return r.kind;
                }();
                if (r.kind == RelationKind::SubPartOf && !list.records.contains(r.object)) continue;
                EXPECT_TRUE(has_relation(list, r.object, inverse, r.subject));
            }
        }
    }
}

TEST(ObjectsJson, FieldOrderAndFormatting) {
    const auto g = testing::step_image(8, 8, 4, 64, 192);
    std::vector<Label> labels;
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) labels.push_back(x < 4 ? 1 : 2);
    auto list = relate_objects(extract_objects(make_seg(0, 8, 8, labels, g)));
    list.cumulative_count = 2;
    const std::string text = to_json(list);
    const std::string expected_head =
        "{\n"
        "  \"level\": 0,\n"
        "  \"cumulative_count\": 2,\n"
        "  \"objects\": [\n"
        "    {\n"
        "      \"label\": 1,\n"
        "      \"first_seen_level\": 0,\n"
        "      \"size_px\": 32,\n"
        "      \"centroid\": [1.500000, 3.500000],\n"
        "      \"mean_intensity\": 64.000000,\n"
        "      \"bbox\": [0, 0, 3, 7],\n"
        "      \"parent_label\": null,\n"
        "      \"relations\": [\n"
        "        { \"kind\": \"left_of\", \"target\": 2 }\n"
        "      ]\n"
        "    },\n";
    EXPECT_EQ(text.substr(0, expected_head.size()), expected_head);
}

TEST(ObjectsJson, RoundTrip) {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        const auto segs = segment_full(build_pyramid(testing::fractal_noise(rng, 64, 48), 12));
        for (const auto& list : describe_levels(segs)) {
            const std::string text = to_json(list);
            const ObjectList back = objects_from_json(text);
            EXPECT_EQ(to_json(back), text);
            EXPECT_EQ(back.level, list.level);
            EXPECT_EQ(back.cumulative_count, list.cumulative_count);
            EXPECT_EQ(back.relations, list.relations);
            ASSERT_EQ(back.records.size(), list.records.size());
            for (const auto& [label, r] : list.records) {
                const auto& b = back.records.at(label);
                EXPECT_EQ(b.size_px, r.size_px);
                EXPECT_EQ(b.bbox, r.bbox);
                EXPECT_EQ(b.parent_label, r.parent_label);
                EXPECT_EQ(b.level_first_seen, r.level_first_seen);
                EXPECT_NEAR(b.centroid[0], r.centroid[0], 5e-7);
                EXPECT_NEAR(b.centroid[1], r.centroid[1], 5e-7);
                EXPECT_NEAR(b.mean_intensity, r.mean_intensity, 5e-7);
            }
        }
    }
}

TEST(ObjectsJson, UnknownRelationKindThrows) {
    EXPECT_THROW(relation_kind_from_string("inside_of"), std::invalid_argument);
    EXPECT_EQ(relation_kind_from_string("above"), RelationKind::Above);
}

}  // namespace
}  // namespace imginfo
