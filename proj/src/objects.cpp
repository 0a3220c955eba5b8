// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the imginfo Project.

#include "imginfo/objects.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"

namespace imginfo {

namespace {

constexpr std::array<std::pair<RelationKind, std::string_view>, 6> kKindNames{{
    {RelationKind::SubPartOf, "sub_part_of"},
    {RelationKind::LeftOf, "left_of"},
    {RelationKind::RightOf, "right_of"},
    {RelationKind::Above, "above"},
    {RelationKind::Below, "below"},
    {RelationKind::Contains, "contains"},
}};

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

struct Accum {
    std::size_t count = 0;
    double sum_x = 0.0;
    double sum_y = 0.0;
    int min_x = 0, min_y = 0, max_x = 0, max_y = 0;
    double intensity = 0.0;
    std::map<Label, std::size_t> parent_votes;
};

}  // namespace

std::string_view to_string(RelationKind kind) {
    for (const auto& [k, name] : kKindNames) {
        if (k == kind) {
            return name;
        }
    }
    return "unknown";
}

RelationKind relation_kind_from_string(std::string_view name) {
    for (const auto& [k, n] : kKindNames) {
        if (n == name) {
            return k;
        }
    }
    throw std::invalid_argument("unknown relation kind '" + std::string(name) + "'");
}

ObjectList extract_objects(const LevelSegmentation& seg, const LevelSegmentation* parent,
                           const ObjectList* parent_objects) {
    const Raster<Label>& labels = seg.label_map.labels;
    const int w = labels.width();
    const int h = labels.height();
    if (parent != nullptr && ((w + 1) / 2 != parent->label_map.width() ||
                              (h + 1) / 2 != parent->label_map.height())) {
        throw GridError("extract_objects: parent segmentation is not the level above");
    }

    std::map<Label, Accum> acc;
    std::set<std::pair<Label, Label>> adjacent;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const Label l = labels.at(x, y);
            auto [it, inserted] = acc.try_emplace(l);
            Accum& a = it->second;
            if (inserted) {
                a.min_x = a.max_x = x;
                a.min_y = a.max_y = y;
                a.intensity = seg.intensity_map.at(x, y);
            }
            ++a.count;
            a.sum_x += x;
            a.sum_y += y;
            a.min_x = std::min(a.min_x, x);
            a.max_x = std::max(a.max_x, x);
            a.min_y = std::min(a.min_y, y);
            a.max_y = std::max(a.max_y, y);
            if (parent != nullptr) {
                ++a.parent_votes[parent->label_map.labels.at(x / 2, y / 2)];
            }
            // Right and down neighbors cover every 4-adjacent pair once.
            if (x + 1 < w && labels.at(x + 1, y) != l) {
                adjacent.insert(std::minmax(l, labels.at(x + 1, y)));
            }
            if (y + 1 < h && labels.at(x, y + 1) != l) {
                adjacent.insert(std::minmax(l, labels.at(x, y + 1)));
            }
        }
    }

    std::set<Label> parent_labels;
    if (parent != nullptr) {
        parent_labels.insert(parent->label_map.labels.data().begin(),
                             parent->label_map.labels.data().end());
    }

    ObjectList list;
    list.level = seg.level;
    for (const auto& [label, a] : acc) {
        ObjectRecord r;
        r.label = label;
        r.size_px = static_cast<int>(a.count);
        r.centroid = {a.sum_x / static_cast<double>(a.count),
                      a.sum_y / static_cast<double>(a.count)};
        r.mean_intensity = a.intensity;
        r.bbox = {a.min_x, a.min_y, a.max_x, a.max_y};
        r.level_first_seen = seg.level;
        if (parent != nullptr) {
            if (parent_labels.contains(label)) {
                r.level_first_seen = parent->level;
                if (parent_objects != nullptr) {
                    if (auto pr = parent_objects->records.find(label);
                        pr != parent_objects->records.end()) {
                        r.level_first_seen = pr->second.level_first_seen;
                    }
                }
            }
            // Majority vote; std::map iteration makes the lower label win ties.
            Label best = 0;
            std::size_t best_votes = 0;
            for (const auto& [pl, votes] : a.parent_votes) {
                if (votes > best_votes) {
                    best = pl;
                    best_votes = votes;
                }
            }
            r.parent_label = best;
        }
        list.records.emplace(label, r);
    }
    list.adjacency.assign(adjacent.begin(), adjacent.end());
    list.cumulative_count = static_cast<int>(list.records.size());
    return list;
}

ObjectList relate_objects(ObjectList list) {
    std::vector<Relation> rel;
    for (const auto& [a, b] : list.adjacency) {
        const auto& ca = list.records.at(a).centroid;
        const auto& cb = list.records.at(b).centroid;
        const double dx = cb[0] - ca[0];
        const double dy = cb[1] - ca[1];
        if (std::abs(dx) > std::abs(dy)) {
            const auto [left, right] = dx > 0 ? std::pair{a, b} : std::pair{b, a};
            rel.push_back({left, RelationKind::LeftOf, right});
            rel.push_back({right, RelationKind::RightOf, left});
        } else if (dy != 0.0) {
            const auto [upper, lower] = dy > 0 ? std::pair{a, b} : std::pair{b, a};
            rel.push_back({upper, RelationKind::Above, lower});
            rel.push_back({lower, RelationKind::Below, upper});
        }
        // Coincident centroids (one region wrapping another) get no lateral relation.
    }
    for (const auto& [label, r] : list.records) {
        if (r.level_first_seen != list.level || !r.parent_label || *r.parent_label == label) {
            continue;
        }
        rel.push_back({label, RelationKind::SubPartOf, *r.parent_label});
        if (list.records.contains(*r.parent_label)) {
            rel.push_back({*r.parent_label, RelationKind::Contains, label});
        }
    }
    std::sort(rel.begin(), rel.end());
    rel.erase(std::unique(rel.begin(), rel.end()), rel.end());
    list.relations = std::move(rel);
    return list;
}

std::vector<int> accumulate(std::span<const ObjectList> lists) {
    std::set<Label> seen;
    std::vector<int> counts;
    counts.reserve(lists.size());
    for (const auto& list : lists) {
        for (const auto& [label, _] : list.records) {
            seen.insert(label);
        }
        counts.push_back(static_cast<int>(seen.size()));
    }
    return counts;
}

std::vector<ObjectList> describe_levels(std::span<const LevelSegmentation> segs) {
    std::vector<ObjectList> lists;
    lists.reserve(segs.size());
    for (std::size_t k = 0; k < segs.size(); ++k) {
        const LevelSegmentation* parent = k == 0 ? nullptr : &segs[k - 1];
        const ObjectList* parent_list = k == 0 ? nullptr : &lists[k - 1];
        lists.push_back(relate_objects(extract_objects(segs[k], parent, parent_list)));
    }
    const auto counts = accumulate(lists);
    for (std::size_t k = 0; k < lists.size(); ++k) {
        lists[k].cumulative_count = counts[k];
    }
    return lists;
}

std::string to_json(const ObjectList& list) {
    std::string out;
    out += "{\n";
    out += "  \"level\": " + std::to_string(list.level) + ",\n";
    out += "  \"cumulative_count\": " + std::to_string(list.cumulative_count) + ",\n";
    out += "  \"objects\": [";
    bool first_record = true;
    for (const auto& [label, r] : list.records) {
        out += first_record ? "\n" : ",\n";
        first_record = false;
        out += "    {\n";
        out += "      \"label\": " + std::to_string(r.label) + ",\n";
        out += "      \"first_seen_level\": " + std::to_string(r.level_first_seen) + ",\n";
        out += "      \"size_px\": " + std::to_string(r.size_px) + ",\n";
        out += "      \"centroid\": [" + fixed6(r.centroid[0]) + ", " + fixed6(r.centroid[1]) +
               "],\n";
        out += "      \"mean_intensity\": " + fixed6(r.mean_intensity) + ",\n";
        out += "      \"bbox\": [" + std::to_string(r.bbox[0]) + ", " + std::to_string(r.bbox[1]) +
               ", " + std::to_string(r.bbox[2]) + ", " + std::to_string(r.bbox[3]) + "],\n";
        out += "      \"parent_label\": " +
               (r.parent_label ? std::to_string(*r.parent_label) : std::string("null")) + ",\n";
        out += "      \"relations\": [";
        bool first_rel = true;
        for (const auto& rel : list.relations) {
            if (rel.subject != label) {
                continue;
            }
            out += first_rel ? "\n" : ",\n";
            first_rel = false;
            out += "        { \"kind\": \"" + std::string(to_string(rel.kind)) +
                   "\", \"target\": " + std::to_string(rel.object) + " }";
        }
        out += first_rel ? "]\n" : "\n      ]\n";
        out += "    }";
    }
    out += first_record ? "]\n" : "\n  ]\n";
    out += "}\n";
    return out;
}

ObjectList objects_from_json(std::string_view text) {
    const auto doc = nlohmann::json::parse(text);
    ObjectList list;
    list.level = doc.at("level").get<int>();
    list.cumulative_count = doc.at("cumulative_count").get<int>();
    for (const auto& obj : doc.at("objects")) {
        ObjectRecord r;
        r.label = obj.at("label").get<Label>();
        r.level_first_seen = obj.at("first_seen_level").get<int>();
        r.size_px = obj.at("size_px").get<int>();
        r.centroid = obj.at("centroid").get<std::array<double, 2>>();
        r.mean_intensity = obj.at("mean_intensity").get<double>();
        r.bbox = obj.at("bbox").get<std::array<int, 4>>();
        if (!obj.at("parent_label").is_null()) {
            r.parent_label = obj.at("parent_label").get<Label>();
        }
        for (const auto& rel : obj.at("relations")) {
            list.relations.push_back({r.label,
                                      relation_kind_from_string(rel.at("kind").get<std::string>()),
                                      rel.at("target").get<Label>()});
        }
        list.records.emplace(r.label, r);
    }
    std::sort(list.relations.begin(), list.relations.end());
    return list;
}

}  // namespace imginfo
