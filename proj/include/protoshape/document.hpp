#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "protoshape/errors.hpp"
#include "protoshape/finite_space.hpp"

namespace protoshape {

using Json = nlohmann::json;

inline constexpr const char* kFormatVersion = "1";

namespace detail {

inline void require_format_version(const Json& doc) {
    if (!doc.is_object()) throw InvalidValue("document must be a JSON object");
    if (!doc.contains("format_version") || !doc["format_version"].is_string() ||
        doc["format_version"].get<std::string>() != kFormatVersion)
        throw InvalidValue("document needs \"format_version\": \"1\"");
}

inline std::vector<std::string> parse_points(const Json& doc) {
    if (!doc.contains("points") || !doc["points"].is_array())
        throw InvalidValue("document needs a \"points\" array");
    std::vector<std::string> points;
    for (const auto& p : doc["points"]) {
        if (!p.is_string()) throw InvalidValue("point ids must be strings");
        points.push_back(p.get<std::string>());
    }
    return points;
}

inline PointSet parse_subset(const Json& arr, const std::vector<std::string>& points) {
    if (!arr.is_array()) throw InvalidValue("subsets must be arrays of point ids");
    PointSet s(static_cast<std::uint32_t>(points.size()));
    for (const auto& p : arr) {
        if (!p.is_string()) throw InvalidValue("point ids must be strings");
        const std::string id = p.get<std::string>();
        bool found = false;
        for (std::uint32_t i = 0; i < points.size(); ++i)
            if (points[i] == id) {
                s.set(i);
                found = true;
                break;
            }
        if (!found) throw InvalidValue("subset mentions unknown point '" + id + "'");
    }
    return s;
}

inline Json subset_to_json(const PointSet& s, const std::vector<std::string>& points) {
    Json arr = Json::array();
    for (std::uint32_t i : s.indices()) arr.push_back(points[i]);
    return arr;
}

} // namespace detail

/// Space document: {"format_version":"1","points":[...]} plus exactly one of
///   "opens":    explicit open-set list (validated against the axioms),
///   "min_open": map point -> minimal open set,
///   "preorder": list of [x,y] pairs, read as generators; the
///               reflexive-transitive closure is taken before building.
inline FiniteSpacePtr parse_space_document(const Json& doc) {
    detail::require_format_version(doc);
    auto points = detail::parse_points(doc);

    int given = doc.contains("opens") + doc.contains("min_open") + doc.contains("preorder");
    if (given != 1)
        throw InvalidValue("document needs exactly one of \"opens\", \"min_open\", "
                           "\"preorder\"");

    if (doc.contains("opens")) {
        std::vector<PointSet> opens;
        for (const auto& u : doc["opens"]) opens.push_back(detail::parse_subset(u, points));
        return validate_topology(points, opens);
    }
    if (doc.contains("min_open")) {
        const auto& m = doc["min_open"];
        if (!m.is_object()) throw InvalidValue("\"min_open\" must be an object");
        std::vector<PointSet> mins;
        for (const auto& p : points) {
            if (!m.contains(p))
                throw InvalidValue("min_open is missing point '" + p + "'");
            mins.push_back(detail::parse_subset(m[p], points));
        }
        return space_from_min_open(points, mins);
    }

    const auto& pairs = doc["preorder"];
    if (!pairs.is_array()) throw InvalidValue("\"preorder\" must be an array of pairs");
    const auto n = static_cast<std::uint32_t>(points.size());
    Preorder p;
    p.points = points;
    p.upper.assign(n, PointSet(n));
    for (std::uint32_t i = 0; i < n; ++i) p.upper[i].set(i);
    auto index_of = [&points](const std::string& id) {
        for (std::uint32_t i = 0; i < points.size(); ++i)
            if (points[i] == id) return i;
        throw InvalidValue("preorder mentions unknown point '" + id + "'");
    };
    for (const auto& pair : pairs) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() ||
            !pair[1].is_string())
            throw InvalidValue("preorder entries must be [x, y] pairs of point ids");
        p.upper[index_of(pair[0].get<std::string>())].set(
            index_of(pair[1].get<std::string>()));
    }
    for (std::uint32_t k = 0; k < n; ++k)
        for (std::uint32_t i = 0; i < n; ++i)
            if (p.upper[i].test(k)) p.upper[i] |= p.upper[k];
    return space_from_preorder(p);
}

inline Json space_to_document(const FiniteSpace& space) {
    Json doc;
    doc["format_version"] = kFormatVersion;
    Json points = Json::array();
    for (const auto& p : space.points) points.push_back(p);
    doc["points"] = points;
    Json mins = Json::object();
    for (std::uint32_t x = 0; x < space.size(); ++x)
        mins[space.points[x]] = detail::subset_to_json(space.min_open[x], space.points);
    doc["min_open"] = mins;
    return doc;
}

/// Cover document: {"format_version":"1","members":[...]} where a member is
/// either an array of point ids or {"label": ..., "points": [...]}. Missing
/// labels default to U0, U1, ...
inline OpenCover parse_cover_document(const Json& doc, const FiniteSpacePtr& space) {
    detail::require_format_version(doc);
    if (!doc.contains("members") || !doc["members"].is_array())
        throw InvalidValue("cover document needs a \"members\" array");
    OpenCover cover;
    cover.space = space;
    std::size_t i = 0;
    for (const auto& m : doc["members"]) {
        CoverMember member;
        if (m.is_array()) {
            member.label = "U" + std::to_string(i);
            member.set = detail::parse_subset(m, space->points);
        } else if (m.is_object() && m.contains("points")) {
            member.label = m.contains("label") && m["label"].is_string()
                               ? m["label"].get<std::string>()
                               : "U" + std::to_string(i);
            member.set = detail::parse_subset(m["points"], space->points);
        } else {
            throw InvalidValue("cover members must be arrays or {label, points} objects");
        }
        cover.members.push_back(std::move(member));
        ++i;
    }
    validate_cover(cover);
    return cover;
}

} // namespace protoshape
