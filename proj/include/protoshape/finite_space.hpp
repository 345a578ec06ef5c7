#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "protoshape/errors.hpp"
#include "protoshape/point_set.hpp"

namespace protoshape {

/// A finite topological space, stored as the minimal-open-neighborhood map
/// x -> V_x. The open sets of the space are exactly the unions of the V_x;
/// the full open-set family is reconstructed on demand.
///
/// Invariants: x in V_x, and y in V_x implies V_y subset V_x.
struct FiniteSpace {
    std::vector<std::string> points;
    std::vector<PointSet> min_open;

    std::size_t size() const { return points.size(); }

    std::uint32_t index_of(const std::string& id) const {
        for (std::uint32_t i = 0; i < points.size(); ++i)
            if (points[i] == id) return i;
        throw InvalidValue("unknown point id '" + id + "'");
    }

    /// A subset is open iff it contains V_x for each of its members.
    bool is_open(const PointSet& s) const {
        for (std::uint32_t x = 0; x < size(); ++x)
            if (s.test(x) && !min_open[x].subset_of(s)) return false;
        return true;
    }

    PointSet full_set() const { return PointSet::full(static_cast<std::uint32_t>(size())); }

    /// All open sets, as the closure of {empty} under union with each V_x.
    /// Sorted deterministically. Exponential in general; intended for small
    /// spaces and cross-checks only.
    std::vector<PointSet> open_family() const {
        std::set<PointSet> seen;
        std::vector<PointSet> todo;
        seen.insert(PointSet(static_cast<std::uint32_t>(size())));
        todo.push_back(PointSet(static_cast<std::uint32_t>(size())));
        while (!todo.empty()) {
            PointSet cur = std::move(todo.back());
            todo.pop_back();
            for (std::uint32_t x = 0; x < size(); ++x) {
                PointSet next = cur | min_open[x];
                if (seen.insert(next).second) todo.push_back(next);
            }
        }
        return {seen.begin(), seen.end()};
    }

    std::string subset_to_string(const PointSet& s) const {
        std::string out = "{";
        bool first = true;
        for (std::uint32_t i : s.indices()) {
            if (!first) out += ",";
            out += points[i];
            first = false;
        }
        return out + "}";
    }
};

using FiniteSpacePtr = std::shared_ptr<const FiniteSpace>;

/// Specialization preorder of a finite space: x <= y iff V_y subset V_x.
/// upper[x] is the up-set {y : x <= y}.
struct Preorder {
    std::vector<std::string> points;
    std::vector<PointSet> upper;

    std::size_t size() const { return points.size(); }
    bool leq(std::uint32_t x, std::uint32_t y) const { return upper[x].test(y); }
};

struct CoverMember {
    std::string label;
    PointSet set;
};

/// Indexed family of nonempty open subsets covering the space. Labels are
/// kept (duplicate subsets under different labels are allowed); refinement
/// is decided on the underlying sets.
struct OpenCover {
    FiniteSpacePtr space;
    std::vector<CoverMember> members;
};

/// An OpenCover whose members are pairwise disjoint.
struct OpenPartition {
    FiniteSpacePtr space;
    std::vector<CoverMember> blocks;

    OpenCover as_cover() const { return OpenCover{space, blocks}; }
};

struct ContinuousMap {
    FiniteSpacePtr source;
    FiniteSpacePtr target;
    std::vector<std::uint32_t> assignment;
};

inline bool same_space(const FiniteSpace& a, const FiniteSpace& b) {
    if (&a == &b) return true;
    return a.points == b.points && a.min_open == b.min_open;
}

namespace detail {

inline void check_point_ids(const std::vector<std::string>& points) {
    if (points.empty()) throw InvalidValue("a finite space needs at least one point");
    std::unordered_set<std::string> seen;
    for (const auto& p : points)
        if (!seen.insert(p).second) throw InvalidValue("duplicate point id '" + p + "'");
}

inline std::string set_to_string(const std::vector<std::string>& points, const PointSet& s) {
    std::string out = "{";
    bool first = true;
    for (std::uint32_t i : s.indices()) {
        if (!first) out += ",";
        out += points[i];
        first = false;
    }
    return out + "}";
}

} // namespace detail

/// Builds a FiniteSpace from an explicitly listed open-set family, verifying
/// the topology axioms: empty and full set present, family closed under
/// pairwise union and intersection. V_x is the intersection of all listed
/// opens containing x; as a cross-check the union-closure of {V_x} must
/// reproduce the input family.
inline FiniteSpacePtr validate_topology(const std::vector<std::string>& points,
                                        const std::vector<PointSet>& open_sets) {
    detail::check_point_ids(points);
    const auto n = static_cast<std::uint32_t>(points.size());

    std::set<PointSet> family;
    for (const auto& u : open_sets) {
        if (u.width() != n) throw InvalidValue("open set width does not match point count");
        family.insert(u);
    }

    const PointSet empty(n), full = PointSet::full(n);
    if (!family.count(empty) || !family.count(full))
        throw MissingEmptyOrFull(std::string("family must contain the empty set and the ") +
                                 "full point set");

    for (const auto& a : family) {
        for (const auto& b : family) {
            PointSet u = a | b;
            if (!family.count(u))
                throw NotATopology("union of " + detail::set_to_string(points, a) + " and " +
                                   detail::set_to_string(points, b) + " = " +
                                   detail::set_to_string(points, u) + " is not in the family");
            PointSet i = a & b;
            if (!family.count(i))
                throw NotATopology("intersection of " + detail::set_to_string(points, a) +
                                   " and " + detail::set_to_string(points, b) + " = " +
                                   detail::set_to_string(points, i) +
                                   " is not in the family");
        }
    }

    auto space = std::make_shared<FiniteSpace>();
    space->points = points;
    space->min_open.assign(n, PointSet(n));
    for (std::uint32_t x = 0; x < n; ++x) {
        PointSet vx = full;
        for (const auto& u : family)
            if (u.test(x)) vx &= u;
        space->min_open[x] = vx;
    }

    // After the closure checks this reconstruction cannot fail; it guards the
    // implementation rather than the input.
    auto reconstructed = space->open_family();
    if (std::set<PointSet>(reconstructed.begin(), reconstructed.end()) != family)
        throw NotATopology("union-closure of the minimal open sets does not reproduce "
                           "the input family");
    return space;
}

/// Builds a FiniteSpace directly from a minimal-open map, verifying
/// x in V_x and the nesting condition y in V_x => V_y subset V_x.
inline FiniteSpacePtr space_from_min_open(const std::vector<std::string>& points,
                                          const std::vector<PointSet>& min_open) {
    detail::check_point_ids(points);
    const auto n = static_cast<std::uint32_t>(points.size());
    if (min_open.size() != points.size())
        throw InvalidValue("min_open must assign a set to every point");
    for (std::uint32_t x = 0; x < n; ++x) {
        if (min_open[x].width() != n)
            throw InvalidValue("min_open set width does not match point count");
        if (!min_open[x].test(x))
            throw InvalidValue("point '" + points[x] + "' is missing from its own minimal "
                               "open set");
        for (std::uint32_t y : min_open[x].indices())
            if (!min_open[y].subset_of(min_open[x]))
                throw InvalidValue("minimal open sets are not nested: '" + points[y] +
                                   "' lies in V_" + points[x] + " but V_" + points[y] +
                                   " is not contained in it");
    }
    auto space = std::make_shared<FiniteSpace>();
    space->points = points;
    space->min_open = min_open;
    return space;
}

inline void validate_preorder(const Preorder& p) {
    detail::check_point_ids(p.points);
    const auto n = static_cast<std::uint32_t>(p.points.size());
    if (p.upper.size() != n) throw InvalidValue("preorder relation size mismatch");
    for (std::uint32_t x = 0; x < n; ++x) {
        if (p.upper[x].width() != n) throw InvalidValue("preorder relation width mismatch");
        if (!p.upper[x].test(x))
            throw InvalidValue("preorder is not reflexive at '" + p.points[x] + "'");
        for (std::uint32_t y : p.upper[x].indices())
            if (!p.upper[y].subset_of(p.upper[x]))
                throw InvalidValue("preorder is not transitive through '" + p.points[y] + "'");
    }
}

/// x <= y iff V_y subset V_x. For a finite space this coincides with
/// membership: y in V_x iff x <= y, so upper[x] equals V_x.
inline Preorder specialization_preorder(const FiniteSpace& space) {
    Preorder p;
    p.points = space.points;
    const auto n = static_cast<std::uint32_t>(space.size());
    p.upper.assign(n, PointSet(n));
    for (std::uint32_t x = 0; x < n; ++x)
        for (std::uint32_t y = 0; y < n; ++y)
            if (space.min_open[y].subset_of(space.min_open[x])) p.upper[x].set(y);
    return p;
}

/// Inverse of specialization_preorder: V_x := {y : x <= y}.
inline FiniteSpacePtr space_from_preorder(const Preorder& p) {
    validate_preorder(p);
    return space_from_min_open(p.points, p.upper);
}

/// Connected components, i.e. the equivalence classes of the
/// transitive-symmetric closure of comparability. Blocks are ordered by
/// their smallest point index and labeled by that point's id. This is the
/// finest open partition of the space.
inline OpenPartition connected_components(const FiniteSpacePtr& space) {
    const auto n = static_cast<std::uint32_t>(space->size());
    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0u);
    auto find = [&parent](std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto unite = [&](std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };
    for (std::uint32_t x = 0; x < n; ++x)
        for (std::uint32_t y : space->min_open[x].indices()) unite(x, y);

    std::map<std::uint32_t, PointSet> blocks;
    for (std::uint32_t x = 0; x < n; ++x) {
        auto r = find(x);
        auto it = blocks.find(r);
        if (it == blocks.end()) it = blocks.emplace(r, PointSet(n)).first;
        it->second.set(x);
    }
    OpenPartition part;
    part.space = space;
    for (auto& [root, set] : blocks)
        part.blocks.push_back(CoverMember{space->points[root], std::move(set)});
    return part;
}

inline constexpr std::size_t kDefaultEnumerationBound = 10;

/// All open partitions of the space. Every open partition's blocks are
/// unions of connected components (components of a finite space are open and
/// each block is clopen), so the enumeration walks the set partitions of the
/// component set in restricted-growth-string order; the count is the Bell
/// number of the component count.
inline std::vector<OpenPartition> enumerate_open_partitions(
    const FiniteSpacePtr& space, std::size_t max_points = kDefaultEnumerationBound) {
    if (space->size() > max_points) throw TooLarge(space->size(), max_points);
    const auto n = static_cast<std::uint32_t>(space->size());

    OpenPartition comps = connected_components(space);
    const std::size_t k = comps.blocks.size();

    std::vector<OpenPartition> out;
    std::vector<std::uint32_t> rgs(k, 0);
    auto emit = [&]() {
        std::uint32_t nblocks = 0;
        for (std::uint32_t g : rgs) nblocks = std::max(nblocks, g + 1);
        std::vector<PointSet> blocks(nblocks, PointSet(n));
        for (std::size_t i = 0; i < k; ++i) blocks[rgs[i]] |= comps.blocks[i].set;
        std::sort(blocks.begin(), blocks.end(),
                  [](const PointSet& a, const PointSet& b) { return a.first() < b.first(); });
        OpenPartition p;
        p.space = space;
        for (std::size_t b = 0; b < blocks.size(); ++b)
            p.blocks.push_back(
                CoverMember{space->points[blocks[b].first()], std::move(blocks[b])});
        out.push_back(std::move(p));
    };

    // Restricted growth strings: rgs[0] = 0, rgs[i] <= max(rgs[0..i-1]) + 1.
    while (true) {
        emit();
        std::size_t i = k;
        while (i-- > 0) {
            std::uint32_t maxprev = 0;
            for (std::size_t j = 0; j < i; ++j) maxprev = std::max(maxprev, rgs[j]);
            if (i > 0 && rgs[i] <= maxprev) {
                ++rgs[i];
                for (std::size_t j = i + 1; j < k; ++j) rgs[j] = 0;
                break;
            }
        }
        if (i == static_cast<std::size_t>(-1)) break;
    }
    return out;
}

/// True iff every member of `fine` is contained in some member of `coarse`.
inline bool refines(const OpenCover& fine, const OpenCover& coarse) {
    if (!same_space(*fine.space, *coarse.space))
        throw SpaceMismatch("refinement compared across different spaces");
    for (const auto& f : fine.members) {
        bool contained = false;
        for (const auto& c : coarse.members)
            if (f.set.subset_of(c.set)) {
                contained = true;
                break;
            }
        if (!contained) return false;
    }
    return true;
}

inline void validate_cover(const OpenCover& cover) {
    const auto n = static_cast<std::uint32_t>(cover.space->size());
    PointSet covered(n);
    for (const auto& m : cover.members) {
        if (m.set.none()) throw InvalidValue("cover member '" + m.label + "' is empty");
        if (!cover.space->is_open(m.set))
            throw InvalidValue("cover member '" + m.label + "' is not open");
        covered |= m.set;
    }
    if (covered != cover.space->full_set())
        throw InvalidValue("cover members do not cover the space");
}

inline void validate_partition(const OpenPartition& part) {
    validate_cover(part.as_cover());
    for (std::size_t i = 0; i < part.blocks.size(); ++i)
        for (std::size_t j = i + 1; j < part.blocks.size(); ++j)
            if (part.blocks[i].set.intersects(part.blocks[j].set))
                throw InvalidValue("partition blocks '" + part.blocks[i].label + "' and '" +
                                   part.blocks[j].label + "' overlap");
}

/// The cover {V_x : x in X}, labeled by point ids. It refines every open
/// cover of the space, hence is cofinal in the cover preorder.
inline OpenCover finest_cover(const FiniteSpacePtr& space) {
    OpenCover cover;
    cover.space = space;
    for (std::uint32_t x = 0; x < space->size(); ++x)
        cover.members.push_back(CoverMember{space->points[x], space->min_open[x]});
    return cover;
}

/// Continuity for maps of finite spaces: equivalent to preservation of the
/// specialization preorder (x <= y implies f(x) <= f(y)), which for finite
/// spaces coincides with the open-preimage definition because preimages
/// commute with the unions generating every open from minimal opens.
inline bool check_continuity(const ContinuousMap& f) {
    if (f.assignment.size() != f.source->size())
        throw InvalidValue("assignment must be total on source points");
    for (auto v : f.assignment)
        if (v >= f.target->size()) throw InvalidValue("assignment hits unknown target point");
    Preorder src = specialization_preorder(*f.source);
    Preorder tgt = specialization_preorder(*f.target);
    for (std::uint32_t x = 0; x < src.size(); ++x)
        for (std::uint32_t y : src.upper[x].indices())
            if (!tgt.leq(f.assignment[x], f.assignment[y])) return false;
    return true;
}

/// Quotient by the equivalence x <= y <= x (equivalently V_x = V_y). The
/// quotient's specialization preorder is a partial order; the returned map
/// is the continuous surjective projection. Class representatives are the
/// smallest-index members and keep their point ids.
inline std::pair<FiniteSpacePtr, ContinuousMap> t0_quotient(const FiniteSpacePtr& space) {
    const auto n = static_cast<std::uint32_t>(space->size());
    std::vector<std::uint32_t> rep_of(n);
    std::vector<std::uint32_t> reps;
    for (std::uint32_t x = 0; x < n; ++x) {
        std::uint32_t r = x;
        for (std::uint32_t y = 0; y < x; ++y)
            if (space->min_open[y] == space->min_open[x]) {
                r = rep_of[y];
                break;
            }
        rep_of[x] = r;
        if (r == x) reps.push_back(x);
    }

    const auto m = static_cast<std::uint32_t>(reps.size());
    std::vector<std::uint32_t> class_index(n);
    for (std::uint32_t c = 0; c < m; ++c) class_index[reps[c]] = c;
    for (std::uint32_t x = 0; x < n; ++x) class_index[x] = class_index[rep_of[x]];

    std::vector<std::string> qpoints;
    std::vector<PointSet> qopen(m, PointSet(m));
    for (std::uint32_t c = 0; c < m; ++c) {
        qpoints.push_back(space->points[reps[c]]);
        for (std::uint32_t y : space->min_open[reps[c]].indices()) qopen[c].set(class_index[y]);
    }
    auto quotient = space_from_min_open(qpoints, qopen);

    ContinuousMap proj;
    proj.source = space;
    proj.target = quotient;
    proj.assignment = class_index;
    return {quotient, proj};
}

} // namespace protoshape
