#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "protoshape/errors.hpp"
#include "protoshape/finite_space.hpp"

namespace protoshape {

/// Finite directed partial order: every pair of elements has an upper bound.
struct DirectedPoset {
    std::vector<std::string> elements;
    std::vector<PointSet> upper; // upper[i] = {j : i <= j}

    std::size_t size() const { return elements.size(); }
    bool leq(std::uint32_t i, std::uint32_t j) const { return upper[i].test(j); }
};

inline void validate_directed_poset(const DirectedPoset& p) {
    const auto n = static_cast<std::uint32_t>(p.size());
    if (p.upper.size() != n) throw InvalidValue("directed poset relation size mismatch");
    for (std::uint32_t i = 0; i < n; ++i) {
        if (!p.upper[i].test(i)) throw InvalidValue("index order is not reflexive");
        for (std::uint32_t j : p.upper[i].indices()) {
            if (!p.upper[j].subset_of(p.upper[i]))
                throw InvalidValue("index order is not transitive");
            if (i != j && p.upper[j].test(i))
                throw InvalidValue("index order is not antisymmetric");
        }
    }
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j)
            if (!(p.upper[i] & p.upper[j]).any())
                throw InvalidValue("index order is not directed: '" + p.elements[i] +
                                   "' and '" + p.elements[j] + "' have no upper bound");
}

/// Finite inverse system of finite sets: a level per index element and a
/// bonding map level(j) -> level(i) for every i <= j, coherent with
/// identities and composition.
struct ProSet {
    DirectedPoset index;
    std::vector<std::vector<std::string>> level;
    /// bond.at({i,j}) maps positions of level[j] to positions of level[i].
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> bond;

    const std::vector<std::uint32_t>& bond_map(std::uint32_t i, std::uint32_t j) const {
        auto it = bond.find({i, j});
        if (it == bond.end())
            throw InvalidValue("missing bonding map " + index.elements[i] + " <= " +
                               index.elements[j]);
        return it->second;
    }

    friend bool operator==(const ProSet& a, const ProSet& b) {
        return a.index.elements == b.index.elements && a.index.upper == b.index.upper &&
               a.level == b.level && a.bond == b.bond;
    }
};

using ProSetPtr = std::shared_ptr<const ProSet>;

/// Checks bond identity and composition coherence over every comparable
/// index pair and triple.
inline void validate_proset(const ProSet& p) {
    validate_directed_poset(p.index);
    const auto n = static_cast<std::uint32_t>(p.index.size());
    if (p.level.size() != n) throw InvalidValue("pro-set level table size mismatch");
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j : p.index.upper[i].indices()) {
            const auto& b = p.bond_map(i, j);
            if (b.size() != p.level[j].size())
                throw InvalidValue("bonding map domain size mismatch");
            for (auto v : b)
                if (v >= p.level[i].size())
                    throw InvalidValue("bonding map hits unknown element");
            if (i == j)
                for (std::uint32_t e = 0; e < b.size(); ++e)
                    if (b[e] != e) throw InvalidValue("identity bonding map is not identity");
        }
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j : p.index.upper[i].indices())
            for (std::uint32_t k : p.index.upper[j].indices()) {
                const auto& bij = p.bond_map(i, j);
                const auto& bjk = p.bond_map(j, k);
                const auto& bik = p.bond_map(i, k);
                for (std::uint32_t e = 0; e < bjk.size(); ++e)
                    if (bij[bjk[e]] != bik[e])
                        throw InvalidValue("bonding maps do not compose: " +
                                           p.index.elements[i] + " <= " +
                                           p.index.elements[j] + " <= " +
                                           p.index.elements[k]);
            }
}

/// Morphism of pro-sets: an index assignment xi from target indices to
/// source indices plus a component source.level(xi(U)) -> target.level(U)
/// per target index, coherent over every target pair up to bonding maps.
struct ProSetMorphism {
    ProSetPtr source;
    ProSetPtr target;
    std::vector<std::uint32_t> index_map;                 // target index -> source index
    std::vector<std::vector<std::uint32_t>> component;    // per target index

    friend bool operator==(const ProSetMorphism& a, const ProSetMorphism& b) {
        return *a.source == *b.source && *a.target == *b.target &&
               a.index_map == b.index_map && a.component == b.component;
    }
};

/// Coherence: for each pair u <= u' in the target there must exist a source
/// index w above xi(u) and xi(u') over which the two composites agree.
inline void validate_morphism(const ProSetMorphism& f) {
    const auto& src = *f.source;
    const auto& tgt = *f.target;
    const auto tn = static_cast<std::uint32_t>(tgt.index.size());
    if (f.index_map.size() != tn || f.component.size() != tn)
        throw InvalidValue("pro-set morphism tables have wrong size");
    for (std::uint32_t u = 0; u < tn; ++u) {
        if (f.index_map[u] >= src.index.size())
            throw InvalidValue("morphism index map hits unknown source index");
        if (f.component[u].size() != src.level[f.index_map[u]].size())
            throw InvalidValue("morphism component has wrong domain");
        for (auto v : f.component[u])
            if (v >= tgt.level[u].size())
                throw InvalidValue("morphism component hits unknown element");
    }
    for (std::uint32_t u = 0; u < tn; ++u)
        for (std::uint32_t u2 : tgt.index.upper[u].indices()) {
            const auto xu = f.index_map[u];
            const auto xu2 = f.index_map[u2];
            bool found = false;
            for (std::uint32_t w = 0; w < src.index.size() && !found; ++w) {
                if (!src.index.leq(xu, w) || !src.index.leq(xu2, w)) continue;
                const auto& down_u = src.bond_map(xu, w);
                const auto& down_u2 = src.bond_map(xu2, w);
                const auto& tbond = tgt.bond_map(u, u2);
                bool ok = true;
                for (std::uint32_t e = 0; e < src.level[w].size() && ok; ++e)
                    if (f.component[u][down_u[e]] != tbond[f.component[u2][down_u2[e]]])
                        ok = false;
                found = ok;
            }
            if (!found)
                throw InvalidValue("morphism coherence fails over target pair " +
                                   tgt.index.elements[u] + " <= " + tgt.index.elements[u2]);
        }
}

namespace detail {

/// Deterministic canonical form of a partition: blocks sorted by the order
/// on PointSet.
inline std::vector<PointSet> partition_key(const OpenPartition& p) {
    std::vector<PointSet> key;
    for (const auto& b : p.blocks) key.push_back(b.set);
    std::sort(key.begin(), key.end());
    return key;
}

} // namespace detail

/// The inverse system U -> blocks(U) over all open partitions of the space,
/// ordered by refinement (coarser partitions are smaller). The bonding map
/// for U <= V sends each block of V to the unique block of U containing it.
inline ProSet pi_proset(const FiniteSpacePtr& space,
                        std::size_t max_points = kDefaultEnumerationBound) {
    auto partitions = enumerate_open_partitions(space, max_points);
    const auto m = static_cast<std::uint32_t>(partitions.size());

    ProSet p;
    p.index.elements.reserve(m);
    for (std::uint32_t i = 0; i < m; ++i) p.index.elements.push_back("P" + std::to_string(i));
    p.index.upper.assign(m, PointSet(m));
    for (std::uint32_t i = 0; i < m; ++i)
        for (std::uint32_t j = 0; j < m; ++j)
            if (refines(partitions[j].as_cover(), partitions[i].as_cover()))
                p.index.upper[i].set(j);

    p.level.resize(m);
    for (std::uint32_t i = 0; i < m; ++i)
        for (const auto& b : partitions[i].blocks) p.level[i].push_back(b.label);

    for (std::uint32_t i = 0; i < m; ++i)
        for (std::uint32_t j : p.index.upper[i].indices()) {
            std::vector<std::uint32_t> b(partitions[j].blocks.size());
            for (std::uint32_t e = 0; e < b.size(); ++e) {
                const PointSet& fine_block = partitions[j].blocks[e].set;
                std::uint32_t hit = static_cast<std::uint32_t>(-1);
                for (std::uint32_t t = 0; t < partitions[i].blocks.size(); ++t)
                    if (fine_block.subset_of(partitions[i].blocks[t].set)) {
                        hit = t;
                        break;
                    }
                if (hit == static_cast<std::uint32_t>(-1))
                    throw std::logic_error("refining block not contained in any block");
                b[e] = hit;
            }
            p.bond[{i, j}] = std::move(b);
        }
    validate_proset(p);
    return p;
}

/// Image of a continuous map under the partition functor: the index map
/// pulls a partition of the target back to the partition of the source by
/// nonempty preimages; the component sends a preimage block to the block it
/// came from.
inline ProSetMorphism pi_map(const ContinuousMap& f,
                             std::size_t max_points = kDefaultEnumerationBound) {
    if (!check_continuity(f)) throw NotContinuous("map is not continuous");

    auto src_parts = enumerate_open_partitions(f.source, max_points);
    auto tgt_parts = enumerate_open_partitions(f.target, max_points);

    ProSetMorphism out;
    out.source = std::make_shared<ProSet>(pi_proset(f.source, max_points));
    out.target = std::make_shared<ProSet>(pi_proset(f.target, max_points));

    std::map<std::vector<PointSet>, std::uint32_t> src_lookup;
    for (std::uint32_t i = 0; i < src_parts.size(); ++i)
        src_lookup[detail::partition_key(src_parts[i])] = i;

    const auto ns = static_cast<std::uint32_t>(f.source->size());
    out.index_map.resize(tgt_parts.size());
    out.component.resize(tgt_parts.size());
    for (std::uint32_t u = 0; u < tgt_parts.size(); ++u) {
        const auto& part = tgt_parts[u];
        std::vector<PointSet> preimages;
        std::vector<std::uint32_t> origin; // target block index per preimage block
        for (std::uint32_t b = 0; b < part.blocks.size(); ++b) {
            PointSet pre(ns);
            for (std::uint32_t x = 0; x < ns; ++x)
                if (part.blocks[b].set.test(f.assignment[x])) pre.set(x);
            if (pre.none()) continue;
            preimages.push_back(std::move(pre));
            origin.push_back(b);
        }

        std::vector<PointSet> key = preimages;
        std::sort(key.begin(), key.end());
        auto it = src_lookup.find(key);
        if (it == src_lookup.end())
            throw std::logic_error("pullback partition missing from the enumeration");
        out.index_map[u] = it->second;

        // Component: enumerate the blocks of the stored partition and find
        // which target block each one is the preimage of.
        const auto& stored = src_parts[it->second];
        std::vector<std::uint32_t> comp(stored.blocks.size());
        for (std::uint32_t e = 0; e < stored.blocks.size(); ++e) {
            std::uint32_t hit = static_cast<std::uint32_t>(-1);
            for (std::uint32_t q = 0; q < preimages.size(); ++q)
                if (stored.blocks[e].set == preimages[q]) {
                    hit = origin[q];
                    break;
                }
            if (hit == static_cast<std::uint32_t>(-1))
                throw std::logic_error("pullback block mismatch");
            comp[e] = hit;
        }
        out.component[u] = std::move(comp);
    }
    validate_morphism(out);
    return out;
}

inline ProSetMorphism identity_morphism(const ProSetPtr& p) {
    ProSetMorphism out;
    out.source = p;
    out.target = p;
    const auto n = static_cast<std::uint32_t>(p->index.size());
    out.index_map.resize(n);
    out.component.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        out.index_map[i] = i;
        out.component[i].resize(p->level[i].size());
        for (std::uint32_t e = 0; e < out.component[i].size(); ++e) out.component[i][e] = e;
    }
    return out;
}

/// Composition g . f of pro-set morphisms (f first). The composite index map
/// is xi_f . xi_g and the component over U is g_U . f_{xi_g(U)}.
inline ProSetMorphism compose(const ProSetMorphism& g, const ProSetMorphism& f) {
    if (!(*f.target == *g.source))
        throw Mismatch("pro-set morphisms are not composable");
    ProSetMorphism out;
    out.source = f.source;
    out.target = g.target;
    const auto tn = static_cast<std::uint32_t>(g.target->index.size());
    out.index_map.resize(tn);
    out.component.resize(tn);
    for (std::uint32_t u = 0; u < tn; ++u) {
        std::uint32_t mid = g.index_map[u];
        out.index_map[u] = f.index_map[mid];
        const auto& fc = f.component[mid];
        const auto& gc = g.component[u];
        std::vector<std::uint32_t> comp(fc.size());
        for (std::uint32_t e = 0; e < fc.size(); ++e) comp[e] = gc[fc[e]];
        out.component[u] = std::move(comp);
    }
    validate_morphism(out);
    return out;
}

/// Result of deciding whether a pro-set is isomorphic to a constant system.
/// Sound and complete for systems over a finite index poset: such a system
/// is constant iff the index has a maximum element, and then {max} is
/// cofinal and the value is its level. Otherwise the maximal elements form
/// an antichain witness of size >= 2.
struct ConstantValue {
    bool constant = false;
    std::vector<std::string> value;
    std::string max_index;
    std::vector<std::string> antichain;
};

inline ConstantValue constant_value(const ProSet& p) {
    const auto n = static_cast<std::uint32_t>(p.index.size());
    ConstantValue out;
    std::vector<std::uint32_t> maximal;
    for (std::uint32_t i = 0; i < n; ++i)
        if (p.index.upper[i].count() == 1) maximal.push_back(i);
    for (std::uint32_t m : maximal) {
        bool is_max = true;
        for (std::uint32_t i = 0; i < n && is_max; ++i)
            if (!p.index.leq(i, m)) is_max = false;
        if (is_max) {
            out.constant = true;
            out.max_index = p.index.elements[m];
            out.value = p.level[m];
            return out;
        }
    }
    for (std::uint32_t m : maximal) out.antichain.push_back(p.index.elements[m]);
    return out;
}

} // namespace protoshape
