#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "protoshape/errors.hpp"
#include "protoshape/finite_space.hpp"
#include "protoshape/simplicial.hpp"

namespace protoshape {

/// Truncated augmented simplicial object over a finite base space whose
/// levels are labeled coproducts of nonempty open subsets; every face and
/// degeneracy acts by inclusion over the base (piece subsets only grow along
/// structure maps). The augmentation is the implicit inclusion of each piece
/// into the base.
struct Hypercovering {
    FiniteSpacePtr base;
    int depth = 0;
    std::vector<std::vector<PointSet>> piece_set;
    std::vector<std::vector<std::string>> piece_label; // empty when unlabeled
    std::vector<std::vector<std::vector<std::uint32_t>>> face;  // [n][i], n in 1..depth
    std::vector<std::vector<std::vector<std::uint32_t>>> degen; // [n][i], n in 0..depth-1

    std::size_t pieces(int n) const { return piece_set[static_cast<std::size_t>(n)].size(); }

    const PointSet& subset(int n, std::uint32_t p) const { return piece_set[n][p]; }

    std::uint32_t d(int n, int i, std::uint32_t p) const { return face[n][i][p]; }
    std::uint32_t s(int n, int i, std::uint32_t p) const { return degen[n][i][p]; }

    bool has_labels() const { return !piece_label.empty(); }

    std::string label(int n, std::uint32_t p) const {
        if (has_labels()) return piece_label[n][p];
        return "piece#" + std::to_string(n) + ":" + std::to_string(p);
    }

    std::vector<std::size_t> piece_counts() const {
        std::vector<std::size_t> out;
        for (const auto& lvl : piece_set) out.push_back(lvl.size());
        return out;
    }
};

/// Structural validation: identities on piece labels, pieces nonempty and
/// open, structure maps inclusion-compatible (subset(P) inside subset of the
/// image piece). The covering conditions live in verify_hyper, which reports
/// instead of throwing.
inline void validate_hypercovering(const Hypercovering& h) {
    auto counts = h.piece_counts();
    detail::validate_structure_tables(h.depth, counts, h.face, h.degen);
    for (int n = 0; n <= h.depth; ++n)
        for (std::uint32_t p = 0; p < h.pieces(n); ++p) {
            if (h.subset(n, p).none())
                throw InvalidValue("piece " + h.label(n, p) + " is empty");
            if (!h.base->is_open(h.subset(n, p)))
                throw InvalidValue("piece " + h.label(n, p) + " is not open in the base");
        }
    for (int n = 1; n <= h.depth; ++n)
        for (int i = 0; i <= n; ++i)
            for (std::uint32_t p = 0; p < h.pieces(n); ++p)
                if (!h.subset(n, p).subset_of(h.subset(n - 1, h.d(n, i, p))))
                    throw InvalidValue("face d_" + std::to_string(i) +
                                       " is not an inclusion at piece " + h.label(n, p));
    for (int n = 0; n < h.depth; ++n)
        for (int i = 0; i <= n; ++i)
            for (std::uint32_t p = 0; p < h.pieces(n); ++p)
                if (!h.subset(n, p).subset_of(h.subset(n + 1, h.s(n, i, p))))
                    throw InvalidValue("degeneracy s_" + std::to_string(i) +
                                       " is not an inclusion at piece " + h.label(n, p));
}

/// Cech hypercovering of a cover: pieces at degree n are the ordered
/// (n+1)-tuples of member labels with nonempty intersection, carrying that
/// intersection; d_i deletes a label, s_i repeats one.
inline Hypercovering cech_hypercover(const OpenCover& cover, int depth,
                                     bool with_labels = true) {
    validate_cover(cover);
    auto lv = detail::enumerate_words(
        depth, static_cast<std::uint32_t>(cover.members.size()),
        [&cover](const std::uint32_t*, int len, const PointSet* pm, std::uint32_t letter)
            -> std::optional<PointSet> {
            PointSet next =
                len == 0 ? cover.members[letter].set : (*pm & cover.members[letter].set);
            if (next.none()) return std::nullopt;
            return next;
        },
        true);
    TruncSimplicialSet skel;
    detail::attach_word_structure(lv, skel);

    Hypercovering h;
    h.base = cover.space;
    h.depth = depth;
    h.face = std::move(skel.face);
    h.degen = std::move(skel.degen);
    h.piece_set = std::move(lv.masks);
    if (with_labels) {
        std::vector<std::string> names;
        for (const auto& m : cover.members) names.push_back(m.label);
        h.piece_label = detail::word_labels(lv, names);
    }
    validate_hypercovering(h);
    return h;
}

/// Chain-indexed hypercovering: pieces at degree n are the weakly increasing
/// (n+1)-chains of the specialization preorder, each carrying the minimal
/// open set of its top element; d_i deletes entry i (dropping the top
/// relaxes the subset), s_i repeats one.
inline Hypercovering mccord_hypercover(const FiniteSpacePtr& space, int depth,
                                       bool with_labels = true) {
    Preorder pre = specialization_preorder(*space);
    auto lv = detail::enumerate_words(
        depth, static_cast<std::uint32_t>(space->size()),
        [&pre, &space](const std::uint32_t* prefix, int len, const PointSet*,
                       std::uint32_t letter) -> std::optional<PointSet> {
            if (len > 0 && !pre.leq(prefix[len - 1], letter)) return std::nullopt;
            return space->min_open[letter];
        },
        true);
    TruncSimplicialSet skel;
    detail::attach_word_structure(lv, skel);

    Hypercovering h;
    h.base = space;
    h.depth = depth;
    h.face = std::move(skel.face);
    h.degen = std::move(skel.degen);
    h.piece_set = std::move(lv.masks);
    if (with_labels) h.piece_label = detail::word_labels(lv, space->points);
    validate_hypercovering(h);
    return h;
}

/// Per-degree verdicts for the covering conditions. Degree m reports on the
/// canonical comparison of level m with the matching object of the
/// truncation below it (pairs of a face-compatible tuple of degree-(m-1)
/// pieces and a base point in the intersection of their subsets).
///
/// `covering` is the refinement-style condition: every matching point is
/// dominated by a piece point over the same base point whose faces land
/// inside the tuple's components. `bijective` reports on the strict
/// canonical map (faces equal on the nose): point-injective and
/// point-surjective. Cech hypercoverings are bijective at every level;
/// chain-indexed ones are generally covering without being bijective.
struct HyperLevelCheck {
    int degree = 0;
    std::size_t matching_tuple_count = 0;
    std::size_t matching_point_count = 0;
    std::size_t piece_point_count = 0;
    bool covering = true;
    bool strictly_surjective = true;
    bool injective = true;
    bool bijective = false;
    std::string witness;
};

struct HyperReport {
    bool structure_ok = true;
    std::string structure_error;
    bool covers_base = true; // degree-0 pieces cover the base
    std::string base_witness;
    std::vector<HyperLevelCheck> levels;

    bool all_covering() const {
        for (const auto& l : levels)
            if (!l.covering) return false;
        return true;
    }

    bool all_bijective() const {
        for (const auto& l : levels)
            if (!l.bijective) return false;
        return true;
    }

    bool ok() const { return structure_ok && covers_base && all_covering(); }
};

/// Checks the hypercovering conditions and reports witnesses instead of
/// throwing: (a) degree-0 pieces cover the base, (b) per degree, every point
/// of the matching object over the base is covered, (c) whether the strict
/// level-to-matching-object comparison is bijective on points.
inline HyperReport verify_hyper(const Hypercovering& h) {
    HyperReport report;
    try {
        validate_hypercovering(h);
    } catch (const Error& e) {
        report.structure_ok = false;
        report.structure_error = e.what();
        return report;
    }

    const auto width = static_cast<std::uint32_t>(h.base->size());
    {
        PointSet covered(width);
        for (std::uint32_t p = 0; p < h.pieces(0); ++p) covered |= h.subset(0, p);
        if (covered != h.base->full_set()) {
            report.covers_base = false;
            for (std::uint32_t x = 0; x < width; ++x)
                if (!covered.test(x)) {
                    report.base_witness = h.base->points[x];
                    break;
                }
        }
    }

    for (int m = 1; m <= h.depth; ++m) {
        HyperLevelCheck check;
        check.degree = m;
        const std::size_t prev = h.pieces(m - 1);
        const std::size_t cur = h.pieces(m);

        for (std::uint32_t q = 0; q < cur; ++q)
            check.piece_point_count += h.subset(m, q).count();

        // Strict lookup: pieces at level m grouped by their face vector.
        std::vector<std::uint32_t> order(cur);
        std::iota(order.begin(), order.end(), 0u);
        auto face_less = [&](std::uint32_t a, std::uint32_t b) {
            for (int i = 0; i <= m; ++i) {
                if (h.d(m, i, a) != h.d(m, i, b)) return h.d(m, i, a) < h.d(m, i, b);
            }
            return false;
        };
        auto face_equal = [&](std::uint32_t a, std::uint32_t b) {
            for (int i = 0; i <= m; ++i)
                if (h.d(m, i, a) != h.d(m, i, b)) return false;
            return true;
        };
        std::sort(order.begin(), order.end(), face_less);

        // Injectivity: pieces sharing a face vector must have disjoint
        // subsets.
        for (std::size_t a = 0; a + 1 < cur && check.injective; ++a) {
            for (std::size_t b = a + 1; b < cur; ++b) {
                if (!face_equal(order[a], order[b])) break;
                if (h.subset(m, order[a]).intersects(h.subset(m, order[b]))) {
                    check.injective = false;
                    if (check.witness.empty())
                        check.witness = "pieces " + h.label(m, order[a]) + " and " +
                                        h.label(m, order[b]) + " overlap over equal faces";
                    break;
                }
            }
        }

        std::vector<std::uint32_t> tuple_faces(m + 1);
        auto strict_group = [&](const std::vector<std::uint32_t>& faces)
            -> std::pair<std::size_t, std::size_t> {
            auto cmp = [&](std::uint32_t piece) {
                // -1 piece < faces, 0 equal, +1 piece > faces
                for (int i = 0; i <= m; ++i) {
                    std::uint32_t v = h.d(m, i, piece);
                    if (v != faces[i]) return v < faces[i] ? -1 : 1;
                }
                return 0;
            };
            std::size_t lo = 0, hi = cur;
            while (lo < hi) {
                std::size_t mid = (lo + hi) / 2;
                if (cmp(order[mid]) < 0)
                    lo = mid + 1;
                else
                    hi = mid;
            }
            std::size_t begin = lo;
            hi = cur;
            while (lo < hi) {
                std::size_t mid = (lo + hi) / 2;
                if (cmp(order[mid]) <= 0)
                    lo = mid + 1;
                else
                    hi = mid;
            }
            return {begin, lo};
        };

        // Pieces indexed by base point, for the refinement-hit scan.
        std::vector<std::vector<std::uint32_t>> pieces_at_point(width);
        for (std::uint32_t q = 0; q < cur; ++q)
            for (std::uint32_t x : h.subset(m, q).indices()) pieces_at_point[x].push_back(q);

        auto handle_tuple = [&](const std::vector<std::uint32_t>& tup, const PointSet& common) {
            ++check.matching_tuple_count;
            check.matching_point_count += common.count();

            auto [gbegin, gend] = strict_group(tup);
            PointSet strict_covered(width);
            for (std::size_t g = gbegin; g < gend; ++g) strict_covered |= h.subset(m, order[g]);

            for (std::uint32_t x : common.indices()) {
                if (strict_covered.test(x)) continue;
                if (check.strictly_surjective) {
                    check.strictly_surjective = false;
                    if (check.witness.empty()) {
                        check.witness = "matching point (";
                        for (int i = 0; i <= m; ++i) {
                            if (i) check.witness += ",";
                            check.witness += h.label(m - 1, tup[i]);
                        }
                        check.witness += ")@" + h.base->points[x] + " not in the strict image";
                    }
                }
                // Refinement hit: a piece through x whose faces are dominated
                // by the tuple componentwise.
                bool hit = false;
                for (std::uint32_t q : pieces_at_point[x]) {
                    bool dominated = true;
                    for (int i = 0; i <= m && dominated; ++i)
                        if (!h.subset(m - 1, h.d(m, i, q)).subset_of(h.subset(m - 1, tup[i])))
                            dominated = false;
                    if (dominated) {
                        hit = true;
                        break;
                    }
                }
                if (!hit) {
                    check.covering = false;
                    check.witness = "matching point (";
                    for (int i = 0; i <= m; ++i) {
                        if (i) check.witness += ",";
                        check.witness += h.label(m - 1, tup[i]);
                    }
                    check.witness += ")@" + h.base->points[x] + " is not covered";
                    return false; // stop enumerating
                }
            }
            return true;
        };

        // Enumerate matching tuples: face-compatible (for m >= 2) with a
        // nonempty common subset.
        std::vector<std::uint32_t> tup(m + 1);
        bool go_on = true;
        std::function<void(int, const PointSet&)> rec = [&](int j, const PointSet& mask) {
            if (!go_on) return;
            if (j == m + 1) {
                go_on = handle_tuple(tup, mask);
                return;
            }
            for (std::uint32_t y = 0; y < prev && go_on; ++y) {
                if (m >= 2) {
                    bool ok = true;
                    for (int i = 0; i < j && ok; ++i)
                        if (h.d(m - 1, i, y) != h.d(m - 1, j - 1, tup[i])) ok = false;
                    if (!ok) continue;
                }
                PointSet next = j == 0 ? h.subset(m - 1, y) : (mask & h.subset(m - 1, y));
                if (next.none()) continue;
                tup[j] = y;
                rec(j + 1, next);
            }
        };
        rec(0, PointSet(width));

        check.bijective = check.strictly_surjective && check.injective;
        report.levels.push_back(std::move(check));
    }
    return report;
}

/// Levelwise connected components of a hypercovering: one cell per pair
/// (piece, component of its subset), with faces and degeneracies induced by
/// tracking where each component lands. Since minimal open sets of a finite
/// space are connected, each level is a plain finite set (no pro-structure
/// survives).
struct GammaResult {
    TruncSimplicialSet complex;
    std::vector<std::vector<std::uint32_t>> cell_piece; // per degree, per cell
    std::vector<std::vector<std::uint32_t>> cell_rep;   // smallest point of the component
};

namespace detail {

/// Component representative (smallest member point index) for every point of
/// an open subset, using comparability edges inside the subset.
inline std::vector<std::uint32_t> subset_component_reps(const FiniteSpace& base,
                                                        const PointSet& subset) {
    const auto width = static_cast<std::uint32_t>(base.size());
    std::vector<std::uint32_t> parent(width);
    std::iota(parent.begin(), parent.end(), 0u);
    std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (std::uint32_t x : subset.indices())
        for (std::uint32_t y : base.min_open[x].indices()) {
            auto a = find(x), b = find(y);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    std::vector<std::uint32_t> rep(width, width);
    for (std::uint32_t x : subset.indices()) rep[x] = find(x);
    return rep;
}

} // namespace detail

inline GammaResult gamma_detailed(const Hypercovering& h, bool with_labels = true) {
    GammaResult out;
    out.complex.depth = h.depth;
    out.complex.ncells.assign(h.depth + 1, 0);
    out.complex.face.assign(h.depth + 1, {});
    out.complex.degen.assign(h.depth + 1, {});
    out.cell_piece.resize(h.depth + 1);
    out.cell_rep.resize(h.depth + 1);
    if (with_labels) out.complex.labels.resize(h.depth + 1);

    // Component reps per piece, plus (piece, rep) -> cell lookup tables.
    std::vector<std::vector<std::vector<std::uint32_t>>> reps(h.depth + 1);
    std::vector<std::vector<std::vector<std::uint32_t>>> cell_of(h.depth + 1);
    const auto width = static_cast<std::uint32_t>(h.base->size());
    for (int n = 0; n <= h.depth; ++n) {
        reps[n].resize(h.pieces(n));
        cell_of[n].resize(h.pieces(n));
        for (std::uint32_t p = 0; p < h.pieces(n); ++p) {
            reps[n][p] = detail::subset_component_reps(*h.base, h.subset(n, p));
            cell_of[n][p].assign(width, static_cast<std::uint32_t>(-1));
            for (std::uint32_t x : h.subset(n, p).indices()) {
                std::uint32_t r = reps[n][p][x];
                if (cell_of[n][p][r] != static_cast<std::uint32_t>(-1)) continue;
                std::uint32_t cell = static_cast<std::uint32_t>(out.cell_piece[n].size());
                cell_of[n][p][r] = cell;
                out.cell_piece[n].push_back(p);
                out.cell_rep[n].push_back(r);
                if (with_labels)
                    out.complex.labels[n].push_back(h.label(n, p) + "~" + h.base->points[r]);
            }
        }
        out.complex.ncells[n] = out.cell_piece[n].size();
    }

    auto induced = [&](int n_from, std::uint32_t target_piece, std::uint32_t rep_point,
                       int n_to) {
        // The component of rep_point inside the target piece's subset.
        std::uint32_t r = reps[n_to][target_piece][rep_point];
        std::uint32_t cell = cell_of[n_to][target_piece][r];
        if (cell == static_cast<std::uint32_t>(-1))
            throw std::logic_error("component tracking failed");
        (void)n_from;
        return cell;
    };

    for (int n = 1; n <= h.depth; ++n) {
        out.complex.face[n].assign(n + 1,
                                   std::vector<std::uint32_t>(out.complex.ncells[n]));
        for (std::uint32_t c = 0; c < out.complex.ncells[n]; ++c) {
            std::uint32_t p = out.cell_piece[n][c];
            std::uint32_t r = out.cell_rep[n][c];
            for (int i = 0; i <= n; ++i)
                out.complex.face[n][i][c] = induced(n, h.d(n, i, p), r, n - 1);
        }
    }
    for (int n = 0; n < h.depth; ++n) {
        out.complex.degen[n].assign(n + 1,
                                    std::vector<std::uint32_t>(out.complex.ncells[n]));
        for (std::uint32_t c = 0; c < out.complex.ncells[n]; ++c) {
            std::uint32_t p = out.cell_piece[n][c];
            std::uint32_t r = out.cell_rep[n][c];
            for (int i = 0; i <= n; ++i)
                out.complex.degen[n][i][c] = induced(n, h.s(n, i, p), r, n + 1);
        }
    }
    validate_simplicial(out.complex);
    return out;
}

inline TruncSimplicialSet gamma(const Hypercovering& h, bool with_labels = true) {
    return gamma_detailed(h, with_labels).complex;
}

/// Levelwise piece assignment commuting with faces and degeneracies, with
/// every piece mapped into a piece whose subset contains it.
struct HypercoverMorphism {
    std::shared_ptr<const Hypercovering> source;
    std::shared_ptr<const Hypercovering> target;
    std::vector<std::vector<std::uint32_t>> level;
};

inline void validate_hypercover_morphism(const HypercoverMorphism& f) {
    const auto& src = *f.source;
    const auto& dst = *f.target;
    if (!same_space(*src.base, *dst.base))
        throw SpaceMismatch("hypercovering morphism across different bases");
    if (src.depth != dst.depth || f.level.size() != static_cast<std::size_t>(src.depth) + 1)
        throw InvalidValue("hypercovering morphism level table malformed");
    for (int n = 0; n <= src.depth; ++n) {
        if (f.level[n].size() != src.pieces(n))
            throw InvalidValue("morphism not total at degree " + std::to_string(n));
        for (std::uint32_t p = 0; p < src.pieces(n); ++p)
            if (!src.subset(n, p).subset_of(dst.subset(n, f.level[n][p])))
                throw InvalidValue("morphism does not preserve subsets at piece " +
                                   src.label(n, p));
    }
    for (int n = 1; n <= src.depth; ++n)
        for (std::uint32_t p = 0; p < src.pieces(n); ++p)
            for (int i = 0; i <= n; ++i)
                if (dst.d(n, i, f.level[n][p]) != f.level[n - 1][src.d(n, i, p)])
                    throw InvalidValue("morphism does not commute with d_" +
                                       std::to_string(i) + " at degree " + std::to_string(n));
    for (int n = 0; n < src.depth; ++n)
        for (std::uint32_t p = 0; p < src.pieces(n); ++p)
            for (int i = 0; i <= n; ++i)
                if (dst.s(n, i, f.level[n][p]) != f.level[n + 1][src.s(n, i, p)])
                    throw InvalidValue("morphism does not commute with s_" +
                                       std::to_string(i) + " at degree " + std::to_string(n));
}

struct HypercoverMorphismResult {
    HypercoverMorphism morphism;
    SimplicialMap gamma_map; // induced map gamma(source) -> gamma(target)
};

/// Searches for a morphism by assigning, level by level, each source piece
/// the smallest-index target piece that contains its subset and is
/// face-compatible with the assignment below; degeneracy compatibility is
/// verified afterwards. Throws NoMorphismFound with the first obstructed
/// piece when the search or the verification fails.
inline HypercoverMorphismResult hypercover_morphism(
    const std::shared_ptr<const Hypercovering>& src,
    const std::shared_ptr<const Hypercovering>& dst) {
    if (!same_space(*src->base, *dst->base))
        throw SpaceMismatch("hypercovering morphism across different bases");
    if (src->depth != dst->depth)
        throw Mismatch("hypercovering morphism needs equal truncation depths");

    HypercoverMorphism f;
    f.source = src;
    f.target = dst;
    f.level.resize(src->depth + 1);
    for (int n = 0; n <= src->depth; ++n) {
        f.level[n].resize(src->pieces(n));
        for (std::uint32_t p = 0; p < src->pieces(n); ++p) {
            bool assigned = false;
            for (std::uint32_t q = 0; q < dst->pieces(n) && !assigned; ++q) {
                if (!src->subset(n, p).subset_of(dst->subset(n, q))) continue;
                bool compatible = true;
                for (int i = 0; i <= n && compatible && n >= 1; ++i)
                    if (dst->d(n, i, q) != f.level[n - 1][src->d(n, i, p)])
                        compatible = false;
                if (!compatible) continue;
                f.level[n][p] = q;
                assigned = true;
            }
            if (!assigned) throw NoMorphismFound(n, src->label(n, p));
        }
    }
    for (int n = 0; n < src->depth; ++n)
        for (std::uint32_t p = 0; p < src->pieces(n); ++p)
            for (int i = 0; i <= n; ++i)
                if (dst->s(n, i, f.level[n][p]) != f.level[n + 1][src->s(n, i, p)])
                    throw NoMorphismFound(n + 1, src->label(n + 1, src->s(n, i, p)));
    validate_hypercover_morphism(f);

    auto gsrc = gamma_detailed(*src);
    auto gdst = gamma_detailed(*dst);

    // (piece, rep) -> cell lookup on the target side.
    const auto width = static_cast<std::uint32_t>(dst->base->size());
    std::vector<std::vector<std::uint32_t>> lookup(src->depth + 1);
    for (int n = 0; n <= src->depth; ++n) {
        lookup[n].assign(dst->pieces(n) * width, static_cast<std::uint32_t>(-1));
        for (std::uint32_t c = 0; c < gdst.complex.cells(n); ++c)
            lookup[n][gdst.cell_piece[n][c] * width + gdst.cell_rep[n][c]] = c;
    }

    SimplicialMap gmap;
    gmap.source = std::make_shared<TruncSimplicialSet>(std::move(gsrc.complex));
    gmap.target = std::make_shared<TruncSimplicialSet>(std::move(gdst.complex));
    gmap.depth = src->depth;
    gmap.level.resize(src->depth + 1);
    for (int n = 0; n <= src->depth; ++n) {
        gmap.level[n].resize(gmap.source->cells(n));
        for (std::uint32_t c = 0; c < gmap.source->cells(n); ++c) {
            std::uint32_t piece = f.level[n][gsrc.cell_piece[n][c]];
            std::uint32_t rep = gsrc.cell_rep[n][c];
            std::uint32_t r = detail::subset_component_reps(*dst->base,
                                                            dst->subset(n, piece))[rep];
            std::uint32_t cell = lookup[n][piece * width + r];
            if (cell == static_cast<std::uint32_t>(-1))
                throw std::logic_error("induced component cell missing");
            gmap.level[n][c] = cell;
        }
    }
    validate_simplicial_map(gmap);
    return HypercoverMorphismResult{std::move(f), std::move(gmap)};
}

} // namespace protoshape
