#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "protoshape/errors.hpp"
#include "protoshape/finite_space.hpp"
#include "protoshape/integer_matrix.hpp"

namespace protoshape {

/// Levels 0..depth of a simplicial set: finite cell sets with face and
/// degeneracy maps satisfying the simplicial identities inside the
/// truncation. Cell labels are optional (constructions may skip them on hot
/// paths); structure is carried entirely by the index maps.
struct TruncSimplicialSet {
    int depth = 0;
    std::vector<std::size_t> ncells;                            // per degree 0..depth
    std::vector<std::vector<std::vector<std::uint32_t>>> face;  // face[n][i], n in 1..depth
    std::vector<std::vector<std::vector<std::uint32_t>>> degen; // degen[n][i], n in 0..depth-1
    std::vector<std::vector<std::string>> labels;               // empty when unlabeled

    std::size_t cells(int n) const { return ncells[static_cast<std::size_t>(n)]; }

    std::uint32_t d(int n, int i, std::uint32_t cell) const { return face[n][i][cell]; }
    std::uint32_t s(int n, int i, std::uint32_t cell) const { return degen[n][i][cell]; }

    bool has_labels() const { return !labels.empty(); }

    const std::string& label(int n, std::uint32_t cell) const { return labels[n][cell]; }

    /// Cells not in the image of any degeneracy, per degree.
    std::vector<std::vector<bool>> degenerate_flags() const {
        std::vector<std::vector<bool>> flags(depth + 1);
        for (int n = 0; n <= depth; ++n) flags[n].assign(cells(n), false);
        for (int n = 0; n < depth; ++n)
            for (int i = 0; i <= n; ++i)
                for (std::uint32_t c = 0; c < cells(n); ++c) flags[n + 1][degen[n][i][c]] = true;
        return flags;
    }

    std::vector<std::size_t> nondegenerate_counts() const {
        auto flags = degenerate_flags();
        std::vector<std::size_t> out(depth + 1, 0);
        for (int n = 0; n <= depth; ++n)
            for (std::uint32_t c = 0; c < cells(n); ++c)
                if (!flags[n][c]) ++out[n];
        return out;
    }
};

namespace detail {

/// Identity checks shared by simplicial sets and hypercoverings (whose
/// structure maps live on piece indices).
inline void validate_structure_tables(
    int depth, const std::vector<std::size_t>& ncells,
    const std::vector<std::vector<std::vector<std::uint32_t>>>& face,
    const std::vector<std::vector<std::vector<std::uint32_t>>>& degen) {
    if (ncells.size() != static_cast<std::size_t>(depth) + 1 || face.size() != ncells.size() ||
        degen.size() != ncells.size())
        throw InvalidValue("simplicial level tables have inconsistent sizes");
    for (int n = 1; n <= depth; ++n) {
        if (face[n].size() != static_cast<std::size_t>(n) + 1)
            throw InvalidValue("face table at degree " + std::to_string(n) + " malformed");
        for (int i = 0; i <= n; ++i) {
            if (face[n][i].size() != ncells[n])
                throw InvalidValue("face map size mismatch at degree " + std::to_string(n));
            for (std::uint32_t v : face[n][i])
                if (v >= ncells[n - 1])
                    throw InvalidValue("face map hits unknown cell at degree " +
                                       std::to_string(n));
        }
    }
    for (int n = 0; n < depth; ++n) {
        if (degen[n].size() != static_cast<std::size_t>(n) + 1)
            throw InvalidValue("degeneracy table at degree " + std::to_string(n) +
                               " malformed");
        for (int i = 0; i <= n; ++i) {
            if (degen[n][i].size() != ncells[n])
                throw InvalidValue("degeneracy map size mismatch at degree " +
                                   std::to_string(n));
            for (std::uint32_t v : degen[n][i])
                if (v >= ncells[n + 1])
                    throw InvalidValue("degeneracy map hits unknown cell at degree " +
                                       std::to_string(n));
        }
    }

    auto d = [&face](int n, int i, std::uint32_t c) { return face[n][i][c]; };
    auto s = [&degen](int n, int i, std::uint32_t c) { return degen[n][i][c]; };
    auto fail = [](int n, std::uint32_t c, const char* which) {
        throw InvalidValue(std::string("simplicial identity ") + which + " fails at degree " +
                           std::to_string(n) + ", cell " + std::to_string(c));
    };

    for (int n = 2; n <= depth; ++n)
        for (std::uint32_t c = 0; c < ncells[n]; ++c)
            for (int j = 1; j <= n; ++j)
                for (int i = 0; i < j; ++i)
                    if (d(n - 1, i, d(n, j, c)) != d(n - 1, j - 1, d(n, i, c)))
                        fail(n, c, "d_i d_j = d_{j-1} d_i");

    for (int n = 0; n + 2 <= depth; ++n)
        for (std::uint32_t c = 0; c < ncells[n]; ++c)
            for (int i = 0; i <= n; ++i)
                for (int j = i; j <= n; ++j)
                    if (s(n + 1, i, s(n, j, c)) != s(n + 1, j + 1, s(n, i, c)))
                        fail(n, c, "s_i s_j = s_{j+1} s_i");

    for (int n = 0; n + 1 <= depth; ++n)
        for (std::uint32_t c = 0; c < ncells[n]; ++c)
            for (int j = 0; j <= n; ++j) {
                std::uint32_t sj = s(n, j, c);
                for (int i = 0; i <= n + 1; ++i) {
                    std::uint32_t lhs = d(n + 1, i, sj);
                    if (i == j || i == j + 1) {
                        if (lhs != c) fail(n, c, "d_j s_j = id = d_{j+1} s_j");
                    } else if (i < j) {
                        if (lhs != s(n - 1, j - 1, d(n, i, c)))
                            fail(n, c, "d_i s_j = s_{j-1} d_i");
                    } else {
                        if (lhs != s(n - 1, j, d(n, i - 1, c)))
                            fail(n, c, "d_i s_j = s_j d_{i-1}");
                    }
                }
            }
}

} // namespace detail

/// Checks every simplicial identity that is defined within the truncation.
inline void validate_simplicial(const TruncSimplicialSet& s) {
    detail::validate_structure_tables(s.depth, s.ncells, s.face, s.degen);
}

/// Levelwise map of truncated simplicial sets commuting with all faces and
/// degeneracies. `depth` may be smaller than either side's truncation depth.
struct SimplicialMap {
    std::shared_ptr<const TruncSimplicialSet> source;
    std::shared_ptr<const TruncSimplicialSet> target;
    int depth = 0;
    std::vector<std::vector<std::uint32_t>> level;

    std::uint32_t apply(int n, std::uint32_t cell) const { return level[n][cell]; }
};

inline void validate_simplicial_map(const SimplicialMap& f) {
    if (f.depth > f.source->depth || f.depth > f.target->depth)
        throw InvalidValue("simplicial map depth exceeds a truncation depth");
    if (f.level.size() != static_cast<std::size_t>(f.depth) + 1)
        throw InvalidValue("simplicial map level table malformed");
    for (int n = 0; n <= f.depth; ++n) {
        if (f.level[n].size() != f.source->cells(n))
            throw InvalidValue("simplicial map not total at degree " + std::to_string(n));
        for (std::uint32_t c : f.level[n])
            if (c >= f.target->cells(n))
                throw InvalidValue("simplicial map hits unknown cell at degree " +
                                   std::to_string(n));
    }
    for (int n = 1; n <= f.depth; ++n)
        for (std::uint32_t c = 0; c < f.source->cells(n); ++c)
            for (int i = 0; i <= n; ++i)
                if (f.target->d(n, i, f.level[n][c]) != f.level[n - 1][f.source->d(n, i, c)])
                    throw InvalidValue("map does not commute with d_" + std::to_string(i) +
                                       " at degree " + std::to_string(n));
    for (int n = 0; n < f.depth; ++n)
        for (std::uint32_t c = 0; c < f.source->cells(n); ++c)
            for (int i = 0; i <= n; ++i)
                if (f.target->s(n, i, f.level[n][c]) != f.level[n + 1][f.source->s(n, i, c)])
                    throw InvalidValue("map does not commute with s_" + std::to_string(i) +
                                       " at degree " + std::to_string(n));
}

namespace detail {

/// Cells-as-words storage: degree n holds words of length n+1 over some
/// alphabet, flattened and lexicographically sorted. Face maps delete an
/// entry, degeneracies repeat one; both are resolved by binary search.
struct WordLevels {
    int depth = 0;
    std::vector<std::vector<std::uint32_t>> words; // flat, stride n+1
    std::vector<std::vector<PointSet>> masks;      // per-word masks (may stay empty)

    std::size_t count(int n) const {
        return words[n].size() / (static_cast<std::size_t>(n) + 1);
    }

    const std::uint32_t* word(int n, std::size_t i) const {
        return words[n].data() + i * (static_cast<std::size_t>(n) + 1);
    }

    std::uint32_t find(int n, const std::uint32_t* w) const {
        const std::size_t stride = static_cast<std::size_t>(n) + 1;
        std::size_t lo = 0, hi = count(n);
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            const std::uint32_t* m = word(n, mid);
            int cmp = 0;
            for (std::size_t k = 0; k < stride; ++k) {
                if (m[k] != w[k]) {
                    cmp = m[k] < w[k] ? -1 : 1;
                    break;
                }
            }
            if (cmp < 0)
                lo = mid + 1;
            else if (cmp > 0)
                hi = mid;
            else
                return static_cast<std::uint32_t>(mid);
        }
        throw std::logic_error("word lookup failed; enumeration is not closed under "
                               "the requested edit");
    }
};

/// Enumerates all words of length 1..depth+1 accepted by `extend`, in
/// lexicographic order per degree.
///
/// Extend signature:
///   std::optional<PointSet> extend(const std::uint32_t* prefix, int len,
///                                  const PointSet* prefix_mask, std::uint32_t letter)
/// An empty optional rejects; the returned mask is stored when keep_masks.
template <class Extend>
WordLevels enumerate_words(int depth, std::uint32_t alphabet, Extend&& extend,
                           bool keep_masks) {
    WordLevels lv;
    lv.depth = depth;
    lv.words.resize(depth + 1);
    lv.masks.resize(depth + 1);

    std::vector<std::uint32_t> scratch;
    for (std::uint32_t a = 0; a < alphabet; ++a) {
        auto mask = extend(nullptr, 0, nullptr, a);
        if (!mask) continue;
        lv.words[0].push_back(a);
        if (keep_masks) lv.masks[0].push_back(std::move(*mask));
    }
    for (int n = 1; n <= depth; ++n) {
        const std::size_t stride = static_cast<std::size_t>(n);
        const std::size_t prev = lv.count(n - 1);
        scratch.assign(stride + 1, 0);
        for (std::size_t p = 0; p < prev; ++p) {
            const std::uint32_t* pw = lv.word(n - 1, p);
            const PointSet* pm = keep_masks ? &lv.masks[n - 1][p] : nullptr;
            std::copy(pw, pw + stride, scratch.begin());
            for (std::uint32_t a = 0; a < alphabet; ++a) {
                auto mask = extend(pw, n, pm, a);
                if (!mask) continue;
                scratch[stride] = a;
                lv.words[n].insert(lv.words[n].end(), scratch.begin(), scratch.end());
                if (keep_masks) lv.masks[n].push_back(std::move(*mask));
            }
        }
    }
    return lv;
}

/// Face and degeneracy tables for a word-level family (delete / repeat an
/// entry, then look the edited word up).
inline void attach_word_structure(const WordLevels& lv, TruncSimplicialSet& s) {
    s.depth = lv.depth;
    s.ncells.resize(lv.depth + 1);
    s.face.assign(lv.depth + 1, {});
    s.degen.assign(lv.depth + 1, {});
    for (int n = 0; n <= lv.depth; ++n) s.ncells[n] = lv.count(n);

    std::vector<std::uint32_t> buf;
    for (int n = 1; n <= lv.depth; ++n) {
        s.face[n].assign(n + 1, std::vector<std::uint32_t>(lv.count(n)));
        buf.resize(n);
        for (std::size_t c = 0; c < lv.count(n); ++c) {
            const std::uint32_t* w = lv.word(n, c);
            for (int i = 0; i <= n; ++i) {
                for (int k = 0, t = 0; k <= n; ++k)
                    if (k != i) buf[t++] = w[k];
                s.face[n][i][c] = lv.find(n - 1, buf.data());
            }
        }
    }
    for (int n = 0; n < lv.depth; ++n) {
        s.degen[n].assign(n + 1, std::vector<std::uint32_t>(lv.count(n)));
        buf.resize(n + 2);
        for (std::size_t c = 0; c < lv.count(n); ++c) {
            const std::uint32_t* w = lv.word(n, c);
            for (int i = 0; i <= n; ++i) {
                for (int k = 0, t = 0; k <= n; ++k) {
                    buf[t++] = w[k];
                    if (k == i) buf[t++] = w[k];
                }
                s.degen[n][i][c] = lv.find(n + 1, buf.data());
            }
        }
    }
}

inline std::vector<std::vector<std::string>> word_labels(
    const WordLevels& lv, const std::vector<std::string>& alphabet_names) {
    std::vector<std::vector<std::string>> out(lv.depth + 1);
    for (int n = 0; n <= lv.depth; ++n) {
        out[n].reserve(lv.count(n));
        for (std::size_t c = 0; c < lv.count(n); ++c) {
            const std::uint32_t* w = lv.word(n, c);
            std::string label = "(";
            for (int k = 0; k <= n; ++k) {
                if (k) label += ",";
                label += alphabet_names[w[k]];
            }
            label += ")";
            out[n].push_back(std::move(label));
        }
    }
    return out;
}

} // namespace detail

/// T0 quotient of a preorder: identify x and y whenever x <= y <= x. The
/// result is a partial order; class_of sends each point to its class index.
struct PreorderQuotient {
    Preorder preorder;
    std::vector<std::uint32_t> class_of;
};

inline PreorderQuotient preorder_t0_quotient(const Preorder& p) {
    const auto n = static_cast<std::uint32_t>(p.size());
    std::vector<std::uint32_t> rep(n), class_of(n);
    std::vector<std::uint32_t> reps;
    for (std::uint32_t x = 0; x < n; ++x) {
        std::uint32_t r = x;
        for (std::uint32_t y = 0; y < x; ++y)
            if (p.leq(x, y) && p.leq(y, x)) {
                r = rep[y];
                break;
            }
        rep[x] = r;
        if (r == x) reps.push_back(x);
    }
    const auto m = static_cast<std::uint32_t>(reps.size());
    for (std::uint32_t c = 0; c < m; ++c) class_of[reps[c]] = c;
    for (std::uint32_t x = 0; x < n; ++x) class_of[x] = class_of[rep[x]];

    PreorderQuotient q;
    q.class_of = class_of;
    q.preorder.points.reserve(m);
    q.preorder.upper.assign(m, PointSet(m));
    for (std::uint32_t c = 0; c < m; ++c) {
        q.preorder.points.push_back(p.points[reps[c]]);
        for (std::uint32_t y : p.upper[reps[c]].indices()) q.preorder.upper[c].set(class_of[y]);
    }
    return q;
}

/// McCord complex K: cells at degree n are the weakly increasing (n+1)-chains
/// of the preorder; d_i deletes entry i, s_i repeats it. By default the
/// preorder is replaced by its T0 quotient first, which preserves homology
/// while avoiding the blow-up from two-way-comparable pairs.
inline TruncSimplicialSet order_complex(const Preorder& p, int depth, bool t0 = true,
                                        bool with_labels = true) {
    validate_preorder(p);
    const Preorder q = t0 ? preorder_t0_quotient(p).preorder : p;
    auto lv = detail::enumerate_words(
        depth, static_cast<std::uint32_t>(q.size()),
        [&q](const std::uint32_t* prefix, int len, const PointSet*, std::uint32_t letter)
            -> std::optional<PointSet> {
            if (len > 0 && !q.leq(prefix[len - 1], letter)) return std::nullopt;
            return PointSet();
        },
        false);
    TruncSimplicialSet s;
    detail::attach_word_structure(lv, s);
    if (with_labels) s.labels = detail::word_labels(lv, q.points);
    validate_simplicial(s);
    return s;
}

/// Cech nerve of a cover: cells at degree n are ordered (n+1)-tuples of
/// member labels with nonempty intersection (repeats allowed).
inline TruncSimplicialSet cech_nerve(const OpenCover& cover, int depth,
                                     bool with_labels = true) {
    validate_cover(cover);
    auto lv = detail::enumerate_words(
        depth, static_cast<std::uint32_t>(cover.members.size()),
        [&cover](const std::uint32_t* , int len, const PointSet* pm, std::uint32_t letter)
            -> std::optional<PointSet> {
            PointSet next =
                len == 0 ? cover.members[letter].set : (*pm & cover.members[letter].set);
            if (next.none()) return std::nullopt;
            return next;
        },
        true);
    TruncSimplicialSet s;
    detail::attach_word_structure(lv, s);
    if (with_labels) {
        std::vector<std::string> names;
        for (const auto& m : cover.members) names.push_back(m.label);
        s.labels = detail::word_labels(lv, names);
    }
    validate_simplicial(s);
    return s;
}

enum class RefinementPolicy { SmallestLabel, LargestLabel };

/// The projection N(fine) -> N(coarse) induced by sending each fine member
/// to a containing coarse member; the canonical choice takes the containing
/// member with the smallest label (list position). Any other choice gives a
/// chain-homotopic map; LargestLabel is provided so tests can compare the
/// induced maps on homology.
inline SimplicialMap nerve_refinement_map(const OpenCover& fine, const OpenCover& coarse,
                                          int depth,
                                          RefinementPolicy policy =
                                              RefinementPolicy::SmallestLabel) {
    if (!same_space(*fine.space, *coarse.space))
        throw SpaceMismatch("refinement map across different spaces");
    std::vector<std::uint32_t> assign(fine.members.size());
    for (std::size_t f = 0; f < fine.members.size(); ++f) {
        bool found = false;
        for (std::size_t c = 0; c < coarse.members.size(); ++c) {
            std::size_t cc = policy == RefinementPolicy::SmallestLabel
                                 ? c
                                 : coarse.members.size() - 1 - c;
            if (fine.members[f].set.subset_of(coarse.members[cc].set)) {
                assign[f] = static_cast<std::uint32_t>(cc);
                found = true;
                break;
            }
        }
        if (!found)
            throw NotARefinement("member '" + fine.members[f].label +
                                 "' fits in no coarse member");
    }

    auto src = std::make_shared<TruncSimplicialSet>(cech_nerve(fine, depth));
    auto tgt = std::make_shared<TruncSimplicialSet>(cech_nerve(coarse, depth));

    // Rebuild the coarse word table to resolve images; enumeration order is
    // deterministic, so indices agree with tgt.
    auto coarse_lv = detail::enumerate_words(
        depth, static_cast<std::uint32_t>(coarse.members.size()),
        [&coarse](const std::uint32_t*, int len, const PointSet* pm, std::uint32_t letter)
            -> std::optional<PointSet> {
            PointSet next =
                len == 0 ? coarse.members[letter].set : (*pm & coarse.members[letter].set);
            if (next.none()) return std::nullopt;
            return next;
        },
        true);
    auto fine_lv = detail::enumerate_words(
        depth, static_cast<std::uint32_t>(fine.members.size()),
        [&fine](const std::uint32_t*, int len, const PointSet* pm, std::uint32_t letter)
            -> std::optional<PointSet> {
            PointSet next =
                len == 0 ? fine.members[letter].set : (*pm & fine.members[letter].set);
            if (next.none()) return std::nullopt;
            return next;
        },
        true);

    SimplicialMap map;
    map.source = src;
    map.target = tgt;
    map.depth = depth;
    map.level.resize(depth + 1);
    std::vector<std::uint32_t> buf;
    for (int n = 0; n <= depth; ++n) {
        map.level[n].resize(src->cells(n));
        buf.resize(n + 1);
        for (std::size_t c = 0; c < fine_lv.count(n); ++c) {
            const std::uint32_t* w = fine_lv.word(n, c);
            for (int k = 0; k <= n; ++k) buf[k] = assign[w[k]];
            map.level[n][c] = coarse_lv.find(n, buf.data());
        }
    }
    validate_simplicial_map(map);
    return map;
}

struct CoskeletonResult {
    std::shared_ptr<const TruncSimplicialSet> complex;
    SimplicialMap canonical; // s -> coskeleton, depth = min(s.depth, N)
};

/// n-coskeleton up to depth N: degrees <= n are copied; degree m > n holds
/// the matching tuples, i.e. (m+1)-tuples (y_0..y_m) of degree-(m-1) cells
/// with d_i y_j = d_{j-1} y_i for i < j. Faces project; degeneracies are
/// reconstructed from the simplicial identities.
inline CoskeletonResult coskeleton(const std::shared_ptr<const TruncSimplicialSet>& s, int n,
                                   int depth) {
    if (n > s->depth) throw DepthTooShallow(n, s->depth);
    if (n < 0 || depth < n) throw InvalidValue("coskeleton needs 0 <= n <= depth");

    auto out = std::make_shared<TruncSimplicialSet>();
    out->depth = depth;
    out->ncells.assign(depth + 1, 0);
    out->face.assign(depth + 1, {});
    out->degen.assign(depth + 1, {});
    for (int m = 0; m <= n; ++m) {
        out->ncells[m] = s->cells(m);
        if (m >= 1) out->face[m] = s->face[m];
        if (m < n) out->degen[m] = s->degen[m];
    }

    // Matching-tuple words per new level, lexicographically ordered.
    detail::WordLevels tuples;
    tuples.depth = depth;
    tuples.words.resize(depth + 1);

    auto face_of = [&](int m, int i, std::uint32_t cell) {
        return out->face[m][i][cell];
    };

    for (int m = n + 1; m <= depth; ++m) {
        const std::size_t prev = out->ncells[m - 1];
        std::vector<std::uint32_t> tup(m + 1);
        std::function<void(int)> rec = [&](int j) {
            if (j == m + 1) {
                tuples.words[m].insert(tuples.words[m].end(), tup.begin(), tup.end());
                return;
            }
            for (std::uint32_t y = 0; y < prev; ++y) {
                bool ok = true;
                if (m >= 2) {
                    for (int i = 0; i < j && ok; ++i)
                        if (face_of(m - 1, i, y) != face_of(m - 1, j - 1, tup[i])) ok = false;
                }
                if (!ok) continue;
                tup[j] = y;
                rec(j + 1);
            }
        };
        rec(0);
        out->ncells[m] = tuples.count(m);

        out->face[m].assign(m + 1, std::vector<std::uint32_t>(out->ncells[m]));
        for (std::size_t c = 0; c < out->ncells[m]; ++c) {
            const std::uint32_t* w = tuples.word(m, c);
            for (int i = 0; i <= m; ++i) out->face[m][i][c] = w[i];
        }

        // Degeneracies into the new level, via d_k(s_i x) expanded by the
        // simplicial identities.
        const int p = m - 1; // source degree
        out->degen[p].assign(p + 1, std::vector<std::uint32_t>(out->ncells[p]));
        std::vector<std::uint32_t> img(m + 1);
        for (std::uint32_t c = 0; c < out->ncells[p]; ++c) {
            for (int i = 0; i <= p; ++i) {
                for (int k = 0; k <= m; ++k) {
                    if (k == i || k == i + 1)
                        img[k] = c;
                    else if (k < i)
                        img[k] = out->degen[p - 1][i - 1][face_of(p, k, c)];
                    else
                        img[k] = out->degen[p - 1][i][face_of(p, k - 1, c)];
                }
                out->degen[p][i][c] = tuples.find(m, img.data());
            }
        }
    }
    validate_simplicial(*out);

    SimplicialMap canonical;
    canonical.source = s;
    canonical.target = out;
    canonical.depth = std::min(s->depth, depth);
    canonical.level.resize(canonical.depth + 1);
    for (int m = 0; m <= std::min(n, canonical.depth); ++m) {
        canonical.level[m].resize(s->cells(m));
        for (std::uint32_t c = 0; c < s->cells(m); ++c) canonical.level[m][c] = c;
    }
    std::vector<std::uint32_t> img;
    for (int m = n + 1; m <= canonical.depth; ++m) {
        canonical.level[m].resize(s->cells(m));
        img.resize(m + 1);
        for (std::uint32_t c = 0; c < s->cells(m); ++c) {
            for (int i = 0; i <= m; ++i) img[i] = canonical.level[m - 1][s->d(m, i, c)];
            canonical.level[m][c] = tuples.find(m, img.data());
        }
    }
    validate_simplicial_map(canonical);
    return CoskeletonResult{out, std::move(canonical)};
}

/// Chain complex in degrees 0..top_degree; boundary[k] maps degree-k chains
/// to degree-(k-1) chains. generator_cells records which cell each generator
/// came from.
struct ChainComplex {
    int top_degree = 0;
    std::vector<std::size_t> generators;
    std::vector<IntegerMatrix> boundary;
    std::vector<std::vector<std::uint32_t>> generator_cells;
};

inline void validate_complex(const ChainComplex& c) {
    for (int k = 2; k <= c.top_degree; ++k)
        if (!(c.boundary[k - 1] * c.boundary[k]).is_zero())
            throw NotAComplex("boundary composition is nonzero between degrees " +
                              std::to_string(k) + " and " + std::to_string(k - 2));
}

/// Normalized chains: generators are the nondegenerate cells, the boundary is
/// the alternating face sum with degenerate faces dropped. Degree-D homology
/// downstream needs the complex through degree D+1, hence the depth
/// requirement.
inline ChainComplex normalized_chains(const TruncSimplicialSet& s, int max_degree) {
    const int top = max_degree + 1;
    if (top > s.depth) throw DepthTooShallow(top, s.depth);

    auto degenerate = s.degenerate_flags();
    ChainComplex c;
    c.top_degree = top;
    c.generators.resize(top + 1);
    c.generator_cells.resize(top + 1);
    std::vector<std::vector<std::size_t>> gen_of(top + 1);
    for (int nn = 0; nn <= top; ++nn) {
        gen_of[nn].assign(s.cells(nn), static_cast<std::size_t>(-1));
        for (std::uint32_t cell = 0; cell < s.cells(nn); ++cell)
            if (!degenerate[nn][cell]) {
                gen_of[nn][cell] = c.generator_cells[nn].size();
                c.generator_cells[nn].push_back(cell);
            }
        c.generators[nn] = c.generator_cells[nn].size();
    }

    c.boundary.resize(top + 1);
    c.boundary[0] = IntegerMatrix(0, c.generators[0]);
    for (int k = 1; k <= top; ++k) {
        IntegerMatrix b(c.generators[k - 1], c.generators[k]);
        for (std::size_t g = 0; g < c.generators[k]; ++g) {
            std::uint32_t cell = c.generator_cells[k][g];
            for (int i = 0; i <= k; ++i) {
                std::uint32_t f = s.d(k, i, cell);
                std::size_t fg = gen_of[k - 1][f];
                if (fg == static_cast<std::size_t>(-1)) continue;
                b.at(fg, g) += (i % 2 == 0) ? 1 : -1;
            }
        }
        c.boundary[k] = std::move(b);
    }
    validate_complex(c);
    return c;
}

} // namespace protoshape
