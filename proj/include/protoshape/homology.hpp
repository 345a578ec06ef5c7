#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "protoshape/errors.hpp"
#include "protoshape/integer_matrix.hpp"
#include "protoshape/simplicial.hpp"

namespace protoshape {

struct DegreeHomology {
    std::size_t betti = 0;
    std::vector<Int> torsion; // invariant factors >= 2, in divisibility order

    friend bool operator==(const DegreeHomology& a, const DegreeHomology& b) {
        return a.betti == b.betti && a.torsion == b.torsion;
    }
    friend bool operator!=(const DegreeHomology& a, const DegreeHomology& b) {
        return !(a == b);
    }
};

struct HomologyGroups {
    std::vector<DegreeHomology> degrees; // 0..max_degree

    friend bool operator==(const HomologyGroups& a, const HomologyGroups& b) {
        return a.degrees == b.degrees;
    }
    friend bool operator!=(const HomologyGroups& a, const HomologyGroups& b) {
        return !(a == b);
    }

    std::string to_string() const {
        std::string out = "(";
        for (std::size_t n = 0; n < degrees.size(); ++n) {
            if (n) out += ",";
            out += std::to_string(degrees[n].betti);
            for (const auto& t : degrees[n].torsion) out += "+Z/" + t.str();
        }
        return out + ")";
    }
};

namespace detail {

/// Presentation of H_n = ker(boundary_n) / im(boundary_{n+1}) as a cokernel
/// in kernel-lattice coordinates. Generators are adapted so relations are
/// diagonal: the first `relations.rank()` generators have orders q_1 | q_2 |
/// ... (order-1 generators are trivial), the rest are free.
struct HomologyPresentation {
    IntegerMatrix kernel_basis;  // chains x k
    IntegerMatrix relations;     // image of the next boundary, kernel coordinates
    SmithDecomposition rel_snf;  // SNF of relations
    std::size_t kernel_rank = 0;

    std::size_t num_relations() const { return rel_snf.rank(); }

    DegreeHomology groups() const {
        DegreeHomology h;
        h.betti = kernel_rank - num_relations();
        for (const auto& q : rel_snf.invariant_factors())
            if (q >= 2) h.torsion.push_back(q);
        return h;
    }

    /// Adapted generator chains: kernel_basis * left_inv(rel_snf). Column j
    /// generates a cyclic summand of order q_j (j < num_relations) or Z.
    IntegerMatrix adapted_generators() const {
        return kernel_basis * rel_snf.left_inv;
    }

    /// Coordinates of a kernel vector in the adapted generator basis.
    IntegerMatrix adapted_coordinates(const IntegerMatrix& v) const {
        return rel_snf.left * lattice_coordinates(kernel_basis, v);
    }
};

inline HomologyPresentation present_homology(const ChainComplex& c, int n) {
    HomologyPresentation p;
    SmithDecomposition dn = smith_normal_form(c.boundary[n]);
    p.kernel_basis = kernel_lattice_basis(dn);
    p.kernel_rank = p.kernel_basis.cols();
    p.relations = n + 1 <= c.top_degree
                      ? lattice_coordinates(p.kernel_basis, c.boundary[n + 1])
                      : IntegerMatrix(p.kernel_rank, 0);
    p.rel_snf = smith_normal_form(p.relations);
    return p;
}

} // namespace detail

/// Integer homology of the complex in degrees 0..max_degree. The complex
/// must be defined through degree max_degree + 1.
inline HomologyGroups homology(const ChainComplex& c, int max_degree) {
    if (max_degree + 1 > c.top_degree) throw DepthTooShallow(max_degree + 1, c.top_degree);
    validate_complex(c);
    HomologyGroups h;
    for (int n = 0; n <= max_degree; ++n)
        h.degrees.push_back(detail::present_homology(c, n).groups());
    return h;
}

/// Chain map on normalized chains induced by a simplicial map: a generator
/// goes to its image cell when that cell is nondegenerate and to zero
/// otherwise.
inline std::vector<IntegerMatrix> normalized_chain_map(const SimplicialMap& f,
                                                       const ChainComplex& src,
                                                       const ChainComplex& tgt) {
    std::vector<IntegerMatrix> out(src.generators.size());
    for (int n = 0; n <= src.top_degree; ++n) {
        std::vector<std::size_t> tgt_gen_of(f.target->cells(n), static_cast<std::size_t>(-1));
        for (std::size_t g = 0; g < tgt.generator_cells[n].size(); ++g)
            tgt_gen_of[tgt.generator_cells[n][g]] = g;
        IntegerMatrix m(tgt.generators[n], src.generators[n]);
        for (std::size_t g = 0; g < src.generators[n]; ++g) {
            std::uint32_t img = f.apply(n, src.generator_cells[n][g]);
            std::size_t tg = tgt_gen_of[img];
            if (tg != static_cast<std::size_t>(-1)) m.at(tg, g) = 1;
        }
        out[n] = std::move(m);
    }
    return out;
}

struct InducedHomologyMap {
    HomologyGroups source_homology;
    HomologyGroups target_homology;
    /// Per degree: matrix of the induced map over the adapted generators
    /// (torsion generators first, then free), torsion rows reduced mod q.
    std::vector<IntegerMatrix> matrix;
    std::vector<bool> isomorphism;

    bool isomorphism_through(int degree) const {
        for (int n = 0; n <= degree; ++n)
            if (!isomorphism[n]) return false;
        return true;
    }
};

/// Induced maps on integer homology in degrees 0..max_degree, with a
/// per-degree isomorphism verdict. The verdict combines equality of the
/// abstract groups with surjectivity of the induced map; for finitely
/// generated abelian groups a surjection between isomorphic groups is an
/// isomorphism.
inline InducedHomologyMap homology_map(const SimplicialMap& f, int max_degree) {
    if (max_degree + 1 > f.depth) throw DepthTooShallow(max_degree + 1, f.depth);
    validate_simplicial_map(f);

    ChainComplex src = normalized_chains(*f.source, max_degree);
    ChainComplex tgt = normalized_chains(*f.target, max_degree);
    auto chain_map = normalized_chain_map(f, src, tgt);

    // Chain-map identity, re-checked at the matrix level.
    for (int n = 1; n <= src.top_degree; ++n)
        if (!(chain_map[n - 1] * src.boundary[n] == tgt.boundary[n] * chain_map[n]))
            throw NotAChainMap("induced chain map does not commute with the boundary "
                               "at degree " + std::to_string(n));

    InducedHomologyMap out;
    for (int n = 0; n <= max_degree; ++n) {
        auto pa = detail::present_homology(src, n);
        auto pb = detail::present_homology(tgt, n);
        DegreeHomology ha = pa.groups(), hb = pb.groups();

        // Map source adapted generators into target adapted coordinates.
        IntegerMatrix images = chain_map[n] * pa.adapted_generators();
        IntegerMatrix coords = pb.kernel_rank > 0
                                   ? pb.adapted_coordinates(images)
                                   : IntegerMatrix(0, images.cols());

        // Drop trivial generators (order-1 relations) on both sides, reduce
        // torsion coordinates modulo their orders.
        auto nontrivial = [](const detail::HomologyPresentation& p) {
            std::vector<std::size_t> idx;
            auto factors = p.rel_snf.invariant_factors();
            for (std::size_t j = 0; j < p.kernel_rank; ++j) {
                if (j < factors.size() && factors[j] == 1) continue;
                idx.push_back(j);
            }
            return idx;
        };
        auto rows = nontrivial(pb);
        auto cols = nontrivial(pa);
        auto factors_b = pb.rel_snf.invariant_factors();
        IntegerMatrix m(rows.size(), cols.size());
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t cidx = 0; cidx < cols.size(); ++cidx) {
                Int v = coords.at(rows[r], cols[cidx]);
                if (rows[r] < factors_b.size()) {
                    const Int& q = factors_b[rows[r]];
                    v %= q;
                    if (v < 0) v += q;
                }
                m.at(r, cidx) = v;
            }

        // Surjectivity: images of all source kernel generators together with
        // the target relations must generate the target kernel lattice.
        bool surjective = true;
        if (pb.kernel_rank > 0) {
            IntegerMatrix gen_images =
                lattice_coordinates(pb.kernel_basis, chain_map[n] * pa.kernel_basis);
            IntegerMatrix stacked(pb.kernel_rank,
                                  gen_images.cols() + pb.relations.cols());
            for (std::size_t r = 0; r < pb.kernel_rank; ++r) {
                for (std::size_t j = 0; j < gen_images.cols(); ++j)
                    stacked.at(r, j) = gen_images.at(r, j);
                for (std::size_t j = 0; j < pb.relations.cols(); ++j)
                    stacked.at(r, gen_images.cols() + j) = pb.relations.at(r, j);
            }
            auto snf = smith_normal_form(stacked);
            surjective = snf.rank() == pb.kernel_rank;
            for (const auto& q : snf.invariant_factors())
                if (q != 1) surjective = false;
        }

        out.matrix.push_back(std::move(m));
        out.isomorphism.push_back(ha == hb && surjective);
        out.source_homology.degrees.push_back(std::move(ha));
        out.target_homology.degrees.push_back(std::move(hb));
    }
    return out;
}

} // namespace protoshape
