#pragma once

#include "hopfpath/forest_hopf.hpp"
#include "hopfpath/linear_map.hpp"
#include "hopfpath/monomial.hpp"
#include "hopfpath/translation_vector.hpp"

#include <span>
#include <tuple>
#include <vector>

namespace hopfpath {

using TreeMonomial = Monomial<Tree>;
using MarkedTreeMonomial = Monomial<Marked<Tree>>;

// Extraction-contraction over families of pairwise node-disjoint connected subtrees; each
// extracted subtree is contracted to a node carrying its mark. Multiplicative over forests.
LinComb2<MarkedTreeMonomial, Forest> delta_general(const Forest& f, std::span<const Label> marks);
// Single-mark specialisation: contracted nodes are labelled 0.
LinComb2<TreeMonomial, Forest> delta(const Forest& f);

// Only the subtrees admitted by keep are extracted.
template <class Keep>
LinComb2<TreeMonomial, Forest> delta_restricted(const Forest& f, Keep&& keep) {
    return delta(f).filter([&](const auto& p) {
        for (const auto& t : p.first.factors())
            if (!keep(t)) return false;
        return true;
    });
}

// Adjoint of the translation map.
ForestSeries dual_translate_M(const BranchedTranslation& v, const ForestSeries& y);

// Translation via the pre-Lie universal property: single nodes i -> i + v_i, extended through
// grafting on trees and the Grossman-Larson product on forests.
ForestPoly translate_M_prelie(const BranchedTranslation& v, const ForestPoly& x);
// Translation as the transpose of dual_translate_M on the truncated basis.
ForestPoly translate_M_dual(const BranchedTranslation& v, const ForestPoly& x);
// Computes both routes and throws InternalError if they disagree.
ForestPoly translate_M(const BranchedTranslation& v, const ForestPoly& x);

// Matrix of the translation on all forests of the truncation (dual route, checked against the
// pre-Lie route on every basis element when verify is set).
LinearMap<Forest> translation_matrix(const BranchedTranslation& v, Truncation tr, bool verify);

// The time-direction translation by (1/2) sum_i [i]_i, restricted to labels 1..dim.
BranchedTranslation ito_strat_translation(int dim);
// Ito to Stratonovich conversion of a tree. Computed as the dual translation and as a direct sum
// over extractions of the cherries [i]_i; the two must agree.
ForestSeries ito_strat_convert(const Tree& t, int dim);
ForestSeries ito_strat_direct(const Tree& t, int dim);

// Adjointness of single-edge cuts with extraction: both sides of the commutation identity.
using TripleKey = std::tuple<TreeMonomial, Forest, Forest>;
LinComb<TripleKey> cut_after_delta(const Tree& t);
LinComb<TripleKey> delta_after_cut(const Tree& t);

// Symbolic generator data: drift B over trees and a symmetric matrix A indexed by `basis`.
struct LevyTriplet {
    std::vector<Tree> basis;
    std::vector<std::vector<Rational>> A;
    ForestSeries B;
};
// sum_i B^i M_v(t_i) + 1/2 sum_ij A^ij M_v(t_i) * M_v(t_j), truncated at tr.depth.
ForestPoly translate_levy_generator(const BranchedTranslation& v, const LevyTriplet& gen, Truncation tr);

}  // namespace hopfpath
