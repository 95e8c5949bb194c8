#pragma once

#include "hopfpath/lincomb.hpp"
#include "hopfpath/tensor.hpp"
#include "hopfpath/tree.hpp"
#include "hopfpath/truncated.hpp"

namespace hopfpath {

using ForestSeries = LinComb<Forest>;
using ForestPairs = LinComb2<Forest, Forest>;
using ForestPoly = TruncatedPoly<Forest>;

// Connes-Kreimer coproduct: branches on the left, trunk on the right. Multiplicative, 1 -> 1 (x) 1.
const ForestPairs& ck_coproduct(const Tree& t);
ForestPairs ck_coproduct(const Forest& f);
ForestPairs ck_coproduct(const ForestSeries& x);

ForestSeries ck_antipode(const Forest& f);
ForestSeries ck_antipode(const ForestSeries& x);

ForestSeries forest_product(const ForestSeries& a, const ForestSeries& b, int depth);
ForestPoly forest_product(const ForestPoly& a, const ForestPoly& b);

// Grossman-Larson product of two basis forests, defined as the adjoint of ck_coproduct.
const ForestSeries& gl_product(const Forest& a, const Forest& b);
ForestSeries gl_product(const ForestSeries& a, const ForestSeries& b, int depth);
ForestPoly gl_product(const ForestPoly& a, const ForestPoly& b);

// Adjoint of the forest product: every split of the multiset of trees, each distinct split once.
ForestPairs gl_coproduct(const Forest& f);
ForestPairs gl_coproduct(const ForestSeries& x);
ForestPairs truncate_pairs(const ForestPairs& x, int depth);

ForestSeries gl_antipode(const ForestSeries& x, int depth);
ForestPoly gl_antipode(const ForestPoly& x);

ForestPoly exp_star(const ForestPoly& x);
ForestPoly log_star(const ForestPoly& x);
bool is_grouplike_star(const ForestPoly& x);
bool is_primitive_star(const ForestPoly& x);

// Pre-Lie grafting s -> t: the coefficient of a tree is its number of single cuts with branch s
// and trunk t, i.e. the tree part of the Grossman-Larson product.
ForestSeries graft(const Tree& s, const Tree& t);
// Attach s below each node of t, every attachment with weight one. Differs from graft by the
// rescaling tree -> symmetry_factor(tree) * tree, which is a pre-Lie isomorphism between the two.
ForestSeries graft_by_attachment(const Tree& s, const Tree& t);
ForestSeries graft(const ForestSeries& s, const ForestSeries& t, int depth);
// Adjoint of graft: all single-edge cuts, branch (x) trunk.
ForestPairs graft_adjoint(const Tree& t);

// Concatenation morphism e_i -> single node labelled i, into the Grossman-Larson algebra.
ForestSeries embed_iota(const Word& w, int depth);
ForestPoly embed_iota(const TensorPoly& x);

ForestSeries project_trees(const ForestSeries& x);
ForestSeries project_linear(const ForestSeries& x);

}  // namespace hopfpath
