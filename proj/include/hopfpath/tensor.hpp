#pragma once

#include "hopfpath/lincomb.hpp"
#include "hopfpath/monomial.hpp"
#include "hopfpath/translation_vector.hpp"
#include "hopfpath/truncated.hpp"
#include "hopfpath/word.hpp"

#include <span>
#include <utility>
#include <vector>

namespace hopfpath {

using WordSeries = LinComb<Word>;
using WordPairs = LinComb2<Word, Word>;
using TensorPoly = TruncatedPoly<Word>;

WordSeries concat(const WordSeries& a, const WordSeries& b, int depth);
WordSeries shuffle(const Word& a, const Word& b);
WordSeries shuffle(const WordSeries& a, const WordSeries& b, int depth);

TensorPoly concat(const TensorPoly& a, const TensorPoly& b);
TensorPoly shuffle(const TensorPoly& a, const TensorPoly& b);

// Deconcatenation, the coproduct dual to concatenation.
WordPairs deconcat_coproduct(const Word& w);
WordPairs deconcat_coproduct(const WordSeries& x);
// Unshuffle: letters are primitive and the coproduct is multiplicative for concatenation.
WordPairs shuffle_coproduct(const Word& w);
WordPairs shuffle_coproduct(const WordSeries& x);

// Reversal with sign (-1)^length; antipode of both tensor Hopf algebras.
WordSeries tensor_antipode(const WordSeries& x);
TensorPoly tensor_antipode(const TensorPoly& x);

TensorPoly exp_concat(const TensorPoly& x);  // x must have no constant term
TensorPoly log_concat(const TensorPoly& x);  // x must have constant term 1

// Tensor coproduct truncated to total grade <= depth, for comparisons inside a truncation.
WordPairs truncate_pairs(const WordPairs& x, int depth);

bool is_grouplike(const TensorPoly& x);
bool is_primitive(const TensorPoly& x);

// Lie bracket [a, b] = ab - ba.
WordSeries bracket(const WordSeries& a, const WordSeries& b);

// Concatenation morphism e_i -> e_i + v_i, truncated at x's depth. Every v_i must be primitive.
TensorPoly translate_T(const GeometricTranslation& v, const TensorPoly& x);

using WordMonomial = Monomial<Word>;
using MarkedWordMonomial = Monomial<Marked<Word>>;

// All selections of pairwise disjoint nonempty factors of w; each selected factor is replaced in
// the remainder by the letter it is marked with. Marks range over `marks`.
LinComb2<MarkedWordMonomial, Word> extraction_S_general(const Word& w, std::span<const Label> marks);
// Single-mark specialisation: every factor is replaced by the time letter 0.
LinComb2<WordMonomial, Word> extraction_S(const Word& w);

// Adjoint of translate_T under the basis pairing.
WordSeries dual_translate_T(const GeometricTranslation& v, const WordSeries& y);

}  // namespace hopfpath
