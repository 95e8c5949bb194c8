#include <doctest.h>

#include "hopfpath/basis.hpp"
#include "hopfpath/syntax.hpp"
#include "hopfpath/tensor.hpp"
#include "oracles.hpp"

using namespace hopfpath;

namespace {

WordSeries W(const char* s) { return parse_word_series(s); }

}  // namespace

TEST_CASE("shuffle against the interleaving oracle") {
    for (const auto& u : words_up_to(2, 3))
        for (const auto& v : words_up_to(1, 2)) CHECK(shuffle(u, v) == oracle::shuffle_by_positions(u, v));
    CHECK(shuffle(Word{1}, Word{2}) == W("e[1,2] + e[2,1]"));
    CHECK(shuffle(Word{1}, Word{1}) == W("2*e[1,1]"));
}

TEST_CASE("coproducts are adjoint to the products") {
    const auto words = words_up_to(2, 4);
    for (const auto& w : words) {
        const auto unshuffle = shuffle_coproduct(w);
        const auto deconcat = deconcat_coproduct(w);
        for (const auto& [p, c] : unshuffle) CHECK(shuffle(p.first, p.second).coefficient(w) == c);
        for (const auto& [p, c] : deconcat) CHECK(p.first * p.second == w);
        CHECK(deconcat.size() == w.size() + 1);
    }
    for (const auto& u : words_up_to(2, 2))
        for (const auto& v : words_up_to(2, 2))
            for (const auto& [w, c] : shuffle(u, v)) CHECK(shuffle_coproduct(w).coefficient({u, v}) == c);
    CHECK(shuffle_coproduct(Word{1, 2}) == WordPairs(std::pair{Word{1, 2}, Word{}}) +
                                              WordPairs(std::pair{Word{1}, Word{2}}) +
                                              WordPairs(std::pair{Word{2}, Word{1}}) +
                                              WordPairs(std::pair{Word{}, Word{1, 2}}));
}

TEST_CASE("antipode reverses with sign") {
    CHECK(tensor_antipode(W("e[0,1,2]")) == W("-e[2,1,0]"));
    CHECK(tensor_antipode(W("e[1,2]")) == W("e[2,1]"));
    CHECK(tensor_antipode(W("[]")) == W("[]"));
}

TEST_CASE("exp and log of a Lie element") {
    const Truncation tr{2, 4};
    TensorPoly lie(W("e[1] + 2*e[2]") + bracket(W("e[1]"), W("e[2]")), tr);
    CHECK(is_primitive(lie));
    TensorPoly g = exp_concat(lie);
    CHECK(is_grouplike(g));
    CHECK(log_concat(g) == lie);
    CHECK_FALSE(is_grouplike(lie));
    CHECK_FALSE(is_primitive(TensorPoly(W("e[1,2]"), tr)));
    CHECK_THROWS_AS(exp_concat(TensorPoly(W("[] + e[1]"), tr)), PreconditionError);
    CHECK_THROWS_AS(concat(g, TensorPoly(W("e[1]"), Truncation{2, 3})), PreconditionError);
}

TEST_CASE("straight line exponential") {
    TensorPoly g = exp_concat(TensorPoly(W("e[1]"), Truncation{1, 4}));
    CHECK(g.coefficient(Word{1, 1, 1}) == make_rational(1, 6));
    CHECK(g.coefficient(Word{1, 1, 1, 1}) == make_rational(1, 24));
}

TEST_CASE("S map of e012 has the thirteen listed terms") {
    auto s = extraction_S(Word{0, 1, 2});
    auto term = [](std::vector<Word> f, Word r) { return std::pair{WordMonomial(std::move(f)), r}; };
    LinComb2<WordMonomial, Word> expected;
    for (const auto& k : {
             term({}, Word{0, 1, 2}),
             term({Word{0}}, Word{0, 1, 2}),
             term({Word{1}}, Word{0, 0, 2}),
             term({Word{2}}, Word{0, 1, 0}),
             term({Word{0}, Word{1}}, Word{0, 0, 2}),
             term({Word{0}, Word{2}}, Word{0, 1, 0}),
             term({Word{1}, Word{2}}, Word{0, 0, 0}),
             term({Word{0}, Word{1}, Word{2}}, Word{0, 0, 0}),
             term({Word{0, 1}}, Word{0, 2}),
             term({Word{1, 2}}, Word{0, 0}),
             term({Word{0, 1}, Word{2}}, Word{0, 0}),
             term({Word{0}, Word{1, 2}}, Word{0, 0}),
             term({Word{0, 1, 2}}, Word{0}),
         })
        expected.add_term(k, 1);
    CHECK(s == expected);
    CHECK(s.size() == 13);
}

TEST_CASE("translation of e012 by the bracket [e1,e2]") {
    auto v = GeometricTranslation::time_only(bracket(W("e[1]"), W("e[2]")), 2);
    TensorPoly x(W("e[0,1,2]"), Truncation{2, 4});
    CHECK(translate_T(v, x).terms() == W("e[0,1,2] + e[1,2,1,2] - e[2,1,1,2]"));
    GeometricTranslation zero(2);
    CHECK(translate_T(zero, x) == x);
    auto bad = GeometricTranslation::time_only(W("e[1,2]"), 2);
    CHECK_THROWS_AS(translate_T(bad, x), PreconditionError);
}

TEST_CASE("dual translation is the adjoint") {
    const Truncation tr{2, 4};
    GeometricTranslation v(2);
    v[0] = bracket(W("e[1]"), W("e[2]"));
    v[1] = W("1/2*e[2]") + bracket(W("e[1]"), bracket(W("e[1]"), W("e[2]")));
    v[2] = W("-3*e[0]");
    const auto basis = words_up_to(2, 4);
    for (const auto& x : basis) {
        const auto tx = translate_T(v, TensorPoly(WordSeries(x), tr)).terms();
        for (const auto& [y, c] : tx) CHECK(dual_translate_T(v, WordSeries(y)).coefficient(x) == c);
        for (const auto& [y, c] : dual_translate_T(v, WordSeries(x))) CHECK(translate_T(v, TensorPoly(WordSeries(y), tr)).coefficient(x) == c);
    }
}

TEST_CASE("general extraction specialises to the single-mark map") {
    const std::vector<Label> marks{0, 1};
    auto general = extraction_S_general(Word{1, 2}, marks);
    int with_mark_zero = 0;
    for (const auto& [k, c] : general) {
        bool all_zero = true;
        for (const auto& m : k.first.factors()) all_zero = all_zero && m.mark == 0;
        if (all_zero) ++with_mark_zero;
    }
    CHECK(with_mark_zero == static_cast<int>(extraction_S(Word{1, 2}).size()));
    CHECK(extraction_S(Word{}).size() == 1);
}
