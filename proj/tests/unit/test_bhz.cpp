#include <doctest.h>

#include "hopfpath/basis.hpp"
#include "hopfpath/bhz.hpp"
#include "hopfpath/syntax.hpp"
#include "hopfpath/translation.hpp"

#include <cmath>
#include <random>

using namespace hopfpath;

namespace {

Tree T(const char* s) { return parse_tree(s); }
Symbol S(const char* s) { return parse_symbol(s); }
Rational Q(const char* s) { return Rational(s); }

LinComb<Tree> random_functional(const std::vector<Tree>& support, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
    LinComb<Tree> v;
    for (const auto& t : support) v.add_term(t, Rational(num(rng), den(rng)));
    return v;
}

BranchedTranslation time_only(const LinComb<Tree>& v0, int dim) {
    LinComb<Forest> entry;
    for (const auto& [t, c] : v0) entry.add_term(Forest(t), c);
    return BranchedTranslation::time_only(entry, dim);
}

// Symbols with a tree of at most n nodes and labels in 0..dim.
std::vector<Symbol> symbols_up_to(int dim, int n) {
    std::vector<Symbol> out;
    for (const auto& t : trees_up_to(dim, n)) out.push_back(phi(t));
    return out;
}

double max_abs(const LinComb<Symbol, double>& x) {
    double m = 0;
    for (const auto& [s, c] : x) m = std::max(m, std::abs(c));
    return m;
}

LinComb<Symbol, double> minus(LinComb<Symbol, double> a, const LinComb<Symbol, double>& b) {
    for (const auto& [s, c] : b) a.add_term(s, -c);
    return a;
}

}  // namespace

TEST_CASE("symbol text and the tree correspondence") {
    CHECK(to_text(S("Xi1")) == "Xi1");
    CHECK(to_text(S("1")) == "1");
    CHECK(to_text(S("I(I())")) == "I(I())");
    CHECK(S("I(Xi2)I(Xi1)Xi3") == S("I(Xi1)I(Xi2)Xi3"));
    CHECK(phi(T("(3 (1) (2))")) == S("I(Xi1)I(Xi2)Xi3"));
    CHECK(phi_inv(S("I(Xi1)I(Xi2)Xi3")) == T("(3 (1) (2))"));
    CHECK(phi(T("(0)")) == S("1"));
    CHECK(integrate(S("Xi1")) == S("I(Xi1)"));
    CHECK(multiply(S("I(Xi1)"), S("Xi2")) == S("I(Xi1)Xi2"));
    CHECK_THROWS_AS(multiply(S("Xi1"), S("Xi2")), PreconditionError);
    CHECK_THROWS_AS(parse_symbol("Xi1Xi2"), ParseError);
    CHECK_THROWS_AS(parse_symbol("I(Xi1"), ParseError);
    CHECK_THROWS_AS(parse_symbol("Xi0"), ParseError);
    for (const auto& t : trees_up_to(2, 4)) {
        CHECK(phi_inv(phi(t)) == t);
        CHECK(parse_symbol(to_text(phi(t))) == phi(t));
        CHECK(grade(phi(t)) == t.size());
    }
}

TEST_CASE("degrees") {
    const Rational alpha = Q("2/5");
    CHECK(degree(S("Xi1")) == Degree{-1, 1});
    CHECK(degree(S("I(Xi1)I(Xi2)Xi1")) == Degree{-1, 3});
    CHECK(degree(S("I(I())")) == Degree{2, 0});
    CHECK(to_text(degree(S("I(Xi1)I(Xi2)Xi1"))) == "3*alpha - 1");
    // Closed form on the tree: (nodes labelled 0) - 1 + (other nodes) alpha.
    for (const auto& t : trees_up_to(2, 5)) {
        const Degree d = degree(phi(t));
        CHECK(d.a == t.count_label(0) - 1);
        CHECK(d.b == t.size() - t.count_label(0));
        CHECK(is_negative(phi(t), alpha) == (t.count_label(0) == 0 && t.size() * alpha < 1));
    }
    // Borderline: at alpha = 1/2 a two-node noise tree has degree exactly 0.
    CHECK_FALSE(is_negative(S("I(Xi1)Xi1"), Q("1/2")));
}

TEST_CASE("negative generators") {
    CHECK(negative_generators(Q("2/5"), 1) == std::vector<Symbol>{S("Xi1"), S("I(Xi1)Xi1")});
    const auto three = negative_generators(Q("3/10"), 1);
    CHECK(three.size() == 4);
    CHECK(std::find(three.begin(), three.end(), S("I(Xi1)I(Xi1)Xi1")) != three.end());
    CHECK(std::find(three.begin(), three.end(), S("I(I(Xi1)Xi1)Xi1")) != three.end());
    CHECK(negative_generators(Q("3/5"), 1) == std::vector<Symbol>{S("Xi1")});
    CHECK(negative_generators(Q("2/5"), 2).size() == 2 + 4);
    CHECK_THROWS_AS(negative_generators(Q("1"), 1), PreconditionError);
}

TEST_CASE("negative extraction on symbols agrees with extraction on trees") {
    const Symbol unit = S("1");
    LinComb2<SymbolMonomial, Symbol> expected;
    expected.add_term({SymbolMonomial(), unit}, 1);
    CHECK(delta_minus(unit, Q("2/5")) == expected);

    LinComb2<SymbolMonomial, Symbol> xi;
    xi.add_term({SymbolMonomial(), S("I(Xi1)")}, 1);
    xi.add_term({SymbolMonomial({S("Xi1")}), S("I()")}, 1);
    CHECK(delta_minus(S("I(Xi1)"), Q("2/5")) == xi);

    for (const Rational& alpha : {Q("3/10"), Q("2/5"), Q("1/4"), Q("3/5")})
        for (const auto& s : symbols_up_to(2, 4)) CHECK(delta_minus(s, alpha) == delta_minus_via_trees(s, alpha));
}

TEST_CASE("negative renormalisation is the dual translation") {
    std::mt19937_64 rng(7);
    for (const Rational& alpha : {Q("3/10"), Q("2/5")}) {
        const int dim = 2;
        const auto v0 = random_functional(negative_trees(alpha, dim), rng);
        const auto ell = NegCharacter::from_tree_functional(v0, alpha, dim);
        const auto v = time_only(v0, dim);
        for (const auto& t : trees_up_to(dim, 4))
            CHECK(renormalize(ell, phi(t)) == phi(dual_translate_M(v, ForestSeries(Forest(t)))));
    }
}

TEST_CASE("Ito to Stratonovich as a negative renormalisation") {
    for (int dim : {1, 2}) {
        const auto ell = NegCharacter::from_tree_functional(
            [&] {
                LinComb<Tree> v0;
                const auto v = ito_strat_translation(dim);
                for (const auto& [f, c] : v[0]) v0.add_term(f.as_tree(), c);
                return v0;
            }(),
            Q("2/5"), dim);
        for (const auto& t : trees_up_to(dim, 3)) CHECK(renormalize(ell, phi(t)) == phi(ito_strat_convert(t, dim)));
    }
}

TEST_CASE("renormalisation commutes with integration and with products of integrated symbols") {
    std::mt19937_64 rng(11);
    const Rational alpha = Q("3/10");
    const int dim = 2;
    const auto ell = NegCharacter::from_tree_functional(random_functional(negative_trees(alpha, dim), rng), alpha, dim);
    for (const auto& s : symbols_up_to(dim, 4))
        CHECK(renormalize(ell, integrate(s)) == integrate(renormalize(ell, s)));
    for (const auto& a : symbols_up_to(dim, 3))
        for (const auto& b : symbols_up_to(dim, 3)) {
            if (grade(a) + grade(b) > 4) continue;
            const Symbol ab = multiply(integrate(a), integrate(b));
            CHECK(renormalize(ell, ab) ==
                  multiply(integrate(renormalize(ell, a)), integrate(renormalize(ell, b))));
        }
}

TEST_CASE("generators are primitive and characters compose additively") {
    for (const Rational& alpha : {Q("3/10"), Q("2/5")}) {
        for (const auto& g : negative_generators(alpha, 2)) {
            LinComb2<SymbolMonomial, SymbolMonomial> primitive;
            primitive.add_term({SymbolMonomial({g}), SymbolMonomial()}, 1);
            primitive.add_term({SymbolMonomial(), SymbolMonomial({g})}, 1);
            CHECK(delta_minus_coproduct(SymbolMonomial({g}), alpha) == primitive);
        }
        std::mt19937_64 rng(3);
        const auto v = random_functional(negative_trees(alpha, 2), rng);
        const auto w = random_functional(negative_trees(alpha, 2), rng);
        const auto a = NegCharacter::from_tree_functional(v, alpha, 2);
        const auto b = NegCharacter::from_tree_functional(w, alpha, 2);
        CHECK(compose_characters(a, b).tree_functional() == v + w);
        CHECK(compose_characters(a, NegCharacter::counit(alpha, 2)) == a);
    }
    CHECK_THROWS_AS(NegCharacter::from_tree_functional(LinComb<Tree>(T("(1 (1))")), Q("1/2"), 1), PreconditionError);
}

TEST_CASE("positive coproduct") {
    LinComb2<Symbol, Forest> xi;
    xi.add_term({S("Xi1"), Forest()}, 1);
    CHECK(delta_plus(S("Xi1")) == xi);

    LinComb2<Symbol, Forest> ixi;
    ixi.add_term({S("I(Xi1)"), Forest()}, 1);
    ixi.add_term({S("1"), Forest(T("(1)"))}, 1);
    CHECK(delta_plus(S("I(Xi1)")) == ixi);

    // I(I(Xi1) Xi2): the inner factor either stays or moves right, and the whole factor moves right.
    LinComb2<Symbol, Forest> nested;
    nested.add_term({S("I(I(Xi1)Xi2)"), Forest()}, 1);
    nested.add_term({S("I(Xi2)"), Forest(T("(1)"))}, 1);
    nested.add_term({S("1"), Forest(T("(2 (1))"))}, 1);
    CHECK(delta_plus(S("I(I(Xi1)Xi2)")) == nested);

    for (const auto& t : trees_up_to(2, 4)) CHECK(delta_plus(integrate(phi(t))) == flipped_ck_on_integrated(t));
}

TEST_CASE("structure group acting along a trace") {
    const int level = 4;
    std::vector<double> grid;
    for (int k = 0; k <= 6; ++k) grid.push_back(k / 6.0);
    std::vector<Eigen::VectorXd> path;
    for (double s : grid) path.push_back(Eigen::VectorXd::Constant(1, std::sin(5 * s) + s * s));
    const auto x = lift_branched_via_iota(lift_piecewise_linear(grid, path, level, PairPolicy::all));
    const auto& basis = x.basis();

    std::vector<Symbol> symbols;
    for (const auto& s : symbols_up_to(1, level)) {
        symbols.push_back(s);
        if (grade(s) < level) symbols.push_back(integrate(s));
    }

    double derived = 0, swapped = 0, reexpansion = 0;
    for (const auto& [s, t, u] : {std::tuple{0, 2, 5}, std::tuple{1, 3, 6}, std::tuple{0, 1, 2}}) {
        for (const auto& sym : symbols) {
            const LinComb<Symbol, double> y(sym, 1.0);
            const auto direct = structure_action(basis, x.at(s, u), y);
            derived = std::max(derived, max_abs(minus(structure_action(basis, x.at(t, u), structure_action(basis, x.at(s, t), y)), direct)));
            swapped = std::max(swapped, max_abs(minus(structure_action(basis, x.at(s, t), structure_action(basis, x.at(t, u), y)), direct)));
            if (sym.tag == 0 && sym.forest.is_tree())
                reexpansion = std::max(reexpansion, std::abs(model_value(x, t, u, structure_action(basis, x.at(s, t), y)) -
                                                             model_value(x, s, u, y)));
        }
    }
    CHECK(derived < 1e-12);
    // The reverse composition order is not a cocycle for a generic path.
    CHECK(swapped > 1e-3);
    CHECK(reexpansion < 1e-12);
}

TEST_CASE("renormalised model is the translated trace") {
    std::vector<double> grid;
    for (int k = 0; k <= 5; ++k) grid.push_back(k / 5.0);
    const int level = 3;
    const auto x = brownian_lift(9, grid, 2, Scheme::ito, level, PairPolicy::all);
    std::mt19937_64 rng(5);
    const Rational alpha = Q("3/10");
    const auto v0 = random_functional(negative_trees(alpha, 2), rng);
    const auto ell = NegCharacter::from_tree_functional(v0, alpha, 2);
    const auto y = translate_trace(time_only(v0, 2), x);
    double worst = 0;
    for (const auto& t : trees_up_to(2, level)) {
        for (const auto& [ij, value] : y.values()) {
            const double m = model_value(x, ij.first, ij.second, integrate(renormalize(ell, phi(t))));
            worst = std::max(worst, std::abs(m - y.coefficient(ij.first, ij.second, Forest(t))));
        }
    }
    CHECK(worst < 1e-10);
}
