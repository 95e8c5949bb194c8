#pragma once

#include "hopfpath/forest_hopf.hpp"
#include "hopfpath/monomial.hpp"
#include "hopfpath/rational.hpp"
#include "hopfpath/roughpath.hpp"
#include "hopfpath/translation.hpp"
#include "hopfpath/translation_vector.hpp"
#include "hopfpath/tree.hpp"

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace hopfpath {

// Regularity-structure symbol I(s_1)...I(s_n) Xi_tag in the Heaviside setting. The arguments of
// the I factors are stored through their trees (see tree_of), so the forest holds one tree per
// factor. tag 0 means no noise factor; the empty symbol is the unit 1.
struct Symbol {
    Forest forest;
    Label tag = 0;

    friend bool operator==(const Symbol&, const Symbol&) = default;
    friend std::strong_ordering operator<=>(const Symbol& a, const Symbol& b) {
        const int ga = a.forest.size() + 1, gb = b.forest.size() + 1;
        if (auto c = ga <=> gb; c != 0) return c;
        if (auto c = a.forest <=> b.forest; c != 0) return c;
        return a.tag <=> b.tag;
    }
};

// Nodes of the corresponding tree.
inline int grade(const Symbol& s) { return s.forest.size() + 1; }
std::string to_text(const Symbol& s);
// Grammar: "1" | factor+, factor = "I(" [symbol] ")" | "Xi" digit+. At most one Xi factor.
Symbol parse_symbol(std::string_view text);

// Removes the root: [t_1 ... t_n]_i -> I(phi(t_1)) ... I(phi(t_n)) Xi_i (no Xi for label 0).
Symbol phi(const Tree& t);
Tree phi_inv(const Symbol& s);
inline Tree tree_of(const Symbol& s) { return phi_inv(s); }
// I(s), a symbol with a single I factor and no noise.
Symbol integrate(const Symbol& s);
// Product of symbols with at most one noise factor between them. Throws PreconditionError.
Symbol multiply(const Symbol& a, const Symbol& b);

// a + b alpha.
struct Degree {
    long a = 0, b = 0;
    Rational at(const Rational& alpha) const { return a + b * alpha; }
    friend bool operator==(const Degree&, const Degree&) = default;
};
std::string to_text(const Degree& d);
// |Xi_i| = alpha - 1, |I| = 1, degrees add over products.
Degree degree(const Symbol& s);
bool is_negative(const Symbol& s, const Rational& alpha);

// Trees with labels in 1..dim and fewer than 1/alpha nodes, i.e. exactly the symbols of
// negative degree, as their trees.
std::vector<Tree> negative_trees(const Rational& alpha, int dim);
std::vector<Symbol> negative_generators(const Rational& alpha, int dim);

using SymbolMonomial = Monomial<Symbol>;
using SymbolSeries = LinComb<Symbol>;

// Extraction of families of disjoint negative subtrees, contracted to label 0, computed on trees.
LinComb2<TreeMonomial, Forest> delta_minus_trees(const Tree& t, const Rational& alpha);
// The same under phi on both legs.
LinComb2<SymbolMonomial, Symbol> delta_minus_via_trees(const Symbol& s, const Rational& alpha);
// Sum over edge subsets A of the symbol graph (kernel and noise edges) whose connected components
// all have negative degree, of A (x) R_A s. Independent of delta_minus_trees.
LinComb2<SymbolMonomial, Symbol> delta_minus(const Symbol& s, const Rational& alpha);
// The coproduct on products of negative symbols: delta_minus with the right leg projected to
// negative symbols, the unit symbol read as the empty product.
LinComb2<SymbolMonomial, SymbolMonomial> delta_minus_coproduct(const SymbolMonomial& m, const Rational& alpha);

// Character on products of negative symbols, given by its values on the generators.
class NegCharacter {
public:
    NegCharacter(Rational alpha, int dim) : alpha_(std::move(alpha)), dim_(dim) {}
    // ell(phi(t)) = <v, t>; v must live on negative trees.
    static NegCharacter from_tree_functional(const LinComb<Tree>& v, const Rational& alpha, int dim);
    static NegCharacter counit(const Rational& alpha, int dim) { return NegCharacter(alpha, dim); }

    const Rational& alpha() const { return alpha_; }
    int dim() const { return dim_; }
    Rational operator()(const Symbol& generator) const;
    Rational operator()(const SymbolMonomial& m) const;
    // <ell, phi(t)> on generators, as a functional on trees.
    LinComb<Tree> tree_functional() const;
    void set(const Symbol& generator, const Rational& value);
    friend bool operator==(const NegCharacter&, const NegCharacter&) = default;

private:
    Rational alpha_;
    int dim_;
    LinComb<Symbol> values_;
};

// (ell (x) ell') delta_minus_coproduct on every generator.
NegCharacter compose_characters(const NegCharacter& a, const NegCharacter& b);

// (ell (x) id) delta_minus.
SymbolSeries renormalize(const NegCharacter& ell, const Symbol& s);
SymbolSeries renormalize(const NegCharacter& ell, const SymbolSeries& x);
SymbolSeries integrate(const SymbolSeries& x);
SymbolSeries multiply(const SymbolSeries& a, const SymbolSeries& b);
SymbolSeries phi(const ForestSeries& trees);

// Delta^+ s = sum s' (x) g with g a forest (a product of J(phi(t)) factors, read as trees):
// Xi_i -> Xi_i (x) 1, multiplicative, I(s) -> (I (x) id) Delta^+ s + 1 (x) J(s).
const LinComb2<Symbol, Forest>& delta_plus(const Symbol& s);
// Connes-Kreimer coproduct of t with the legs swapped and the left leg mapped to I(phi(.)).
LinComb2<Symbol, Forest> flipped_ck_on_integrated(const Tree& t);
// Gamma_g s = (id (x) g) Delta^+ s, with g read from a trace value in the forest basis.
LinComb<Symbol, double> structure_action(const TraceBasis<Forest>& basis, const Eigen::VectorXd& g,
                                         const LinComb<Symbol, double>& x);

// Pi_s I(phi(t)) (t_j) = <X_{s,t_j}, t>, extended linearly over symbols of the form I(s).
double model_value(const BranchedTrace& x, int i, int j, const LinComb<Symbol, double>& integrated);
double model_value(const BranchedTrace& x, int i, int j, const SymbolSeries& integrated);

}  // namespace hopfpath
