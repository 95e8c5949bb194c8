#include "hopfpath/verify.hpp"

#include "hopfpath/basis.hpp"
#include "hopfpath/bhz.hpp"
#include "hopfpath/error.hpp"
#include "hopfpath/forest_hopf.hpp"
#include "hopfpath/rde.hpp"
#include "hopfpath/roughpath.hpp"
#include "hopfpath/syntax.hpp"
#include "hopfpath/tensor.hpp"
#include "hopfpath/translation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <random>
#include <thread>
#include <tuple>

namespace hopfpath {

std::size_t SuiteReport::total() const {
    std::size_t n = 0;
    for (const auto& [p, k] : checks) n += k;
    return n;
}

bool SuiteReport::passed(const std::string& property) const {
    if (!checks.contains(property)) return false;
    return std::none_of(failures.begin(), failures.end(), [&](const CheckFailure& f) { return f.property == property; });
}

int worker_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("HOPFPATH_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// A check returns an empty string on success, otherwise a description of the mismatch.
struct Check {
    std::string property;
    std::string element;
    std::function<std::string()> run;
};

using Checks = std::vector<Check>;

template <class A, class B>
std::string expect_equal(const A& lhs, const B& rhs) {
    if (lhs == rhs) return {};
    return "lhs = " + to_text(lhs) + ", rhs = " + to_text(rhs);
}

std::string expect_small(double value, double tol, const std::string& what) {
    if (std::abs(value) <= tol) return {};
    return what + " = " + std::to_string(value) + " exceeds " + std::to_string(tol);
}

// ---------------------------------------------------------------- Hopf axioms

template <class K>
struct HopfOps {
    std::string name;
    std::function<LinComb<K>(const LinComb<K>&, const LinComb<K>&)> product;
    std::function<LinComb2<K, K>(const K&)> coproduct;
    std::function<LinComb<K>(const LinComb<K>&)> antipode;
};

template <class K>
void hopf_checks(Checks& out, const HopfOps<K>& h, const std::vector<K>& basis, int depth) {
    using Triple = std::tuple<K, K, K>;
    for (const auto& x : basis) {
        const std::string el = h.name + " " + to_text(x);
        out.push_back({"coassociativity", el, [h, x] {
                           LinComb<Triple> left, right;
                           for (const auto& [p, c] : h.coproduct(x)) {
                               for (const auto& [q, d] : h.coproduct(p.first)) left.add_term({q.first, q.second, p.second}, c * d);
                               for (const auto& [q, d] : h.coproduct(p.second)) right.add_term({p.first, q.first, q.second}, c * d);
                           }
                           return expect_equal(left, right);
                       }});
        out.push_back({"counit", el, [h, x] {
                           LinComb<K> left, right;
                           for (const auto& [p, c] : h.coproduct(x)) {
                               if (p.first == K{}) left.add_term(p.second, c);
                               if (p.second == K{}) right.add_term(p.first, c);
                           }
                           if (auto e = expect_equal(left, LinComb<K>(x)); !e.empty()) return e;
                           return expect_equal(right, LinComb<K>(x));
                       }});
        out.push_back({"antipode", el, [h, x] {
                           LinComb<K> left, right;
                           for (const auto& [p, c] : h.coproduct(x)) {
                               left.add_scaled(h.product(h.antipode(LinComb<K>(p.first)), LinComb<K>(p.second)), c);
                               right.add_scaled(h.product(LinComb<K>(p.first), h.antipode(LinComb<K>(p.second))), c);
                           }
                           const LinComb<K> eps = x == K{} ? LinComb<K>(K{}) : LinComb<K>{};
                           if (auto e = expect_equal(left, eps); !e.empty()) return e;
                           return expect_equal(right, eps);
                       }});
    }
    for (const auto& a : basis)
        for (const auto& b : basis) {
            if (grade(a) + grade(b) > depth || grade(a) == 0 || grade(b) == 0) continue;
            out.push_back({"bialgebra", h.name + " " + to_text(a) + " " + to_text(b), [h, a, b] {
                               LinComb2<K, K> lhs, rhs;
                               for (const auto& [k, c] : h.product(LinComb<K>(a), LinComb<K>(b)))
                                   lhs.add_scaled(h.coproduct(k), c);
                               for (const auto& [p, c] : h.coproduct(a))
                                   for (const auto& [q, d] : h.coproduct(b))
                                       for (const auto& [x, cx] : h.product(LinComb<K>(p.first), LinComb<K>(q.first)))
                                           for (const auto& [y, cy] : h.product(LinComb<K>(p.second), LinComb<K>(q.second)))
                                               rhs.add_term({x, y}, c * d * cx * cy);
                               return expect_equal(lhs, rhs);
                           }});
        }
}

Checks hopf_suite(const SuiteOptions& o) {
    Checks out;
    const int n = o.max_nodes;
    const auto words = words_up_to(o.dim, n);
    const auto forests = forests_up_to(o.dim, n);
    hopf_checks<Word>(out,
                      {"shuffle/deconcatenation", [n](const WordSeries& a, const WordSeries& b) { return shuffle(a, b, n); },
                       [](const Word& w) { return deconcat_coproduct(w); },
                       [](const WordSeries& x) { return tensor_antipode(x); }},
                      words, n);
    hopf_checks<Word>(out,
                      {"concatenation/unshuffle", [n](const WordSeries& a, const WordSeries& b) { return concat(a, b, n); },
                       [](const Word& w) { return shuffle_coproduct(w); },
                       [](const WordSeries& x) { return tensor_antipode(x); }},
                      words, n);
    hopf_checks<Forest>(out,
                        {"forest/cut", [n](const ForestSeries& a, const ForestSeries& b) { return forest_product(a, b, n); },
                         [](const Forest& f) { return ck_coproduct(f); },
                         [](const ForestSeries& x) { return ck_antipode(x); }},
                        forests, n);
    hopf_checks<Forest>(out,
                        {"grafting/deshuffle", [n](const ForestSeries& a, const ForestSeries& b) { return gl_product(a, b, n); },
                         [](const Forest& f) { return gl_coproduct(f); },
                         [n](const ForestSeries& x) { return gl_antipode(x, n); }},
                        forests, n);
    return out;
}

// ---------------------------------------------------------------- pre-Lie

Checks prelie_suite(const SuiteOptions& o) {
    Checks out;
    const int n = o.max_nodes;
    const auto trees = trees_up_to(o.dim, n);
    for (const auto& s : trees)
        for (const auto& t : trees) {
            if (s.size() + t.size() > n) continue;
            const std::string el = s.code() + " " + t.code();
            out.push_back({"graft is the tree part of the product", el, [s, t] {
                               return expect_equal(graft(s, t), project_trees(gl_product(Forest(s), Forest(t))));
                           }});
            out.push_back({"commutator", el, [s, t] {
                               return expect_equal(gl_product(Forest(s), Forest(t)) - gl_product(Forest(t), Forest(s)),
                                                   graft(s, t) - graft(t, s));
                           }});
            out.push_back({"graft adjoint", el, [s, t] {
                               for (const auto& [h, c] : graft(s, t))
                                   if (graft_adjoint(h.as_tree()).coefficient({Forest(s), Forest(t)}) != c)
                                       return "coefficient of " + h.code() + " differs";
                               return std::string();
                           }});
        }
    for (const auto& a : trees)
        for (const auto& b : trees)
            for (const auto& c : trees) {
                if (a.size() + b.size() + c.size() > n) continue;
                out.push_back({"pre-Lie identity", a.code() + " " + b.code() + " " + c.code(), [a, b, c, n] {
                                   const auto assoc = [n](const ForestSeries& x, const ForestSeries& y, const ForestSeries& z) {
                                       return graft(x, graft(y, z, n), n) - graft(graft(x, y, n), z, n);
                                   };
                                   const ForestSeries A(a), B(b), C(c);
                                   return expect_equal(assoc(A, B, C), assoc(B, A, C));
                               }});
            }
    return out;
}

// ---------------------------------------------------------------- translations

BranchedTranslation random_translation(std::mt19937_64& rng, int dim, int max_nodes, bool time_only) {
    const auto trees = trees_up_to(dim, max_nodes);
    std::uniform_int_distribution<std::size_t> pick(0, trees.size() - 1);
    std::uniform_int_distribution<int> coeff(-3, 3);
    BranchedTranslation v(dim);
    for (int i = 0; i <= (time_only ? 0 : dim); ++i)
        for (int k = 0; k < 3; ++k) {
            const Tree& t = trees[pick(rng)];
            if (time_only && t.count_label(0) > 0) continue;
            v[static_cast<std::size_t>(i)].add_term(Forest(t), make_rational(coeff(rng), 2));
        }
    return v;
}

// Lie polynomials: letters and brackets of two letters.
GeometricTranslation random_lie_translation(std::mt19937_64& rng, int dim) {
    std::uniform_int_distribution<int> letter(0, dim), coeff(-3, 3);
    GeometricTranslation v(dim);
    for (int i = 0; i <= dim; ++i) {
        WordSeries lie;
        lie.add_term(Word{static_cast<Label>(letter(rng))}, make_rational(coeff(rng), 2));
        const Label a = static_cast<Label>(letter(rng)), b = static_cast<Label>(letter(rng));
        lie.add_scaled(bracket(WordSeries(Word{a}), WordSeries(Word{b})), coeff(rng));
        v[static_cast<std::size_t>(i)] = lie;
    }
    return v;
}

Checks adjoint_suite(const SuiteOptions& o) {
    Checks out;
    const int n = o.max_nodes, d = o.dim;
    const Truncation tr{d, n};
    std::mt19937_64 rng(o.seed);
    const auto forests_ptr = std::make_shared<const std::vector<Forest>>(forests_up_to(d, n));
    const auto& forests = *forests_ptr;
    for (int trial = 0; trial < 5; ++trial) {
        const auto v = random_translation(rng, d, 2, false);
        const std::string tag = "v#" + std::to_string(trial) + " ";
        out.push_back({"translation routes agree", tag + "all forests", [v, tr] {
                           translation_matrix(v, tr, true);
                           return std::string();
                       }});
        const auto map = std::make_shared<LinearMap<Forest>>(translation_matrix(v, tr, false));
        const auto m = [map](const Forest& f) { return map->apply(ForestSeries(f)); };
        out.push_back({"translation is adjoint to the dual translation", tag + "all forests", [v, map, forests_ptr] {
                           const auto dual = LinearMap<Forest>::tabulate(
                               [&](const Forest& y) { return dual_translate_M(v, ForestSeries(y)); }, *forests_ptr);
                           const auto t = map->transpose();
                           for (std::size_t j = 0; j < forests_ptr->size(); ++j)
                               if (dual.column(j) != t.column(j)) return "pairing with " + (*forests_ptr)[j].code() + " differs";
                           return std::string();
                       }});
        for (const auto& f : forests) {
            out.push_back({"coproduct morphism", tag + f.code(), [m, f, n] {
                               return expect_equal(truncate_pairs(gl_coproduct(m(f)), n),
                                                   truncate_pairs(tensor_apply(gl_coproduct(f), m, m), n));
                           }});
            out.push_back({"antipode morphism", tag + f.code(), [map, m, f, n] {
                               return expect_equal(gl_antipode(m(f), n), map->apply(gl_antipode(ForestSeries(f), n)));
                           }});
        }
        for (const auto& a : forests)
            for (const auto& b : forests) {
                if (a.size() + b.size() > n) continue;
                out.push_back({"product morphism", tag + a.code() + " " + b.code(), [map, m, a, b, n] {
                                   return expect_equal(map->apply(gl_product(a, b)), gl_product(m(a), m(b), n));
                               }});
            }

        const auto u = random_translation(rng, d, 2, true), w = random_translation(rng, d, 2, true);
        out.push_back({"composition", tag + "time-only pair", [u, w, tr, forests_ptr] {
                           const auto mu = translation_matrix(u, tr, false), mw = translation_matrix(w, tr, false);
                           const auto sum = translation_matrix(u + w, tr, false);
                           for (const auto& f : *forests_ptr)
                               if (sum.apply(ForestSeries(f)) != mu.apply(mw.apply(ForestSeries(f)))) return "differs on " + f.code();
                           return std::string();
                       }});

        const auto g = random_lie_translation(rng, d);
        out.push_back({"tensor translation is adjoint to the dual", tag + "all words", [g, tr, d, n] {
                           const auto words = words_up_to(d, n);
                           const auto t = LinearMap<Word>::tabulate(
                               [&](const Word& w) { return translate_T(g, TensorPoly(WordSeries(w), tr)).terms(); }, words)
                                              .transpose();
                           for (std::size_t j = 0; j < words.size(); ++j)
                               if (t.column(j) != dual_translate_T(g, WordSeries(words[j]))) return "pairing with " + words[j].code() + " differs";
                           return std::string();
                       }});
        for (const auto& word : words_up_to(d, n)) {
            out.push_back({"tensor translation morphism", tag + word.code(), [g, word, tr, n] {
                               const auto t = [&](const Word& x) { return translate_T(g, TensorPoly(WordSeries(x), tr)).terms(); };
                               const auto image = t(word);
                               if (auto e = expect_equal(truncate_pairs(shuffle_coproduct(image), n),
                                                         truncate_pairs(tensor_apply(shuffle_coproduct(word), t, t), n));
                                   !e.empty())
                                   return e;
                               return expect_equal(tensor_antipode(image),
                                                   translate_T(g, TensorPoly(tensor_antipode(WordSeries(word)), tr)).terms());
                           }});
        }
    }
    return out;
}

// ---------------------------------------------------------------- BHZ helpers

LinComb<Tree> random_functional(const std::vector<Tree>& support, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
    LinComb<Tree> v;
    for (const auto& t : support) v.add_term(t, make_rational(num(rng), den(rng)));
    return v;
}

BranchedTranslation time_translation(const LinComb<Tree>& v0, int dim) {
    LinComb<Forest> entry;
    for (const auto& [t, c] : v0) entry.add_term(Forest(t), c);
    return BranchedTranslation::time_only(entry, dim);
}

const std::vector<Rational>& suite_alphas() {
    static const std::vector<Rational> a = {make_rational(3, 10), make_rational(2, 5)};
    return a;
}

void surrogate_checks(Checks& out, const SuiteOptions& o) {
    std::mt19937_64 rng(o.seed + 17);
    for (const auto& alpha : suite_alphas()) {
        const auto ell = std::make_shared<NegCharacter>(
            NegCharacter::from_tree_functional(random_functional(negative_trees(alpha, o.dim), rng), alpha, o.dim));
        const auto trees = trees_up_to(o.dim, o.max_nodes);
        for (const auto& a : trees)
            for (const auto& b : trees) {
                if (a.size() + b.size() + 1 > o.max_nodes + 1 || b < a) continue;
                const Symbol sa = phi(a), sb = phi(b);
                out.push_back({"renormalisation factorizes over integrated products",
                               "alpha=" + alpha.get_str() + " " + to_text(sa) + " " + to_text(sb), [ell, sa, sb] {
                                   return expect_equal(renormalize(*ell, multiply(integrate(sa), integrate(sb))),
                                                       multiply(integrate(renormalize(*ell, sa)), integrate(renormalize(*ell, sb))));
                               }});
            }
    }
}

Checks cointeraction_suite(const SuiteOptions& o) {
    Checks out;
    for (const auto& t : trees_up_to(o.dim, o.max_nodes))
        out.push_back({"extraction commutes with single cuts", t.code(),
                       [t] { return expect_equal(cut_after_delta(t), delta_after_cut(t)); }});
    surrogate_checks(out, o);
    return out;
}

Checks itostrat_suite(const SuiteOptions& o) {
    Checks out;
    LinComb<Tree> half;
    const auto v = ito_strat_translation(o.dim);
    for (const auto& [f, c] : v[0]) half.add_term(f.as_tree(), c);
    const auto ell = std::make_shared<NegCharacter>(NegCharacter::from_tree_functional(half, make_rational(2, 5), o.dim));
    for (const auto& t : trees_up_to(o.dim, o.max_nodes)) {
        out.push_back({"dual translation equals direct cherry extraction", t.code(),
                       [t, d = o.dim] { return expect_equal(ito_strat_convert(t, d), ito_strat_direct(t, d)); }});
        out.push_back({"conversion is a negative renormalisation", t.code(),
                       [t, ell, d = o.dim] { return expect_equal(renormalize(*ell, phi(t)), phi(ito_strat_convert(t, d))); }});
    }
    return out;
}

LinComb<Symbol, double> difference(LinComb<Symbol, double> a, const LinComb<Symbol, double>& b) {
    for (const auto& [s, c] : b) a.add_term(s, -c);
    return a;
}

double max_abs(const LinComb<Symbol, double>& x) {
    double m = 0;
    for (const auto& [s, c] : x) m = std::max(m, std::abs(c));
    return m;
}

// Piecewise-linear trace with a time channel, used by the structure-group checks.
BranchedTrace sample_branched_trace(std::uint64_t seed, int dim, int level, int points) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> step(0.0, 0.5);
    std::vector<double> grid;
    std::vector<Eigen::VectorXd> path;
    Eigen::VectorXd p = Eigen::VectorXd::Zero(dim);
    for (int k = 0; k <= points; ++k) {
        grid.push_back(static_cast<double>(k) / points);
        path.push_back(p);
        for (int i = 0; i < dim; ++i) p(i) += step(rng);
    }
    return lift_branched_via_iota(lift_piecewise_linear(grid, path, level, PairPolicy::all));
}

Checks bhz_suite(const SuiteOptions& o) {
    Checks out;
    const int n = o.max_nodes, d = o.dim;
    std::mt19937_64 rng(o.seed);
    const auto trees = trees_up_to(d, n);
    for (const auto& alpha : suite_alphas()) {
        const std::string a = "alpha=" + alpha.get_str() + " ";
        const auto v0 = random_functional(negative_trees(alpha, d), rng);
        const auto ell = std::make_shared<NegCharacter>(NegCharacter::from_tree_functional(v0, alpha, d));
        const auto v = time_translation(v0, d);
        for (const auto& t : trees) {
            const Symbol s = phi(t);
            out.push_back({"negative extraction on symbols and trees", a + to_text(s),
                           [s, alpha] { return expect_equal(delta_minus(s, alpha), delta_minus_via_trees(s, alpha)); }});
            out.push_back({"renormalisation is the dual translation", a + to_text(s), [s, t, ell, v] {
                               return expect_equal(renormalize(*ell, s), phi(dual_translate_M(v, ForestSeries(Forest(t)))));
                           }});
            out.push_back({"renormalisation commutes with integration", a + to_text(s), [s, ell] {
                               return expect_equal(renormalize(*ell, integrate(s)), integrate(renormalize(*ell, s)));
                           }});
        }
        for (const auto& g : negative_generators(alpha, d))
            out.push_back({"negative generators are primitive", a + to_text(g), [g, alpha] {
                               LinComb2<SymbolMonomial, SymbolMonomial> primitive;
                               primitive.add_term({SymbolMonomial({g}), SymbolMonomial()}, 1);
                               primitive.add_term({SymbolMonomial(), SymbolMonomial({g})}, 1);
                               return expect_equal(delta_minus_coproduct(SymbolMonomial({g}), alpha), primitive);
                           }});
        const auto w0 = random_functional(negative_trees(alpha, d), rng);
        out.push_back({"characters compose additively", a + "random pair", [v0, w0, alpha, d] {
                           const auto x = NegCharacter::from_tree_functional(v0, alpha, d);
                           const auto y = NegCharacter::from_tree_functional(w0, alpha, d);
                           if (auto e = expect_equal(compose_characters(x, y).tree_functional(), v0 + w0); !e.empty()) return e;
                           if (compose_characters(x, y) != compose_characters(y, x)) return std::string("composition does not commute");
                           if (compose_characters(x, NegCharacter::counit(alpha, d)) != x) return std::string("counit is not neutral");
                           return std::string();
                       }});
    }
    for (const auto& t : trees)
        out.push_back({"positive coproduct is the flipped cut coproduct", t.code(),
                       [t] { return expect_equal(delta_plus(integrate(phi(t))), flipped_ck_on_integrated(t)); }});

    // Structure group along a piecewise-linear trace.
    const int level = std::min(n, 4), dim = std::min(d, 2);
    const auto x = std::make_shared<BranchedTrace>(sample_branched_trace(o.seed, dim, level, 5));
    std::vector<Symbol> symbols;
    for (const auto& t : trees_up_to(dim, level)) {
        symbols.push_back(phi(t));
        if (t.size() < level) symbols.push_back(integrate(phi(t)));
    }
    for (const auto& sym : symbols)
        out.push_back({"structure group cocycle", to_text(sym), [x, sym] {
                           const auto& basis = x->basis();
                           const LinComb<Symbol, double> y(sym, 1.0);
                           double worst = 0;
                           for (const auto& [s, t, u] : {std::tuple{0, 2, 5}, std::tuple{1, 3, 4}, std::tuple{0, 1, 2}}) {
                               const auto lhs = structure_action(basis, x->at(t, u), structure_action(basis, x->at(s, t), y));
                               worst = std::max(worst, max_abs(difference(lhs, structure_action(basis, x->at(s, u), y))));
                               if (sym.tag == 0 && sym.forest.is_tree())
                                   worst = std::max(worst, std::abs(model_value(*x, t, u, structure_action(basis, x->at(s, t), y)) -
                                                                    model_value(*x, s, u, y)));
                           }
                           return expect_small(worst, 1e-9, "cocycle defect");
                       }});

    // Renormalised model against the translated trace.
    const auto alpha = suite_alphas().front();
    const auto v0 = random_functional(negative_trees(alpha, dim), rng);
    const auto ell = std::make_shared<NegCharacter>(NegCharacter::from_tree_functional(v0, alpha, dim));
    const auto small = std::make_shared<BranchedTrace>(sample_branched_trace(o.seed + 1, dim, std::min(level, 3), 5));
    const auto translated = std::make_shared<BranchedTrace>(translate_trace(time_translation(v0, dim), *small));
    for (const auto& t : trees_up_to(dim, std::min(level, 3)))
        out.push_back({"renormalised model is the translated trace", to_text(phi(t)), [t, ell, small, translated] {
                           double worst = 0;
                           const auto lifted = integrate(renormalize(*ell, phi(t)));
                           for (const auto& [ij, value] : translated->values())
                               worst = std::max(worst, std::abs(model_value(*small, ij.first, ij.second, lifted) -
                                                                translated->coefficient(ij.first, ij.second, Forest(t))));
                           return expect_small(worst, 1e-9, "model defect");
                       }});
    surrogate_checks(out, o);
    return out;
}

// ---------------------------------------------------------------- RDE

PolyVectorField random_field(std::mt19937_64& rng, int e, int dim, int degree) {
    std::uniform_int_distribution<int> coeff(-2, 2);
    std::vector<PolyVector> f;
    for (int i = 0; i <= dim; ++i) {
        PolyVector comp;
        for (int k = 0; k < e; ++k) {
            Polynomial p(e);
            for (int a = 0; a <= degree; ++a)
                for (int b = 0; a + b <= degree; ++b) p.add_term({a, b}, coeff(rng));
            comp.push_back(p);
        }
        f.push_back(comp);
    }
    return PolyVectorField(e, f);
}

Checks rde_suite(const SuiteOptions& o) {
    Checks out;
    const int n = o.max_nodes;
    std::mt19937_64 rng(o.seed);
    out.push_back({"calibration reproduces the committed weights", "max nodes " + std::to_string(std::min(n, 5)),
                   [n, seed = o.seed] {
                       const auto fresh = calibrate_euler(std::min(n, 5), seed);
                       const auto& committed = committed_calibration();
                       if (fresh.rule != committed.rule) return "rule " + fresh.rule + " vs " + committed.rule;
                       for (const auto& [t, c] : fresh.shapes)
                           if (committed.shapes.at(t) != c) return "weight of " + t.code() + " differs";
                       return std::string();
                   }});
    for (int trial = 0; trial < 3; ++trial) {
        const auto f = random_field(rng, 2, 0, 2);
        for (int k = 1; k <= n; ++k)
            out.push_back({"Euler step matches the Taylor flow", "field#" + std::to_string(trial) + " order " + std::to_string(k),
                           [f, k] {
                               return euler_step_coefficient(f, k, committed_calibration()) == taylor_coefficient(f[0], k)
                                          ? std::string()
                                          : std::string("coefficients differ");
                           }});
    }
    const auto g = random_field(rng, 2, o.dim, 2);
    const auto diff = std::make_shared<ElementaryDifferentials>(g);
    const auto trees = trees_up_to(o.dim, n - 1);
    for (const auto& s : trees)
        for (const auto& t : trees) {
            if (s.size() + t.size() > n) continue;
            out.push_back({"single grafts act as the pre-Lie product", s.code() + " " + t.code(), [diff, s, t] {
                               PolyVector attached(2, Polynomial(2));
                               for (const auto& [r, c] : graft_by_attachment(s, t)) attached = attached + c * (*diff)(r.as_tree());
                               return pre_lie((*diff)(s), (*diff)(t)) == attached ? std::string() : std::string("fields differ");
                           }});
        }
    return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"hopf", "prelie", "adjoint", "cointeraction", "itostrat", "bhz", "rde"};
    return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& options) {
    if (options.max_nodes < 1 || options.max_nodes > 6) throw PreconditionError("max-nodes must lie in 1..6");
    if (options.dim < 1 || options.dim > 3) throw PreconditionError("d must lie in 1..3");
    const auto start = std::chrono::steady_clock::now();
    Checks checks;
    if (name == "hopf") checks = hopf_suite(options);
    else if (name == "prelie") checks = prelie_suite(options);
    else if (name == "adjoint") checks = adjoint_suite(options);
    else if (name == "cointeraction") checks = cointeraction_suite(options);
    else if (name == "itostrat") checks = itostrat_suite(options);
    else if (name == "bhz") checks = bhz_suite(options);
    else if (name == "rde") checks = rde_suite(options);
    else throw PreconditionError("unknown suite '" + name + "'");

    std::vector<std::string> results(checks.size());
    std::atomic<std::size_t> next{0};
    const auto work = [&] {
        for (std::size_t i = next++; i < checks.size(); i = next++) {
            try {
                results[i] = checks[i].run();
            } catch (const std::exception& e) {
                results[i] = std::string("threw: ") + e.what();
            }
        }
    };
    const int workers = std::min<int>(worker_threads(options.threads), static_cast<int>(std::max<std::size_t>(1, checks.size())));
    std::vector<std::thread> pool;
    for (int k = 1; k < workers; ++k) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    SuiteReport report;
    report.suite = name;
    for (std::size_t i = 0; i < checks.size(); ++i) {
        ++report.checks[checks[i].property];
        if (!results[i].empty()) report.failures.push_back({checks[i].property, checks[i].element, results[i]});
    }
    report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace hopfpath
