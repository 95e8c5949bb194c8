#include "hopfpath/bhz.hpp"

#include "hopfpath/basis.hpp"
#include "hopfpath/error.hpp"
#include "hopfpath/syntax.hpp"
#include "hopfpath/translation.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace hopfpath {

namespace {

const Symbol kUnit{};

Symbol parse_symbol(Cursor& c) {
    c.skip_space();
    if (c.consume("1")) return kUnit;
    Symbol s;
    std::vector<Tree> factors;
    while (true) {
        c.skip_space();
        if (c.consume("I(")) {
            c.skip_space();
            Symbol inner = c.peek() == ')' ? kUnit : parse_symbol(c);
            c.expect(")");
            factors.push_back(phi_inv(inner));
        } else if (c.consume("Xi")) {
            const std::size_t at = c.position();
            const int k = c.integer();
            if (k < 1) c.fail("noise index must be positive");
            if (s.tag != 0) throw ParseError("a symbol carries at most one noise factor", at);
            s.tag = static_cast<Label>(k);
        } else {
            break;
        }
    }
    if (factors.empty() && s.tag == 0) c.fail("expected a symbol");
    s.forest = Forest(std::move(factors));
    return s;
}

}  // namespace

std::string to_text(const Symbol& s) {
    if (s.forest.is_unit() && s.tag == 0) return "1";
    std::string out;
    for (const auto& t : s.forest.trees()) {
        const Symbol inner = phi(t);
        out += "I(" + (inner == kUnit ? std::string() : to_text(inner)) + ")";
    }
    if (s.tag != 0) out += "Xi" + std::to_string(s.tag);
    return out;
}

Symbol parse_symbol(std::string_view text) {
    Cursor c(text);
    Symbol s = parse_symbol(c);
    if (!c.at_end()) c.fail("unexpected trailing input");
    return s;
}

Symbol phi(const Tree& t) { return Symbol{Forest(t.children()), t.label()}; }

Tree phi_inv(const Symbol& s) { return Tree(s.tag, s.forest.trees()); }

Symbol integrate(const Symbol& s) { return Symbol{Forest(phi_inv(s)), 0}; }

Symbol multiply(const Symbol& a, const Symbol& b) {
    if (a.tag != 0 && b.tag != 0) throw PreconditionError("product of two noise factors is not a symbol");
    return Symbol{a.forest * b.forest, a.tag != 0 ? a.tag : b.tag};
}

std::string to_text(const Degree& d) {
    if (d.b == 0) return std::to_string(d.a);
    std::string out = d.b == 1 ? "alpha" : d.b == -1 ? "-alpha" : std::to_string(d.b) + "*alpha";
    if (d.a > 0) out += " + " + std::to_string(d.a);
    if (d.a < 0) out += " - " + std::to_string(-d.a);
    return out;
}

Degree degree(const Symbol& s) {
    Degree d;
    for (const auto& t : s.forest.trees()) {
        const Degree inner = degree(phi(t));
        d.a += inner.a + 1;
        d.b += inner.b;
    }
    if (s.tag != 0) {
        d.a -= 1;
        d.b += 1;
    }
    return d;
}

bool is_negative(const Symbol& s, const Rational& alpha) { return sgn(degree(s).at(alpha)) < 0; }

namespace {

void require_alpha(const Rational& alpha) {
    if (sgn(alpha) <= 0 || alpha >= 1) throw PreconditionError("alpha must lie in (0, 1)");
}

bool is_negative_tree(const Tree& t, const Rational& alpha) {
    return t.count_label(0) == 0 && t.size() * alpha < 1;
}

}  // namespace

std::vector<Tree> negative_trees(const Rational& alpha, int dim) {
    require_alpha(alpha);
    std::vector<Tree> out;
    for (int n = 1; n * alpha < 1; ++n)
        for (const auto& t : trees_of_size(dim, n))
            if (t.count_label(0) == 0) out.push_back(t);
    return out;
}

std::vector<Symbol> negative_generators(const Rational& alpha, int dim) {
    std::vector<Symbol> out;
    for (const auto& t : negative_trees(alpha, dim)) out.push_back(phi(t));
    return out;
}

LinComb2<TreeMonomial, Forest> delta_minus_trees(const Tree& t, const Rational& alpha) {
    require_alpha(alpha);
    return delta_restricted(Forest(t), [&](const Tree& e) { return is_negative_tree(e, alpha); });
}

LinComb2<SymbolMonomial, Symbol> delta_minus_via_trees(const Symbol& s, const Rational& alpha) {
    LinComb2<SymbolMonomial, Symbol> out;
    for (const auto& [key, c] : delta_minus_trees(phi_inv(s), alpha)) {
        std::vector<Symbol> factors;
        for (const auto& t : key.first.factors()) factors.push_back(phi(t));
        out.add_term({SymbolMonomial(std::move(factors)), phi(key.second.as_tree())}, c);
    }
    return out;
}

namespace {

// The symbol as a graph: one vertex per node of its tree, a kernel edge from every non-root node
// to its parent and a noise edge on every node with a nonzero label.
struct SymbolGraph {
    std::vector<int> parent;
    std::vector<Label> noise;
    std::vector<std::vector<int>> children;

    explicit SymbolGraph(const Tree& t) { add(t, -1); }

    int add(const Tree& t, int up) {
        const int v = static_cast<int>(parent.size());
        parent.push_back(up);
        noise.push_back(t.label());
        children.emplace_back();
        for (const auto& c : t.children()) {
            const int w = add(c, v);
            children[static_cast<std::size_t>(v)].push_back(w);
        }
        return v;
    }
    int size() const { return static_cast<int>(parent.size()); }
};

int find(std::vector<int>& uf, int v) {
    while (uf[static_cast<std::size_t>(v)] != v) v = uf[static_cast<std::size_t>(v)];
    return v;
}

}  // namespace

LinComb2<SymbolMonomial, Symbol> delta_minus(const Symbol& s, const Rational& alpha) {
    require_alpha(alpha);
    const SymbolGraph g(phi_inv(s));
    const int n = g.size();
    // Edge list: kernel edges (v, v) for v != 0, then noise edges (v, -1).
    std::vector<std::pair<int, bool>> edges;
    for (int v = 1; v < n; ++v) edges.push_back({v, true});
    for (int v = 0; v < n; ++v)
        if (g.noise[static_cast<std::size_t>(v)] != 0) edges.push_back({v, false});
    if (edges.size() > 24) throw PreconditionError("symbol too large for subgraph enumeration");

    LinComb2<SymbolMonomial, Symbol> out;
    for (unsigned long mask = 0; mask < (1ul << edges.size()); ++mask) {
        std::vector<int> uf(static_cast<std::size_t>(n));
        std::iota(uf.begin(), uf.end(), 0);
        std::vector<char> touched(static_cast<std::size_t>(n), 0), kernel_in(static_cast<std::size_t>(n), 0),
            noise_in(static_cast<std::size_t>(n), 0);
        for (std::size_t e = 0; e < edges.size(); ++e) {
            if (!(mask >> e & 1ul)) continue;
            const auto [v, kernel] = edges[e];
            touched[static_cast<std::size_t>(v)] = 1;
            if (kernel) {
                const int p = g.parent[static_cast<std::size_t>(v)];
                touched[static_cast<std::size_t>(p)] = 1;
                kernel_in[static_cast<std::size_t>(v)] = 1;
                uf[static_cast<std::size_t>(find(uf, v))] = find(uf, p);
            } else {
                noise_in[static_cast<std::size_t>(v)] = 1;
            }
        }
        // Degree of each component: kernel edges count 1, noise edges alpha - 1.
        std::map<int, Degree> component_degree;
        for (int v = 0; v < n; ++v) {
            if (!touched[static_cast<std::size_t>(v)]) continue;
            Degree& d = component_degree[find(uf, v)];
            if (kernel_in[static_cast<std::size_t>(v)]) d.a += 1;
            if (noise_in[static_cast<std::size_t>(v)]) {
                d.a -= 1;
                d.b += 1;
            }
        }
        if (!std::all_of(component_degree.begin(), component_degree.end(),
                         [&](const auto& kv) { return sgn(kv.second.at(alpha)) < 0; }))
            continue;

        const auto component_of = [&](int v) { return touched[static_cast<std::size_t>(v)] ? find(uf, v) : -1; };
        // Extracted piece rooted at its top vertex v: only chosen edges survive.
        const auto extracted = [&](auto&& self, int v) -> Tree {
            std::vector<Tree> kids;
            for (int c : g.children[static_cast<std::size_t>(v)])
                if (kernel_in[static_cast<std::size_t>(c)]) kids.push_back(self(self, c));
            return Tree(noise_in[static_cast<std::size_t>(v)] ? g.noise[static_cast<std::size_t>(v)] : Label(0), std::move(kids));
        };
        // Contracted tree: each component collapses to its top vertex and keeps its unchosen
        // noise edges.
        const auto contracted = [&](auto&& self, int v) -> Tree {
            const int comp = component_of(v);
            std::vector<int> members = {v};
            if (comp >= 0)
                for (std::size_t k = 0; k < members.size(); ++k)
                    for (int c : g.children[static_cast<std::size_t>(members[k])])
                        if (kernel_in[static_cast<std::size_t>(c)]) members.push_back(c);
            std::vector<Tree> kids;
            Label label = 0;
            int remaining_noise = 0;
            for (int m : members) {
                if (g.noise[static_cast<std::size_t>(m)] != 0 && !noise_in[static_cast<std::size_t>(m)]) {
                    label = g.noise[static_cast<std::size_t>(m)];
                    ++remaining_noise;
                }
                for (int c : g.children[static_cast<std::size_t>(m)])
                    if (!kernel_in[static_cast<std::size_t>(c)]) kids.push_back(self(self, c));
            }
            if (remaining_noise > 1) throw InternalError("contraction produced a node with two noises");
            return Tree(label, std::move(kids));
        };

        std::vector<Symbol> pieces;
        for (int v = 0; v < n; ++v) {
            if (!touched[static_cast<std::size_t>(v)]) continue;
            if (!kernel_in[static_cast<std::size_t>(v)]) pieces.push_back(phi(extracted(extracted, v)));
        }
        out.add_term({SymbolMonomial(std::move(pieces)), phi(contracted(contracted, 0))}, 1);
    }
    return out;
}

LinComb2<SymbolMonomial, SymbolMonomial> delta_minus_coproduct(const SymbolMonomial& m, const Rational& alpha) {
    LinComb2<SymbolMonomial, SymbolMonomial> out;
    out.add_term({SymbolMonomial(), SymbolMonomial()}, 1);
    for (const auto& g : m.factors()) {
        if (!is_negative(g, alpha)) throw PreconditionError("symbol " + to_text(g) + " is not negative");
        LinComb2<SymbolMonomial, SymbolMonomial> factor;
        for (const auto& [key, c] : delta_minus(g, alpha)) {
            if (key.second == kUnit)
                factor.add_term({key.first, SymbolMonomial()}, c);
            else if (is_negative(key.second, alpha))
                factor.add_term({key.first, SymbolMonomial({key.second})}, c);
        }
        LinComb2<SymbolMonomial, SymbolMonomial> next;
        for (const auto& [a, ca] : out)
            for (const auto& [b, cb] : factor) next.add_term({a.first * b.first, a.second * b.second}, ca * cb);
        out = std::move(next);
    }
    return out;
}

NegCharacter NegCharacter::from_tree_functional(const LinComb<Tree>& v, const Rational& alpha, int dim) {
    require_alpha(alpha);
    NegCharacter ell(alpha, dim);
    for (const auto& [t, c] : v) {
        if (!is_negative_tree(t, alpha) || t.max_label() > dim)
            throw PreconditionError("tree " + t.code() + " is not a negative generator");
        ell.values_.add_term(phi(t), c);
    }
    return ell;
}

Rational NegCharacter::operator()(const Symbol& generator) const {
    if (!is_negative(generator, alpha_)) throw PreconditionError("symbol " + to_text(generator) + " is not negative");
    return values_.coefficient(generator);
}

Rational NegCharacter::operator()(const SymbolMonomial& m) const {
    Rational out(1);
    for (const auto& g : m.factors()) {
        out *= (*this)(g);
        if (sgn(out) == 0) break;
    }
    return out;
}

LinComb<Tree> NegCharacter::tree_functional() const {
    LinComb<Tree> out;
    for (const auto& [s, c] : values_) out.add_term(phi_inv(s), c);
    return out;
}

void NegCharacter::set(const Symbol& generator, const Rational& value) {
    if (!is_negative(generator, alpha_)) throw PreconditionError("symbol " + to_text(generator) + " is not negative");
    values_.add_term(generator, value - values_.coefficient(generator));
}

NegCharacter compose_characters(const NegCharacter& a, const NegCharacter& b) {
    if (a.alpha() != b.alpha() || a.dim() != b.dim()) throw PreconditionError("characters on different spaces");
    NegCharacter out(a.alpha(), a.dim());
    for (const auto& g : negative_generators(a.alpha(), a.dim())) {
        Rational value(0);
        for (const auto& [key, c] : delta_minus_coproduct(SymbolMonomial({g}), a.alpha()))
            value += c * a(key.first) * b(key.second);
        out.set(g, value);
    }
    return out;
}

SymbolSeries renormalize(const NegCharacter& ell, const Symbol& s) {
    SymbolSeries out;
    for (const auto& [key, c] : delta_minus(s, ell.alpha())) out.add_term(key.second, c * ell(key.first));
    return out;
}

SymbolSeries renormalize(const NegCharacter& ell, const SymbolSeries& x) {
    return apply_linear(x, [&](const Symbol& s) { return renormalize(ell, s); });
}

SymbolSeries integrate(const SymbolSeries& x) {
    SymbolSeries out;
    for (const auto& [s, c] : x) out.add_term(integrate(s), c);
    return out;
}

SymbolSeries multiply(const SymbolSeries& a, const SymbolSeries& b) {
    return bilinear_extend(a, b, [](const Symbol& x, const Symbol& y) { return SymbolSeries(multiply(x, y)); });
}

SymbolSeries phi(const ForestSeries& trees) {
    SymbolSeries out;
    for (const auto& [f, c] : trees) {
        if (!f.is_tree()) throw PreconditionError("phi is defined on trees, got " + f.code());
        out.add_term(phi(f.as_tree()), c);
    }
    return out;
}

const LinComb2<Symbol, Forest>& delta_plus(const Symbol& s) {
    static std::recursive_mutex mutex;
    static std::map<Symbol, LinComb2<Symbol, Forest>> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(s); it != cache.end()) return it->second;

    LinComb2<Symbol, Forest> out;
    out.add_term({Symbol{Forest(), s.tag}, Forest()}, 1);
    for (const auto& t : s.forest.trees()) {
        LinComb2<Symbol, Forest> factor;
        for (const auto& [key, c] : delta_plus(phi(t))) factor.add_term({integrate(key.first), key.second}, c);
        factor.add_term({kUnit, Forest(t)}, 1);
        LinComb2<Symbol, Forest> next;
        for (const auto& [a, ca] : out)
            for (const auto& [b, cb] : factor)
                next.add_term({multiply(a.first, b.first), a.second * b.second}, ca * cb);
        out = std::move(next);
    }
    return cache.emplace(s, std::move(out)).first->second;
}

LinComb2<Symbol, Forest> flipped_ck_on_integrated(const Tree& t) {
    LinComb2<Symbol, Forest> out;
    for (const auto& [key, c] : ck_coproduct(t)) {
        const Forest& trunk = key.second;
        out.add_term({trunk.is_unit() ? kUnit : integrate(phi(trunk.as_tree())), key.first}, c);
    }
    return out;
}

LinComb<Symbol, double> structure_action(const TraceBasis<Forest>& basis, const Eigen::VectorXd& g,
                                         const LinComb<Symbol, double>& x) {
    LinComb<Symbol, double> out;
    for (const auto& [s, c] : x)
        for (const auto& [key, k] : delta_plus(s))
            out.add_term(key.first, c * to_double(k) * g(static_cast<Eigen::Index>(basis.index(key.second))));
    return out;
}

double model_value(const BranchedTrace& x, int i, int j, const LinComb<Symbol, double>& integrated) {
    double out = 0;
    for (const auto& [s, c] : integrated) {
        if (s == kUnit) {
            out += c;
            continue;
        }
        if (s.tag != 0 || !s.forest.is_tree()) throw PreconditionError("model values are read on I(.) symbols, got " + to_text(s));
        out += c * x.coefficient(i, j, s.forest);
    }
    return out;
}

double model_value(const BranchedTrace& x, int i, int j, const SymbolSeries& integrated) {
    LinComb<Symbol, double> y;
    for (const auto& [s, c] : integrated) y.add_term(s, to_double(c));
    return model_value(x, i, j, y);
}

}  // namespace hopfpath
