#include "hopfpath/basis.hpp"
#include "hopfpath/error.hpp"
#include "hopfpath/forest_hopf.hpp"
#include "memo.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>

namespace hopfpath {

namespace {

using detail::Memo;

ForestPairs pair_product(const ForestPairs& a, const ForestPairs& b) {
    ForestPairs out;
    for (const auto& [x, cx] : a)
        for (const auto& [y, cy] : b) out.add_term({x.first * y.first, x.second * y.second}, cx * cy);
    return out;
}

const ForestPairs& unit_pair() {
    static const ForestPairs one(std::pair<Forest, Forest>{Forest{}, Forest{}});
    return one;
}

}  // namespace

const ForestPairs& ck_coproduct(const Tree& t) {
    static Memo<ForestPairs> memo;
    return memo.get(t.code(), [&] {
        ForestPairs branches = unit_pair();
        for (const auto& c : t.children()) branches = pair_product(branches, ck_coproduct(c));
        ForestPairs out(std::pair<Forest, Forest>{Forest(t), Forest{}});
        for (const auto& [p, c] : branches)
            out.add_term({p.first, Forest(Tree(t.label(), p.second.trees()))}, c);
        return out;
    });
}

ForestPairs ck_coproduct(const Forest& f) {
    ForestPairs out = unit_pair();
    for (const auto& t : f.trees()) out = pair_product(out, ck_coproduct(t));
    return out;
}

ForestPairs ck_coproduct(const ForestSeries& x) {
    ForestPairs out;
    for (const auto& [f, c] : x) out.add_scaled(ck_coproduct(f), c);
    return out;
}

namespace {

const ForestSeries& ck_antipode_tree(const Tree& t) {
    static Memo<ForestSeries> memo;
    return memo.get(t.code(), [&] {
        ForestSeries out;
        for (const auto& [p, c] : ck_coproduct(t)) {
            if (p.second.is_unit()) continue;
            for (const auto& [s, cs] : ck_antipode(p.first)) out.add_term(s * p.second, -c * cs);
        }
        return out;
    });
}

}  // namespace

ForestSeries ck_antipode(const Forest& f) {
    ForestSeries out{Forest{}};
    for (const auto& t : f.trees()) out = forest_product(out, ck_antipode_tree(t), f.size());
    return out;
}

ForestSeries ck_antipode(const ForestSeries& x) { return apply_linear(x, [](const Forest& f) { return ck_antipode(f); }); }

ForestSeries forest_product(const ForestSeries& a, const ForestSeries& b, int depth) {
    ForestSeries out;
    for (const auto& [x, cx] : a)
        for (const auto& [y, cy] : b)
            if (x.size() + y.size() <= depth) out.add_term(x * y, cx * cy);
    return out;
}

ForestPoly forest_product(const ForestPoly& a, const ForestPoly& b) {
    ForestPoly::require_same(a, b);
    return ForestPoly(forest_product(a.terms(), b.terms(), a.truncation().depth), a.truncation());
}

namespace {

using ProductIndex = std::map<std::pair<Forest, Forest>, ForestSeries>;

// For all forests h of the given grade over labels 0..dim, records <h, ck_coproduct(h)> against
// every pair of nontrivial legs. Reading off an entry is the adjoint of the coproduct.
const ProductIndex& product_index(int dim, int grade) {
    static std::shared_mutex mutex;
    static std::map<std::pair<int, int>, ProductIndex> cache;
    {
        std::shared_lock lock(mutex);
        if (auto it = cache.find({dim, grade}); it != cache.end()) return it->second;
    }
    ProductIndex index;
    for (const auto& h : forests_of_size(dim, grade))
        for (const auto& [p, c] : ck_coproduct(h))
            if (!p.first.is_unit() && !p.second.is_unit()) index[p].add_term(h, c);
    std::unique_lock lock(mutex);
    return cache.try_emplace({dim, grade}, std::move(index)).first->second;
}

}  // namespace

const ForestSeries& gl_product(const Forest& a, const Forest& b) {
    static Memo<ForestSeries> units;
    if (a.is_unit() || b.is_unit()) {
        const Forest& other = a.is_unit() ? b : a;
        return units.get(other.code(), [&] { return ForestSeries(other); });
    }
    static const ForestSeries zero;
    const auto& index = product_index(std::max(a.max_label(), b.max_label()), a.size() + b.size());
    auto it = index.find({a, b});
    return it == index.end() ? zero : it->second;
}

ForestSeries gl_product(const ForestSeries& a, const ForestSeries& b, int depth) {
    ForestSeries out;
    for (const auto& [x, cx] : a)
        for (const auto& [y, cy] : b)
            if (x.size() + y.size() <= depth) out.add_scaled(gl_product(x, y), cx * cy);
    return out;
}

ForestPoly gl_product(const ForestPoly& a, const ForestPoly& b) {
    ForestPoly::require_same(a, b);
    return ForestPoly(gl_product(a.terms(), b.terms(), a.truncation().depth), a.truncation());
}

ForestPairs gl_coproduct(const Forest& f) {
    // Group equal trees, then choose how many copies of each go left.
    std::vector<std::pair<Tree, int>> groups;
    for (const auto& t : f.trees()) {
        if (!groups.empty() && groups.back().first == t)
            ++groups.back().second;
        else
            groups.emplace_back(t, 1);
    }
    ForestPairs out;
    std::vector<int> take(groups.size(), 0);
    while (true) {
        std::vector<Tree> left, right;
        for (std::size_t g = 0; g < groups.size(); ++g) {
            for (int k = 0; k < take[g]; ++k) left.push_back(groups[g].first);
            for (int k = take[g]; k < groups[g].second; ++k) right.push_back(groups[g].first);
        }
        out.add_term({Forest(std::move(left)), Forest(std::move(right))}, 1);
        std::size_t g = 0;
        while (g < groups.size() && take[g] == groups[g].second) take[g++] = 0;
        if (g == groups.size()) break;
        ++take[g];
    }
    return out;
}

ForestPairs gl_coproduct(const ForestSeries& x) {
    ForestPairs out;
    for (const auto& [f, c] : x) out.add_scaled(gl_coproduct(f), c);
    return out;
}

ForestPairs truncate_pairs(const ForestPairs& x, int depth) {
    return x.filter([depth](const auto& p) { return p.first.size() + p.second.size() <= depth; });
}

namespace {

const ForestSeries& gl_antipode_basis(const Forest& f) {
    static Memo<ForestSeries> memo;
    return memo.get(f.code(), [&] {
        if (f.is_unit()) return ForestSeries(f);
        ForestSeries out;
        for (const auto& [p, c] : gl_coproduct(f)) {
            if (p.first == f) continue;
            for (const auto& [a, ca] : gl_antipode_basis(p.first)) out.add_scaled(gl_product(a, p.second), -c * ca);
        }
        return out;
    });
}

}  // namespace

ForestSeries gl_antipode(const ForestSeries& x, int depth) {
    ForestSeries out;
    for (const auto& [f, c] : x)
        if (f.size() <= depth) out.add_scaled(gl_antipode_basis(f), c);
    return out;
}

ForestPoly gl_antipode(const ForestPoly& x) {
    return ForestPoly(gl_antipode(x.terms(), x.truncation().depth), x.truncation());
}

ForestPoly exp_star(const ForestPoly& x) {
    if (sgn(x.coefficient(Forest{})) != 0) throw PreconditionError("exp needs a series without constant term");
    const int depth = x.truncation().depth;
    ForestSeries result{Forest{}}, power{Forest{}};
    Rational factorial(1);
    for (int k = 1; k <= depth; ++k) {
        power = gl_product(power, x.terms(), depth);
        factorial *= k;
        result.add_scaled(power, Rational(1) / factorial);
    }
    return ForestPoly(result, x.truncation());
}

ForestPoly log_star(const ForestPoly& x) {
    if (x.coefficient(Forest{}) != 1) throw PreconditionError("log needs a series with constant term 1");
    const int depth = x.truncation().depth;
    ForestSeries y = x.terms() - ForestSeries(Forest{});
    ForestSeries result, power{Forest{}};
    for (int k = 1; k <= depth; ++k) {
        power = gl_product(power, y, depth);
        result.add_scaled(power, make_rational(k % 2 ? 1 : -1, k));
    }
    return ForestPoly(result, x.truncation());
}

bool is_grouplike_star(const ForestPoly& x) {
    if (x.coefficient(Forest{}) != 1) return false;
    const int depth = x.truncation().depth;
    return truncate_pairs(gl_coproduct(x.terms()), depth) == truncate_pairs(tensor(x.terms(), x.terms()), depth);
}

bool is_primitive_star(const ForestPoly& x) {
    for (const auto& [f, c] : x.terms())
        if (!f.is_tree()) return false;
    return true;
}

ForestSeries graft_by_attachment(const Tree& s, const Tree& t) {
    ForestSeries out;
    std::vector<Tree> children = t.children();
    children.push_back(s);
    out.add_term(Forest(Tree(t.label(), children)), 1);
    children.pop_back();
    for (std::size_t j = 0; j < children.size(); ++j) {
        const Tree original = children[j];
        for (const auto& [r, c] : graft_by_attachment(s, original)) {
            children[j] = r.as_tree();
            out.add_term(Forest(Tree(t.label(), children)), c);
        }
        children[j] = original;
    }
    return out;
}

ForestSeries graft(const Tree& s, const Tree& t) {
    // Attachments counted once each; the cut count differs by sigma(result) / (sigma(s) sigma(t)).
    const Rational base = make_rational(1, static_cast<long>(symmetry_factor(s) * symmetry_factor(t)));
    ForestSeries out;
    for (const auto& [r, c] : graft_by_attachment(s, t))
        out.add_term(r, c * base * Rational(static_cast<long>(symmetry_factor(r.as_tree()))));
    return out;
}

ForestSeries graft(const ForestSeries& s, const ForestSeries& t, int depth) {
    ForestSeries out;
    for (const auto& [a, ca] : s)
        for (const auto& [b, cb] : t)
            if (a.size() + b.size() <= depth) out.add_scaled(graft(a.as_tree(), b.as_tree()), ca * cb);
    return out;
}

ForestPairs graft_adjoint(const Tree& t) {
    ForestPairs out;
    std::vector<Tree> children = t.children();
    for (std::size_t j = 0; j < children.size(); ++j) {
        const Tree original = children[j];
        std::vector<Tree> others = children;
        others.erase(others.begin() + static_cast<long>(j));
        out.add_term({Forest(original), Forest(Tree(t.label(), others))}, 1);
        for (const auto& [p, c] : graft_adjoint(original)) {
            children[j] = p.second.as_tree();
            out.add_term({p.first, Forest(Tree(t.label(), children))}, c);
        }
        children[j] = original;
    }
    return out;
}

ForestSeries embed_iota(const Word& w, int depth) {
    ForestSeries out{Forest{}};
    if (static_cast<int>(w.size()) > depth) return {};
    for (std::size_t j = 0; j < w.size(); ++j) out = gl_product(out, ForestSeries(Forest(leaf(w[j]))), depth);
    return out;
}

ForestPoly embed_iota(const TensorPoly& x) {
    const int depth = x.truncation().depth;
    ForestSeries out;
    for (const auto& [w, c] : x.terms()) out.add_scaled(embed_iota(w, depth), c);
    return ForestPoly(out, x.truncation());
}

ForestSeries project_trees(const ForestSeries& x) {
    return x.filter([](const Forest& f) { return f.is_tree(); });
}

ForestSeries project_linear(const ForestSeries& x) {
    return x.filter([](const Forest& f) { return f.is_tree() && f.as_tree().is_linear(); });
}

}  // namespace hopfpath
