#pragma once

// Independent reference implementations used only by the tests. They are deliberately written
// differently from the library (brute-force enumeration instead of recursion) so that agreement
// is evidence rather than tautology.

#include "hopfpath/lincomb.hpp"
#include "hopfpath/tree.hpp"
#include "hopfpath/word.hpp"

#include <functional>
#include <map>
#include <utility>
#include <vector>

namespace oracle {

using namespace hopfpath;

// Shuffle by choosing which output positions carry the letters of u.
inline LinComb<Word> shuffle_by_positions(const Word& u, const Word& v) {
    const std::size_t n = u.size() + v.size();
    LinComb<Word> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != u.size()) continue;
        std::vector<Label> w;
        std::size_t i = 0, j = 0;
        for (std::size_t p = 0; p < n; ++p) w.push_back(mask >> p & 1 ? u[i++] : v[j++]);
        out.add_term(Word(w), 1);
    }
    return out;
}

struct Flat {
    std::vector<Label> label;
    std::vector<int> parent;
};

inline Flat flat(const Tree& t) {
    Flat f;
    std::function<void(const Tree&, int)> go = [&](const Tree& n, int p) {
        int id = static_cast<int>(f.label.size());
        f.label.push_back(n.label());
        f.parent.push_back(p);
        for (const auto& c : n.children()) go(c, id);
    };
    go(t, -1);
    return f;
}

// Subtree of f rooted at u, keeping only nodes for which keep(node) holds.
inline Tree rebuild(const Flat& f, int u, const std::function<bool(int)>& keep) {
    std::vector<Tree> cs;
    for (int c = 0; c < static_cast<int>(f.label.size()); ++c)
        if (f.parent[c] == u && keep(c)) cs.push_back(rebuild(f, c, keep));
    return Tree(f.label[u], std::move(cs));
}

// Connes-Kreimer coproduct of a tree by enumerating admissible edge cuts.
inline LinComb2<Forest, Forest> ck_by_cuts(const Tree& t) {
    const Flat f = flat(t);
    const int n = static_cast<int>(f.label.size());
    LinComb2<Forest, Forest> out;
    out.add_term({Forest(t), Forest{}}, 1);
    for (unsigned cut = 0; cut < (1u << n); ++cut) {
        if (cut & 1) continue;  // node 0 has no parent edge; bit c means "edge above c is cut"
        bool admissible = true;
        for (int c = 1; c < n && admissible; ++c)
            if (cut >> c & 1)
                for (int a = f.parent[c]; a > 0; a = f.parent[a])
                    if (cut >> a & 1) admissible = false;
        if (!admissible) continue;
        auto below_cut = [&](int u) {
            for (int a = u; a > 0; a = f.parent[a])
                if (cut >> a & 1) return true;
            return false;
        };
        std::vector<Tree> branches;
        for (int c = 1; c < n; ++c)
            if (cut >> c & 1) branches.push_back(rebuild(f, c, [&](int x) { return !(cut >> x & 1); }));
        Tree trunk = rebuild(f, 0, [&](int x) { return !below_cut(x); });
        out.add_term({Forest(std::move(branches)), Forest(trunk)}, 1);
    }
    return out;
}

inline LinComb2<Forest, Forest> ck_by_cuts(const Forest& fo) {
    LinComb2<Forest, Forest> out(std::pair<Forest, Forest>{Forest{}, Forest{}});
    for (const auto& t : fo.trees()) {
        LinComb2<Forest, Forest> next;
        for (const auto& [a, ca] : out)
            for (const auto& [b, cb] : ck_by_cuts(t)) next.add_term({a.first * b.first, a.second * b.second}, ca * cb);
        out = next;
    }
    return out;
}

inline long long forest_symmetry(const Forest& f) {
    long long s = 1;
    const auto& ts = f.trees();
    std::size_t i = 0;
    while (i < ts.size()) {
        std::size_t j = i;
        while (j < ts.size() && ts[j] == ts[i]) ++j;
        for (std::size_t k = 1; k <= j - i; ++k) s *= static_cast<long long>(k) * symmetry_factor(ts[i]);
        i = j;
    }
    return s;
}

// Grossman-Larson product by explicit grafting: each tree of a is either kept beside b or
// attached below one node of b. The basis pairing used by the library rescales by symmetry.
inline LinComb<Forest> gl_by_grafting(const Forest& a, const Forest& b) {
    std::vector<Label> labels;
    std::vector<int> parent;
    std::function<void(const Tree&, int)> go = [&](const Tree& n, int p) {
        int id = static_cast<int>(labels.size());
        labels.push_back(n.label());
        parent.push_back(p);
        for (const auto& c : n.children()) go(c, id);
    };
    for (const auto& t : b.trees()) go(t, -1);
    const int nodes = static_cast<int>(labels.size());
    const auto& grafts = a.trees();
    LinComb<Forest> raw;
    std::vector<int> target(grafts.size(), -1);
    std::function<void(std::size_t)> assign = [&](std::size_t k) {
        if (k == grafts.size()) {
            std::function<Tree(int)> build = [&](int u) {
                std::vector<Tree> cs;
                for (int c = 0; c < nodes; ++c)
                    if (parent[c] == u) cs.push_back(build(c));
                for (std::size_t g = 0; g < grafts.size(); ++g)
                    if (target[g] == u) cs.push_back(grafts[g]);
                return Tree(labels[u], std::move(cs));
            };
            std::vector<Tree> trees;
            for (int r = 0; r < nodes; ++r)
                if (parent[r] < 0) trees.push_back(build(r));
            for (std::size_t g = 0; g < grafts.size(); ++g)
                if (target[g] < 0) trees.push_back(grafts[g]);
            raw.add_term(Forest(std::move(trees)), 1);
            return;
        }
        for (int t = -1; t < nodes; ++t) {
            target[k] = t;
            assign(k + 1);
        }
    };
    assign(0);
    LinComb<Forest> out;
    for (const auto& [h, c] : raw)
        out.add_term(h, c * Rational(static_cast<long>(forest_symmetry(h))) / Rational(static_cast<long>(forest_symmetry(a) * forest_symmetry(b))));
    return out;
}

}  // namespace oracle
