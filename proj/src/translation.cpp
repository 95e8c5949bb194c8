#include "hopfpath/basis.hpp"
#include "hopfpath/translation.hpp"
#include "memo.hpp"

#include <functional>
#include <numeric>

namespace hopfpath {

namespace {

using MarkedPairs = LinComb2<MarkedTreeMonomial, Forest>;

struct FlatTree {
    std::vector<Label> label;
    std::vector<int> parent;
    std::vector<std::vector<int>> children;
};

FlatTree flatten(const Tree& t) {
    FlatTree f;
    std::function<void(const Tree&, int)> visit = [&](const Tree& node, int parent) {
        const int id = static_cast<int>(f.label.size());
        f.label.push_back(node.label());
        f.parent.push_back(parent);
        f.children.emplace_back();
        if (parent >= 0) f.children[parent].push_back(id);
        for (const auto& c : node.children()) visit(c, id);
    };
    visit(t, -1);
    return f;
}

int find_root(std::vector<int>& uf, int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
}

MarkedPairs delta_tree(const Tree& t, std::span<const Label> marks) {
    const FlatTree ft = flatten(t);
    const int n = static_cast<int>(ft.label.size());
    if (n > 20) throw PreconditionError("tree too large for extraction");
    MarkedPairs out;
    std::vector<int> comp(n), uf(n);
    for (unsigned selected = 0; selected < (1u << n); ++selected) {
        std::vector<int> inner;  // nodes whose edge to the parent lies inside the selection
        for (int c = 1; c < n; ++c)
            if ((selected >> c & 1) && (selected >> ft.parent[c] & 1)) inner.push_back(c);
        for (unsigned kept = 0; kept < (1u << inner.size()); ++kept) {
            std::iota(uf.begin(), uf.end(), 0);
            for (std::size_t e = 0; e < inner.size(); ++e)
                if (kept >> e & 1) uf[find_root(uf, inner[e])] = find_root(uf, ft.parent[inner[e]]);
            // Component ids are indexed by their top node.
            std::vector<int> root_of(n, -1), tops;
            for (int u = 0; u < n; ++u)
                if (selected >> u & 1) root_of[u] = find_root(uf, u);
            for (int u = 0; u < n; ++u) {
                comp[u] = -1;
                if (root_of[u] < 0) continue;
                int top = u;
                while (top != 0 && root_of[ft.parent[top]] == root_of[u]) top = ft.parent[top];
                comp[u] = top;
                if (top == u) tops.push_back(u);
            }
            if (marks.empty() && !tops.empty()) continue;

            std::function<Tree(int)> extracted = [&](int u) {
                std::vector<Tree> cs;
                for (int c : ft.children[u])
                    if (comp[c] == comp[u]) cs.push_back(extracted(c));
                return Tree(ft.label[u], std::move(cs));
            };
            std::vector<Tree> pieces;
            for (int top : tops) pieces.push_back(extracted(top));

            std::vector<Label> mark_of(n, 0);
            std::function<Tree(int)> contracted = [&](int u) {
                std::vector<Tree> cs;
                if (comp[u] < 0) {
                    for (int c : ft.children[u]) cs.push_back(contracted(c));
                    return Tree(ft.label[u], std::move(cs));
                }
                for (int w = 0; w < n; ++w)
                    if (comp[w] == u)
                        for (int c : ft.children[w])
                            if (comp[c] != u) cs.push_back(contracted(c));
                return Tree(mark_of[u], std::move(cs));
            };

            // Every assignment of marks to the extracted pieces.
            std::vector<std::size_t> choice(tops.size(), 0);
            while (true) {
                std::vector<Marked<Tree>> factors;
                for (std::size_t k = 0; k < tops.size(); ++k) {
                    mark_of[tops[k]] = marks[choice[k]];
                    factors.push_back({pieces[k], marks[choice[k]]});
                }
                out.add_term({MarkedTreeMonomial(std::move(factors)), Forest(contracted(0))}, 1);
                std::size_t k = 0;
                while (k < choice.size() && choice[k] + 1 == marks.size()) choice[k++] = 0;
                if (k == choice.size()) break;
                ++choice[k];
            }
        }
    }
    return out;
}

MarkedPairs marked_product(const MarkedPairs& a, const MarkedPairs& b) {
    MarkedPairs out;
    for (const auto& [x, cx] : a)
        for (const auto& [y, cy] : b) out.add_term({x.first * y.first, x.second * y.second}, cx * cy);
    return out;
}

std::string marks_key(std::span<const Label> marks) {
    std::string s = "|";
    for (Label m : marks) s += std::to_string(m) + ",";
    return s;
}

}  // namespace

LinComb2<MarkedTreeMonomial, Forest> delta_general(const Forest& f, std::span<const Label> marks) {
    static detail::Memo<MarkedPairs> memo;
    MarkedPairs out(std::pair<MarkedTreeMonomial, Forest>{MarkedTreeMonomial{}, Forest{}});
    if (marks.empty()) return MarkedPairs(std::pair<MarkedTreeMonomial, Forest>{MarkedTreeMonomial{}, f});
    const std::string mk = marks_key(marks);
    for (const auto& t : f.trees())
        out = marked_product(out, memo.get(t.code() + mk, [&] { return delta_tree(t, marks); }));
    return out;
}

LinComb2<TreeMonomial, Forest> delta(const Forest& f) {
    const Label time = 0;
    LinComb2<TreeMonomial, Forest> out;
    for (const auto& [key, c] : delta_general(f, std::span<const Label>(&time, 1))) {
        std::vector<Tree> factors;
        for (const auto& m : key.first.factors()) factors.push_back(m.item);
        out.add_term({TreeMonomial(std::move(factors)), key.second}, c);
    }
    return out;
}

ForestSeries dual_translate_M(const BranchedTranslation& v, const ForestSeries& y) {
    const std::vector<Label> marks = v.active_labels();
    ForestSeries out;
    for (const auto& [f, c] : y) {
        if (f.max_label() > v.dim()) throw PreconditionError("forest uses labels outside the translation");
        for (const auto& [key, k] : delta_general(f, marks)) {
            Rational weight = c * k;
            for (const auto& m : key.first.factors()) {
                weight *= v[m.mark].coefficient(Forest(m.item));
                if (sgn(weight) == 0) break;
            }
            out.add_term(key.second, weight);
        }
    }
    return out;
}

namespace {

void check_translation(const BranchedTranslation& v, const Truncation& tr) {
    if (v.dim() != tr.dim) throw PreconditionError("translation dimension does not match the forest space");
    if (v.max_label() > tr.dim) throw PreconditionError("translation uses labels outside the space");
    for (const auto& e : v.entries())
        for (const auto& [f, c] : e)
            if (!f.is_tree()) throw PreconditionError("translation entries must be tree series");
}

class PreLieTranslator {
public:
    PreLieTranslator(const BranchedTranslation& v, int depth) : v_(v), depth_(depth) {}

    // The recursion below is the magmatic identity for grafting by attachment,
    //   first -> [rest] = [first rest] + sum_j [.. (first -> rest_j) ..],
    // applied to the conjugate of M by the rescaling tree -> sigma(tree) tree.
    ForestSeries of_tree(const Tree& t) {
        const ForestSeries conj = conjugate(t);
        ForestSeries out;
        for (const auto& [f, c] : conj)
            out.add_term(f, c * Rational(static_cast<long>(symmetry_factor(f.as_tree()))) /
                                Rational(static_cast<long>(symmetry_factor(t))));
        return out;
    }

    ForestSeries of_forest(const Forest& f) {
        if (f.size() > depth_) return {};
        if (f.is_unit()) return ForestSeries(f);
        if (f.is_tree()) return of_tree(f.as_tree());
        if (auto it = forests_.find(f); it != forests_.end()) return it->second;
        // first * rest = m (first rest) + (forests with one tree fewer)
        const Forest first(f.trees().front());
        const Forest rest(std::vector<Tree>(f.trees().begin() + 1, f.trees().end()));
        ForestSeries product = gl_product(first, rest);
        const Rational m = product.coefficient(f);
        product.add_term(f, -m);
        ForestSeries out = gl_product(of_tree(first.as_tree()), of_forest(rest), depth_);
        for (const auto& [h, c] : product) out.add_scaled(of_forest(h), -c);
        out *= Rational(1) / m;
        forests_.emplace(f, out);
        return out;
    }

private:
    static ForestSeries attach(const ForestSeries& a, const ForestSeries& b, int depth) {
        ForestSeries out;
        for (const auto& [x, cx] : a)
            for (const auto& [y, cy] : b)
                if (x.size() + y.size() <= depth) out.add_scaled(graft_by_attachment(x.as_tree(), y.as_tree()), cx * cy);
        return out;
    }

    ForestSeries conjugate(const Tree& t) {
        if (t.size() > depth_) return {};
        if (auto it = trees_.find(t); it != trees_.end()) return it->second;
        ForestSeries out(Forest{t});
        if (t.children().empty()) {
            for (const auto& [f, c] : v_[t.label()])
                if (f.size() <= depth_) out.add_term(f, c / Rational(static_cast<long>(symmetry_factor(f.as_tree()))));
        } else {
            const auto& cs = t.children();
            const Tree& first = cs.front();
            std::vector<Tree> rest(cs.begin() + 1, cs.end());
            out = attach(conjugate(first), conjugate(Tree(t.label(), rest)), depth_);
            for (std::size_t j = 0; j < rest.size(); ++j) {
                const Tree original = rest[j];
                for (const auto& [r, c] : graft_by_attachment(first, original)) {
                    rest[j] = r.as_tree();
                    out.add_scaled(conjugate(Tree(t.label(), rest)), -c);
                }
                rest[j] = original;
            }
        }
        trees_.emplace(t, out);
        return out;
    }

    const BranchedTranslation& v_;
    int depth_;
    std::map<Tree, ForestSeries> trees_;
    std::map<Forest, ForestSeries> forests_;
};

}  // namespace

ForestPoly translate_M_prelie(const BranchedTranslation& v, const ForestPoly& x) {
    check_translation(v, x.truncation());
    PreLieTranslator m(v, x.truncation().depth);
    ForestSeries out;
    for (const auto& [f, c] : x.terms()) out.add_scaled(m.of_forest(f), c);
    return ForestPoly(out, x.truncation());
}

LinearMap<Forest> translation_matrix(const BranchedTranslation& v, Truncation tr, bool verify) {
    check_translation(v, tr);
    auto map = transpose_on_truncation<Forest>([&](const Forest& y) { return dual_translate_M(v, ForestSeries(y)); },
                                               forests_up_to(tr.dim, tr.depth));
    if (verify) {
        PreLieTranslator prelie(v, tr.depth);
        for (std::size_t j = 0; j < map.dimension(); ++j)
            if (!(map.column(j) == prelie.of_forest(map.basis()[j])))
                throw InternalError("translation routes disagree on " + map.basis()[j].code());
    }
    return map;
}

ForestPoly translate_M_dual(const BranchedTranslation& v, const ForestPoly& x) {
    return ForestPoly(translation_matrix(v, x.truncation(), false).apply(x.terms()), x.truncation());
}

ForestPoly translate_M(const BranchedTranslation& v, const ForestPoly& x) {
    ForestPoly dual = translate_M_dual(v, x);
    ForestPoly prelie = translate_M_prelie(v, x);
    if (!(dual == prelie)) throw InternalError("translation routes disagree");
    return dual;
}

BranchedTranslation ito_strat_translation(int dim) {
    ForestSeries v0;
    for (int i = 1; i <= dim; ++i) {
        const Label l = static_cast<Label>(i);
        v0.add_term(Forest(Tree(l, {leaf(l)})), make_rational(1, 2));
    }
    return BranchedTranslation::time_only(v0, dim);
}

ForestSeries ito_strat_direct(const Tree& t, int dim) {
    ForestSeries out;
    const auto keep = [dim](const Tree& s) {
        return s.size() == 2 && s.label() >= 1 && s.label() <= dim && s.children().front().label() == s.label();
    };
    for (const auto& [key, c] : delta_restricted(Forest(t), keep)) {
        Rational weight = c;
        for (std::size_t k = 0; k < key.first.factors().size(); ++k) weight /= 2;
        out.add_term(key.second, weight);
    }
    return out;
}

ForestSeries ito_strat_convert(const Tree& t, int dim) {
    if (t.max_label() > dim) throw PreconditionError("tree uses labels outside 0..dim");
    ForestSeries via_dual = dual_translate_M(ito_strat_translation(dim), ForestSeries(Forest(t)));
    ForestSeries direct = ito_strat_direct(t, dim);
    if (!(via_dual == direct)) throw InternalError("Ito-Stratonovich routes disagree on " + t.code());
    return via_dual;
}

LinComb<TripleKey> cut_after_delta(const Tree& t) {
    LinComb<TripleKey> out;
    for (const auto& [key, c] : delta(Forest(t)))
        for (const auto& [cut, k] : graft_adjoint(key.second.as_tree()))
            out.add_term({key.first, cut.first, cut.second}, c * k);
    return out;
}

LinComb<TripleKey> delta_after_cut(const Tree& t) {
    LinComb<TripleKey> out;
    for (const auto& [cut, k] : graft_adjoint(t))
        for (const auto& [b, cb] : delta(cut.first))
            for (const auto& [r, cr] : delta(cut.second))
                out.add_term({b.first * r.first, b.second, r.second}, k * cb * cr);
    return out;
}

ForestPoly translate_levy_generator(const BranchedTranslation& v, const LevyTriplet& gen, Truncation tr) {
    const std::size_t n = gen.basis.size();
    if (gen.A.size() != n) throw PreconditionError("diffusion matrix size does not match the tree basis");
    for (std::size_t i = 0; i < n; ++i) {
        if (gen.A[i].size() != n) throw PreconditionError("diffusion matrix is not square");
        for (std::size_t j = 0; j < n; ++j)
            if (gen.A[i][j] != gen.A[j][i]) throw PreconditionError("diffusion matrix is not symmetric");
        const Tree& t = gen.basis[i];
        if (sgn(gen.A[i][i]) != 0 && (2 * t.size() > tr.depth || t.count_label(0) > 0))
            throw PreconditionError("diffusion on " + t.code() + " is not admissible");
    }
    for (const auto& [f, c] : gen.B)
        if (!f.is_tree()) throw PreconditionError("drift must be a tree series");
    std::vector<ForestSeries> image(n);
    for (std::size_t i = 0; i < n; ++i)
        image[i] = translate_M(v, ForestPoly(ForestSeries(Forest(gen.basis[i])), tr)).terms();
    ForestSeries out = translate_M(v, ForestPoly(gen.B, tr)).terms();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (sgn(gen.A[i][j]) != 0) out.add_scaled(gl_product(image[i], image[j], tr.depth), gen.A[i][j] / 2);
    return ForestPoly(out, tr);
}

}  // namespace hopfpath
