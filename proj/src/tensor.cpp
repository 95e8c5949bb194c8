#include "hopfpath/tensor.hpp"

#include <functional>

namespace hopfpath {

namespace {

void require_dims(const TensorPoly& a, const TensorPoly& b) { TensorPoly::require_same(a, b); }

}  // namespace

WordSeries concat(const WordSeries& a, const WordSeries& b, int depth) {
    WordSeries out;
    for (const auto& [u, cu] : a)
        for (const auto& [w, cw] : b)
            if (grade(u) + grade(w) <= depth) out.add_term(u * w, cu * cw);
    return out;
}

WordSeries shuffle(const Word& a, const Word& b) {
    if (a.empty()) return WordSeries(b);
    if (b.empty()) return WordSeries(a);
    WordSeries out;
    const Word a_head = a.slice(0, a.size() - 1);
    const Word b_head = b.slice(0, b.size() - 1);
    const Word a_last(std::vector<Label>{a[a.size() - 1]});
    const Word b_last(std::vector<Label>{b[b.size() - 1]});
    for (const auto& [w, c] : shuffle(a_head, b)) out.add_term(w * a_last, c);
    for (const auto& [w, c] : shuffle(a, b_head)) out.add_term(w * b_last, c);
    return out;
}

WordSeries shuffle(const WordSeries& a, const WordSeries& b, int depth) {
    WordSeries out;
    for (const auto& [u, cu] : a)
        for (const auto& [w, cw] : b)
            if (grade(u) + grade(w) <= depth) out.add_scaled(shuffle(u, w), cu * cw);
    return out;
}

TensorPoly concat(const TensorPoly& a, const TensorPoly& b) {
    require_dims(a, b);
    return TensorPoly(concat(a.terms(), b.terms(), a.truncation().depth), a.truncation());
}

TensorPoly shuffle(const TensorPoly& a, const TensorPoly& b) {
    require_dims(a, b);
    return TensorPoly(shuffle(a.terms(), b.terms(), a.truncation().depth), a.truncation());
}

WordPairs deconcat_coproduct(const Word& w) {
    WordPairs out;
    for (std::size_t k = 0; k <= w.size(); ++k) out.add_term({w.slice(0, k), w.slice(k, w.size())}, 1);
    return out;
}

WordPairs deconcat_coproduct(const WordSeries& x) {
    WordPairs out;
    for (const auto& [w, c] : x) out.add_scaled(deconcat_coproduct(w), c);
    return out;
}

WordPairs shuffle_coproduct(const Word& w) {
    const std::size_t n = w.size();
    if (n > 20) throw PreconditionError("word too long for unshuffle");
    WordPairs out;
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        std::vector<Label> left, right;
        for (std::size_t i = 0; i < n; ++i) ((mask >> i) & 1 ? left : right).push_back(w[i]);
        out.add_term({Word(std::move(left)), Word(std::move(right))}, 1);
    }
    return out;
}

WordPairs shuffle_coproduct(const WordSeries& x) {
    WordPairs out;
    for (const auto& [w, c] : x) out.add_scaled(shuffle_coproduct(w), c);
    return out;
}

WordSeries tensor_antipode(const WordSeries& x) {
    WordSeries out;
    for (const auto& [w, c] : x) out.add_term(w.reversed(), w.size() % 2 ? Rational(-c) : c);
    return out;
}

TensorPoly tensor_antipode(const TensorPoly& x) {
    return TensorPoly(tensor_antipode(x.terms()), x.truncation());
}

TensorPoly exp_concat(const TensorPoly& x) {
    if (sgn(x.coefficient(Word{})) != 0) throw PreconditionError("exp needs a series without constant term");
    const int depth = x.truncation().depth;
    WordSeries result(Word{}), power(Word{});
    Rational factorial(1);
    for (int k = 1; k <= depth; ++k) {
        power = concat(power, x.terms(), depth);
        factorial *= k;
        result.add_scaled(power, Rational(1) / factorial);
    }
    return TensorPoly(result, x.truncation());
}

TensorPoly log_concat(const TensorPoly& x) {
    if (x.coefficient(Word{}) != 1) throw PreconditionError("log needs a series with constant term 1");
    const int depth = x.truncation().depth;
    WordSeries y = x.terms() - WordSeries(Word{});
    WordSeries result, power(Word{});
    for (int k = 1; k <= depth; ++k) {
        power = concat(power, y, depth);
        result.add_scaled(power, make_rational(k % 2 ? 1 : -1, k));
    }
    return TensorPoly(result, x.truncation());
}

WordPairs truncate_pairs(const WordPairs& x, int depth) {
    return x.filter([depth](const auto& p) { return grade(p.first) + grade(p.second) <= depth; });
}

bool is_grouplike(const TensorPoly& x) {
    if (x.coefficient(Word{}) != 1) return false;
    const int depth = x.truncation().depth;
    return truncate_pairs(shuffle_coproduct(x.terms()), depth) ==
           truncate_pairs(tensor(x.terms(), x.terms()), depth);
}

bool is_primitive(const TensorPoly& x) {
    const WordSeries one(Word{});
    return shuffle_coproduct(x.terms()) == tensor(x.terms(), one) + tensor(one, x.terms()) &&
           sgn(x.coefficient(Word{})) == 0;
}

WordSeries bracket(const WordSeries& a, const WordSeries& b) {
    constexpr int unbounded = 1 << 20;
    return concat(a, b, unbounded) - concat(b, a, unbounded);
}

namespace {

void check_translation(const GeometricTranslation& v, const Truncation& tr) {
    if (v.dim() != tr.dim) throw PreconditionError("translation dimension does not match the tensor space");
    if (v.max_label() > tr.dim) throw PreconditionError("translation uses letters outside the space");
    for (const auto& e : v.entries()) {
        TensorPoly p(e, Truncation{tr.dim, std::max(1, v.max_grade())});
        if (!is_primitive(p)) throw PreconditionError("translation entries must be primitive");
    }
}

}  // namespace

TensorPoly translate_T(const GeometricTranslation& v, const TensorPoly& x) {
    const Truncation tr = x.truncation();
    check_translation(v, tr);
    std::vector<WordSeries> factor(tr.dim + 1);
    for (int i = 0; i <= tr.dim; ++i)
        factor[i] = (WordSeries(Word{i}) + v[i]).filter([&](const Word& w) { return grade(w) <= tr.depth; });
    WordSeries out;
    for (const auto& [w, c] : x.terms()) {
        WordSeries image(Word{});
        for (std::size_t j = 0; j < w.size(); ++j) image = concat(image, factor[w[j]], tr.depth);
        out.add_scaled(image, c);
    }
    return TensorPoly(out, tr);
}

LinComb2<MarkedWordMonomial, Word> extraction_S_general(const Word& w, std::span<const Label> marks) {
    LinComb2<MarkedWordMonomial, Word> out;
    std::vector<Marked<Word>> blocks;
    std::vector<Label> remainder;
    const std::size_t n = w.size();
    std::function<void(std::size_t)> walk = [&](std::size_t p) {
        if (p == n) {
            out.add_term({MarkedWordMonomial(blocks), Word(remainder)}, 1);
            return;
        }
        remainder.push_back(w[p]);
        walk(p + 1);
        remainder.pop_back();
        for (std::size_t q = p + 1; q <= n; ++q) {
            for (Label m : marks) {
                blocks.push_back({w.slice(p, q), m});
                remainder.push_back(m);
                walk(q);
                remainder.pop_back();
                blocks.pop_back();
            }
        }
    };
    walk(0);
    return out;
}

LinComb2<WordMonomial, Word> extraction_S(const Word& w) {
    const Label time = 0;
    LinComb2<WordMonomial, Word> out;
    for (const auto& [key, c] : extraction_S_general(w, std::span<const Label>(&time, 1))) {
        std::vector<Word> factors;
        for (const auto& m : key.first.factors()) factors.push_back(m.item);
        out.add_term({WordMonomial(std::move(factors)), key.second}, c);
    }
    return out;
}

WordSeries dual_translate_T(const GeometricTranslation& v, const WordSeries& y) {
    const std::vector<Label> marks = v.active_labels();
    WordSeries out;
    for (const auto& [w, c] : y) {
        if (w.max_label() > v.dim()) throw PreconditionError("word uses letters outside the translation");
        for (const auto& [key, k] : extraction_S_general(w, marks)) {
            Rational weight = c * k;
            for (const auto& m : key.first.factors()) {
                weight *= v[m.mark].coefficient(m.item);
                if (sgn(weight) == 0) break;
            }
            out.add_term(key.second, weight);
        }
    }
    return out;
}

}  // namespace hopfpath
