#pragma once

#include "hopfpath/error.hpp"
#include "hopfpath/lincomb.hpp"

#include <string>

namespace hopfpath {

// Letters/labels range over 0..dim and keys have grade at most depth.
struct Truncation {
    int dim = 1;
    int depth = 1;
    friend bool operator==(const Truncation&, const Truncation&) = default;
};

template <class Key>
bool fits(const Key& k, const Truncation& tr) {
    return grade(k) <= tr.depth && k.max_label() <= tr.dim;
}

// An element of a truncated graded algebra. All keys respect the truncation.
template <class Key>
class TruncatedPoly {
public:
    TruncatedPoly(Truncation tr) : tr_(tr) { check_truncation(tr); }  // NOLINT
    TruncatedPoly(LinComb<Key> terms, Truncation tr) : terms_(std::move(terms)), tr_(tr) {
        check_truncation(tr);
        for (const auto& [k, c] : terms_)
            if (!fits(k, tr_)) throw PreconditionError("key " + k.code() + " exceeds the truncation");
    }
    // Drops keys of grade above the truncation depth instead of rejecting them.
    static TruncatedPoly truncating(const LinComb<Key>& terms, Truncation tr) {
        return TruncatedPoly(terms.filter([&](const Key& k) { return grade(k) <= tr.depth; }), tr);
    }

    const LinComb<Key>& terms() const { return terms_; }
    const Truncation& truncation() const { return tr_; }
    Rational coefficient(const Key& k) const { return terms_.coefficient(k); }

    friend bool operator==(const TruncatedPoly&, const TruncatedPoly&) = default;
    friend TruncatedPoly operator+(const TruncatedPoly& a, const TruncatedPoly& b) {
        require_same(a, b);
        return TruncatedPoly(a.terms_ + b.terms_, a.tr_);
    }
    friend TruncatedPoly operator-(const TruncatedPoly& a, const TruncatedPoly& b) {
        require_same(a, b);
        return TruncatedPoly(a.terms_ - b.terms_, a.tr_);
    }
    friend TruncatedPoly operator*(const Rational& s, const TruncatedPoly& a) {
        return TruncatedPoly(s * a.terms_, a.tr_);
    }

    static void require_same(const TruncatedPoly& a, const TruncatedPoly& b) {
        if (!(a.tr_ == b.tr_)) throw PreconditionError("truncation mismatch");
    }

private:
    static void check_truncation(const Truncation& tr) {
        if (tr.dim < 0 || tr.depth < 0) throw PreconditionError("negative truncation parameter");
    }
    LinComb<Key> terms_;
    Truncation tr_;
};

}  // namespace hopfpath
