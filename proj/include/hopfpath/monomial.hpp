#pragma once

#include "hopfpath/word.hpp"

#include <algorithm>
#include <compare>
#include <utility>
#include <vector>

namespace hopfpath {

// A generator carrying the label of the letter/node it will be contracted to.
template <class G>
struct Marked {
    G item;
    Label mark = 0;
    friend bool operator==(const Marked&, const Marked&) = default;
    friend std::strong_ordering operator<=>(const Marked& a, const Marked& b) {
        if (auto c = a.item <=> b.item; c != 0) return c;
        return a.mark <=> b.mark;
    }
};

template <class G>
int grade(const Marked<G>& m) {
    return grade(m.item);
}

// Monomial in the free commutative algebra on generators G (a sorted multiset).
template <class G>
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::vector<G> factors) : factors_(std::move(factors)) {
        std::sort(factors_.begin(), factors_.end());
        for (const auto& f : factors_) grade_ += grade(f);
    }

    const std::vector<G>& factors() const { return factors_; }
    bool is_unit() const { return factors_.empty(); }
    int total_grade() const { return grade_; }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        std::vector<G> all;
        all.reserve(a.factors_.size() + b.factors_.size());
        std::merge(a.factors_.begin(), a.factors_.end(), b.factors_.begin(), b.factors_.end(),
                   std::back_inserter(all));
        Monomial m;
        m.factors_ = std::move(all);
        m.grade_ = a.grade_ + b.grade_;
        return m;
    }
    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
        if (auto c = a.grade_ <=> b.grade_; c != 0) return c;
        if (auto c = a.factors_.size() <=> b.factors_.size(); c != 0) return c;
        for (std::size_t i = 0; i < a.factors_.size(); ++i)
            if (auto c = a.factors_[i] <=> b.factors_[i]; c != 0) return c;
        return std::strong_ordering::equal;
    }

private:
    std::vector<G> factors_;
    int grade_ = 0;
};

}  // namespace hopfpath
