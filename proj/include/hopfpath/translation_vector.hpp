#pragma once

#include "hopfpath/error.hpp"
#include "hopfpath/lincomb.hpp"
#include "hopfpath/tree.hpp"
#include "hopfpath/word.hpp"

#include <cstddef>
#include <vector>

namespace hopfpath {

// Translation data (v_0, ..., v_d), one primitive element per direction.
template <class Key>
class TranslationVector {
public:
    explicit TranslationVector(int dim) : entries_(static_cast<std::size_t>(dim) + 1) {
        if (dim < 0) throw PreconditionError("negative dimension");
    }
    TranslationVector(std::vector<LinComb<Key>> entries) : entries_(std::move(entries)) {  // NOLINT
        if (entries_.empty()) throw PreconditionError("translation needs at least v_0");
    }
    static TranslationVector time_only(LinComb<Key> v0, int dim) {
        TranslationVector v(dim);
        v.entries_[0] = std::move(v0);
        return v;
    }

    int dim() const { return static_cast<int>(entries_.size()) - 1; }
    const LinComb<Key>& operator[](std::size_t i) const { return entries_.at(i); }
    LinComb<Key>& operator[](std::size_t i) { return entries_.at(i); }
    const std::vector<LinComb<Key>>& entries() const { return entries_; }

    // Only the time direction is translated.
    bool is_special_form() const {
        for (std::size_t i = 1; i < entries_.size(); ++i)
            if (!entries_[i].is_zero()) return false;
        return true;
    }
    int max_label() const {
        int m = dim();
        for (const auto& e : entries_)
            for (const auto& [k, c] : e) m = std::max(m, k.max_label());
        return m;
    }
    int max_grade() const {
        int m = 0;
        for (const auto& e : entries_)
            for (const auto& [k, c] : e) m = std::max(m, grade(k));
        return m;
    }
    std::vector<Label> active_labels() const {
        std::vector<Label> out;
        for (std::size_t i = 0; i < entries_.size(); ++i)
            if (!entries_[i].is_zero()) out.push_back(static_cast<Label>(i));
        return out;
    }

    friend TranslationVector operator+(const TranslationVector& a, const TranslationVector& b) {
        if (a.dim() != b.dim()) throw PreconditionError("translation dimension mismatch");
        TranslationVector out = a;
        for (std::size_t i = 0; i < out.entries_.size(); ++i) out.entries_[i] += b.entries_[i];
        return out;
    }
    friend bool operator==(const TranslationVector&, const TranslationVector&) = default;

private:
    std::vector<LinComb<Key>> entries_;
};

using GeometricTranslation = TranslationVector<Word>;
using BranchedTranslation = TranslationVector<Forest>;

}  // namespace hopfpath
