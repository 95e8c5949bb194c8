#pragma once

#include "hopfpath/error.hpp"
#include "hopfpath/lincomb.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace hopfpath {

// A linear operator restricted to a finite ordered basis, stored column by column.
template <class Key, class Scalar = Rational>
class LinearMap {
public:
    LinearMap() = default;

    // Tabulates op on every basis element. The image must stay inside the span of the basis.
    template <class Op>
    static LinearMap tabulate(Op&& op, std::vector<Key> basis) {
        LinearMap m;
        m.set_basis(std::move(basis));
        m.columns_.reserve(m.basis_.size());
        for (const auto& k : m.basis_) {
            LinComb<Key, Scalar> image = op(k);
            for (const auto& [y, c] : image)
                if (!m.index_.contains(y))
                    throw PreconditionError("operator image leaves the truncated basis");
            m.columns_.push_back(std::move(image));
        }
        return m;
    }

    const std::vector<Key>& basis() const { return basis_; }
    std::size_t dimension() const { return basis_.size(); }
    const LinComb<Key, Scalar>& column(std::size_t j) const { return columns_[j]; }

    LinComb<Key, Scalar> apply(const LinComb<Key, Scalar>& x) const {
        LinComb<Key, Scalar> out;
        for (const auto& [k, c] : x) {
            auto it = index_.find(k);
            if (it == index_.end()) throw PreconditionError("argument outside the truncated basis");
            out.add_scaled(columns_[it->second], c);
        }
        return out;
    }

    LinearMap transpose() const {
        LinearMap t;
        t.basis_ = basis_;
        t.index_ = index_;
        t.columns_.assign(basis_.size(), {});
        for (std::size_t j = 0; j < columns_.size(); ++j)
            for (const auto& [y, c] : columns_[j]) t.columns_[index_.at(y)].add_term(basis_[j], c);
        return t;
    }

    // Row index = output key, column index = input key, both in basis order.
    Eigen::MatrixXd to_dense() const {
        Eigen::MatrixXd m = Eigen::MatrixXd::Zero(basis_.size(), basis_.size());
        for (std::size_t j = 0; j < columns_.size(); ++j)
            for (const auto& [y, c] : columns_[j]) m(index_.at(y), j) = hopfpath::to_double(c);
        return m;
    }

    friend bool operator==(const LinearMap& a, const LinearMap& b) {
        return a.basis_ == b.basis_ && a.columns_ == b.columns_;
    }

private:
    void set_basis(std::vector<Key> basis) {
        basis_ = std::move(basis);
        index_.clear();
        for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
    }

    std::vector<Key> basis_;
    std::map<Key, std::size_t> index_;
    std::vector<LinComb<Key, Scalar>> columns_;
};

// The operator whose matrix on the truncation is the transpose of op's.
template <class Key, class Scalar = Rational, class Op>
LinearMap<Key, Scalar> transpose_on_truncation(Op&& op, std::vector<Key> basis) {
    return LinearMap<Key, Scalar>::tabulate(std::forward<Op>(op), std::move(basis)).transpose();
}

}  // namespace hopfpath
