#pragma once

#include "hopfpath/rational.hpp"

#include <cmath>
#include <cstddef>
#include <map>
#include <utility>

namespace hopfpath {

template <class S>
struct ScalarTraits {
    static bool is_zero(const S& s) { return s == S(0); }
    static void normalize(S&) {}
};

template <>
struct ScalarTraits<Rational> {
    static bool is_zero(const Rational& q) { return sgn(q) == 0; }
    static void normalize(Rational& q) { q.canonicalize(); }
};

// Finite linear combination over an ordered basis. Keys with zero coefficient are never stored,
// so equality of two combinations is equality of the underlying maps.
template <class Key, class Scalar = Rational>
class LinComb {
public:
    using key_type = Key;
    using scalar_type = Scalar;
    using container_type = std::map<Key, Scalar>;
    using const_iterator = typename container_type::const_iterator;

    LinComb() = default;
    explicit LinComb(Key key, Scalar coeff = Scalar(1)) { add_term(key, coeff); }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const_iterator begin() const { return terms_.begin(); }
    const_iterator end() const { return terms_.end(); }
    const container_type& terms() const { return terms_; }

    Scalar coefficient(const Key& key) const {
        auto it = terms_.find(key);
        return it == terms_.end() ? Scalar(0) : it->second;
    }

    void add_term(const Key& key, const Scalar& coeff) {
        if (ScalarTraits<Scalar>::is_zero(coeff)) return;
        auto [it, inserted] = terms_.try_emplace(key, coeff);
        if (inserted) {
            ScalarTraits<Scalar>::normalize(it->second);
        } else {
            it->second += coeff;
            if (ScalarTraits<Scalar>::is_zero(it->second)) terms_.erase(it);
        }
    }

    LinComb& operator+=(const LinComb& other) {
        for (const auto& [k, c] : other.terms_) add_term(k, c);
        return *this;
    }
    LinComb& operator-=(const LinComb& other) {
        for (const auto& [k, c] : other.terms_) add_term(k, -c);
        return *this;
    }
    LinComb& operator*=(const Scalar& s) {
        if (ScalarTraits<Scalar>::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& [k, c] : terms_) c *= s;
        return *this;
    }

    // Adds coeff * other.
    void add_scaled(const LinComb& other, const Scalar& coeff) {
        if (ScalarTraits<Scalar>::is_zero(coeff)) return;
        for (const auto& [k, c] : other.terms_) add_term(k, coeff * c);
    }

    template <class Pred>
    LinComb filter(Pred pred) const {
        LinComb out;
        for (const auto& [k, c] : terms_)
            if (pred(k)) out.terms_.emplace_hint(out.terms_.end(), k, c);
        return out;
    }

    friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
    friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
    friend LinComb operator-(LinComb a) { return a *= Scalar(-1); }
    friend LinComb operator*(const Scalar& s, LinComb a) { return a *= s; }
    friend LinComb operator*(LinComb a, const Scalar& s) { return a *= s; }
    friend bool operator==(const LinComb& a, const LinComb& b) { return a.terms_ == b.terms_; }

private:
    container_type terms_;
};

template <class K1, class K2, class S = Rational>
using LinComb2 = LinComb<std::pair<K1, K2>, S>;

// Linear extension of f : Key -> LinComb<Out>.
template <class Key, class S, class F>
auto apply_linear(const LinComb<Key, S>& x, F&& f) -> decltype(f(std::declval<const Key&>())) {
    decltype(f(std::declval<const Key&>())) out;
    for (const auto& [k, c] : x) out.add_scaled(f(k), c);
    return out;
}

// Bilinear extension of f : (K1, K2) -> LinComb<Out>.
template <class K1, class K2, class S, class F>
auto bilinear_extend(const LinComb<K1, S>& a, const LinComb<K2, S>& b, F&& f)
    -> decltype(f(std::declval<const K1&>(), std::declval<const K2&>())) {
    decltype(f(std::declval<const K1&>(), std::declval<const K2&>())) out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) out.add_scaled(f(ka, kb), ca * cb);
    return out;
}

template <class K1, class K2, class S>
LinComb2<K1, K2, S> tensor(const LinComb<K1, S>& a, const LinComb<K2, S>& b) {
    LinComb2<K1, K2, S> out;
    for (const auto& [ka, ca] : a)
        for (const auto& [kb, cb] : b) out.add_term({ka, kb}, ca * cb);
    return out;
}

// Basis-delta pairing.
template <class Key, class S>
S pairing(const LinComb<Key, S>& a, const LinComb<Key, S>& b) {
    S out(0);
    const auto& small = a.size() <= b.size() ? a : b;
    const auto& large = a.size() <= b.size() ? b : a;
    for (const auto& [k, c] : small) out += c * large.coefficient(k);
    return out;
}

// Apply f to each leg of a two-fold tensor.
template <class K1, class K2, class S, class F, class G>
auto tensor_apply(const LinComb2<K1, K2, S>& x, F&& f, G&& g) {
    using L = decltype(f(std::declval<const K1&>()));
    using R = decltype(g(std::declval<const K2&>()));
    LinComb2<typename L::key_type, typename R::key_type, S> out;
    for (const auto& [kk, c] : x) {
        auto left = f(kk.first);
        auto right = g(kk.second);
        for (const auto& [a, ca] : left)
            for (const auto& [b, cb] : right) out.add_term({a, b}, c * ca * cb);
    }
    return out;
}

template <class Key, class S>
LinComb<Key, double> to_double(const LinComb<Key, S>& x) {
    LinComb<Key, double> out;
    for (const auto& [k, c] : x) out.add_term(k, hopfpath::to_double(c));
    return out;
}

}  // namespace hopfpath
