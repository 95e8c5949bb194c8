#include "hopfpath/polynomial.hpp"

#include "hopfpath/error.hpp"
#include "hopfpath/syntax.hpp"

#include <cmath>
#include <numeric>

namespace hopfpath {

Polynomial Polynomial::constant(int arity, const Rational& c) {
    Polynomial p(arity);
    p.add_term(Exponents(static_cast<std::size_t>(arity), 0), c);
    return p;
}

Polynomial Polynomial::variable(int arity, int k) {
    if (k < 0 || k >= arity) throw PreconditionError("variable index out of range");
    Exponents e(static_cast<std::size_t>(arity), 0);
    e[static_cast<std::size_t>(k)] = 1;
    Polynomial p(arity);
    p.add_term(e, 1);
    return p;
}

int Polynomial::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
    if (static_cast<int>(e.size()) != arity_) throw PreconditionError("monomial arity mismatch");
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (inserted) {
        it->second.canonicalize();
    } else {
        it->second += c;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::derivative(int k) const {
    Polynomial out(arity_);
    for (const auto& [e, c] : terms_) {
        const int n = e[static_cast<std::size_t>(k)];
        if (n == 0) continue;
        Exponents lowered = e;
        --lowered[static_cast<std::size_t>(k)];
        out.add_term(lowered, c * n);
    }
    return out;
}

double Polynomial::evaluate(const Eigen::VectorXd& y) const {
    double sum = 0;
    for (const auto& [e, c] : terms_) {
        double term = to_double(c);
        for (int k = 0; k < arity_; ++k) term *= std::pow(y(k), e[static_cast<std::size_t>(k)]);
        sum += term;
    }
    return sum;
}

Rational Polynomial::evaluate(const std::vector<Rational>& y) const {
    Rational sum(0);
    for (const auto& [e, c] : terms_) {
        Rational term = c;
        for (int k = 0; k < arity_; ++k)
            for (int n = 0; n < e[static_cast<std::size_t>(k)]; ++n) term *= y[static_cast<std::size_t>(k)];
        sum += term;
    }
    return sum;
}

void Polynomial::require_arity(const Polynomial& other) const {
    if (arity_ != other.arity_) throw PreconditionError("polynomial arity mismatch");
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
    require_arity(other);
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
    require_arity(other);
    for (const auto& [e, c] : other.terms_) add_term(e, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.require_arity(b);
    Polynomial out(a.arity_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            Polynomial::Exponents e(ea.size());
            for (std::size_t k = 0; k < e.size(); ++k) e[k] = ea[k] + eb[k];
            out.add_term(e, ca * cb);
        }
    return out;
}

Polynomial operator*(const Rational& s, const Polynomial& a) {
    Polynomial out(a.arity_);
    for (const auto& [e, c] : a.terms_) out.add_term(e, s * c);
    return out;
}

Polynomial parse_polynomial(std::string_view text, int arity) {
    Cursor c(text);
    const Polynomial::Exponents unit(static_cast<std::size_t>(arity), 0);
    const auto monomial = [&](Cursor& cur) {
        Polynomial::Exponents e = unit;
        do {
            cur.skip_space();
            if (!cur.consume("y")) cur.fail("expected a variable y1..y" + std::to_string(arity));
            const int k = cur.integer();
            if (k < 1 || k > arity) cur.fail("variable index out of range");
            int power = 1;
            if (cur.consume("^")) power = cur.integer();
            e[static_cast<std::size_t>(k - 1)] += power;
        } while (cur.consume("*"));
        return e;
    };
    const auto series = parse_series<Polynomial::Exponents>(c, monomial, unit);
    if (!c.at_end()) c.fail("unexpected trailing input");
    Polynomial p(arity);
    for (const auto& [e, coeff] : series) p.add_term(e, coeff);
    return p;
}

std::string to_text(const Polynomial& p) {
    if (p.is_zero()) return "0";
    std::string out;
    // Highest degree first reads naturally.
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        std::string mono;
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "y" + std::to_string(k + 1);
            if (e[k] > 1) mono += "^" + std::to_string(e[k]);
        }
        const Rational magnitude = abs(c);
        std::string term;
        if (mono.empty())
            term = magnitude.get_str();
        else if (magnitude == 1)
            term = mono;
        else
            term = magnitude.get_str() + "*" + mono;
        if (out.empty())
            out = sgn(c) < 0 ? "-" + term : term;
        else
            out += (sgn(c) < 0 ? " - " : " + ") + term;
    }
    return out;
}

PolyVector operator+(const PolyVector& a, const PolyVector& b) {
    if (a.size() != b.size()) throw PreconditionError("vector field dimension mismatch");
    PolyVector out = a;
    for (std::size_t k = 0; k < a.size(); ++k) out[k] += b[k];
    return out;
}

PolyVector operator*(const Rational& s, const PolyVector& a) {
    PolyVector out;
    for (const auto& p : a) out.push_back(s * p);
    return out;
}

Eigen::VectorXd evaluate(const PolyVector& p, const Eigen::VectorXd& y) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(p.size()));
    for (std::size_t k = 0; k < p.size(); ++k) out(static_cast<Eigen::Index>(k)) = p[k].evaluate(y);
    return out;
}

PolyVector directional_derivative(const PolyVector& p, const PolyVector& g) {
    PolyVector out;
    for (const auto& component : p) {
        Polynomial sum(component.arity());
        for (std::size_t k = 0; k < g.size(); ++k) sum += g[k] * component.derivative(static_cast<int>(k));
        out.push_back(sum);
    }
    return out;
}

CompiledPolyVector::CompiledPolyVector(const PolyVector& p) : rows_(p.size()) {
    for (std::size_t r = 0; r < p.size(); ++r)
        for (const auto& [e, c] : p[r].terms()) terms_.push_back({r, to_double(c), e});
}

Eigen::VectorXd CompiledPolyVector::operator()(const Eigen::VectorXd& y) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rows_));
    for (const auto& t : terms_) {
        double value = t.coeff;
        for (std::size_t k = 0; k < t.exponents.size(); ++k)
            for (int n = 0; n < t.exponents[k]; ++n) value *= y(static_cast<Eigen::Index>(k));
        out(static_cast<Eigen::Index>(t.component)) += value;
    }
    return out;
}

}  // namespace hopfpath
