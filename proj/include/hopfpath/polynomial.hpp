#pragma once

#include "hopfpath/rational.hpp"

#include <Eigen/Dense>

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace hopfpath {

// Multivariate polynomial in y1..y_arity with exact coefficients.
class Polynomial {
public:
    using Exponents = std::vector<int>;

    explicit Polynomial(int arity = 0) : arity_(arity) {}
    static Polynomial constant(int arity, const Rational& c);
    static Polynomial variable(int arity, int k);  // y_{k+1}

    int arity() const { return arity_; }
    const std::map<Exponents, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;

    void add_term(const Exponents& e, const Rational& c);
    Polynomial derivative(int k) const;
    double evaluate(const Eigen::VectorXd& y) const;
    Rational evaluate(const std::vector<Rational>& y) const;

    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Rational& s, const Polynomial& a);
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void require_arity(const Polynomial& other) const;

    int arity_;
    std::map<Exponents, Rational> terms_;
};

// Text form: "3/2*y1^2*y2 - y2 + 1". Throws ParseError.
Polynomial parse_polynomial(std::string_view text, int arity);
std::string to_text(const Polynomial& p);

using PolyVector = std::vector<Polynomial>;

PolyVector operator+(const PolyVector& a, const PolyVector& b);
PolyVector operator*(const Rational& s, const PolyVector& a);
Eigen::VectorXd evaluate(const PolyVector& p, const Eigen::VectorXd& y);
// Directional derivative sum_k g_k d_k p, componentwise in p.
PolyVector directional_derivative(const PolyVector& p, const PolyVector& g);

// Polynomial evaluation with the coefficients converted to double once.
class CompiledPolyVector {
public:
    explicit CompiledPolyVector(const PolyVector& p);
    Eigen::VectorXd operator()(const Eigen::VectorXd& y) const;

private:
    struct Term {
        std::size_t component;
        double coeff;
        std::vector<int> exponents;
    };
    std::size_t rows_;
    std::vector<Term> terms_;
};

}  // namespace hopfpath
