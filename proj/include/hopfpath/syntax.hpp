#pragma once

#include "hopfpath/lincomb.hpp"
#include "hopfpath/monomial.hpp"
#include "hopfpath/tree.hpp"
#include "hopfpath/word.hpp"

#include <cctype>
#include <cstdio>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>

namespace hopfpath {

// Textual forms. Output grammar equals input grammar:
//   word    e[0,1,2] | []
//   tree    (label child child ...)
//   forest  {tree tree ...} | tree | {}
//   series  [coef*]key (+|- [coef*]key)*, a bare coefficient multiplies the unit key

inline std::string to_text(const Word& w) { return w.code(); }
inline std::string to_text(const Tree& t) { return t.code(); }
inline std::string to_text(const Forest& f) { return f.code(); }

template <class G>
std::string to_text(const Marked<G>& m) {
    return to_text(m.item) + "_" + std::to_string(m.mark);
}

template <class G>
std::string to_text(const Monomial<G>& m) {
    if (m.is_unit()) return "1";
    std::string s;
    for (std::size_t i = 0; i < m.factors().size(); ++i) {
        if (i) s += "·";
        s += to_text(m.factors()[i]);
    }
    return s;
}

template <class A, class B>
std::string to_text(const std::pair<A, B>& p) {
    return to_text(p.first) + " ⊗ " + to_text(p.second);
}

template <class A, class B, class C>
std::string to_text(const std::tuple<A, B, C>& t) {
    return to_text(std::get<0>(t)) + " ⊗ " + to_text(std::get<1>(t)) + " ⊗ " + to_text(std::get<2>(t));
}

inline std::string coefficient_text(const Rational& q) { return q.get_str(); }
inline std::string coefficient_text(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}
inline bool is_negative(const Rational& q) { return sgn(q) < 0; }
inline bool is_negative(double x) { return x < 0; }

template <class K, class S>
std::string to_text(const LinComb<K, S>& x) {
    if (x.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [k, c] : x) {
        const bool neg = is_negative(c);
        const S mag = neg ? S(-c) : c;
        if (first)
            s += neg ? "-" : "";
        else
            s += neg ? " - " : " + ";
        first = false;
        const std::string key = to_text(k);
        if (mag == S(1))
            s += key;
        else
            s += coefficient_text(mag) + "*" + key;
    }
    return s;
}

Word parse_word(std::string_view text);
Tree parse_tree(std::string_view text);
Forest parse_forest(std::string_view text);
LinComb<Word> parse_word_series(std::string_view text);
LinComb<Forest> parse_forest_series(std::string_view text);

// Low-level cursor used by all parsers; exposed for the symbol syntax.
class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}
    void skip_space();
    bool at_end();
    char peek();
    bool consume(std::string_view token);
    void expect(std::string_view token);
    int integer();
    Rational rational();
    std::size_t position() const { return pos_; }
    std::string_view rest() const { return text_.substr(pos_); }
    [[noreturn]] void fail(const std::string& what) const;

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

Word parse_word(Cursor& c);
Tree parse_tree(Cursor& c);
Forest parse_forest(Cursor& c);

// Generic series reader; key parses one key, unit is the key a bare coefficient refers to.
template <class K, class KeyParser>
LinComb<K> parse_series(Cursor& c, KeyParser&& key, const K& unit) {
    LinComb<K> out;
    bool first = true;
    while (true) {
        c.skip_space();
        Rational sign(1);
        if (c.consume("-"))
            sign = -1;
        else if (!c.consume("+") && !first)
            c.fail("expected '+' or '-'");
        first = false;
        c.skip_space();
        Rational coeff(1);
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
            coeff = c.rational();
            have_coeff = true;
        }
        c.skip_space();
        if (have_coeff && !c.consume("*")) {
            out.add_term(unit, sign * coeff);
        } else {
            c.skip_space();
            out.add_term(key(c), sign * coeff);
        }
        c.skip_space();
        if (c.at_end()) break;
    }
    return out;
}

}  // namespace hopfpath
