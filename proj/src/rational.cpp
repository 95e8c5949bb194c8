#include "hopfpath/error.hpp"
#include "hopfpath/rational.hpp"

#include <cctype>

namespace hopfpath {

Rational parse_rational(std::string_view text) {
    std::size_t i = 0;
    auto digits = [&](std::size_t from) {
        std::size_t j = from;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        return j;
    };
    if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
    std::size_t end = digits(i);
    if (end == i) throw ParseError("expected an integer", i);
    if (end < text.size() && text[end] == '/') {
        std::size_t den_end = digits(end + 1);
        if (den_end == end + 1) throw ParseError("expected a denominator", end + 1);
        end = den_end;
    }
    if (end != text.size()) throw ParseError("trailing characters in rational", end);
    Rational q;
    std::string s(text.front() == '+' ? text.substr(1) : text);
    if (q.set_str(s, 10) != 0) throw ParseError("malformed rational", 0);
    if (q.get_den() == 0) throw ParseError("zero denominator", 0);
    q.canonicalize();
    return q;
}

}  // namespace hopfpath
