#include "hopfpath/error.hpp"
#include "hopfpath/syntax.hpp"

#include <cctype>

namespace hopfpath {

void Cursor::skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
}

bool Cursor::at_end() {
    skip_space();
    return pos_ >= text_.size();
}

char Cursor::peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
}

bool Cursor::consume(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
}

void Cursor::expect(std::string_view token) {
    if (!consume(token)) fail("expected '" + std::string(token) + "'");
}

int Cursor::integer() {
    skip_space();
    std::size_t end = pos_;
    while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
    if (end == pos_) fail("expected an integer");
    if (end - pos_ > 9) fail("integer too large");
    int v = std::stoi(std::string(text_.substr(pos_, end - pos_)));
    pos_ = end;
    return v;
}

Rational Cursor::rational() {
    skip_space();
    const std::size_t start = pos_;
    std::size_t end = pos_;
    while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
    if (end < text_.size() && text_[end] == '/') {
        ++end;
        while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
    }
    try {
        Rational q = parse_rational(text_.substr(start, end - start));
        pos_ = end;
        return q;
    } catch (const ParseError& e) {
        throw ParseError("malformed coefficient", start + e.position());
    }
}

void Cursor::fail(const std::string& what) const { throw ParseError(what, pos_); }

namespace {

Label label(Cursor& c) {
    const int v = c.integer();
    if (v > 255) c.fail("label out of range");
    return static_cast<Label>(v);
}

template <class T, class F>
T parse_whole(std::string_view text, F&& f) {
    Cursor c(text);
    T out = f(c);
    if (!c.at_end()) c.fail("unexpected trailing input");
    return out;
}

}  // namespace

Word parse_word(Cursor& c) {
    if (c.consume("[]")) return Word{};
    c.expect("e[");
    std::vector<Label> letters{label(c)};
    while (c.consume(",")) letters.push_back(label(c));
    c.expect("]");
    return Word(std::move(letters));
}

Tree parse_tree(Cursor& c) {
    c.expect("(");
    const Label root = label(c);
    std::vector<Tree> children;
    while (c.peek() == '(') children.push_back(parse_tree(c));
    c.expect(")");
    return Tree(root, std::move(children));
}

Forest parse_forest(Cursor& c) {
    if (c.peek() == '(') return Forest(parse_tree(c));
    c.expect("{");
    std::vector<Tree> trees;
    while (c.peek() == '(') trees.push_back(parse_tree(c));
    c.expect("}");
    return Forest(std::move(trees));
}

Word parse_word(std::string_view text) { return parse_whole<Word>(text, [](Cursor& c) { return parse_word(c); }); }
Tree parse_tree(std::string_view text) { return parse_whole<Tree>(text, [](Cursor& c) { return parse_tree(c); }); }
Forest parse_forest(std::string_view text) {
    return parse_whole<Forest>(text, [](Cursor& c) { return parse_forest(c); });
}

LinComb<Word> parse_word_series(std::string_view text) {
    Cursor c(text);
    return parse_series<Word>(c, [](Cursor& cc) { return parse_word(cc); }, Word{});
}

LinComb<Forest> parse_forest_series(std::string_view text) {
    Cursor c(text);
    return parse_series<Forest>(c, [](Cursor& cc) { return parse_forest(cc); }, Forest{});
}

}  // namespace hopfpath
