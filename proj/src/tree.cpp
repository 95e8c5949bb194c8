#include "hopfpath/error.hpp"
#include "hopfpath/tree.hpp"

#include <algorithm>
#include <numeric>

namespace hopfpath {

Word::Word(std::initializer_list<int> letters) {
    for (int l : letters) {
        if (l < 0 || l > 255) throw PreconditionError("letter out of range");
        letters_.push_back(static_cast<Label>(l));
    }
}

int Word::max_label() const {
    int m = 0;
    for (Label l : letters_) m = std::max<int>(m, l);
    return m;
}

int Word::count(Label letter) const {
    return static_cast<int>(std::count(letters_.begin(), letters_.end(), letter));
}

std::string Word::code() const {
    if (letters_.empty()) return "[]";
    std::string s = "e[";
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(letters_[i]);
    }
    return s + "]";
}

Word operator*(const Word& a, const Word& b) {
    std::vector<Label> l = a.letters_;
    l.insert(l.end(), b.letters_.begin(), b.letters_.end());
    return Word(std::move(l));
}

Tree::Tree(Label root, std::vector<Tree> children) {
    std::sort(children.begin(), children.end());
    Node n{root, std::move(children), 1, root, {}};
    n.code = "(" + std::to_string(root);
    for (const auto& c : n.children) {
        n.size += c.size();
        n.max_label = std::max(n.max_label, c.max_label());
        n.code += ' ';
        n.code += c.code();
    }
    n.code += ')';
    node_ = std::make_shared<const Node>(std::move(n));
}

int Tree::count_label(Label l) const {
    int n = label() == l ? 1 : 0;
    for (const auto& c : children()) n += c.count_label(l);
    return n;
}

bool Tree::is_linear() const {
    if (children().empty()) return true;
    return children().size() == 1 && children().front().is_linear();
}

Tree Tree::relabelled(Label l) const {
    std::vector<Tree> cs;
    cs.reserve(children().size());
    for (const auto& c : children()) cs.push_back(c.relabelled(l));
    return Tree(l, std::move(cs));
}

Forest::Forest() : code_("{}") {}

Forest::Forest(Tree tree) : trees_{std::move(tree)}, size_(trees_.front().size()), code_(trees_.front().code()) {}

Forest::Forest(std::vector<Tree> trees) : trees_(std::move(trees)) {
    std::sort(trees_.begin(), trees_.end());
    for (const auto& t : trees_) size_ += t.size();
    if (trees_.size() == 1) {
        code_ = trees_.front().code();
    } else {
        code_ = "{";
        for (std::size_t i = 0; i < trees_.size(); ++i) {
            if (i) code_ += ' ';
            code_ += trees_[i].code();
        }
        code_ += '}';
    }
}

const Tree& Forest::as_tree() const {
    if (!is_tree()) throw PreconditionError("forest " + code_ + " is not a single tree");
    return trees_.front();
}

int Forest::max_label() const {
    int m = 0;
    for (const auto& t : trees_) m = std::max(m, t.max_label());
    return m;
}

int Forest::count_label(Label l) const {
    int n = 0;
    for (const auto& t : trees_) n += t.count_label(l);
    return n;
}

Forest operator*(const Forest& a, const Forest& b) {
    if (a.is_unit()) return b;
    if (b.is_unit()) return a;
    std::vector<Tree> all = a.trees_;
    all.insert(all.end(), b.trees_.begin(), b.trees_.end());
    return Forest(std::move(all));
}

long long symmetry_factor(const Tree& t) {
    long long s = 1;
    const auto& cs = t.children();
    std::size_t i = 0;
    while (i < cs.size()) {
        std::size_t j = i;
        while (j < cs.size() && cs[j] == cs[i]) ++j;
        long long sub = symmetry_factor(cs[i]);
        for (std::size_t k = 1; k <= j - i; ++k) s *= static_cast<long long>(k) * sub;
        i = j;
    }
    return s;
}

long long tree_factorial(const Tree& t) {
    long long f = t.size();
    for (const auto& c : t.children()) f *= tree_factorial(c);
    return f;
}

}  // namespace hopfpath
