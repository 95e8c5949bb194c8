#pragma once

#include "hopfpath/word.hpp"

#include <compare>
#include <memory>
#include <string>
#include <vector>

namespace hopfpath {

// Unordered rooted tree with labelled nodes. Children are kept sorted by (size, code) so that
// structurally equal trees share the same code. Nodes are shared and immutable; copies are cheap.
class Tree {
public:
    explicit Tree(Label root, std::vector<Tree> children = {});

    Label label() const { return node_->label; }
    const std::vector<Tree>& children() const { return node_->children; }
    int size() const { return node_->size; }
    int max_label() const { return node_->max_label; }
    const std::string& code() const { return node_->code; }
    int count_label(Label l) const;
    bool is_linear() const;

    // Same shape with every label replaced.
    Tree relabelled(Label l) const;

    friend bool operator==(const Tree& a, const Tree& b) {
        return a.node_ == b.node_ || (a.size() == b.size() && a.code() == b.code());
    }
    friend std::strong_ordering operator<=>(const Tree& a, const Tree& b) {
        if (auto c = a.size() <=> b.size(); c != 0) return c;
        return a.code().compare(b.code()) <=> 0;
    }

private:
    struct Node {
        Label label;
        std::vector<Tree> children;
        int size;
        int max_label;
        std::string code;
    };
    std::shared_ptr<const Node> node_;
};

// B_+^i: graft a list of trees onto a new root labelled i.
inline Tree b_plus(std::vector<Tree> trees, Label root) { return Tree(root, std::move(trees)); }

inline Tree leaf(Label l) { return Tree(l); }

// Commutative product of trees; the empty forest is the unit.
class Forest {
public:
    Forest();
    Forest(Tree tree);  // NOLINT: a tree is a one-element forest
    explicit Forest(std::vector<Tree> trees);

    const std::vector<Tree>& trees() const { return trees_; }
    int size() const { return size_; }
    int tree_count() const { return static_cast<int>(trees_.size()); }
    bool is_unit() const { return trees_.empty(); }
    bool is_tree() const { return trees_.size() == 1; }
    const Tree& as_tree() const;
    int max_label() const;
    int count_label(Label l) const;
    const std::string& code() const { return code_; }

    friend Forest operator*(const Forest& a, const Forest& b);
    friend bool operator==(const Forest& a, const Forest& b) {
        return a.size_ == b.size_ && a.code_ == b.code_;
    }
    friend std::strong_ordering operator<=>(const Forest& a, const Forest& b) {
        if (auto c = a.size_ <=> b.size_; c != 0) return c;
        return a.code_.compare(b.code_) <=> 0;
    }

private:
    std::vector<Tree> trees_;
    int size_ = 0;
    std::string code_;
};

inline int grade(const Tree& t) { return t.size(); }
inline int grade(const Forest& f) { return f.size(); }

// Symmetry factor: order of the automorphism group of the labelled tree.
long long symmetry_factor(const Tree& t);
// Tree factorial: product over nodes of the size of the subtree rooted there.
long long tree_factorial(const Tree& t);

}  // namespace hopfpath
