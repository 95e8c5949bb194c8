#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace hopfpath {

using Label = std::uint8_t;

// A word in the letters 0..d; letter 0 is the time direction.
class Word {
public:
    Word() = default;
    Word(std::initializer_list<int> letters);
    explicit Word(std::vector<Label> letters) : letters_(std::move(letters)) {}

    std::size_t size() const { return letters_.size(); }
    bool empty() const { return letters_.empty(); }
    Label operator[](std::size_t i) const { return letters_[i]; }
    const std::vector<Label>& letters() const { return letters_; }
    int max_label() const;
    int count(Label letter) const;
    Word reversed() const { return Word(std::vector<Label>(letters_.rbegin(), letters_.rend())); }
    Word slice(std::size_t from, std::size_t to) const {
        return Word(std::vector<Label>(letters_.begin() + from, letters_.begin() + to));
    }

    // "e[0,1,2]", or "[]" for the empty word.
    std::string code() const;

    friend Word operator*(const Word& a, const Word& b);  // concatenation
    friend bool operator==(const Word&, const Word&) = default;
    friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
        if (auto c = a.size() <=> b.size(); c != 0) return c;
        return a.letters_ <=> b.letters_;
    }

private:
    std::vector<Label> letters_;
};

inline int grade(const Word& w) { return static_cast<int>(w.size()); }

}  // namespace hopfpath
