#ifndef FOCKOPA_WORD_HPP
#define FOCKOPA_WORD_HPP

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace fockopa {

/// A word in the letters x_1..x_d: a finite sequence of 1-based letter
/// indices. Words index the orthonormal basis of the coefficient space.
/// Ordering is graded lexicographic: by length first, then left-to-right.
class Word {
   public:
    Word() = default;
    explicit Word(std::vector<std::int32_t> letters) : letters_(std::move(letters)) {}

    static Word empty() { return Word(); }
    static Word single(std::int32_t letter) { return Word({letter}); }

    std::size_t length() const { return letters_.size(); }
    bool is_empty() const { return letters_.empty(); }
    std::int32_t letter(std::size_t i) const { return letters_[i]; }
    const std::vector<std::int32_t>& letters() const { return letters_; }

    std::int32_t max_letter() const {
        std::int32_t m = 0;
        for (auto l : letters_) m = std::max(m, l);
        return m;
    }

    Word concat(const Word& rhs) const {
        std::vector<std::int32_t> v;
        v.reserve(letters_.size() + rhs.letters_.size());
        v.insert(v.end(), letters_.begin(), letters_.end());
        v.insert(v.end(), rhs.letters_.begin(), rhs.letters_.end());
        return Word(std::move(v));
    }

    Word prefix(std::size_t len) const {
        return Word(std::vector<std::int32_t>(letters_.begin(), letters_.begin() + len));
    }
    Word suffix_from(std::size_t start) const {
        return Word(std::vector<std::int32_t>(letters_.begin() + start, letters_.end()));
    }
    Word prepended(std::int32_t letter) const {
        std::vector<std::int32_t> v;
        v.reserve(letters_.size() + 1);
        v.push_back(letter);
        v.insert(v.end(), letters_.begin(), letters_.end());
        return Word(std::move(v));
    }
    Word appended(std::int32_t letter) const {
        std::vector<std::int32_t> v = letters_;
        v.push_back(letter);
        return Word(std::move(v));
    }

    friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }

    // graded-lex
    friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
        if (a.length() != b.length()) return a.length() <=> b.length();
        return a.letters_ <=> b.letters_;
    }

    std::string str() const {
        if (letters_.empty()) return "1";
        std::string s;
        for (std::size_t i = 0; i < letters_.size(); ++i) {
            if (i) s += '*';
            s += 'x';
            s += std::to_string(letters_[i]);
        }
        return s;
    }

   private:
    std::vector<std::int32_t> letters_;
};

}  // namespace fockopa

#endif
