#ifndef FOCKOPA_BASIS_HPP
#define FOCKOPA_BASIS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fockopa/errors.hpp"
#include "fockopa/word.hpp"

namespace fockopa {

inline constexpr std::size_t kDefaultBasisCapacity = 5000;

/// All words of length ≤ n over d letters, in graded-lex order.
/// Index 0 is the empty word.
class TruncatedBasis {
   public:
    TruncatedBasis(int d, int n, std::size_t capacity = kDefaultBasisCapacity) : d_(d), n_(n) {
        if (d < 1) throw ShapeError("TruncatedBasis: d must be >= 1");
        if (n < 0) throw PreconditionError("TruncatedBasis: n must be >= 0");
        std::size_t total = word_count(d, n);
        if (total > capacity)
            throw CapacityError("basis of " + std::to_string(total) + " words (d=" + std::to_string(d) +
                                ", n=" + std::to_string(n) + ") exceeds capacity " + std::to_string(capacity));
        words_.reserve(total);
        words_.push_back(Word::empty());
        std::size_t level_begin = 0;
        for (int len = 1; len <= n; ++len) {
            std::size_t level_end = words_.size();
            for (std::size_t i = level_begin; i < level_end; ++i)
                for (int j = 1; j <= d; ++j) words_.push_back(words_[i].appended(j));
            level_begin = level_end;
        }
    }

    /// (d^{n+1}−1)/(d−1) for d ≥ 2, n+1 for d = 1. Saturates instead of
    /// overflowing so capacity checks stay meaningful.
    static std::size_t word_count(int d, int n) {
        std::size_t total = 1, level = 1;
        for (int len = 1; len <= n; ++len) {
            if (level > (std::size_t(1) << 62) / std::size_t(d)) return SIZE_MAX;
            level *= std::size_t(d);
            if (total > SIZE_MAX - level) return SIZE_MAX;
            total += level;
        }
        return total;
    }

    int d() const { return d_; }
    int n() const { return n_; }
    std::size_t size() const { return words_.size(); }
    const Word& word(std::size_t i) const { return words_[i]; }
    const std::vector<Word>& words() const { return words_; }

    /// Position of w in graded-lex order; O(|w|), no lookup table.
    std::size_t index(const Word& w) const {
        std::size_t off = 0, level = 1, digits = 0;
        for (std::size_t i = 0; i < w.length(); ++i) {
            off += level;
            level *= std::size_t(d_);
            digits = digits * std::size_t(d_) + std::size_t(w.letter(i) - 1);
        }
        return off + digits;
    }

   private:
    int d_, n_;
    std::vector<Word> words_;
};

}  // namespace fockopa

#endif
