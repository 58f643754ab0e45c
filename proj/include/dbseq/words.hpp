#pragma once

// Alphabet, word and dense-index primitives shared by every other module.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dbseq {

using Digit = std::uint8_t;
using WordIndex = std::uint64_t;

// Largest dense table (number of n-words) any module will allocate.
inline constexpr WordIndex kMaxWindows = WordIndex{1} << 30;

class Alphabet {
 public:
  static constexpr unsigned kMaxSize = 256;

  // Throws InvalidArgument unless 2 <= q <= kMaxSize.
  explicit Alphabet(unsigned q);

  unsigned size() const noexcept { return q_; }
  bool contains(unsigned digit) const noexcept { return digit < q_; }

  friend bool operator==(Alphabet, Alphabet) = default;

 private:
  unsigned q_;
};

// A non-empty digit string over a fixed alphabet. Every digit is checked on
// construction, so the rest of the library can treat a Word as valid.
class Word {
 public:
  Word(Alphabet alphabet, std::vector<Digit> digits);

  static Word constant(Alphabet alphabet, Digit value, std::size_t length);

  // Accepts either a run of decimal digits ("0120") or a comma separated
  // list ("0,11,3"); the latter is required for q > 10.
  static Word parse(Alphabet alphabet, std::string_view text);

  Alphabet alphabet() const noexcept { return alphabet_; }
  unsigned q() const noexcept { return alphabet_.size(); }
  std::size_t size() const noexcept { return digits_.size(); }
  Digit operator[](std::size_t i) const { return digits_[i]; }
  std::span<const Digit> digits() const noexcept { return digits_; }

  // Concatenated digits for q <= 10, comma separated otherwise.
  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word& a, const Word& b) {
    return a.digits_ <=> b.digits_;
  }

 private:
  Alphabet alphabet_;
  std::vector<Digit> digits_;
};

std::string format_digits(std::span<const Digit> digits, unsigned q);

// q^length. Throws CapacityExceeded if the result would not fit in 63 bits.
WordIndex word_count(unsigned q, std::size_t length);

// Base-q value of the digits, most significant first.
WordIndex encode(std::span<const Digit> digits, unsigned q) noexcept;
WordIndex encode(const Word& w) noexcept;

// Inverse of encode. Throws InvalidArgument if index >= q^length.
Word decode(WordIndex index, Alphabet alphabet, std::size_t length);

// Throws InvalidArgument if c is not a digit of the alphabet.
Word translate(const Word& w, Digit c);

// True iff every consecutive pair satisfies y[i+1] = y[i] + delta (mod q).
// Requires w.size() >= 2.
bool is_alternating(const Word& w, Digit delta);

Word alternating_word(Alphabet alphabet, Digit start, Digit delta,
                      std::size_t length);

unsigned gcd(unsigned a, unsigned b) noexcept;

// Dense membership set over {0, ..., size-1}, one bit per index.
class WindowSet {
 public:
  explicit WindowSet(WordIndex size);

  WordIndex size() const noexcept { return size_; }
  bool contains(WordIndex i) const noexcept {
    return (bits_[i >> 6] >> (i & 63)) & 1u;
  }
  void insert(WordIndex i) noexcept { bits_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  // Returns true if i was newly inserted.
  bool insert_if_absent(WordIndex i) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    std::uint64_t& word = bits_[i >> 6];
    if (word & mask) return false;
    word |= mask;
    return true;
  }
  WordIndex count() const noexcept;

 private:
  WordIndex size_;
  std::vector<std::uint64_t> bits_;
};

}  // namespace dbseq
