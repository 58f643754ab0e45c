#include "dbseq/words.hpp"

#include <bit>
#include <charconv>
#include <limits>
#include <string>

#include "dbseq/errors.hpp"

namespace dbseq {

Alphabet::Alphabet(unsigned q) : q_(q) {
  if (q < 2 || q > kMaxSize) {
    throw InvalidArgument("alphabet size q=" + std::to_string(q) +
                          " outside [2, 256]");
  }
}

Word::Word(Alphabet alphabet, std::vector<Digit> digits)
    : alphabet_(alphabet), digits_(std::move(digits)) {
  if (digits_.empty()) throw InvalidArgument("word must have length >= 1");
  for (Digit d : digits_) {
    if (!alphabet_.contains(d)) {
      throw InvalidArgument("digit " + std::to_string(d) +
                            " outside alphabet of size " +
                            std::to_string(alphabet_.size()));
    }
  }
}

Word Word::constant(Alphabet alphabet, Digit value, std::size_t length) {
  return Word(alphabet, std::vector<Digit>(length, value));
}

Word Word::parse(Alphabet alphabet, std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' ||
                           text.back() == ' ')) {
    text.remove_suffix(1);
  }
  std::vector<Digit> digits;
  if (text.find(',') == std::string_view::npos) {
    digits.reserve(text.size());
    for (char c : text) {
      if (c < '0' || c > '9') {
        throw InvalidArgument(std::string("unexpected character '") + c +
                              "' in digit string");
      }
      digits.push_back(static_cast<Digit>(c - '0'));
    }
  } else {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t next = text.find(',', pos);
      if (next == std::string_view::npos) next = text.size();
      std::string_view field = text.substr(pos, next - pos);
      unsigned value = 0;
      auto [ptr, ec] =
          std::from_chars(field.data(), field.data() + field.size(), value);
      if (ec != std::errc{} || ptr != field.data() + field.size() ||
          value > std::numeric_limits<Digit>::max()) {
        throw InvalidArgument("malformed digit field '" + std::string(field) +
                              "'");
      }
      digits.push_back(static_cast<Digit>(value));
      pos = next + 1;
    }
  }
  return Word(alphabet, std::move(digits));
}

std::string format_digits(std::span<const Digit> digits, unsigned q) {
  std::string out;
  if (q <= 10) {
    out.reserve(digits.size());
    for (Digit d : digits) out.push_back(static_cast<char>('0' + d));
  } else {
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (i) out.push_back(',');
      out += std::to_string(digits[i]);
    }
  }
  return out;
}

std::string Word::str() const { return format_digits(digits_, q()); }

WordIndex word_count(unsigned q, std::size_t length) {
  WordIndex result = 1;
  for (std::size_t i = 0; i < length; ++i) {
    if (result > (WordIndex{1} << 62) / q) {
      throw CapacityExceeded("q^n overflows for q=" + std::to_string(q) +
                             ", n=" + std::to_string(length));
    }
    result *= q;
  }
  return result;
}

WordIndex encode(std::span<const Digit> digits, unsigned q) noexcept {
  WordIndex index = 0;
  for (Digit d : digits) index = index * q + d;
  return index;
}

WordIndex encode(const Word& w) noexcept { return encode(w.digits(), w.q()); }

Word decode(WordIndex index, Alphabet alphabet, std::size_t length) {
  const unsigned q = alphabet.size();
  if (length == 0) throw InvalidArgument("decode: length must be >= 1");
  if (index >= word_count(q, length)) {
    throw InvalidArgument("decode: index " + std::to_string(index) +
                          " out of range for q^" + std::to_string(length));
  }
  std::vector<Digit> digits(length);
  for (std::size_t i = length; i-- > 0;) {
    digits[i] = static_cast<Digit>(index % q);
    index /= q;
  }
  return Word(alphabet, std::move(digits));
}

Word translate(const Word& w, Digit c) {
  const unsigned q = w.q();
  if (c >= q) throw InvalidArgument("translate: shift outside alphabet");
  std::vector<Digit> out(w.digits().begin(), w.digits().end());
  for (Digit& d : out) d = static_cast<Digit>((d + c) % q);
  return Word(w.alphabet(), std::move(out));
}

bool is_alternating(const Word& w, Digit delta) {
  if (w.size() < 2) throw InvalidArgument("is_alternating: length must be >= 2");
  const unsigned q = w.q();
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    if ((w[i] + delta) % q != w[i + 1]) return false;
  }
  return true;
}

Word alternating_word(Alphabet alphabet, Digit start, Digit delta,
                      std::size_t length) {
  const unsigned q = alphabet.size();
  std::vector<Digit> digits(length);
  unsigned v = start % q;
  for (auto& d : digits) {
    d = static_cast<Digit>(v);
    v = (v + delta) % q;
  }
  return Word(alphabet, std::move(digits));
}

unsigned gcd(unsigned a, unsigned b) noexcept {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

WindowSet::WindowSet(WordIndex size) : size_(size), bits_((size + 63) / 64, 0) {}

WordIndex WindowSet::count() const noexcept {
  WordIndex total = 0;
  for (auto w : bits_) total += static_cast<WordIndex>(std::popcount(w));
  return total;
}

}  // namespace dbseq
