#include "doctest.h"

#include <random>

#include "dbseq/errors.hpp"
#include "dbseq/generator.hpp"
#include "oracles.hpp"

using namespace dbseq;

namespace {

const char* const kO4 =
    "0000210212101020211022100201012120200220222122112111011001000120122011200111222000";

std::size_t count_windows(const Word& w, unsigned n) { return w.size() - n + 1; }

}  // namespace

TEST_CASE("o_4 for q=3, d=2") {
  const auto r = generate_prefer_opposite(3, 2, 4);
  CHECK(r.digits.str() == kO4);
  CHECK(r.digits.size() == 82);
  CHECK(r.visited_count == 81 - 2);
  CHECK(r.label() == "opposite(d=2)");
}

TEST_CASE("o_2 for q=5 reproduces the three palindromic strings") {
  CHECK(generate_prefer_opposite(5, 1, 2).digits.str() == "0012340241303142043210");
  CHECK(generate_prefer_opposite(5, 2, 2).digits.str() == "0024130432101234031420");
  CHECK(generate_prefer_opposite(5, 4, 2).digits.str() == "0043210314202413012340");
  CHECK(generate_prefer_opposite(2, 1, 2).digits.str() == "0010");
}

TEST_CASE("prefer-higher examples") {
  CHECK(generate_prefer_higher(3, 3).digits.str() == "00022212202112102012001110100");
  CHECK(generate_prefer_higher(2, 2).digits.str() == "00110");
  CHECK(generate_prefer_higher(2, 1).digits.str() == "01");
  CHECK(generate_prefer_higher(3, 1).digits.str() == "021");
}

TEST_CASE("prefer-same examples") {
  const auto a = generate_prefer_same(2, 1, 3);
  CHECK(a.initial.str() == "010");
  CHECK(a.digits.size() == 10);
  CHECK(a.visited_count == 8);

  const auto b = generate_prefer_same(5, 2, 2);
  CHECK(b.initial.str() == "03");
  CHECK(b.digits.size() == 26);
  CHECK(b.visited_count == 25);

  const auto c = generate_prefer_same(3, 1, 2);
  CHECK(oracle::missing_words(oracle::digits_of(c.digits), 3, 2).empty());
  CHECK(generate_prefer_same(3, 1, 3, 2).initial.str() == "210");
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(generate_prefer_opposite(4, 2, 3), NotCoprime);
  CHECK_THROWS_AS(generate_prefer_same(6, 4, 3), NotCoprime);
  CHECK_THROWS_AS(generate_prefer_opposite(3, 1, 1), InvalidArgument);
  CHECK_THROWS_AS(generate_prefer_same(3, 1, 1), InvalidArgument);
  CHECK_THROWS_AS(generate_prefer_higher(2, 31), CapacityExceeded);
  // n must exceed the span.
  CHECK_THROWS_AS(generate(make_prefer_opposite(3, 1), Word(Alphabet(3), {0})), InvalidArgument);
  CHECK_THROWS_AS(generate(make_prefer_opposite(3, 1), Word(Alphabet(2), {0, 0})),
                  InvalidArgument);
}

TEST_CASE("generate agrees with literal substring search") {
  for (unsigned q = 2; q <= 4; ++q)
    for (unsigned d = 1; d < q; ++d) {
      if (gcd(d, q) != 1) continue;
      for (unsigned n = 2; n <= 4; ++n) {
        const auto o = generate_prefer_opposite(q, d, n);
        CHECK(oracle::digits_of(o.digits) ==
              oracle::naive_generate(make_prefer_opposite(q, d), oracle::Digits(n, 0)));
        const auto s = generate_prefer_same(q, d, n);
        CHECK(oracle::digits_of(s.digits) ==
              oracle::naive_generate(make_prefer_same(q, d), oracle::digits_of(s.initial)));
      }
    }

  std::mt19937 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const unsigned q = 2 + rng() % 3;
    const unsigned span = rng() % 3;
    std::vector<Digit> table;
    std::vector<Digit> perm(q);
    for (WordIndex r = 0; r < word_count(q, span); ++r) {
      for (unsigned i = 0; i < q; ++i) perm[i] = static_cast<Digit>(i);
      std::shuffle(perm.begin(), perm.end(), rng);
      table.insert(table.end(), perm.begin(), perm.end());
    }
    const PreferenceFunction p(Alphabet(q), span, table);
    const unsigned n = span + 1 + rng() % 3;
    std::vector<Digit> init(n);
    for (auto& x : init) x = static_cast<Digit>(rng() % q);
    const Word w(Alphabet(q), init);
    const auto r = generate(p, w);
    CHECK(oracle::digits_of(r.digits) == oracle::naive_generate(p, init));
    CHECK(r.kind == SequenceKind::custom);
  }
}

TEST_CASE("every window at most once, and the sequence closes on its start") {
  for (unsigned q = 2; q <= 5; ++q)
    for (unsigned d = 1; d < q; ++d) {
      if (gcd(d, q) != 1) continue;
      for (unsigned n = 2; n <= 5; ++n) {
        for (const auto& r : {generate_prefer_opposite(q, d, n), generate_prefer_same(q, d, n),
                              generate_prefer_higher(q, n)}) {
          const auto digits = oracle::digits_of(r.digits);
          for (const auto& [w, c] : oracle::window_counts(digits, n)) CHECK(c == 1);
          CHECK(count_windows(r.digits, n) == r.visited_count);
          CHECK(std::equal(digits.begin(), digits.begin() + (n - 1), digits.end() - (n - 1)));
        }
      }
    }
}

TEST_CASE("kind labels") {
  CHECK(to_string(SequenceKind::same) == "same");
  CHECK(generate_prefer_same(3, 2, 2).label() == "same(d=2)");
  CHECK(generate_prefer_higher(3, 2).label() == "higher");
}
