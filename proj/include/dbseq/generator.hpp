#pragma once

// Greedy construction (P, I): seed with I and keep appending the most
// preferred digit that yields an n-window not seen before.

#include <cstdint>
#include <string>

#include "dbseq/preference.hpp"
#include "dbseq/words.hpp"

namespace dbseq {

enum class SequenceKind { opposite, same, higher, custom };

std::string to_string(SequenceKind kind);

struct SequenceRecord {
  Word digits;
  unsigned q;
  unsigned n;
  Word initial;
  SequenceKind kind;
  unsigned d;  // parameter of the O/S families, 0 otherwise
  std::uint64_t visited_count;

  // e.g. "opposite(d=2)", "higher", "custom"
  std::string label() const;
};

// Requires n = initial.size() > span(P) and q^n <= kMaxWindows.
SequenceRecord generate(const PreferenceFunction& p, const Word& initial,
                        SequenceKind kind = SequenceKind::custom, unsigned d = 0);

// o_n = (O^(q,d), 0^n). Throws NotCoprime; requires n >= 2.
SequenceRecord generate_prefer_opposite(unsigned q, unsigned d, unsigned n);

// s_n = (S^(q,d), I) with I alternating, increment d(q-1), first digit `start`.
SequenceRecord generate_prefer_same(unsigned q, unsigned d, unsigned n,
                                    unsigned start = 0);

// h_n = (prefer-higher, 0^n); n >= 1.
SequenceRecord generate_prefer_higher(unsigned q, unsigned n);

}  // namespace dbseq
