#pragma once

// Preference functions, their column functions, and the cycle / closure
// analysis that predicts which n-words a greedy sequence will miss.

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "dbseq/words.hpp"

namespace dbseq {

// Preference rank, 1-based: rank 1 is the most preferred digit.
using Rank = unsigned;

// Maps every s-word (the last s digits of a sequence) to a ranking of the
// alphabet. Rows are stored by dense index of the s-word.
//
// The table is reduced to its minimal span on construction; span() is the
// minimal span and all lookups take exactly span() context digits.
class PreferenceFunction {
 public:
  // `table` holds q^declared_span rows of q digits each, rows ordered by the
  // dense index of their s-word. Throws InvalidArgument if a row is not a
  // permutation of the alphabet or the size is wrong.
  PreferenceFunction(Alphabet alphabet, unsigned declared_span,
                     std::vector<Digit> table);

  Alphabet alphabet() const noexcept { return alphabet_; }
  unsigned q() const noexcept { return alphabet_.size(); }
  unsigned span() const noexcept { return span_; }
  unsigned declared_span() const noexcept { return declared_span_; }
  WordIndex domain_size() const noexcept { return domain_size_; }

  // Row for the s-word with dense index `context` (s = span()).
  std::span<const Digit> row(WordIndex context) const noexcept {
    return {table_.data() + context * q(), q()};
  }
  Digit choice(WordIndex context, Rank k) const noexcept {
    return table_[context * q() + (k - 1)];
  }
  // Rank of `digit` within the row of `context`.
  Rank rank_of(WordIndex context, Digit digit) const noexcept;

  // Row in the declared-span domain; used for matrix-file output.
  std::span<const Digit> declared_row(WordIndex declared_context) const noexcept;

  friend bool operator==(const PreferenceFunction& a,
                         const PreferenceFunction& b) {
    return a.alphabet_ == b.alphabet_ && a.span_ == b.span_ &&
           a.table_ == b.table_;
  }

 private:
  Alphabet alphabet_;
  unsigned declared_span_;
  unsigned span_;
  WordIndex domain_size_;
  std::vector<Digit> table_;
  std::vector<Digit> declared_table_;  // empty unless the span was reduced
};

// O^(q,d): row i is (i+d, i+2d, ..., i+qd) mod q. Throws NotCoprime.
PreferenceFunction make_prefer_opposite(unsigned q, unsigned d);
// S^(q,d): row i is (i, i+d, ..., i+(q-1)d) mod q. Throws NotCoprime.
PreferenceFunction make_prefer_same(unsigned q, unsigned d);
// Constant ranking (q-1, ..., 1, 0); span 0.
PreferenceFunction make_prefer_higher(unsigned q);

// Matrix file: first line "q s", then q^s lines of s context digits
// followed by q permutation digits. Throws MalformedMatrix.
PreferenceFunction read_matrix(std::istream& in);
void write_matrix(std::ostream& out, const PreferenceFunction& p);

// g_k(x_1..x_s) = (x_2..x_s, P_k(x_1..x_s)) over dense s-word indices.
class ColumnFunction {
 public:
  ColumnFunction(const PreferenceFunction& p, Rank k);

  Rank rank() const noexcept { return rank_; }
  unsigned span() const noexcept { return span_; }
  WordIndex domain_size() const noexcept { return next_.size(); }
  WordIndex operator()(WordIndex vertex) const noexcept { return next_[vertex]; }
  std::span<const WordIndex> table() const noexcept { return next_; }

 private:
  Rank rank_;
  unsigned span_;
  std::vector<WordIndex> next_;
};

// Throws InvalidArgument unless 1 <= k <= q.
ColumnFunction column_function(const PreferenceFunction& p, Rank k);

struct CycleSets {
  std::vector<WordIndex> members;  // in g_k order, starting at the smallest
  std::vector<WordIndex> closure;  // sorted; every vertex whose orbit enters the cycle
  std::vector<WordIndex> sigma;    // sorted complement of closure
};

struct CycleAnalysis {
  unsigned q = 0;
  unsigned span = 0;
  Rank rank = 0;
  std::vector<CycleSets> cycles;

  // Filled by predict_missing.
  std::optional<std::size_t> selected_cycle;
  unsigned order = 0;
  std::optional<Rank> q_prime;
  std::optional<std::vector<WordIndex>> predicted_missing;  // sorted n-word indices
  bool exact = false;          // g_{q'-1} restricted to Sigma is cycle-free
  bool full_sequence = false;  // g_q has exactly one cycle
};

CycleAnalysis analyze_cycles(const PreferenceFunction& p, Rank k);

// Index into `analysis.cycles` of the cycle whose closure contains `vertex`.
std::size_t cycle_of(const CycleAnalysis& analysis, WordIndex vertex);

// Missing-word prediction for the greedy sequence seeded on the g_q cycle
// `cycle` (any order of its members). Throws NotACycle if `cycle` is not a
// cycle of g_q, InvalidArgument if n <= span.
CycleAnalysis predict_missing(const PreferenceFunction& p,
                              std::span<const WordIndex> cycle, unsigned n);

// (x_1..x_s) is a vertex of the cycle and every later digit is P_k of the
// preceding s digits.
bool word_on_cycle(const PreferenceFunction& p, Rank k,
                   std::span<const WordIndex> cycle, const Word& w);

// An n-word whose first n-1 digits lie on the g_q cycle through `vertex`,
// closed with one more rank-q digit.
Word initial_word_on_cycle(const PreferenceFunction& p, WordIndex vertex,
                           unsigned n);

}  // namespace dbseq
