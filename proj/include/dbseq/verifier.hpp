#pragma once

// Structural checks on generated sequences: window census, missing and
// duplicated words, terminal pattern of o_n, and the lemma-level properties
// of the prefer-opposite family.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dbseq/generator.hpp"
#include "dbseq/words.hpp"

namespace dbseq {

// Multiplicity of every n-window of `seq`, indexed by encode().
// OpenMP-parallel over window chunks.
std::vector<std::uint32_t> window_census(std::span<const Digit> seq, unsigned q,
                                         unsigned n);
// Single-threaded reference for window_census.
std::vector<std::uint32_t> window_census_serial(std::span<const Digit> seq,
                                                unsigned q, unsigned n);

struct VerificationReport {
  unsigned q = 0;
  unsigned n = 0;
  std::uint64_t windows = 0;  // number of n-windows scanned
  std::vector<std::uint32_t> census;
  std::vector<WordIndex> missing;
  std::vector<WordIndex> duplicated;
  bool is_full = false;
  bool suffix_ok = false;  // last n-1 digits repeat the first n-1
  std::optional<Word> terminal_expected;
  std::optional<bool> terminal_ok;
  std::optional<bool> final_appearance_ok;
  std::optional<bool> palindrome;

  // Human-readable descriptions of every failed property.
  std::vector<std::string> violations;
};

// Census of an arbitrary digit string. Requires seq.size() >= n.
VerificationReport census(const Word& seq, unsigned n);

// Census plus the family-specific expectations of `record.kind`:
// opposite misses exactly the nonzero constant words and ends with
// expected_terminal; same and higher are full. Every greedy output must
// have no duplicated window and satisfy suffix_ok.
VerificationReport verify(const SequenceRecord& record);

// sigma_{q-2}^{n-1} ... sigma_0^{n-1} 0^{n-1} with sigma_{q-1-i} = g_{q-1}^i(0).
Word expected_terminal(unsigned q, unsigned d, unsigned n);

// For every digit a: no a occurs after the last window a^{n-1}.
bool check_final_appearance(const Word& seq, unsigned n);

bool is_prime(unsigned q) noexcept;

struct PalindromeCheck {
  unsigned q = 0;
  unsigned d = 0;
  bool palindrome = false;  // o_2 followed by one 0 reads the same backwards
  bool prime = false;
  bool consistent() const noexcept { return palindrome == prime; }
};

PalindromeCheck check_palindrome_remark(unsigned q, unsigned d);

struct AggregationCheck {
  bool ok = true;
  unsigned failing_rank = 0;  // rank l whose alternating windows are split
  std::string detail;
};

// In o_n, for every rank l = 2..q-1, the alternating n-windows with
// increment l*d are grouped into translate orbits of size q/gcd(q,l) (one per
// cycle of g_l); each orbit must occupy consecutive window positions.
AggregationCheck check_alternating_aggregation(const SequenceRecord& opposite);

}  // namespace dbseq
