#pragma once

// Discrepancy of a q-ary sequence: the largest gap between two symbol
// frequencies over all prefixes.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "dbseq/words.hpp"

namespace dbseq {

struct DiscrepancyProfile {
  unsigned q = 0;
  // prefix_gap[i] is the max pairwise frequency gap of the prefix of length i+1.
  std::vector<std::uint64_t> prefix_gap;
  std::uint64_t value = 0;
  std::size_t argmax_prefix = 0;  // smallest prefix length attaining value
};

DiscrepancyProfile discrepancy(std::span<const Digit> seq, unsigned q);
DiscrepancyProfile discrepancy(const Word& seq);

// Same value as discrepancy(seq, q).value without storing the profile.
std::uint64_t discrepancy_value(std::span<const Digit> seq, unsigned q);

struct TableCell {
  unsigned q = 0;
  unsigned n = 0;
  // Empty when q^n exceeded the cap.
  std::optional<std::uint64_t> prefer_same;
  std::optional<std::uint64_t> prefer_opposite;
  std::optional<std::uint64_t> prefer_higher;

  bool skipped() const noexcept { return !prefer_higher.has_value(); }
};

// Discrepancy of s_n (d=1, start 0), o_n (d=1) and h_n for every (q, n)
// pair, q-major. Cells with q^n > max_words are skipped. Cells are computed
// in parallel with OpenMP.
std::vector<TableCell> discrepancy_table(std::span<const unsigned> qs,
                                         std::span<const unsigned> ns,
                                         WordIndex max_words = kMaxWindows);
// Single-threaded reference for discrepancy_table.
std::vector<TableCell> discrepancy_table_serial(std::span<const unsigned> qs,
                                                std::span<const unsigned> ns,
                                                WordIndex max_words = kMaxWindows);

TableCell discrepancy_cell(unsigned q, unsigned n, WordIndex max_words = kMaxWindows);

// CSV with header q,n,prefer_same,prefer_opposite,prefer_higher; "-" marks
// skipped cells.
void write_table_csv(std::ostream& out, std::span<const TableCell> cells);

enum class ConjectureKind { same, opposite };

// Closed forms observed for q = 2 at large n. Requires n >= 2.
std::uint64_t conjectured_q2(ConjectureKind kind, unsigned n);

// Alternative conventions for one cell, used when a value disagrees with a
// reference: every coprime d, every alternating start for prefer-same, and the
// period-only variant that drops the trailing n-1 wrap-around digits.
struct CellVariant {
  std::string family;  // "same", "opposite" or "higher"
  unsigned d = 0;
  unsigned start = 0;
  bool period_only = false;
  std::uint64_t value = 0;
};

std::vector<CellVariant> diagnose_cell(unsigned q, unsigned n);

}  // namespace dbseq
