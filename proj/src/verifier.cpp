#include "dbseq/verifier.hpp"

#include <algorithm>
#include <omp.h>

#include "dbseq/errors.hpp"
#include "dbseq/preference.hpp"

namespace dbseq {

namespace {

WordIndex checked_window_count(unsigned q, unsigned n) {
  const WordIndex windows = word_count(q, n);
  if (windows > kMaxWindows) throw CapacityExceeded("q^n exceeds 2^30");
  return windows;
}

std::string word_text(WordIndex index, unsigned q, unsigned n) {
  return decode(index, Alphabet(q), n).str();
}

}  // namespace

std::vector<std::uint32_t> window_census_serial(std::span<const Digit> seq,
                                                unsigned q, unsigned n) {
  const WordIndex modulus = checked_window_count(q, n);
  std::vector<std::uint32_t> counts(modulus, 0);
  if (seq.size() < n) return counts;
  WordIndex window = encode(seq.first(n - 1), q);
  for (std::size_t i = n - 1; i < seq.size(); ++i) {
    window = (window * q + seq[i]) % modulus;
    ++counts[window];
  }
  return counts;
}

std::vector<std::uint32_t> window_census(std::span<const Digit> seq, unsigned q,
                                         unsigned n) {
  const WordIndex modulus = checked_window_count(q, n);
  std::vector<std::uint32_t> counts(modulus, 0);
  if (seq.size() < n) return counts;
  const auto total = static_cast<std::int64_t>(seq.size() - n + 1);
  std::uint32_t* data = counts.data();

#pragma omp parallel
  {
    const std::int64_t threads = omp_get_num_threads();
    const std::int64_t id = omp_get_thread_num();
    const std::int64_t begin = total * id / threads;
    const std::int64_t end = total * (id + 1) / threads;
    if (begin < end) {
      WordIndex window = encode(seq.subspan(begin, n - 1), q);
      for (std::int64_t start = begin; start < end; ++start) {
        window = (window * q + seq[start + n - 1]) % modulus;
#pragma omp atomic update
        ++data[window];
      }
    }
  }
  return counts;
}

VerificationReport census(const Word& seq, unsigned n) {
  if (n < 1 || seq.size() < n) {
    throw InvalidArgument("census: sequence shorter than the window length");
  }
  const unsigned q = seq.q();
  VerificationReport report;
  report.q = q;
  report.n = n;
  report.windows = seq.size() - n + 1;
  report.census = window_census(seq.digits(), q, n);
  for (WordIndex i = 0; i < report.census.size(); ++i) {
    if (report.census[i] == 0) report.missing.push_back(i);
    if (report.census[i] > 1) report.duplicated.push_back(i);
  }
  report.is_full = report.missing.empty() && report.duplicated.empty() &&
                   report.windows == report.census.size();
  const auto d = seq.digits();
  report.suffix_ok = std::equal(d.begin(), d.begin() + (n - 1), d.end() - (n - 1));
  for (WordIndex w : report.duplicated) {
    report.violations.push_back("window " + word_text(w, q, n) + " occurs " +
                                std::to_string(report.census[w]) + " times");
  }
  return report;
}

VerificationReport verify(const SequenceRecord& record) {
  VerificationReport report = census(record.digits, record.n);
  const unsigned q = record.q;
  const unsigned n = record.n;
  if (!report.suffix_ok) {
    report.violations.push_back("sequence does not end with its first n-1 digits");
  }
  switch (record.kind) {
    case SequenceKind::opposite: {
      std::vector<WordIndex> expected;
      for (unsigned a = 1; a < q; ++a) {
        expected.push_back(encode(Word::constant(Alphabet(q), static_cast<Digit>(a), n)));
      }
      std::sort(expected.begin(), expected.end());
      if (report.missing != expected) {
        report.violations.push_back("missing set differs from the nonzero constant words");
      }
      report.terminal_expected = expected_terminal(q, record.d, n);
      const auto tail = report.terminal_expected->digits();
      const auto digits = record.digits.digits();
      report.terminal_ok = digits.size() >= tail.size() &&
                           std::equal(tail.begin(), tail.end(), digits.end() - tail.size());
      if (!*report.terminal_ok) {
        report.violations.push_back("sequence does not end with " +
                                    report.terminal_expected->str());
      }
      if (n >= 2) {
        report.final_appearance_ok = check_final_appearance(record.digits, n);
        if (!*report.final_appearance_ok) {
          report.violations.push_back("a digit reappears after its last constant block");
        }
      }
      if (n == 2) {
        report.palindrome = check_palindrome_remark(q, record.d).palindrome;
        if (*report.palindrome != is_prime(q)) {
          report.violations.push_back("palindrome property disagrees with primality of q");
        }
      }
      break;
    }
    case SequenceKind::same:
    case SequenceKind::higher:
      if (!report.is_full) {
        report.violations.push_back("not a full de Bruijn sequence (" +
                                    std::to_string(report.missing.size()) +
                                    " words missing)");
      }
      break;
    case SequenceKind::custom:
      break;
  }
  return report;
}

Word expected_terminal(unsigned q, unsigned d, unsigned n) {
  const PreferenceFunction o = make_prefer_opposite(q, d);
  if (n < 2) throw InvalidArgument("expected_terminal requires n >= 2");
  const ColumnFunction g(o, q - 1);
  // sigma_{q-1-i} = g^i(0) for i = 1..q-1; blocks run sigma_{q-2} .. sigma_0.
  std::vector<Digit> digits;
  digits.reserve(q * (n - 1));
  WordIndex v = 0;
  for (unsigned i = 1; i <= q - 1; ++i) {
    v = g(v);
    digits.insert(digits.end(), n - 1, static_cast<Digit>(v));
  }
  digits.insert(digits.end(), n - 1, Digit{0});
  return Word(Alphabet(q), std::move(digits));
}

bool check_final_appearance(const Word& seq, unsigned n) {
  if (n < 2) throw InvalidArgument("check_final_appearance requires n >= 2");
  const unsigned q = seq.q();
  const auto digits = seq.digits();
  const std::size_t block = n - 1;
  // last_block_end[a]: index just past the last run of n-1 copies of a.
  std::vector<std::optional<std::size_t>> last_block_end(q);
  std::size_t run = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    run = (i > 0 && digits[i] == digits[i - 1]) ? run + 1 : 1;
    if (run >= block) last_block_end[digits[i]] = i + 1;
  }
  for (unsigned a = 0; a < q; ++a) {
    if (!last_block_end[a]) continue;
    const auto tail = digits.subspan(*last_block_end[a]);
    if (std::find(tail.begin(), tail.end(), static_cast<Digit>(a)) != tail.end()) {
      return false;
    }
  }
  return true;
}

bool is_prime(unsigned q) noexcept {
  if (q < 2) return false;
  for (unsigned f = 2; f * f <= q; ++f) {
    if (q % f == 0) return false;
  }
  return true;
}

PalindromeCheck check_palindrome_remark(unsigned q, unsigned d) {
  const SequenceRecord o2 = generate_prefer_opposite(q, d, 2);
  std::vector<Digit> s(o2.digits.digits().begin(), o2.digits.digits().end());
  s.push_back(0);
  PalindromeCheck check;
  check.q = q;
  check.d = d;
  check.palindrome = std::equal(s.begin(), s.begin() + s.size() / 2, s.rbegin());
  check.prime = is_prime(q);
  return check;
}

AggregationCheck check_alternating_aggregation(const SequenceRecord& opposite) {
  const unsigned q = opposite.q;
  const unsigned n = opposite.n;
  const unsigned d = opposite.d;
  const auto digits = opposite.digits.digits();
  const std::size_t windows = digits.size() - n + 1;
  AggregationCheck result;

  for (unsigned rank = 2; rank + 1 <= q; ++rank) {
    const unsigned delta = (rank * d) % q;
    const unsigned classes = gcd(q, rank);
    const unsigned orbit_size = q / classes;
    // Positions of alternating windows, bucketed by orbit (first digit mod classes).
    std::vector<std::vector<std::size_t>> orbit_positions(classes);
    for (std::size_t i = 0; i < windows; ++i) {
      bool alternating = true;
      for (unsigned j = 0; j + 1 < n && alternating; ++j) {
        alternating = (digits[i + j] + delta) % q == digits[i + j + 1];
      }
      if (alternating) orbit_positions[digits[i] % classes].push_back(i);
    }
    for (unsigned c = 0; c < classes; ++c) {
      const auto& pos = orbit_positions[c];
      const bool consecutive = pos.size() == orbit_size &&
                               pos.back() - pos.front() + 1 == pos.size();
      if (!consecutive) {
        result.ok = false;
        result.failing_rank = rank;
        result.detail = "q=" + std::to_string(q) + " d=" + std::to_string(d) +
                        " n=" + std::to_string(n) + ": increment " +
                        std::to_string(delta) + " orbit of " +
                        std::to_string(c) + " has " + std::to_string(pos.size()) +
                        " windows, not consecutive";
        return result;
      }
    }
  }
  return result;
}

}  // namespace dbseq
