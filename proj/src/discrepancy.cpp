#include "dbseq/discrepancy.hpp"

#include <ostream>
#include <string>

#include "dbseq/errors.hpp"
#include "dbseq/generator.hpp"

namespace dbseq {

namespace {

// Tracks max and min symbol counts in O(1) per appended digit using a
// histogram of how many symbols currently hold each count.
class FrequencyGap {
 public:
  FrequencyGap(unsigned q, std::size_t length)
      : counts_(q, 0), holders_(length + 2, 0), min_holders_(q) {
    holders_[0] = q;
  }

  std::uint64_t push(Digit a) {
    const std::uint64_t c = counts_[a]++;
    --holders_[c];
    ++holders_[c + 1];
    if (c + 1 > max_) max_ = c + 1;
    if (c == min_ && --min_holders_ == 0) {
      ++min_;
      min_holders_ = holders_[min_];
    }
    return max_ - min_;
  }

 private:
  std::vector<std::uint64_t> counts_;
  std::vector<std::uint64_t> holders_;
  std::uint64_t min_holders_;
  std::uint64_t max_ = 0;
  std::uint64_t min_ = 0;
};

void check_digits(std::span<const Digit> seq, unsigned q) {
  if (seq.empty()) throw InvalidArgument("discrepancy of an empty sequence");
  for (Digit d : seq) {
    if (d >= q) throw InvalidArgument("digit outside alphabet");
  }
}

}  // namespace

DiscrepancyProfile discrepancy(std::span<const Digit> seq, unsigned q) {
  Alphabet alphabet(q);
  check_digits(seq, q);
  DiscrepancyProfile profile;
  profile.q = q;
  profile.prefix_gap.reserve(seq.size());
  FrequencyGap gap(q, seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const std::uint64_t g = gap.push(seq[i]);
    profile.prefix_gap.push_back(g);
    if (g > profile.value) {
      profile.value = g;
      profile.argmax_prefix = i + 1;
    }
  }
  return profile;
}

DiscrepancyProfile discrepancy(const Word& seq) { return discrepancy(seq.digits(), seq.q()); }

std::uint64_t discrepancy_value(std::span<const Digit> seq, unsigned q) {
  Alphabet alphabet(q);
  check_digits(seq, q);
  FrequencyGap gap(q, seq.size());
  std::uint64_t best = 0;
  for (Digit d : seq) best = std::max(best, gap.push(d));
  return best;
}

TableCell discrepancy_cell(unsigned q, unsigned n, WordIndex max_words) {
  TableCell cell;
  cell.q = q;
  cell.n = n;
  WordIndex words = 0;
  try {
    words = word_count(q, n);
  } catch (const CapacityExceeded&) {
    return cell;
  }
  if (words > max_words || words > kMaxWindows) return cell;
  auto value = [q](const SequenceRecord& r) { return discrepancy_value(r.digits.digits(), q); };
  cell.prefer_same = value(generate_prefer_same(q, 1, n));
  cell.prefer_opposite = value(generate_prefer_opposite(q, 1, n));
  cell.prefer_higher = value(generate_prefer_higher(q, n));
  return cell;
}

namespace {

std::vector<TableCell> blank_cells(std::span<const unsigned> qs,
                                   std::span<const unsigned> ns) {
  std::vector<TableCell> cells;
  cells.reserve(qs.size() * ns.size());
  for (unsigned q : qs) {
    Alphabet check(q);
    for (unsigned n : ns) {
      if (n < 2) throw InvalidArgument("table requires n >= 2");
      cells.push_back(TableCell{q, n, {}, {}, {}});
    }
  }
  return cells;
}

}  // namespace

std::vector<TableCell> discrepancy_table_serial(std::span<const unsigned> qs,
                                                std::span<const unsigned> ns,
                                                WordIndex max_words) {
  std::vector<TableCell> cells = blank_cells(qs, ns);
  for (auto& cell : cells) cell = discrepancy_cell(cell.q, cell.n, max_words);
  return cells;
}

std::vector<TableCell> discrepancy_table(std::span<const unsigned> qs,
                                         std::span<const unsigned> ns,
                                         WordIndex max_words) {
  std::vector<TableCell> cells = blank_cells(qs, ns);
  const auto count = static_cast<std::int64_t>(cells.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) {
    cells[i] = discrepancy_cell(cells[i].q, cells[i].n, max_words);
  }
  return cells;
}

void write_table_csv(std::ostream& out, std::span<const TableCell> cells) {
  auto field = [](const std::optional<std::uint64_t>& v) {
    return v ? std::to_string(*v) : std::string("-");
  };
  out << "q,n,prefer_same,prefer_opposite,prefer_higher\n";
  for (const auto& c : cells) {
    out << c.q << ',' << c.n << ',' << field(c.prefer_same) << ','
        << field(c.prefer_opposite) << ',' << field(c.prefer_higher) << '\n';
  }
}

std::uint64_t conjectured_q2(ConjectureKind kind, unsigned n) {
  if (n < 2) throw InvalidArgument("conjectured_q2 requires n >= 2");
  const std::uint64_t m = n;
  if (kind == ConjectureKind::same) {
    if (m % 2 == 0) return m * (m - 2) / 4;
    if ((m - 1) % 4 == 0) return (m - 1) * (m - 1) / 4;
    return (m - 1) * (m - 1) / 4 + 1;
  }
  if (m % 2 == 0) return (m / 2) * (m / 2) + 1;
  const std::uint64_t h = (m - 1) / 2;
  return h * h + h + 1;
}

std::vector<CellVariant> diagnose_cell(unsigned q, unsigned n) {
  std::vector<CellVariant> variants;
  auto add = [&](const std::string& family, unsigned d, unsigned start,
                 const SequenceRecord& r) {
    const auto digits = r.digits.digits();
    variants.push_back({family, d, start, false, discrepancy_value(digits, q)});
    variants.push_back({family, d, start, true,
                        discrepancy_value(digits.first(digits.size() - (n - 1)), q)});
  };
  for (unsigned d = 1; d < q; ++d) {
    if (gcd(d, q) != 1) continue;
    for (unsigned start = 0; start < q; ++start) {
      add("same", d, start, generate_prefer_same(q, d, n, start));
    }
    add("opposite", d, 0, generate_prefer_opposite(q, d, n));
  }
  add("higher", 0, 0, generate_prefer_higher(q, n));
  return variants;
}

}  // namespace dbseq
