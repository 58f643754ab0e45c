#include "dbseq/generator.hpp"

#include "dbseq/errors.hpp"

namespace dbseq {

std::string to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::opposite: return "opposite";
    case SequenceKind::same: return "same";
    case SequenceKind::higher: return "higher";
    case SequenceKind::custom: return "custom";
  }
  return "custom";
}

std::string SequenceRecord::label() const {
  if (kind == SequenceKind::opposite || kind == SequenceKind::same) {
    return to_string(kind) + "(d=" + std::to_string(d) + ")";
  }
  return to_string(kind);
}

SequenceRecord generate(const PreferenceFunction& p, const Word& initial,
                        SequenceKind kind, unsigned d) {
  const unsigned q = p.q();
  const unsigned s = p.span();
  const auto n = static_cast<unsigned>(initial.size());
  if (initial.q() != q) throw InvalidArgument("initial word uses a different alphabet");
  if (n <= s) {
    throw InvalidArgument("order n=" + std::to_string(n) + " must exceed span " +
                          std::to_string(s));
  }
  const WordIndex windows = word_count(q, n);
  if (windows > kMaxWindows) {
    throw CapacityExceeded("q^n=" + std::to_string(windows) +
                           " exceeds the 2^30 window limit");
  }
  const WordIndex suffix_mod = windows / q;  // q^(n-1)
  const WordIndex context_mod = p.domain_size();

  WindowSet seen(windows);
  std::vector<Digit> out(initial.digits().begin(), initial.digits().end());
  out.reserve(windows + n - 1);
  WordIndex current = encode(initial);
  seen.insert(current);
  std::uint64_t visited = 1;

  for (;;) {
    const WordIndex suffix = current % suffix_mod;
    const WordIndex context = current % context_mod;
    bool extended = false;
    for (Rank k = 1; k <= q; ++k) {
      const Digit c = p.choice(context, k);
      const WordIndex candidate = suffix * q + c;
      if (seen.insert_if_absent(candidate)) {
        out.push_back(c);
        current = candidate;
        ++visited;
        extended = true;
        break;
      }
    }
    if (!extended) break;
  }

  return SequenceRecord{Word(p.alphabet(), std::move(out)), q, n, initial, kind,
                        d, visited};
}

SequenceRecord generate_prefer_opposite(unsigned q, unsigned d, unsigned n) {
  const PreferenceFunction p = make_prefer_opposite(q, d);
  if (n < 2) throw InvalidArgument("prefer-opposite requires n >= 2");
  return generate(p, Word::constant(p.alphabet(), 0, n), SequenceKind::opposite, d);
}

SequenceRecord generate_prefer_same(unsigned q, unsigned d, unsigned n,
                                    unsigned start) {
  const PreferenceFunction p = make_prefer_same(q, d);
  if (n < 2) throw InvalidArgument("prefer-same requires n >= 2");
  if (start >= q) throw InvalidArgument("start digit outside alphabet");
  const auto increment = static_cast<Digit>((d * (q - 1)) % q);
  const Word initial =
      alternating_word(p.alphabet(), static_cast<Digit>(start), increment, n);
  return generate(p, initial, SequenceKind::same, d);
}

SequenceRecord generate_prefer_higher(unsigned q, unsigned n) {
  const PreferenceFunction p = make_prefer_higher(q);
  if (n < 1) throw InvalidArgument("prefer-higher requires n >= 1");
  return generate(p, Word::constant(p.alphabet(), 0, n), SequenceKind::higher, 0);
}

}  // namespace dbseq
