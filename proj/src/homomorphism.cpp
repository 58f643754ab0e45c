#include "dbseq/homomorphism.hpp"

#include <algorithm>
#include <tuple>
#include <utility>

#include "dbseq/errors.hpp"
#include "dbseq/generator.hpp"

namespace dbseq {

unsigned modular_inverse(unsigned a, unsigned q) {
  a %= q;
  if (gcd(a, q) != 1) {
    throw NotCoprime(std::to_string(a) + " has no inverse modulo " +
                     std::to_string(q));
  }
  // Extended Euclid on signed values.
  long long r0 = q, r1 = a, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const long long quot = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - quot * r1};
    std::tie(t0, t1) = std::pair{t1, t0 - quot * t1};
  }
  const long long m = static_cast<long long>(q);
  return static_cast<unsigned>(((t0 % m) + m) % m);
}

HomomorphismSpec::HomomorphismSpec(Alphabet alphabet, Digit beta)
    : alphabet_(alphabet),
      beta_(beta),
      beta_inv_(static_cast<Digit>(modular_inverse(beta, alphabet.size()))) {
  if (beta >= alphabet.size()) throw NotCoprime("beta outside alphabet");
}

Digit beta_for(unsigned d, unsigned q) {
  Alphabet alphabet(q);
  if (d >= q) throw NotCoprime("d outside alphabet");
  return static_cast<Digit>((modular_inverse(d, q) * (q - 1)) % q);
}

Word apply_dbeta(const Word& x, const HomomorphismSpec& spec) {
  if (x.size() < 2) throw InvalidArgument("D_beta needs a word of length >= 2");
  if (x.q() != spec.q()) throw InvalidArgument("alphabet mismatch");
  const unsigned q = spec.q();
  std::vector<Digit> out(x.size() - 1);
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const unsigned diff = (x[i + 1] + q - x[i]) % q;
    out[i] = static_cast<Digit>((spec.beta() * diff) % q);
  }
  return Word(x.alphabet(), std::move(out));
}

std::vector<Word> preimages(const Word& w, const HomomorphismSpec& spec) {
  if (w.q() != spec.q()) throw InvalidArgument("alphabet mismatch");
  const unsigned q = spec.q();
  std::vector<Word> result;
  result.reserve(q);
  for (unsigned lead = 0; lead < q; ++lead) {
    std::vector<Digit> digits(w.size() + 1);
    digits[0] = static_cast<Digit>(lead);
    for (std::size_t i = 1; i < digits.size(); ++i) {
      digits[i] = static_cast<Digit>((digits[i - 1] + spec.beta_inv() * w[i - 1]) % q);
    }
    result.emplace_back(w.alphabet(), std::move(digits));
  }
  return result;
}

CleanupResult cleanup(const Word& image, unsigned n) {
  if (n < 2) throw InvalidArgument("cleanup requires n >= 2");
  const std::size_t width = n - 1;
  if (image.size() < width) throw InvalidArgument("image shorter than one window");
  const unsigned q = image.q();
  const WordIndex windows = word_count(q, width);
  if (windows > kMaxWindows) throw CapacityExceeded("q^(n-1) exceeds 2^30");

  WindowSet seen(windows);
  std::vector<std::size_t> kept;
  std::vector<Digit> compact(image.digits().begin(),
                             image.digits().begin() + (width - 1));
  const auto digits = image.digits();
  WordIndex window = encode(digits.first(width - 1), q);
  for (std::size_t i = width - 1; i < digits.size(); ++i) {
    window = (window * q + digits[i]) % windows;
    if (seen.insert_if_absent(window)) {
      kept.push_back(i);
      compact.push_back(digits[i]);
    }
  }
  // compact is never empty: the first full window is always new.
  return CleanupResult{image, std::move(kept), Word(image.alphabet(), std::move(compact))};
}

MappingReport verify_mapping(unsigned q, unsigned d, unsigned n) {
  if (n < 2) throw InvalidArgument("verify_mapping requires n >= 2");
  const SequenceRecord opposite = generate_prefer_opposite(q, d, n);
  const HomomorphismSpec spec(Alphabet(q), beta_for(d, q));
  CleanupResult cleaned = cleanup(apply_dbeta(opposite.digits, spec), n);
  const SequenceRecord higher = generate_prefer_higher(q, n - 1);

  MappingReport report{q, d, n, spec.beta(), false, std::nullopt,
                       cleaned.kept_indices.size(),
                       static_cast<std::size_t>(word_count(q, n - 1)),
                       cleaned.image, cleaned.compact, higher.digits};
  const auto a = report.compact.digits();
  const auto b = report.reference.digits();
  const std::size_t common = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (a[i] != b[i]) {
      report.first_mismatch = i;
      break;
    }
  }
  if (!report.first_mismatch && a.size() != b.size()) report.first_mismatch = common;
  report.equal = !report.first_mismatch && report.kept_windows == report.expected_windows;
  return report;
}

bool check_succession_correspondence(unsigned q, unsigned d, unsigned n) {
  const SequenceRecord opposite = generate_prefer_opposite(q, d, n);
  const HomomorphismSpec spec(Alphabet(q), beta_for(d, q));
  const Word image = apply_dbeta(opposite.digits, spec);
  const unsigned d_inv = modular_inverse(d, q);
  const auto x = opposite.digits.digits();
  for (std::size_t i = 0; i + n < x.size(); ++i) {
    const unsigned last = x[i + n - 1];
    const unsigned next = x[i + n];
    const unsigned j = ((next + q - last) % q) * d_inv % q;
    if (image[i + n - 1] != (q - j) % q) return false;
    // Converse: the successor digit recovered from the image digit.
    const unsigned j_back = (q - image[i + n - 1]) % q;
    if ((last + j_back * d) % q != next) return false;
  }
  return true;
}

}  // namespace dbseq
