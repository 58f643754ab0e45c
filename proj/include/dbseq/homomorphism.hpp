#pragma once

// The difference homomorphism D_beta(x_1..x_l) = (beta(x_2-x_1), ...,
// beta(x_l-x_{l-1})) mod q, and the repetition cleanup that turns the image
// of a prefer-opposite sequence into the prefer-higher sequence of one order
// lower.

#include <cstddef>
#include <optional>
#include <vector>

#include "dbseq/words.hpp"

namespace dbseq {

// Inverse of a modulo q. Throws NotCoprime when gcd(a, q) != 1.
unsigned modular_inverse(unsigned a, unsigned q);

class HomomorphismSpec {
 public:
  // Throws NotCoprime unless gcd(beta, q) = 1.
  HomomorphismSpec(Alphabet alphabet, Digit beta);

  Alphabet alphabet() const noexcept { return alphabet_; }
  unsigned q() const noexcept { return alphabet_.size(); }
  Digit beta() const noexcept { return beta_; }
  Digit beta_inv() const noexcept { return beta_inv_; }

 private:
  Alphabet alphabet_;
  Digit beta_;
  Digit beta_inv_;
};

// beta = d^{-1}(q-1) mod q.
Digit beta_for(unsigned d, unsigned q);

// Requires x.size() >= 2; result has length x.size() - 1.
Word apply_dbeta(const Word& x, const HomomorphismSpec& spec);

// The q words of length w.size()+1 mapping to w, ordered by leading digit.
std::vector<Word> preimages(const Word& w, const HomomorphismSpec& spec);

struct CleanupResult {
  Word image;
  std::vector<std::size_t> kept_indices;  // positions >= n-2 whose window was new
  Word compact;
};

// Keeps image positions 0..n-3 unconditionally, then keeps position i >= n-2
// iff the (n-1)-window ending at i has not occurred earlier.
// Requires image.size() >= n-1 and n >= 2.
CleanupResult cleanup(const Word& image, unsigned n);

struct MappingReport {
  unsigned q = 0;
  unsigned d = 0;
  unsigned n = 0;
  Digit beta = 0;
  bool equal = false;
  std::optional<std::size_t> first_mismatch;
  std::size_t kept_windows = 0;      // windows surviving cleanup
  std::size_t expected_windows = 0;  // q^(n-1)
  Word image;
  Word compact;
  Word reference;  // prefer-higher sequence of order n-1
};

// cleanup(D_beta(o_n)) against h_{n-1}. Throws NotCoprime.
MappingReport verify_mapping(unsigned q, unsigned d, unsigned n);

// Joint walk of o_n and D_beta(o_n): every n-window followed by x_n + j d
// must map to an image window followed by (q - j) mod q, and conversely.
bool check_succession_correspondence(unsigned q, unsigned d, unsigned n);

}  // namespace dbseq
