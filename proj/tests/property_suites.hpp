#pragma once

// Property suites shared by test_properties and the acceptance binary. Each
// suite checks a structural claim over a fixed grid and collects
// counterexamples instead of stopping at the first one.

#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dbseq/generator.hpp"
#include "dbseq/homomorphism.hpp"
#include "dbseq/preference.hpp"
#include "dbseq/verifier.hpp"
#include "oracles.hpp"

namespace suites {

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::vector<std::string> failures;
  std::string summary;

  bool ok() const { return failures.empty(); }
  void fail(std::string msg) { failures.push_back(std::move(msg)); }
};

inline std::string text(const oracle::Digits& w) {
  std::string s;
  for (auto d : w) s += static_cast<char>(d < 10 ? '0' + d : 'a' + d - 10);
  return s;
}

inline std::vector<std::pair<unsigned, unsigned>> coprime_pairs(unsigned q_min, unsigned q_max) {
  std::vector<std::pair<unsigned, unsigned>> out;
  for (unsigned q = q_min; q <= q_max; ++q)
    for (unsigned d = 1; d < q; ++d)
      if (dbseq::gcd(d, q) == 1) out.emplace_back(q, d);
  return out;
}

inline dbseq::PreferenceFunction random_preference(std::mt19937& rng, unsigned q, unsigned span) {
  std::vector<dbseq::Digit> table;
  std::vector<dbseq::Digit> perm(q);
  for (dbseq::WordIndex r = 0; r < dbseq::word_count(q, span); ++r) {
    std::iota(perm.begin(), perm.end(), dbseq::Digit{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    table.insert(table.end(), perm.begin(), perm.end());
  }
  return dbseq::PreferenceFunction(dbseq::Alphabet(q), span, std::move(table));
}

inline std::string matrix_text(const dbseq::PreferenceFunction& p) {
  std::ostringstream out;
  for (dbseq::WordIndex i = 0; i < p.domain_size(); ++i) {
    out << (i ? " " : "") << i << "->";
    for (auto d : p.row(i)) out << unsigned(d);
  }
  return out.str();
}

// Every n-window occurs at most once and the output ends with its first n-1 digits.
inline SuiteResult window_uniqueness() {
  SuiteResult r{"window uniqueness and suffix", 0, {}};
  auto check = [&](const dbseq::SequenceRecord& rec, const std::string& tag) {
    ++r.cases;
    const auto x = oracle::digits_of(rec.digits);
    const std::size_t n = rec.n;
    for (const auto& [w, c] : oracle::window_counts(x, n))
      if (c > 1) r.fail(tag + ": window " + text(w) + " occurs " + std::to_string(c) + " times");
    if (!std::equal(x.begin(), x.begin() + (n - 1), x.end() - (n - 1)))
      r.fail(tag + ": last n-1 digits differ from the first n-1");
  };
  for (auto [q, d] : coprime_pairs(2, 5))
    for (unsigned n = 2; n <= 6; ++n) {
      const std::string tag = "q=" + std::to_string(q) + " d=" + std::to_string(d) +
                              " n=" + std::to_string(n);
      check(dbseq::generate_prefer_opposite(q, d, n), "opposite " + tag);
      check(dbseq::generate_prefer_same(q, d, n), "same " + tag);
    }
  for (unsigned q = 2; q <= 5; ++q)
    for (unsigned n = 1; n <= 6; ++n) check(dbseq::generate_prefer_higher(q, n), "higher");
  std::mt19937 rng(2606);
  for (int i = 0; i < 200; ++i) {
    const unsigned q = 2 + rng() % 3;
    const unsigned span = rng() % 3;
    const unsigned n = span + 1 + rng() % 3;
    const auto p = random_preference(rng, q, span);
    oracle::Digits init(n);
    for (auto& x : init) x = static_cast<dbseq::Digit>(rng() % q);
    check(dbseq::generate(p, dbseq::Word(dbseq::Alphabet(q), init)),
          "random " + matrix_text(p) + " I=" + text(init));
  }
  return r;
}

// Rows of O and S are permutations; every column function is a bijection;
// the last column of O and the first column of S are the identity.
inline SuiteResult matrix_columns() {
  SuiteResult r{"row permutations and identity columns", 0, {}};
  for (auto [q, d] : coprime_pairs(2, 13)) {
    ++r.cases;
    const std::string tag = "q=" + std::to_string(q) + " d=" + std::to_string(d);
    const auto o = dbseq::make_prefer_opposite(q, d);
    const auto s = dbseq::make_prefer_same(q, d);
    for (const auto* p : {&o, &s}) {
      for (unsigned a = 0; a < q; ++a) {
        std::set<unsigned> row(p->row(a).begin(), p->row(a).end());
        if (row.size() != q) r.fail(tag + ": row " + std::to_string(a) + " is not a permutation");
      }
      for (unsigned k = 1; k <= q; ++k) {
        std::set<unsigned> col;
        for (unsigned a = 0; a < q; ++a) col.insert(p->row(a)[k - 1]);
        if (col.size() != q) r.fail(tag + ": column " + std::to_string(k) + " not bijective");
      }
    }
    for (unsigned a = 0; a < q; ++a) {
      if (o.row(a)[q - 1] != a) r.fail(tag + ": O column q is not the identity");
      if (s.row(a)[0] != a) r.fail(tag + ": S column 1 is not the identity");
    }
  }
  return r;
}

// In o_n no digit a occurs after the last occurrence of a^{n-1}.
inline SuiteResult final_appearance() {
  SuiteResult r{"final appearance", 0, {}};
  for (auto [q, d] : coprime_pairs(2, 5))
    for (unsigned n = 2; n <= 6; ++n) {
      ++r.cases;
      const auto x = oracle::digits_of(dbseq::generate_prefer_opposite(q, d, n).digits);
      for (unsigned a = 0; a < q; ++a) {
        const oracle::Digits run(n - 1, static_cast<dbseq::Digit>(a));
        const auto last = std::find_end(x.begin(), x.end(), run.begin(), run.end());
        if (last == x.end()) {
          r.fail("o_n q=" + std::to_string(q) + " n=" + std::to_string(n) + ": no " + text(run));
          continue;
        }
        if (std::find(last + (n - 1), x.end(), a) != x.end())
          r.fail("o_n q=" + std::to_string(q) + " d=" + std::to_string(d) + " n=" +
                 std::to_string(n) + ": digit " + std::to_string(a) + " after last " + text(run));
      }
    }
  return r;
}

// In o_n, once the first alternating n-word with step l (l = k*d, 1 < k < q)
// appears, all q/gcd(q,l) of its translates follow at consecutive window
// positions.
inline SuiteResult alternating_translates(unsigned n_min, unsigned n_max) {
  SuiteResult r{"consecutive translates of the first alternating string (n=" +
                    std::to_string(n_min) + ".." + std::to_string(n_max) + ")",
                0, {}};
  for (auto [q, d] : coprime_pairs(2, 5))
    for (unsigned n = n_min; n <= n_max; ++n) {
      const auto x = oracle::digits_of(dbseq::generate_prefer_opposite(q, d, n).digits);
      for (unsigned k = 2; k < q; ++k) {
        ++r.cases;
        const unsigned step = k * d % q;
        auto alternating_from = [&](std::size_t i) {
          for (std::size_t j = i + 1; j < i + n; ++j)
            if (x[j] != (x[j - 1] + step) % q) return false;
          return true;
        };
        std::size_t first = x.size();
        for (std::size_t i = 0; i + n <= x.size(); ++i)
          if (alternating_from(i)) {
            first = i;
            break;
          }
        const std::string tag = "q=" + std::to_string(q) + " d=" + std::to_string(d) +
                                " n=" + std::to_string(n) + " step=" + std::to_string(step);
        if (first == x.size()) {
          r.fail(tag + ": no alternating window");
          continue;
        }
        const oracle::Digits head(x.begin() + first, x.begin() + first + n);
        const std::size_t orbit = q / dbseq::gcd(q, step);
        for (std::size_t t = 1; t < orbit; ++t) {
          // The t-th following window must be a translate of the first one.
          const std::size_t pos = first + t;
          bool translate = pos + n <= x.size();
          for (std::size_t j = 0; translate && j + 1 < n; ++j)
            translate = (x[pos + j + 1] + q - x[pos + j]) % q == step;
          if (!translate) {
            r.fail(tag + ": first " + text(head) + " at window " + std::to_string(first) +
                   ", window " + std::to_string(pos) + " is " +
                   text(oracle::Digits(x.begin() + pos,
                                       x.begin() + std::min(pos + n, x.size()))));
            break;
          }
        }
      }
    }
  return r;
}

// D_beta is invariant under translation and every image word has exactly q
// preimages, all translates of one another (exhaustive for q <= 4, len <= 5).
inline SuiteResult translates_and_preimages() {
  SuiteResult r{"translate invariance and q preimages", 0, {}};
  for (auto [q, beta] : coprime_pairs(2, 4)) {
    const dbseq::HomomorphismSpec spec(dbseq::Alphabet(q), static_cast<dbseq::Digit>(beta));
    for (std::size_t len = 2; len <= 5; ++len) {
      std::map<oracle::Digits, std::vector<oracle::Digits>> fibres;
      for (const auto& x : oracle::all_words(q, len)) {
        ++r.cases;
        const auto img = oracle::dbeta(x, q, beta);
        for (unsigned c = 0; c < q; ++c) {
          oracle::Digits y = x;
          for (auto& v : y) v = static_cast<dbseq::Digit>((v + c) % q);
          if (oracle::dbeta(y, q, beta) != img) r.fail("translate of " + text(x) + " changes image");
        }
        fibres[img].push_back(x);
      }
      for (const auto& [w, xs] : fibres) {
        if (xs.size() != q) r.fail("image " + text(w) + " has " + std::to_string(xs.size()) +
                                   " preimages");
        const auto pre = dbseq::preimages(dbseq::Word(dbseq::Alphabet(q), w), spec);
        std::set<oracle::Digits> got;
        for (const auto& p : pre) got.insert(oracle::digits_of(p));
        if (got != std::set<oracle::Digits>(xs.begin(), xs.end()))
          r.fail("preimages of " + text(w) + " disagree with exhaustive search");
      }
    }
  }
  return r;
}

struct PredictorCase {
  std::string label;
  dbseq::PreferenceFunction p;
  std::vector<dbseq::WordIndex> cycle;
  unsigned n;
};

// Compares the predicted missing set with the brute-force missing set of (P, I)
// where I lies on the selected g_q cycle: M must be missed, and when the
// exactness condition holds nothing else may be missed.
inline bool check_predictor(SuiteResult& r, const PredictorCase& c) {
  ++r.cases;
  const auto a = dbseq::predict_missing(c.p, c.cycle, c.n);
  const dbseq::Word init = dbseq::initial_word_on_cycle(c.p, c.cycle.front(), c.n);
  const auto seq = oracle::digits_of(dbseq::generate(c.p, init).digits);
  const auto actual = oracle::missing_words(seq, c.p.q(), c.n);
  std::set<oracle::Digits> predicted;
  for (auto w : *a.predicted_missing)
    predicted.insert(oracle::digits_of(dbseq::decode(w, dbseq::Alphabet(c.p.q()), c.n)));
  std::string present;
  for (const auto& w : predicted)
    if (!actual.count(w)) present += " " + text(w);
  std::string extra;
  if (a.exact)
    for (const auto& w : actual)
      if (!predicted.count(w)) extra += " " + text(w);
  if (present.empty() && extra.empty()) return true;
  std::string msg = c.label + " n=" + std::to_string(c.n) + " I=" + init.str() +
                    " q'=" + std::to_string(*a.q_prime) + (a.exact ? " exact" : "");
  if (!present.empty()) msg += "; predicted missing but present:" + present;
  if (!extra.empty()) msg += "; missing but not predicted:" + extra;
  r.fail(msg);
  return false;
}

inline SuiteResult predictor_families() {
  SuiteResult r{"missing-set predictor on O, S and prefer-higher", 0, {}};
  for (auto [q, d] : coprime_pairs(2, 5))
    for (unsigned n = 2; n <= 5; ++n) {
      const std::string tag = "q=" + std::to_string(q) + " d=" + std::to_string(d);
      for (auto p : {dbseq::make_prefer_opposite(q, d), dbseq::make_prefer_same(q, d)}) {
        const auto gq = dbseq::analyze_cycles(p, q);
        for (const auto& cyc : gq.cycles) check_predictor(r, {tag, p, cyc.members, n});
      }
    }
  for (unsigned q = 2; q <= 5; ++q)
    for (unsigned n = 1; n <= 5; ++n)
      check_predictor(r, {"higher q=" + std::to_string(q), dbseq::make_prefer_higher(q),
                          std::vector<dbseq::WordIndex>{0}, n});
  return r;
}

// Random span-1 and span-2 preference functions at q in {2,3}, n in {3,4};
// every g_q cycle of every function is tried.
inline SuiteResult predictor_random(unsigned functions, std::uint32_t seed) {
  SuiteResult r{"missing-set predictor on random preference functions", 0, {}};
  std::mt19937 rng(seed);
  std::array<std::size_t, 2> total{}, failed{};  // [single g_q cycle, several]
  for (unsigned i = 0; i < functions; ++i) {
    const unsigned q = 2 + i % 2;
    const unsigned span = 1 + (i / 2) % 2;
    const auto p = random_preference(rng, q, span);
    const auto gq = dbseq::analyze_cycles(p, q);
    const std::size_t bucket = gq.cycles.size() == 1 ? 0 : 1;
    for (unsigned n = 3; n <= 4; ++n)
      for (const auto& cyc : gq.cycles) {
        ++total[bucket];
        if (!check_predictor(r, {matrix_text(p), p, cyc.members, n})) ++failed[bucket];
      }
  }
  r.summary = "single g_q cycle: " + std::to_string(failed[0]) + "/" + std::to_string(total[0]) +
              " failing; several g_q cycles: " + std::to_string(failed[1]) + "/" +
              std::to_string(total[1]) + " failing";
  return r;
}

}  // namespace suites
