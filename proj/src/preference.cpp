#include "dbseq/preference.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "dbseq/errors.hpp"

namespace dbseq {

namespace {

bool is_permutation_row(std::span<const Digit> row, unsigned q) {
  std::vector<bool> seen(q, false);
  for (Digit d : row) {
    if (d >= q || seen[d]) return false;
    seen[d] = true;
  }
  return true;
}

void require_coprime(unsigned q, unsigned d) {
  if (d >= q || gcd(d, q) != 1) {
    throw NotCoprime("d=" + std::to_string(d) + " is not a unit modulo q=" +
                     std::to_string(q));
  }
}

}  // namespace

PreferenceFunction::PreferenceFunction(Alphabet alphabet, unsigned declared_span,
                                       std::vector<Digit> table)
    : alphabet_(alphabet), declared_span_(declared_span), span_(declared_span) {
  const unsigned q = alphabet.size();
  const WordIndex declared_domain = word_count(q, declared_span);
  if (declared_domain > kMaxWindows) {
    throw CapacityExceeded("preference domain q^s too large");
  }
  if (table.size() != declared_domain * q) {
    throw InvalidArgument("preference table has " + std::to_string(table.size()) +
                          " entries, expected " +
                          std::to_string(declared_domain * q));
  }
  for (WordIndex ctx = 0; ctx < declared_domain; ++ctx) {
    if (!is_permutation_row({table.data() + ctx * q, q}, q)) {
      throw InvalidArgument("preference row " + std::to_string(ctx) +
                            " is not a permutation of the alphabet");
    }
  }

  // Smallest t such that each row depends only on the last t context digits,
  // i.e. row(x) == row(x mod q^t).
  for (unsigned t = 0; t <= declared_span; ++t) {
    const WordIndex reduced = word_count(q, t);
    bool determined = true;
    for (WordIndex ctx = 0; ctx < declared_domain && determined; ++ctx) {
      const Digit* a = table.data() + ctx * q;
      const Digit* b = table.data() + (ctx % reduced) * q;
      determined = std::equal(a, a + q, b);
    }
    if (determined) {
      span_ = t;
      break;
    }
  }
  domain_size_ = word_count(q, span_);
  table_.assign(table.begin(), table.begin() + domain_size_ * q);
  if (span_ != declared_span_) {
    declared_table_ = std::move(table);
  }
}

std::span<const Digit> PreferenceFunction::declared_row(
    WordIndex declared_context) const noexcept {
  if (declared_table_.empty()) return row(declared_context);
  return {declared_table_.data() + declared_context * q(), q()};
}

Rank PreferenceFunction::rank_of(WordIndex context, Digit digit) const noexcept {
  const auto r = row(context);
  return static_cast<Rank>(std::find(r.begin(), r.end(), digit) - r.begin()) + 1;
}

PreferenceFunction make_prefer_opposite(unsigned q, unsigned d) {
  Alphabet alphabet(q);
  require_coprime(q, d);
  std::vector<Digit> table(q * q);
  for (unsigned i = 0; i < q; ++i)
    for (unsigned j = 0; j < q; ++j)
      table[i * q + j] = static_cast<Digit>((i + (j + 1) * d) % q);
  return PreferenceFunction(alphabet, 1, std::move(table));
}

PreferenceFunction make_prefer_same(unsigned q, unsigned d) {
  Alphabet alphabet(q);
  require_coprime(q, d);
  std::vector<Digit> table(q * q);
  for (unsigned i = 0; i < q; ++i)
    for (unsigned j = 0; j < q; ++j)
      table[i * q + j] = static_cast<Digit>((i + j * d) % q);
  return PreferenceFunction(alphabet, 1, std::move(table));
}

PreferenceFunction make_prefer_higher(unsigned q) {
  Alphabet alphabet(q);
  std::vector<Digit> table(q);
  for (unsigned j = 0; j < q; ++j) table[j] = static_cast<Digit>(q - 1 - j);
  return PreferenceFunction(alphabet, 0, std::move(table));
}

PreferenceFunction read_matrix(std::istream& in) {
  std::string line;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      if (out.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line(line)) throw MalformedMatrix("matrix file: missing header 'q s'");
  unsigned q = 0, s = 0;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> q >> s) || (header >> extra)) {
      throw MalformedMatrix("matrix file: header must be 'q s'");
    }
  }
  if (q < 2 || q > Alphabet::kMaxSize) {
    throw MalformedMatrix("matrix file: q=" + std::to_string(q) + " out of range");
  }
  Alphabet alphabet(q);
  WordIndex domain = 0;
  try {
    domain = word_count(q, s);
  } catch (const CapacityExceeded&) {
    throw MalformedMatrix("matrix file: q^s too large");
  }
  if (domain > 1'000'000) throw MalformedMatrix("matrix file: q^s exceeds 10^6 rows");

  std::vector<Digit> table(domain * q);
  std::vector<bool> filled(domain, false);
  for (WordIndex r = 0; r < domain; ++r) {
    if (!next_line(line)) {
      throw MalformedMatrix("matrix file: expected " + std::to_string(domain) +
                            " rows, got " + std::to_string(r));
    }
    std::istringstream fields(line);
    std::vector<unsigned> values;
    unsigned v;
    while (fields >> v) values.push_back(v);
    if (!fields.eof() || values.size() != s + q) {
      throw MalformedMatrix("matrix file: row " + std::to_string(r + 1) +
                            " must hold " + std::to_string(s + q) + " digits");
    }
    WordIndex ctx = 0;
    for (unsigned i = 0; i < s; ++i) {
      if (values[i] >= q) throw MalformedMatrix("matrix file: context digit out of range");
      ctx = ctx * q + values[i];
    }
    if (filled[ctx]) throw MalformedMatrix("matrix file: duplicate context row");
    filled[ctx] = true;
    std::vector<Digit> row;
    for (unsigned j = 0; j < q; ++j) {
      if (values[s + j] >= q) throw MalformedMatrix("matrix file: digit out of range");
      row.push_back(static_cast<Digit>(values[s + j]));
    }
    if (!is_permutation_row(row, q)) {
      throw MalformedMatrix("matrix file: row " + std::to_string(r + 1) +
                            " is not a permutation of 0..q-1");
    }
    std::copy(row.begin(), row.end(), table.begin() + ctx * q);
  }
  if (next_line(line)) throw MalformedMatrix("matrix file: trailing rows");
  return PreferenceFunction(alphabet, s, std::move(table));
}

void write_matrix(std::ostream& out, const PreferenceFunction& p) {
  const unsigned q = p.q();
  const unsigned s = p.declared_span();
  out << q << ' ' << s << '\n';
  const WordIndex domain = word_count(q, s);
  for (WordIndex ctx = 0; ctx < domain; ++ctx) {
    if (s > 0) {
      const Word w = decode(ctx, p.alphabet(), s);
      for (Digit d : w.digits()) out << unsigned(d) << ' ';
    }
    const auto row = p.declared_row(ctx);
    for (unsigned j = 0; j < q; ++j) {
      out << unsigned(row[j]) << (j + 1 < q ? ' ' : '\n');
    }
  }
}

ColumnFunction::ColumnFunction(const PreferenceFunction& p, Rank k)
    : rank_(k), span_(p.span()), next_(p.domain_size()) {
  if (k < 1 || k > p.q()) {
    throw InvalidArgument("rank k=" + std::to_string(k) + " outside 1.." +
                          std::to_string(p.q()));
  }
  const WordIndex domain = p.domain_size();
  for (WordIndex v = 0; v < domain; ++v) {
    next_[v] = span_ == 0 ? 0 : (v * p.q() + p.choice(v, k)) % domain;
  }
}

ColumnFunction column_function(const PreferenceFunction& p, Rank k) {
  return ColumnFunction(p, k);
}

CycleAnalysis analyze_cycles(const PreferenceFunction& p, Rank k) {
  const ColumnFunction g(p, k);
  const WordIndex domain = g.domain_size();

  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  constexpr std::size_t kOnPath = static_cast<std::size_t>(-2);
  std::vector<std::size_t> basin(domain, kUnvisited);
  std::vector<std::vector<WordIndex>> cycles;
  std::vector<WordIndex> path;

  for (WordIndex start = 0; start < domain; ++start) {
    if (basin[start] != kUnvisited) continue;
    path.clear();
    WordIndex v = start;
    while (basin[v] == kUnvisited) {
      basin[v] = kOnPath;
      path.push_back(v);
      v = g(v);
    }
    std::size_t id = basin[v];
    if (id == kOnPath) {
      // Closed a new cycle at v; record it starting from its smallest member.
      std::vector<WordIndex> cycle(std::find(path.begin(), path.end(), v), path.end());
      std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()),
                  cycle.end());
      id = cycles.size();
      cycles.push_back(std::move(cycle));
    }
    for (WordIndex u : path) basin[u] = id;
  }

  CycleAnalysis analysis;
  analysis.q = p.q();
  analysis.span = p.span();
  analysis.rank = k;
  // Order cycles by smallest member so the output is independent of traversal.
  std::vector<std::size_t> order(cycles.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return cycles[a].front() < cycles[b].front();
  });
  std::vector<std::size_t> position(cycles.size());
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;

  analysis.cycles.resize(cycles.size());
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    analysis.cycles[position[i]].members = std::move(cycles[i]);
  }
  for (WordIndex v = 0; v < domain; ++v) {
    const std::size_t owner = position[basin[v]];
    for (std::size_t c = 0; c < analysis.cycles.size(); ++c) {
      auto& sets = analysis.cycles[c];
      (c == owner ? sets.closure : sets.sigma).push_back(v);
    }
  }
  return analysis;
}

std::size_t cycle_of(const CycleAnalysis& analysis, WordIndex vertex) {
  for (std::size_t c = 0; c < analysis.cycles.size(); ++c) {
    const auto& closure = analysis.cycles[c].closure;
    if (std::binary_search(closure.begin(), closure.end(), vertex)) return c;
  }
  throw InvalidArgument("vertex " + std::to_string(vertex) + " outside domain");
}

CycleAnalysis predict_missing(const PreferenceFunction& p,
                              std::span<const WordIndex> cycle, unsigned n) {
  const unsigned q = p.q();
  const unsigned s = p.span();
  if (n <= s) {
    throw InvalidArgument("order n=" + std::to_string(n) +
                          " must exceed span " + std::to_string(s));
  }
  const WordIndex n_words = word_count(q, n);
  if (n_words > kMaxWindows) throw CapacityExceeded("q^n exceeds 2^30");

  CycleAnalysis analysis = analyze_cycles(p, q);
  analysis.order = n;

  std::vector<WordIndex> wanted(cycle.begin(), cycle.end());
  std::sort(wanted.begin(), wanted.end());
  for (std::size_t c = 0; c < analysis.cycles.size(); ++c) {
    std::vector<WordIndex> members = analysis.cycles[c].members;
    std::sort(members.begin(), members.end());
    if (members == wanted) {
      analysis.selected_cycle = c;
      break;
    }
  }
  if (!analysis.selected_cycle) throw NotACycle("given vertex set is not a cycle of g_q");

  const auto& sigma = analysis.cycles[*analysis.selected_cycle].sigma;
  const WordIndex domain = p.domain_size();
  std::vector<bool> in_sigma(domain, false);
  for (WordIndex v : sigma) in_sigma[v] = true;

  std::vector<bool> closed(q + 1, true);
  for (Rank k = 1; k <= q; ++k) {
    const ColumnFunction g(p, k);
    for (WordIndex v : sigma) {
      if (!in_sigma[g(v)]) {
        closed[k] = false;
        break;
      }
    }
  }
  std::optional<Rank> q_prime;
  for (Rank cand = q; cand >= 2 && closed[cand]; --cand) q_prime = cand;
  if (!q_prime) throw NoQPrime("no q' in (1, q] keeps Sigma closed");
  analysis.q_prime = q_prime;

  // M: n-words starting in Sigma whose every later digit is chosen at rank >= q'.
  std::vector<WordIndex> missing;
  struct Frame {
    WordIndex context;
    WordIndex index;
    unsigned length;
  };
  std::vector<Frame> stack;
  for (WordIndex v : sigma) {
    stack.push_back({v, v, s});
    while (!stack.empty()) {
      const Frame f = stack.back();
      stack.pop_back();
      if (f.length == n) {
        missing.push_back(f.index);
        continue;
      }
      for (Rank k = *q_prime; k <= q; ++k) {
        const Digit c = p.choice(f.context, k);
        const WordIndex ctx = s == 0 ? 0 : (f.context * q + c) % domain;
        stack.push_back({ctx, f.index * q + c, f.length + 1});
      }
    }
  }
  std::sort(missing.begin(), missing.end());
  analysis.predicted_missing = std::move(missing);

  // Exactness: g_{q'-1} restricted to Sigma must have no cycle.
  const ColumnFunction below(p, *q_prime - 1);
  std::vector<unsigned char> state(domain, 0);  // 0 new, 1 on path, 2 done
  bool acyclic = true;
  std::vector<WordIndex> path;
  for (WordIndex start : sigma) {
    if (state[start] || !acyclic) continue;
    path.clear();
    WordIndex v = start;
    while (in_sigma[v] && state[v] == 0) {
      state[v] = 1;
      path.push_back(v);
      v = below(v);
    }
    if (in_sigma[v] && state[v] == 1) acyclic = false;
    for (WordIndex u : path) state[u] = 2;
  }
  analysis.exact = acyclic;
  analysis.full_sequence = analysis.cycles.size() == 1;
  return analysis;
}

bool word_on_cycle(const PreferenceFunction& p, Rank k,
                   std::span<const WordIndex> cycle, const Word& w) {
  const unsigned s = p.span();
  if (w.size() < s) throw InvalidArgument("word shorter than the span");
  const auto digits = w.digits();
  const WordIndex head = encode(digits.first(s), p.q());
  if (std::find(cycle.begin(), cycle.end(), head) == cycle.end()) return false;
  for (std::size_t j = s; j < digits.size(); ++j) {
    const WordIndex ctx = encode(digits.subspan(j - s, s), p.q());
    if (digits[j] != p.choice(ctx, k)) return false;
  }
  return true;
}

Word initial_word_on_cycle(const PreferenceFunction& p, WordIndex vertex,
                           unsigned n) {
  const unsigned q = p.q();
  const unsigned s = p.span();
  if (n <= s) throw InvalidArgument("order n must exceed the span");
  const CycleAnalysis gq = analyze_cycles(p, q);
  const auto& members = gq.cycles[cycle_of(gq, vertex)].members;
  if (std::find(members.begin(), members.end(), vertex) == members.end()) {
    throw NotACycle("vertex " + std::to_string(vertex) + " is not on a cycle of g_q");
  }
  std::vector<Digit> digits;
  if (s > 0) {
    const Word head = decode(vertex, p.alphabet(), s);
    digits.assign(head.digits().begin(), head.digits().end());
  }
  WordIndex ctx = vertex;
  const WordIndex domain = p.domain_size();
  while (digits.size() < n) {
    const Digit c = p.choice(ctx, q);
    digits.push_back(c);
    ctx = s == 0 ? 0 : (ctx * q + c) % domain;
  }
  return Word(p.alphabet(), std::move(digits));
}

}  // namespace dbseq
