#include "dbseq/cli.hpp"

#include <omp.h>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dbseq/discrepancy.hpp"
#include "dbseq/errors.hpp"
#include "dbseq/generator.hpp"
#include "dbseq/homomorphism.hpp"
#include "dbseq/preference.hpp"
#include "dbseq/verifier.hpp"

namespace dbseq::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

std::string vertex_text(WordIndex v, unsigned q, unsigned span) {
  if (span == 0) return "";
  return decode(v, Alphabet(q), span).str();
}

std::vector<std::string> vertex_texts(const std::vector<WordIndex>& vs, unsigned q,
                                      unsigned span) {
  std::vector<std::string> out;
  out.reserve(vs.size());
  for (WordIndex v : vs) out.push_back(vertex_text(v, q, span));
  return out;
}

std::string read_text(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

SequenceKind parse_kind(const std::string& kind) {
  if (kind == "opposite") return SequenceKind::opposite;
  if (kind == "same") return SequenceKind::same;
  if (kind == "higher") return SequenceKind::higher;
  if (kind == "custom") return SequenceKind::custom;
  throw InvalidArgument("unknown kind '" + kind + "'");
}

struct Selection {
  PreferenceFunction preference;
  SequenceKind kind;
  unsigned d;
};

Selection select_preference(const CliConfig& c) {
  if (c.matrix_path) {
    std::ifstream in(*c.matrix_path);
    if (!in) throw InvalidArgument("cannot open matrix file '" + *c.matrix_path + "'");
    return {read_matrix(in), SequenceKind::custom, 0};
  }
  const SequenceKind kind = parse_kind(c.kind);
  switch (kind) {
    case SequenceKind::opposite: return {make_prefer_opposite(c.q, c.d), kind, c.d};
    case SequenceKind::same: return {make_prefer_same(c.q, c.d), kind, c.d};
    case SequenceKind::higher: return {make_prefer_higher(c.q), kind, 0};
    case SequenceKind::custom: break;
  }
  throw InvalidArgument("kind 'custom' requires --matrix-file");
}

void require_order(const CliConfig& c, unsigned span) {
  if (!c.n) throw InvalidArgument("--n is required");
  if (*c.n <= span) {
    throw InvalidArgument("order n=" + std::to_string(*c.n) +
                          " must exceed the preference span " + std::to_string(span));
  }
}

SequenceRecord build_sequence(const CliConfig& c) {
  Selection sel = select_preference(c);
  const unsigned q = sel.preference.q();
  if (c.init) {
    const Word initial = Word::parse(sel.preference.alphabet(), *c.init);
    if (c.n && *c.n != initial.size()) {
      throw InvalidArgument("--init length differs from --n");
    }
    return generate(sel.preference, initial, sel.kind, sel.d);
  }
  require_order(c, sel.preference.span());
  const unsigned n = *c.n;
  switch (sel.kind) {
    case SequenceKind::opposite: return generate_prefer_opposite(q, sel.d, n);
    case SequenceKind::same: return generate_prefer_same(q, sel.d, n, c.start);
    case SequenceKind::higher: return generate_prefer_higher(q, n);
    case SequenceKind::custom: break;
  }
  // Default initial word: on the g_q cycle reached from 0^s.
  const CycleAnalysis gq = analyze_cycles(sel.preference, q);
  const WordIndex vertex = gq.cycles[cycle_of(gq, 0)].members.front();
  return generate(sel.preference, initial_word_on_cycle(sel.preference, vertex, n),
                  SequenceKind::custom, 0);
}

// Sequence read from --input when given, otherwise generated.
SequenceRecord load_or_build(const CliConfig& c) {
  if (!c.input) return build_sequence(c);
  if (!c.n) throw InvalidArgument("--n is required with --input");
  const SequenceKind kind = c.matrix_path ? SequenceKind::custom : parse_kind(c.kind);
  Word digits = Word::parse(Alphabet(c.q), read_text(*c.input));
  if (digits.size() < *c.n) throw InvalidArgument("input shorter than n");
  std::vector<Digit> head(digits.digits().begin(), digits.digits().begin() + *c.n);
  Word initial(Alphabet(c.q), std::move(head));
  const std::uint64_t windows = digits.size() - *c.n + 1;
  return SequenceRecord{std::move(digits), c.q, *c.n, std::move(initial), kind,
                        (kind == SequenceKind::opposite || kind == SequenceKind::same) ? c.d : 0,
                        windows};
}

int cmd_generate(const CliConfig& c, std::ostream& out) {
  const SequenceRecord r = build_sequence(c);
  if (c.format == "json") {
    json doc = {{"schema", kSchemaVersion},
                {"kind", to_string(r.kind)},
                {"q", r.q},
                {"n", r.n},
                {"d", r.d},
                {"initial", r.initial.str()},
                {"length", r.digits.size()},
                {"visited_count", r.visited_count},
                {"sequence", r.digits.str()}};
    out << doc.dump(2) << '\n';
  } else {
    out << r.digits.str() << '\n';
  }
  return kOk;
}

int cmd_verify(const CliConfig& c, std::ostream& out) {
  const SequenceRecord r = load_or_build(c);
  const VerificationReport v = verify(r);
  if (c.format == "json") {
    json duplicated = json::array();
    for (WordIndex w : v.duplicated) {
      duplicated.push_back({{"word", vertex_text(w, v.q, v.n)}, {"count", v.census[w]}});
    }
    json doc = {{"schema", kSchemaVersion},
                {"kind", r.label()},
                {"q", v.q},
                {"n", v.n},
                {"windows", v.windows},
                {"is_full", v.is_full},
                {"suffix_ok", v.suffix_ok},
                {"missing", vertex_texts(v.missing, v.q, v.n)},
                {"duplicated", duplicated}};
    doc["terminal_expected"] =
        v.terminal_expected ? json(v.terminal_expected->str()) : json(nullptr);
    doc["terminal_ok"] = v.terminal_ok ? json(*v.terminal_ok) : json(nullptr);
    doc["final_appearance_ok"] =
        v.final_appearance_ok ? json(*v.final_appearance_ok) : json(nullptr);
    doc["palindrome"] = v.palindrome ? json(*v.palindrome) : json(nullptr);
    if (c.census) doc["census"] = v.census;
    doc["violations"] = v.violations;
    out << doc.dump(2) << '\n';
  } else {
    out << "kind: " << r.label() << "\nq: " << v.q << "\nn: " << v.n
        << "\nwindows: " << v.windows << "\nis_full: " << std::boolalpha << v.is_full
        << "\nsuffix_ok: " << v.suffix_ok << "\nmissing: " << v.missing.size();
    for (WordIndex w : v.missing) out << ' ' << vertex_text(w, v.q, v.n);
    out << "\nduplicated: " << v.duplicated.size() << '\n';
    if (v.terminal_expected) {
      out << "terminal_expected: " << v.terminal_expected->str()
          << "\nterminal_ok: " << *v.terminal_ok << '\n';
    }
    if (v.final_appearance_ok) out << "final_appearance_ok: " << *v.final_appearance_ok << '\n';
    if (v.palindrome) out << "palindrome: " << *v.palindrome << '\n';
    for (const auto& msg : v.violations) out << "violation: " << msg << '\n';
  }
  return v.violations.empty() ? kOk : kPropertyViolation;
}

int cmd_map(const CliConfig& c, std::ostream& out) {
  if (!c.n) throw InvalidArgument("--n is required");
  const MappingReport m = verify_mapping(c.q, c.d, *c.n);
  if (c.emit == "image") {
    out << m.image.str() << '\n';
    return kOk;
  }
  if (c.emit == "compact") {
    out << m.compact.str() << '\n';
    return kOk;
  }
  if (c.emit != "report") throw InvalidArgument("--emit must be image, compact or report");
  if (c.format == "json") {
    json doc = {{"schema", kSchemaVersion},
                {"q", m.q},
                {"d", m.d},
                {"n", m.n},
                {"beta", m.beta},
                {"equal", m.equal},
                {"first_mismatch", m.first_mismatch ? json(*m.first_mismatch) : json(nullptr)},
                {"kept_windows", m.kept_windows},
                {"expected_windows", m.expected_windows},
                {"image", m.image.str()},
                {"compact", m.compact.str()},
                {"prefer_higher", m.reference.str()}};
    out << doc.dump(2) << '\n';
  } else {
    out << "beta: " << unsigned(m.beta) << "\nequal: " << std::boolalpha << m.equal
        << "\nkept_windows: " << m.kept_windows << "\nexpected_windows: "
        << m.expected_windows << "\ncompact: " << m.compact.str()
        << "\nprefer_higher: " << m.reference.str() << '\n';
    if (m.first_mismatch) out << "first_mismatch: " << *m.first_mismatch << '\n';
  }
  return m.equal ? kOk : kPropertyViolation;
}

json cycles_json(const CycleAnalysis& a) {
  json cycles = json::array();
  for (const auto& cyc : a.cycles) {
    cycles.push_back({{"members", vertex_texts(cyc.members, a.q, a.span)},
                      {"closure", vertex_texts(cyc.closure, a.q, a.span)},
                      {"sigma", vertex_texts(cyc.sigma, a.q, a.span)}});
  }
  return cycles;
}

int cmd_analyze(const CliConfig& c, std::ostream& out) {
  Selection sel = select_preference(c);
  const PreferenceFunction& p = sel.preference;
  const unsigned q = p.q();
  CycleAnalysis a;
  if (c.rank) {
    a = analyze_cycles(p, *c.rank);
  } else {
    require_order(c, p.span());
    const CycleAnalysis gq = analyze_cycles(p, q);
    WordIndex vertex = 0;
    if (c.cycle_vertex && p.span() > 0) {
      const Word w = Word::parse(p.alphabet(), *c.cycle_vertex);
      if (w.size() != p.span()) throw InvalidArgument("--cycle-vertex must have span digits");
      vertex = encode(w);
    }
    a = predict_missing(p, gq.cycles[cycle_of(gq, vertex)].members, *c.n);
  }
  if (c.format == "json") {
    json doc = {{"schema", kSchemaVersion}, {"q", a.q},          {"span", a.span},
                {"declared_span", p.declared_span()}, {"rank", a.rank},
                {"cycles", cycles_json(a)}};
    if (a.predicted_missing) {
      doc["selected_cycle"] = *a.selected_cycle;
      doc["order"] = a.order;
      doc["q_prime"] = *a.q_prime;
      doc["predicted_missing"] = vertex_texts(*a.predicted_missing, q, a.order);
      doc["exact"] = a.exact;
      doc["full_sequence"] = a.full_sequence;
    }
    out << doc.dump(2) << '\n';
  } else {
    out << "q: " << a.q << "\nspan: " << a.span << "\nrank: " << a.rank
        << "\ncycles: " << a.cycles.size() << '\n';
    for (std::size_t i = 0; i < a.cycles.size(); ++i) {
      const auto& cyc = a.cycles[i];
      out << "cycle " << i << ":";
      for (const auto& v : vertex_texts(cyc.members, a.q, a.span)) out << ' ' << (v.empty() ? "()" : v);
      out << " | closure " << cyc.closure.size() << " | sigma " << cyc.sigma.size() << '\n';
    }
    if (a.predicted_missing) {
      out << "selected_cycle: " << *a.selected_cycle << "\nq_prime: " << *a.q_prime
          << "\nexact: " << std::boolalpha << a.exact
          << "\nfull_sequence: " << a.full_sequence
          << "\npredicted_missing: " << a.predicted_missing->size();
      for (const auto& w : vertex_texts(*a.predicted_missing, q, a.order)) out << ' ' << w;
      out << '\n';
    }
  }
  return kOk;
}

int cmd_table(const CliConfig& c, std::ostream& out) {
  if (c.table_qs.empty()) throw InvalidArgument("--q is required for table");
  if (c.n_max < c.n_min || c.n_min < 2) throw InvalidArgument("need 2 <= --n-min <= --n-max");
  std::vector<unsigned> ns;
  for (unsigned n = c.n_min; n <= c.n_max; ++n) ns.push_back(n);
  if (c.threads > 0) omp_set_num_threads(c.threads);
  const auto cells = c.serial ? discrepancy_table_serial(c.table_qs, ns, c.max_words)
                              : discrepancy_table(c.table_qs, ns, c.max_words);
  if (c.format == "json") {
    json rows = json::array();
    auto cell = [](const std::optional<std::uint64_t>& v) { return v ? json(*v) : json(nullptr); };
    for (const auto& t : cells) {
      rows.push_back({{"q", t.q},
                      {"n", t.n},
                      {"prefer_same", cell(t.prefer_same)},
                      {"prefer_opposite", cell(t.prefer_opposite)},
                      {"prefer_higher", cell(t.prefer_higher)}});
    }
    out << json{{"schema", kSchemaVersion}, {"cells", rows}}.dump(2) << '\n';
  } else {
    write_table_csv(out, cells);
  }
  return kOk;
}

int cmd_discrepancy(const CliConfig& c, std::ostream& out) {
  const SequenceRecord r = load_or_build(c);
  const DiscrepancyProfile p = discrepancy(r.digits);
  if (c.format == "json") {
    json doc = {{"schema", kSchemaVersion}, {"kind", r.label()}, {"q", r.q},
                {"n", r.n}, {"length", r.digits.size()}, {"value", p.value},
                {"argmax_prefix", p.argmax_prefix}};
    if (c.profile) doc["prefix_gap"] = p.prefix_gap;
    out << doc.dump(2) << '\n';
  } else {
    out << p.value << '\n';
  }
  return kOk;
}

void add_selection(CLI::App* sub, CliConfig& c) {
  sub->add_option("--kind", c.kind, "opposite | same | higher | custom")
      ->check(CLI::IsMember({"opposite", "same", "higher", "custom"}));
  sub->add_option("--q", c.q, "alphabet size");
  sub->add_option("--d", c.d, "step of the opposite/same families (coprime with q)");
  sub->add_option("--n", c.n, "word length (order)");
  sub->add_option("--start", c.start, "first digit of the prefer-same initial word");
  sub->add_option("--init", c.init, "explicit initial word");
  sub->add_option("--matrix-file", c.matrix_path, "custom preference matrix file");
}

void add_format(CLI::App* sub, CliConfig& c, std::vector<std::string> allowed) {
  sub->add_option("--format", c.format)->check(CLI::IsMember(allowed));
  sub->add_option("--out", c.out, "write output to this file");
}

}  // namespace

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (config.out) {
    file.open(*config.out);
    if (!file) {
      err << "error: cannot open output file '" << *config.out << "'\n";
      return kValidationError;
    }
    sink = &file;
  }
  try {
    const std::string& cmd = config.subcommand;
    if (cmd == "generate") return cmd_generate(config, *sink);
    if (cmd == "verify") return cmd_verify(config, *sink);
    if (cmd == "map") return cmd_map(config, *sink);
    if (cmd == "analyze") return cmd_analyze(config, *sink);
    if (cmd == "table") return cmd_table(config, *sink);
    if (cmd == "discrepancy") return cmd_discrepancy(config, *sink);
    err << "error: unknown subcommand '" << cmd << "'\n";
  } catch (const NotCoprime& e) {
    err << "error: not coprime: " << e.what() << '\n';
  } catch (const MalformedMatrix& e) {
    err << "error: malformed matrix: " << e.what() << '\n';
  } catch (const CapacityExceeded& e) {
    err << "error: memory cap exceeded: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kValidationError;
}

int run_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig c;
  CLI::App app{"q-ary de Bruijn sequences from preference functions", "dbseq"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("generate", "emit a generated sequence");
  add_selection(gen, c);
  add_format(gen, c, {"plain", "json"});

  auto* ver = app.add_subcommand("verify", "check structural properties of a sequence");
  add_selection(ver, c);
  ver->add_option("--input", c.input, "read the sequence from a file ('-' for stdin)");
  ver->add_flag("--census", c.census, "include the full window census (json)");
  add_format(ver, c, {"plain", "json"});

  auto* map = app.add_subcommand("map", "D_beta image of o_n and its cleanup");
  map->add_option("--q", c.q)->required();
  map->add_option("--d", c.d)->required();
  map->add_option("--n", c.n)->required();
  map->add_option("--emit", c.emit)->check(CLI::IsMember({"image", "compact", "report"}));
  add_format(map, c, {"plain", "json"});

  auto* ana = app.add_subcommand("analyze", "column-function cycles and predicted missing words");
  add_selection(ana, c);
  ana->add_option("--rank", c.rank, "analyze g_k only, without prediction");
  ana->add_option("--cycle-vertex", c.cycle_vertex, "span-word selecting the g_q cycle");
  add_format(ana, c, {"plain", "json"});

  auto* tab = app.add_subcommand("table", "discrepancy table as CSV");
  tab->add_option("--q", c.table_qs, "alphabet sizes")->required()->delimiter(',');
  tab->add_option("--n-min", c.n_min);
  tab->add_option("--n-max", c.n_max)->required();
  tab->add_option("--max-words", c.max_words, "skip cells with q^n above this");
  tab->add_flag("--serial", c.serial, "use the single-threaded reference");
  tab->add_option("--threads", c.threads, "OpenMP thread count");
  c.format = "plain";
  add_format(tab, c, {"plain", "csv", "json"});

  auto* dis = app.add_subcommand("discrepancy", "discrepancy profile of one sequence");
  add_selection(dis, c);
  dis->add_option("--input", c.input, "read the sequence from a file ('-' for stdin)");
  dis->add_flag("--profile", c.profile, "include per-prefix gaps (json)");
  add_format(dis, c, {"plain", "json"});

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }
  for (auto* sub : app.get_subcommands()) c.subcommand = sub->get_name();
  return run(c, out, err);
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_args(args, std::cout, std::cerr);
}

}  // namespace dbseq::cli
