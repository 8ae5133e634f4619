// Command-line front end: best-path search, transduction, word alignment,
// oracle cross-checks and the alignment scaling benchmark.
//
// Exit codes: 0 success, 1 no result or oracle mismatch, 2 usage error,
// 3 machine content error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ntwfsm/alignment.hpp"
#include "ntwfsm/bench.hpp"
#include "ntwfsm/machine_io.hpp"
#include "ntwfsm/oracle_check.hpp"
#include "ntwfsm/search.hpp"

namespace {

using namespace ntwfsm;

constexpr int kOk = 0;
constexpr int kNoResult = 1;
constexpr int kUsage = 2;
constexpr int kContent = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::string machine_file;
  std::string input_tapes;
  std::string direction;
  std::uint64_t seed = 1;
  std::string format = "text";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

AnyMachine load_machine(const GlobalOptions& g) {
  if (g.machine_file.empty()) throw UsageError("--machine is required");
  const std::string text = read_file(g.machine_file);
  if (g.direction.empty()) return parse_machine(text);
  const auto declared = semiring_name(parse_machine(text));
  if (declared == ProbMax::name) {
    if (g.direction != "max") throw UsageError("prob-max machines only support --direction max");
    return parse_machine(text);
  }
  return parse_machine(text, g.direction == "min" ? TropicalMin::name : TropicalMax::name);
}

// "1,2" -> {0, 1}; empty -> the first `count` tapes.
TapeList parse_tape_list(const std::string& text, std::size_t count) {
  TapeList tapes;
  if (text.empty()) {
    for (std::size_t i = 0; i < count; ++i) tapes.push_back(i);
    return tapes;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    unsigned long value = 0;
    try {
      value = std::stoul(item, &pos);
    } catch (const std::exception&) {
      throw UsageError("bad tape index '" + item + "'");
    }
    if (pos != item.size() || value == 0) throw UsageError("bad tape index '" + item + "'");
    tapes.push_back(value - 1);
  }
  return tapes;
}

std::string display(const SymbolString& s) {
  std::string out;
  for (Symbol c : s) out += c == kAlignedEpsilon ? std::string("<aeps>") : to_utf8(c);
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

StringTuple to_tuple(const std::vector<std::string>& words) {
  StringTuple s;
  for (const auto& w : words) s.push_back(from_utf8(w));
  return s;
}

template <Semiring S>
int print_best_path(const Machine<S>& m, const StringTuple& input, const TapeList& tapes, const GlobalOptions& g) {
  const auto best = fsm_viterbi(m, input, tapes);
  if (!best) {
    std::cerr << "no accepting path\n";
    return kNoResult;
  }
  if (g.format == "csv") {
    std::cout << "weight";
    for (std::size_t i = 0; i < m.arity(); ++i) std::cout << ",tape" << i + 1;
    std::cout << '\n' << S::format_weight(best->weight);
    for (const auto& t : best->tapes) std::cout << ',' << csv_field(display(t));
    std::cout << '\n';
    return kOk;
  }
  std::cout << "start " << best->start << '\n';
  for (TransitionId id : best->transitions) {
    const auto& t = m.transition(id);
    std::cout << "t " << t.source << ' ' << t.target;
    for (const auto& el : t.label) std::cout << ' ' << format_label_element(el);
    std::cout << ' ' << S::format_weight(t.weight) << '\n';
  }
  for (std::size_t i = 0; i < best->tapes.size(); ++i) std::cout << "tape " << i + 1 << '\t' << display(best->tapes[i]) << '\n';
  std::cout << "weight " << S::format_weight(best->weight) << '\n';
  return kOk;
}

template <Semiring S>
int print_transduction(const Machine<S>& m, const StringTuple& input, const TapeList& tapes, const GlobalOptions& g) {
  const auto result = best_transduction(m, input, tapes);
  if (!result) {
    std::cerr << "no accepting path\n";
    return kNoResult;
  }
  const char sep = g.format == "csv" ? ',' : '\t';
  for (const auto& out : result->outputs)
    std::cout << (g.format == "csv" ? csv_field(display(out)) : display(out)) << sep;
  std::cout << S::format_weight(result->weight) << '\n';
  return kOk;
}

int cmd_validate(const GlobalOptions& g) {
  const auto machine = load_machine(g);
  return std::visit([&](const auto& m) {
    validate(m, parse_tape_list(g.input_tapes, m.arity()), m.eps_mode());
    std::cout << "ok " << semiring_name(machine) << " n=" << m.arity() << " states=" << m.num_states()
              << " transitions=" << m.transitions().size() << '\n';
    return kOk;
  }, machine);
}

struct AlignOptions {
  std::vector<std::string> words;
  std::string marker = "-";
  bool forbid_id = false;
  std::string batch;
  std::int64_t insertion_cost = 1;
  std::int64_t deletion_cost = 1;
};

int cmd_align(const AlignOptions& o, const GlobalOptions& g) {
  const SymbolString marker = from_utf8(o.marker);
  if (marker.size() != 1) throw UsageError("--marker must be a single symbol");
  AlignerSpec spec;
  spec.marker = marker[0];
  spec.forbid_insert_then_delete = o.forbid_id;
  spec.insertion_cost = o.insertion_cost;
  spec.deletion_cost = o.deletion_cost;
  const auto aligner = build_aligner(spec);
  const char sep = g.format == "csv" ? ',' : '\t';
  auto emit = [&](const std::string& a, const std::string& b) {
    const auto al = align_pair(aligner, spec, from_utf8(a), from_utf8(b));
    std::cout << to_utf8(al.a) << sep << to_utf8(al.b) << sep << al.ops << sep << al.weight << '\n';
  };

  if (!o.batch.empty()) {
    if (!o.words.empty()) throw UsageError("give either two words or --batch, not both");
    std::ifstream in(o.batch);
    if (!in) throw UsageError("cannot open '" + o.batch + "'");
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      const auto tab = line.find('\t');
      if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
        throw UsageError(o.batch + ":" + std::to_string(line_no) + ": expected two tab-separated words");
      emit(line.substr(0, tab), line.substr(tab + 1));
    }
    return kOk;
  }
  if (o.words.size() != 2) throw UsageError("align needs two words (or --batch FILE)");
  emit(o.words[0], o.words[1]);
  return kOk;
}

struct BenchOptions {
  int rmax = 8;
  std::string pair = "gemacht:machen";
  int trials = 5;
  bool compare_heaps = false;
};

int cmd_bench(const BenchOptions& o, const GlobalOptions& g) {
  const auto colon = o.pair.find(':');
  if (colon == std::string::npos) throw UsageError("--pair must look like a:b");
  BenchConfig config;
  config.rmax = o.rmax;
  config.trials = o.trials;
  config.compare_heaps = o.compare_heaps;
  config.a = from_utf8(o.pair.substr(0, colon));
  config.b = from_utf8(o.pair.substr(colon + 1));
  if (config.rmax < 1 || config.trials < 1 || config.a.empty() || config.b.empty())
    throw UsageError("bench needs --rmax >= 1, --trials >= 1 and two non-empty words");
  const auto report = run_bench(config);
  std::cout << (g.format == "csv" ? format_bench_csv(report) : format_bench_text(report));
  return kOk;
}

struct OracleOptions {
  std::size_t cases = 300;
  std::size_t max_states = 6;
  std::size_t max_transitions = 20;
  std::size_t arity = 3;
  std::optional<std::size_t> inject_fault;
};

int cmd_oracle_check(const OracleOptions& o, const GlobalOptions& g) {
  if (o.max_states < 1 || o.max_transitions < 1 || o.arity < 1)
    throw UsageError("--max-states, --max-trans and --arity must be at least 1");
  OracleCheckConfig config;
  config.seed = g.seed;
  config.cases = o.cases;
  config.generator.max_states = o.max_states;
  config.generator.max_transitions = o.max_transitions;
  config.generator.max_arity = o.arity;
  config.inject_fault_at = o.inject_fault;
  const auto report = run_oracle_check(config);
  if (report.first_failure) {
    const auto& f = *report.first_failure;
    std::cout << "MISMATCH seed " << g.seed << " case " << f.case_index << '\n';
    std::cout << "search " << f.search_weight << " oracle " << f.oracle_weight << '\n';
    std::cout << "input";
    for (const auto& s : f.input) std::cout << " \"" << to_utf8(s) << '"';
    std::cout << '\n' << f.machine_text;
    std::cout << report.passed << '/' << report.cases << " cases agree\n";
    return kNoResult;
  }
  std::cout << "oracle-check seed " << g.seed << ": " << report.passed << '/' << report.cases << " cases agree ("
            << report.accepted << " accepted, " << report.precedence_violations << " heap-order violations)\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Best-path search on weighted multi-tape finite-state machines"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--machine", g.machine_file, "Machine file");
  app.add_option("--input-tapes", g.input_tapes, "Comma-separated 1-based input tape list (default: first k tapes)");
  app.add_option("--direction", g.direction, "Search direction for tropical machines")
      ->check(CLI::IsMember({"min", "max"}));
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "csv"}));

  std::vector<std::string> words;
  auto* bestpath = app.add_subcommand("bestpath", "Best path accepting the input strings");
  bestpath->add_option("strings", words, "Input strings, one per input tape");
  auto* transduce = app.add_subcommand("transduce", "Best output tuple for the input strings");
  transduce->add_option("strings", words, "Input strings, one per input tape");
  app.add_subcommand("validate", "Check a machine file");

  AlignOptions align;
  auto* align_cmd = app.add_subcommand("align", "Align a word pair");
  align_cmd->add_option("words", align.words, "Two words");
  align_cmd->add_option("--marker", align.marker, "Aligned-epsilon marker symbol");
  align_cmd->add_flag("--forbid-id", align.forbid_id, "Forbid an insertion directly followed by a deletion");
  align_cmd->add_option("--batch", align.batch, "File with one tab-separated pair per line");
  align_cmd->add_option("--insert-cost", align.insertion_cost)->check(CLI::NonNegativeNumber);
  align_cmd->add_option("--delete-cost", align.deletion_cost)->check(CLI::NonNegativeNumber);

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Alignment scaling benchmark");
  bench_cmd->add_option("--rmax", bench.rmax, "Largest repetition count");
  bench_cmd->add_option("--pair", bench.pair, "Word pair a:b");
  bench_cmd->add_option("--trials", bench.trials, "Trials per row (median reported)");
  bench_cmd->add_flag("--compare-heaps", bench.compare_heaps, "Add column D: binary / Fibonacci heap time");

  OracleOptions oracle;
  auto* oracle_cmd = app.add_subcommand("oracle-check", "Compare the search with intersection + Dijkstra");
  oracle_cmd->add_option("--cases", oracle.cases, "Number of random cases");
  oracle_cmd->add_option("--max-states", oracle.max_states);
  oracle_cmd->add_option("--max-trans", oracle.max_transitions);
  oracle_cmd->add_option("--arity", oracle.arity, "Largest arity");
  oracle_cmd->add_option("--inject-fault", oracle.inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*bestpath || *transduce) {
      const auto machine = load_machine(g);
      const StringTuple input = to_tuple(words);
      return std::visit([&](const auto& m) {
        const auto tapes = parse_tape_list(g.input_tapes, input.size());
        return *bestpath ? print_best_path(m, input, tapes, g) : print_transduction(m, input, tapes, g);
      }, machine);
    }
    if (app.got_subcommand("validate")) return cmd_validate(g);
    if (*align_cmd) return cmd_align(align, g);
    if (*bench_cmd) return cmd_bench(bench, g);
    if (*oracle_cmd) return cmd_oracle_check(oracle, g);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::InvalidArgument:
      case ErrorCode::DimensionMismatch:
      case ErrorCode::MarkerInAlphabet:
        return kUsage;
      default:
        return kContent;
    }
  }
  return kUsage;
}
