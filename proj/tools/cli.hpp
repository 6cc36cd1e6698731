#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mlines/mlines.hpp"

namespace mlines::cli {

using nlohmann::json;

struct ExitCode {
  int code;
  std::string_view meaning;
};

inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;
inline constexpr int kAuditFailed = 31;
inline constexpr int kSweepFailed = 40;

// One code per error class. Internal invariant failures share 30.
inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return 3;
    case ErrorKind::Overflow: return 4;
    case ErrorKind::TooFewPoints: return 10;
    case ErrorKind::NotSquare: return 11;
    case ErrorKind::NonzeroDiagonal: return 12;
    case ErrorKind::Asymmetric: return 13;
    case ErrorKind::NegativeEntry: return 14;
    case ErrorKind::ZeroOffDiagonal: return 15;
    case ErrorKind::TriangleViolation: return 16;
    case ErrorKind::InvalidEdge: return 17;
    case ErrorKind::Disconnected: return 18;
    case ErrorKind::DuplicatePoint: return 19;
    case ErrorKind::UnknownLine: return 20;
    case ErrorKind::LevelOutOfRange: return 21;
    case ErrorKind::UniversalLinePresent: return 22;
    case ErrorKind::SinkUnwritable: return 23;
    case ErrorKind::NOutOfRange: return 24;
    case ErrorKind::InvalidArgument:
    case ErrorKind::NonDistinctPoints:
    case ErrorKind::DifferentLines:
    case ErrorKind::NotOnLine:
    case ErrorKind::AlreadyPresent:
    case ErrorKind::SameComponent:
    case ErrorKind::SequenceNotCollinear:
    case ErrorKind::DegreeTooSmall:
    case ErrorKind::NotAntichain:
    case ErrorKind::TooSmall: return 25;
    case ErrorKind::ClassificationFailure:
    case ErrorKind::NoValidPosition:
    case ErrorKind::NoValidSplit:
    case ErrorKind::NotGreenConnected: return 30;
  }
  return 30;
}

inline constexpr ExitCode kExitCodes[] = {
    {0, "success"},
    {2, "usage error (bad flags, missing or conflicting input source)"},
    {3, "input unreadable or malformed (Parse)"},
    {4, "distance scale overflow (Overflow)"},
    {10, "fewer than 2 points (TooFewPoints)"},
    {11, "matrix not square (NotSquare)"},
    {12, "nonzero diagonal entry (NonzeroDiagonal)"},
    {13, "asymmetric matrix (Asymmetric)"},
    {14, "negative distance (NegativeEntry)"},
    {15, "zero distance between distinct points (ZeroOffDiagonal)"},
    {16, "triangle inequality violated (TriangleViolation)"},
    {17, "bad edge in edge list (InvalidEdge)"},
    {18, "graph not connected (Disconnected)"},
    {19, "duplicate point (DuplicatePoint)"},
    {20, "line selector matches no line (UnknownLine)"},
    {21, "level index out of range (LevelOutOfRange)"},
    {22, "space has a universal line (UniversalLinePresent)"},
    {23, "sweep sink cannot be written (SinkUnwritable)"},
    {24, "vertex count outside the enumerable range (NOutOfRange)"},
    {25, "invalid argument to a library operation"},
    {30, "internal invariant failure (ClassificationFailure, NoValidPosition, ...)"},
    {31, "structural audit or witness certification reported failures"},
    {40, "sweep completed with failing instances"},
};

inline std::string exit_code_help() {
  std::ostringstream ss;
  ss << "Exit codes:\n";
  for (const ExitCode& e : kExitCodes) ss << "  " << e.code << (e.code < 10 ? "   " : "  ") << e.meaning << '\n';
  ss << "\nEnvironment:\n  MLINES_CORPUS_DIR  default directory for sweep output (sweep.jsonl)\n";
  return ss.str();
}

struct Options {
  std::string format = "human";
  std::string input;
  std::string builtin;
  std::string edges;

  std::string line;
  std::optional<int> level;
  std::string mode = "best";

  std::string graphs;
  std::optional<std::size_t> random_count;
  std::optional<std::size_t> n;
  std::optional<std::uint64_t> seed;
  std::int64_t max_entry = 5;
  std::vector<std::string> checks;
  bool dedup = false;
  bool allow_n7 = false;
  std::string out;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::size_t input_source_count(const Options& o) {
  return static_cast<std::size_t>(!o.input.empty()) + !o.builtin.empty() + !o.edges.empty();
}

inline FiniteMetricSpace load_space(const Options& o) {
  if (input_source_count(o) != 1)
    throw UsageError("exactly one input source is required: --input, --builtin or --edges");
  if (!o.input.empty()) return load_matrix_file(o.input);
  if (!o.builtin.empty()) return builtin_space(o.builtin);
  return graph_metric(parse_edge_list(read_text_file(o.edges)));
}

inline std::string join(const std::vector<PointId>& v, std::string_view sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

inline std::string set_str(const json& arr) {
  std::string s = "{";
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (i) s += ",";
    s += arr[i].dump();
  }
  return s + "}";
}

inline std::string pairs_str(const json& arr) {
  std::string s;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (i) s += " ";
    s += "{" + arr[i][0].dump() + "," + arr[i][1].dump() + "}";
  }
  return s.empty() ? "-" : s;
}

inline std::vector<PointId> parse_ids(std::string_view text, std::size_t n) {
  std::vector<PointId> ids;
  std::string token;
  std::istringstream ss{std::string(text)};
  while (std::getline(ss, token, ',')) {
    const auto b = token.find_first_not_of(" \t");
    const auto e = token.find_last_not_of(" \t");
    if (b == std::string::npos) throw Error(ErrorKind::UnknownLine, "empty point id in '" + std::string(text) + "'");
    token = token.substr(b, e - b + 1);
    unsigned long long v = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size() || v >= n)
      throw Error(ErrorKind::UnknownLine, "'" + token + "' is not a point id below " + std::to_string(n));
    ids.push_back(static_cast<PointId>(v));
  }
  return ids;
}

/// "0,1,2" names a line by its sorted point set; "pair:a,b" names line(a,b).
inline const LineEntry& resolve_line(const FiniteMetricSpace& s, const LineCatalog& catalog, std::string_view key) {
  if (key.starts_with("pair:")) {
    const auto ids = parse_ids(key.substr(5), s.size());
    if (ids.size() != 2 || ids[0] == ids[1])
      throw Error(ErrorKind::UnknownLine, "pair selector needs two distinct point ids");
    return catalog.entry_of(ids[0], ids[1]);
  }
  auto ids = parse_ids(key, s.size());
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw Error(ErrorKind::UnknownLine, "repeated point id in '" + std::string(key) + "'");
  const LineEntry* e = catalog.find(ids);
  if (!e) throw Error(ErrorKind::UnknownLine, "no line equals {" + std::string(key) + "}");
  return *e;
}

// Each command builds one JSON report; the human form is rendered from it.

inline json validate_report(const FiniteMetricSpace& s) {
  return {{"valid", true}, {"n", s.size()}, {"scale", s.scale()}};
}

inline void render_validate(const json& r, std::ostream& out) {
  out << "valid metric space: n=" << r["n"] << ", common denominator " << r["scale"] << '\n';
}

inline json lines_report(const LineCatalog& catalog) {
  json r = to_json(catalog);
  r["chen_chvatal"] = to_json(check_chen_chvatal(catalog));
  return r;
}

inline void render_lines(const json& r, std::ostream& out) {
  out << "n=" << r["n"] << " m=" << r["line_count"] << " universal=" << (r["universal"].is_null() ? "false" : "true")
      << " holds=" << (r["chen_chvatal"]["holds"].get<bool>() ? "true" : "false") << '\n';
  for (const auto& l : r["lines"]) out << "line " << set_str(l["line"]) << "  K(L): " << pairs_str(l["generators"]) << '\n';
}

inline json structure_line_report(const FiniteMetricSpace& s, const LineEntry& entry, std::optional<int> level) {
  const LevelDecomposition dec = build_levels(s, entry);
  json r = to_json(dec);
  if (level) {
    dec.level_pairs(*level);  // range check
    json kept = json::array();
    for (auto& l : r["levels"])
      if (l["k"] == *level) kept.push_back(l);
    r["levels"] = kept;
  }
  for (auto& l : r["levels"]) {
    if (!l.contains("components")) continue;
    const int k = l["k"];
    json orderings = json::array();
    for (const auto& comp : green_components(dec, k).components) orderings.push_back(to_json(order_component(s, comp, dec.line)));
    l["orderings"] = std::move(orderings);
  }
  r["audit"] = to_json(audit_structure(s, dec));
  return r;
}

inline void render_structure(const json& r, std::ostream& out) {
  for (const auto& line : r["lines"]) {
    out << "line " << set_str(line["line"]) << "  height=" << line["height"] << '\n';
    for (const auto& l : line["levels"]) {
      out << "  level " << l["k"] << ": " << pairs_str(l["pairs"]) << '\n';
      if (l.contains("Q")) out << "    Q: " << pairs_str(l["Q"]) << '\n';
      if (l.contains("orderings")) {
        for (const auto& o : l["orderings"]) {
          out << "    component " << pairs_str(o["component"]) << '\n';
          out << "      ordering (" << join(o["ordering"].get<std::vector<PointId>>()) << ")  openings ("
              << join(o["openings"].get<std::vector<PointId>>()) << ")\n";
        }
      }
    }
    out << "  purple: " << pairs_str(line["purple"]) << '\n';
    out << "  red: " << pairs_str(line["red"]) << '\n';
    if (line["audit"].empty()) {
      out << "  audit: ok\n";
    } else {
      for (const auto& f : line["audit"]) out << "  audit FAILED " << f["claim"].get<std::string>() << ": " << f["detail"].get<std::string>() << '\n';
    }
  }
}

inline void render_witness(const json& r, std::ostream& out) {
  out << "n=" << r["n"] << " m=" << r["m"] << " mode=" << r["mode"].get<std::string>()
      << " branch=" << r["branch"].get<std::string>() << '\n';
  out << "certified lower bound: " << r["certified_lower_bound"] << " (best family " << r["best_family_size"] << ")\n";
  for (const auto& f : r["families"]) {
    out << "  " << f["kind"].get<std::string>() << " family, " << f["size"] << " lines, "
        << (f["certified"].get<bool>() ? "certified" : "NOT certified") << '\n';
    for (const auto& l : f["lines"]) out << "    " << set_str(l) << '\n';
    for (const auto& v : f["violations"]) out << "    violation: " << v.get<std::string>() << '\n';
  }
  for (const auto& note : r["notes"]) out << "  note: " << note.get<std::string>() << '\n';
}

inline void render_sweep(const json& r, std::ostream& out) {
  out << "instances: " << r["instances"] << "  universal: " << r["universal"] << '\n';
  out << "failures: " << r["failures"] << " (conjecture " << r["conjecture_failures"] << ", audit "
      << r["audit_failures"] << ", witness " << r["witness_failures"] << ", errors " << r["errors"] << ")\n";
  if (r.contains("min_lines_without_universal"))
    out << "fewest lines without a universal line: " << r["min_lines_without_universal"] << " ("
        << r["min_lines_instance"].get<std::string>() << ")\n";
}

template <class Render>
void emit(const json& r, bool as_json, std::ostream& out, Render render) {
  if (as_json) {
    out << r.dump(2) << '\n';
  } else {
    render(r, out);
  }
}

inline std::pair<std::size_t, std::size_t> parse_graph_range(const std::string& text) {
  const auto dash = text.find('-');
  try {
    if (dash == std::string::npos) {
      const std::size_t n = std::stoul(text);
      return {n, n};
    }
    return {std::stoul(text.substr(0, dash)), std::stoul(text.substr(dash + 1))};
  } catch (const std::exception&) {
    throw UsageError("--graphs expects N or A-B, got '" + text + "'");
  }
}

inline std::string default_sink() {
  const char* dir = std::getenv("MLINES_CORPUS_DIR");
  if (!dir || !*dir) return "-";
  return (std::filesystem::path(dir) / "sweep.jsonl").string();
}

}  // namespace detail

/// Runs one CLI invocation. Everything is written to `out`/`err`, so the
/// function is usable from tests; the return value is the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lines in finite metric spaces: enumeration, pair structure and line-count witnesses."};
  app.footer(exit_code_help());
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"human", "json"}));
  auto* in_opt = app.add_option("--input", o.input, "Distance matrix file (CSV, or JSON {\"dist\": [[...]]})");
  auto* bi_opt = app.add_option("--builtin", o.builtin, "Built-in graph: P<n>, C<n>, K<n> or S<k>");
  auto* ed_opt = app.add_option("--edges", o.edges, "Edge list file: \"n m\" then m lines \"i j [w]\"");
  in_opt->excludes(bi_opt)->excludes(ed_opt);
  bi_opt->excludes(ed_opt);

  auto* validate = app.add_subcommand("validate", "Check that the input is a finite metric space");
  auto* lines = app.add_subcommand("lines", "List every line with its generating pairs");
  auto* structure = app.add_subcommand("structure", "Level decomposition, green components and audit of lines");
  structure->add_option("--line", o.line, "Line selector: sorted ids \"0,1,2\" or \"pair:a,b\" (default: all lines)");
  structure->add_option("--level", o.level, "Only report level k");
  auto* witness = app.add_subcommand("witness", "Certified lower bound on the number of lines");
  witness->add_option("--mode", o.mode, "Extraction mode")->check(CLI::IsMember({"paper", "best"}));
  auto* sweep_cmd = app.add_subcommand("sweep", "Run checks over generated instances, one JSON record per line");
  auto* g_opt = sweep_cmd->add_option("--graphs", o.graphs, "All connected labeled graphs on N (or A-B) vertices");
  auto* r_opt = sweep_cmd->add_option("--random", o.random_count, "Number of random metric spaces");
  g_opt->excludes(r_opt);
  sweep_cmd->add_option("--n", o.n, "Points per random metric space");
  sweep_cmd->add_option("--seed", o.seed, "Seed of the first random instance (required with --random)");
  sweep_cmd->add_option("--max-entry", o.max_entry, "Largest sampled distance before metric closure");
  sweep_cmd->add_option("--check", o.checks, "Checks to run (repeatable)")
      ->check(CLI::IsMember({"conjecture", "audit", "witness"}));
  sweep_cmd->add_flag("--dedup", o.dedup, "Keep one labeled graph per isomorphism class");
  sweep_cmd->add_flag("--allow-n7", o.allow_n7, "Permit 7-vertex enumeration (requires --dedup)");
  sweep_cmd->add_option("--out", o.out, "Record sink, \"-\" for stdout (default: $MLINES_CORPUS_DIR/sweep.jsonl or stdout)");
  auto* generate = app.add_subcommand("generate", "Print an instance as a distance matrix (CSV, or JSON with --format json)");
  generate->add_option("--random-n", o.n, "Generate a random metric space on this many points");
  generate->add_option("--seed", o.seed, "Seed for --random-n (required)");
  generate->add_option("--max-entry", o.max_entry, "Largest sampled distance before metric closure");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }
  const bool as_json = o.format == "json";

  try {
    if (validate->parsed()) {
      const json r = detail::validate_report(detail::load_space(o));
      detail::emit(r, as_json, out, detail::render_validate);
      return kOk;
    }
    if (lines->parsed()) {
      const json r = detail::lines_report(build_catalog(detail::load_space(o)));
      detail::emit(r, as_json, out, detail::render_lines);
      return kOk;
    }
    if (structure->parsed()) {
      const FiniteMetricSpace s = detail::load_space(o);
      const LineCatalog catalog = build_catalog(s);
      json r = {{"lines", json::array()}};
      if (!o.line.empty()) {
        r["lines"].push_back(detail::structure_line_report(s, detail::resolve_line(s, catalog, o.line), o.level));
      } else {
        for (const LineEntry& e : catalog.entries()) r["lines"].push_back(detail::structure_line_report(s, e, o.level));
      }
      detail::emit(r, as_json, out, detail::render_structure);
      for (const auto& l : r["lines"])
        if (!l["audit"].empty()) return kAuditFailed;
      return kOk;
    }
    if (witness->parsed()) {
      const FiniteMetricSpace s = detail::load_space(o);
      const WitnessReport report = extract_witness(s, o.mode == "paper" ? WitnessMode::Paper : WitnessMode::Best);
      const json r = to_json(report);
      detail::emit(r, as_json, out, detail::render_witness);
      for (const auto& f : report.families)
        if (!f.certified()) return kAuditFailed;
      return kOk;
    }
    if (sweep_cmd->parsed()) {
      if (detail::input_source_count(o) != 0) throw UsageError("sweep generates its own instances; drop the input source");
      SweepSource src;
      if (!o.graphs.empty()) {
        std::tie(src.n_min, src.n_max) = detail::parse_graph_range(o.graphs);
        if (src.n_min > src.n_max) throw UsageError("--graphs range is empty");
        if (src.n_max >= 7 && !(o.allow_n7 && o.dedup))
          throw UsageError("7-vertex enumeration needs both --allow-n7 and --dedup");
        src.kind = SweepSource::Kind::Graphs;
        src.dedup = o.dedup;
      } else if (o.random_count) {
        if (!o.seed) throw UsageError("--random requires an explicit --seed");
        if (!o.n) throw UsageError("--random requires --n");
        src.kind = SweepSource::Kind::Random;
        src.count = *o.random_count;
        src.n = *o.n;
        src.seed = *o.seed;
        src.max_entry = o.max_entry;
      } else {
        throw UsageError("sweep needs --graphs or --random");
      }
      SweepChecks checks;
      if (!o.checks.empty()) {
        const auto has = [&](std::string_view c) { return std::find(o.checks.begin(), o.checks.end(), c) != o.checks.end(); };
        checks = {has("conjecture"), has("audit"), has("witness")};
      }
      const std::string sink = o.out.empty() ? detail::default_sink() : o.out;
      const SweepSummary sum = sink == "-" ? mlines::sweep(src, checks, out) : mlines::sweep(src, checks, sink);
      const json r = to_json(sum);
      // Records own stdout when the sink is "-"; the summary then goes to err.
      std::ostream& summary_out = sink == "-" ? err : out;
      detail::emit(r, as_json, summary_out, detail::render_sweep);
      return sum.failures() == 0 ? kOk : kSweepFailed;
    }
    if (generate->parsed()) {
      std::optional<FiniteMetricSpace> s;
      if (o.n) {
        if (detail::input_source_count(o) != 0) throw UsageError("--random-n conflicts with an input source");
        if (!o.seed) throw UsageError("--random-n requires an explicit --seed");
        s = random_metric(*o.n, *o.seed, o.max_entry);
      } else {
        s = detail::load_space(o);
      }
      if (as_json) {
        out << matrix_to_json(*s).dump() << '\n';
      } else {
        out << matrix_to_csv(*s);
      }
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return kUsage;
  } catch (const Error& e) {
    if (as_json) {
      out << json{{"error", error_kind_name(e.kind())}, {"message", e.what()}, {"indices", e.indices()}}.dump() << '\n';
    } else {
      err << "error: " << e.what();
      if (!e.indices().empty()) {
        err << " [";
        for (std::size_t i = 0; i < e.indices().size(); ++i) err << (i ? "," : "") << e.indices()[i];
        err << "]";
      }
      err << '\n';
    }
    return exit_code_for(e.kind());
  }
  return kUsage;
}

}  // namespace mlines::cli
