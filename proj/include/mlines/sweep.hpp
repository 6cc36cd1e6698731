#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "mlines/instances.hpp"
#include "mlines/json_export.hpp"
#include "mlines/line_enumeration.hpp"
#include "mlines/pair_structure.hpp"
#include "mlines/witness_extraction.hpp"

namespace mlines {

/// Where sweep instances come from.
struct SweepSource {
  enum class Kind { Graphs, Random };
  Kind kind = Kind::Graphs;
  // Graphs: every connected labeled graph with n_min <= n <= n_max.
  std::size_t n_min = 2;
  std::size_t n_max = 6;
  bool dedup = false;
  // Random: `count` metrics on n points, instance i seeded with seed + i.
  std::size_t count = 0;
  std::size_t n = 8;
  std::uint64_t seed = 0;
  Distance max_entry = 5;
};

struct SweepChecks {
  bool conjecture = true;
  bool audit = false;
  bool witness = false;
};

struct SweepRecord {
  std::string id;
  std::uint64_t hash = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  bool universal = false;
  bool holds = true;
  std::vector<std::string> audit_failures;
  std::optional<std::size_t> certified_lower_bound;
  std::optional<std::string> branch;
  std::vector<std::string> witness_failures;
  std::optional<std::string> error;

  bool failed() const {
    return !holds || !audit_failures.empty() || !witness_failures.empty() || error.has_value();
  }
};

struct SweepSummary {
  std::size_t instances = 0;
  std::size_t universal = 0;
  std::size_t conjecture_failures = 0;
  std::size_t audit_failures = 0;
  std::size_t witness_failures = 0;
  std::size_t errors = 0;
  std::optional<std::size_t> min_lines_without_universal;
  std::string min_lines_instance;

  std::size_t failures() const { return conjecture_failures + audit_failures + witness_failures + errors; }
};

inline nlohmann::json to_json(const SweepRecord& r) {
  nlohmann::json doc = {{"id", r.id},   {"hash", r.hash},         {"n", r.n},
                        {"m", r.m},     {"universal", r.universal}, {"holds", r.holds},
                        {"audit_failures", r.audit_failures}};
  if (r.certified_lower_bound) doc["certified_lower_bound"] = *r.certified_lower_bound;
  if (r.branch) doc["branch"] = *r.branch;
  if (!r.witness_failures.empty()) doc["witness_failures"] = r.witness_failures;
  if (r.error) doc["error"] = *r.error;
  return doc;
}

inline nlohmann::json to_json(const SweepSummary& s) {
  nlohmann::json doc = {{"instances", s.instances},
                        {"universal", s.universal},
                        {"conjecture_failures", s.conjecture_failures},
                        {"audit_failures", s.audit_failures},
                        {"witness_failures", s.witness_failures},
                        {"errors", s.errors},
                        {"failures", s.failures()}};
  if (s.min_lines_without_universal) {
    doc["min_lines_without_universal"] = *s.min_lines_without_universal;
    doc["min_lines_instance"] = s.min_lines_instance;
  }
  return doc;
}

/// Runs the selected checks on one space.
inline SweepRecord check_instance(const std::string& id, const FiniteMetricSpace& space, const SweepChecks& checks) {
  SweepRecord rec;
  rec.id = id;
  rec.hash = content_hash(space);
  rec.n = space.size();
  try {
    const LineCatalog catalog = build_catalog(space);
    const ChenChvatalCheck cc = check_chen_chvatal(catalog);
    rec.m = cc.line_count;
    rec.universal = cc.universal;
    if (checks.conjecture) rec.holds = cc.holds;
    if (checks.audit) {
      for (const LineEntry& entry : catalog.entries()) {
        const LevelDecomposition dec = build_levels(space, entry);
        for (const AuditFailure& f : audit_structure(space, dec)) rec.audit_failures.push_back(f.claim + ": " + f.detail);
      }
    }
    if (checks.witness && !catalog.has_universal()) {
      const WitnessReport report = extract_witness(space, catalog, WitnessMode::Best);
      rec.certified_lower_bound = report.certified_lower_bound;
      rec.branch = std::string(branch_name(report.branch));
      if (report.certified_lower_bound > report.m) rec.witness_failures.push_back("certified bound exceeds m");
      for (const WitnessFamily& fam : report.families) {
        for (const auto& v : verify_family(space, fam)) rec.witness_failures.push_back(v);
        for (const auto& v : fam.violations) rec.witness_failures.push_back(v);
      }
    }
  } catch (const Error& e) {
    rec.error = e.what();
  }
  return rec;
}

namespace detail {

inline void tally(SweepSummary& sum, const SweepRecord& rec) {
  ++sum.instances;
  if (rec.universal) ++sum.universal;
  if (!rec.holds) ++sum.conjecture_failures;
  if (!rec.audit_failures.empty()) ++sum.audit_failures;
  if (!rec.witness_failures.empty()) ++sum.witness_failures;
  if (rec.error) ++sum.errors;
  if (!rec.universal && !rec.error &&
      (!sum.min_lines_without_universal || rec.m < *sum.min_lines_without_universal)) {
    sum.min_lines_without_universal = rec.m;
    sum.min_lines_instance = rec.id;
  }
}

}  // namespace detail

/// Visits every instance of a source in deterministic order.
inline void for_each_instance(const SweepSource& source,
                              const std::function<void(const std::string&, const FiniteMetricSpace&)>& visit) {
  if (source.kind == SweepSource::Kind::Graphs) {
    for (std::size_t n = source.n_min; n <= source.n_max; ++n) {
      ConnectedGraphEnumerator it(n, source.dedup);
      while (auto g = it.next()) {
        visit("graph:n=" + std::to_string(n) + ":mask=" + std::to_string(g->first), graph_metric(g->second));
      }
    }
  } else {
    for (std::size_t i = 0; i < source.count; ++i) {
      const std::uint64_t seed = source.seed + i;
      visit("random:n=" + std::to_string(source.n) + ":seed=" + std::to_string(seed) +
                ":max=" + std::to_string(source.max_entry),
            random_metric(source.n, seed, source.max_entry));
    }
  }
}

/// Appends one JSON record per instance to `sink` and returns the totals.
inline SweepSummary sweep(const SweepSource& source, const SweepChecks& checks, std::ostream& sink) {
  SweepSummary sum;
  for_each_instance(source, [&](const std::string& id, const FiniteMetricSpace& space) {
    const SweepRecord rec = check_instance(id, space, checks);
    sink << to_json(rec).dump() << '\n';
    detail::tally(sum, rec);
  });
  sink.flush();
  return sum;
}

/// File-sink form; "-" writes to stdout.
inline SweepSummary sweep(const SweepSource& source, const SweepChecks& checks, const std::string& sink_path) {
  if (sink_path == "-") return sweep(source, checks, std::cout);
  std::ofstream out(sink_path, std::ios::app);
  if (!out) throw Error(ErrorKind::SinkUnwritable, "cannot open '" + sink_path + "' for appending");
  SweepSummary sum = sweep(source, checks, static_cast<std::ostream&>(out));
  if (!out) throw Error(ErrorKind::SinkUnwritable, "write to '" + sink_path + "' failed");
  return sum;
}

}  // namespace mlines
