// Acceptance run: one PASS/FAIL line per criterion.
//
// The stated corpus is every connected labeled graph on 2..6 vertices plus
// random metrics with seeds 1..1000. No level of that corpus has two green
// components, so criteria 3..7 and 9 also run on a supplement of sparse
// random trees and one stored fixture; counts are reported per corpus.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "mlines/mlines.hpp"
#include "support/corpus.hpp"
#include "support/oracles.hpp"

using namespace mlines;

namespace {

struct Criterion {
  std::size_t checked[2] = {0, 0};  // stated corpus, supplement
  std::size_t failures = 0;
  std::vector<std::string> examples;

  void fail(const std::string& id, const std::string& what) {
    ++failures;
    if (examples.size() < 5) examples.push_back(id + ": " + what);
  }
  std::size_t total() const { return checked[0] + checked[1]; }
};

Criterion crit[10];

oracle::Ids endpoints(const std::vector<PointPair>& comp) {
  oracle::Ids pts;
  for (const auto& e : comp) {
    pts.push_back(e.lo);
    pts.push_back(e.hi);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

bool contains(const std::vector<PointId>& v, PointId x) { return std::find(v.begin(), v.end(), x) != v.end(); }

bool contains_seq(const std::vector<oracle::Ids>& found, const std::vector<PointId>& seq) {
  return std::find(found.begin(), found.end(), oracle::Ids(seq.begin(), seq.end())) != found.end();
}

bool distinct_by_direct_comparison(const std::vector<PointSet>& lines) {
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      if (lines[i] == lines[j]) return false;
  return true;
}

// Some orientation of the two sequences, joined at a shared end point or
// abutting, forms a collinear sequence of distinct points.
bool oracle_concatenates(const oracle::Matrix& d, std::vector<PointId> a, std::vector<PointId> b) {
  for (int ra = 0; ra < 2; ++ra, std::reverse(a.begin(), a.end())) {
    for (int rb = 0; rb < 2; ++rb, std::reverse(b.begin(), b.end())) {
      oracle::Ids joined(a.begin(), a.end());
      joined.insert(joined.end(), b.begin() + (a.back() == b.front() ? 1 : 0), b.end());
      oracle::Ids sorted = joined;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) continue;
      if (oracle::collinear_sequence(d, joined)) return true;
    }
  }
  return false;
}

void check_classification(const std::string& id, const FiniteMetricSpace& s, const oracle::Matrix& d,
                          const LineEntry& entry) {
  Criterion& c = crit[2];
  const auto& k = entry.generators;
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (std::size_t j = i + 1; j < k.size(); ++j) {
      ++c.checked[0];
      try {
        const auto r = classify(s, k[i], k[j]);
        if (!satisfies_relation(s, r.kind, r.labeling())) c.fail(id, "labeling fails its equations");
        if (oracle::relation_kind_count(d, {k[i].lo, k[i].hi}, {k[j].lo, k[j].hi}) != 1)
          c.fail(id, "brute force finds other than one relation kind");
      } catch (const Error& e) {
        c.fail(id, e.what());
      }
    }
  }
}

void check_components(const std::string& id, const FiniteMetricSpace& s, const oracle::Matrix& d,
                      const LevelDecomposition& dec, int k, int corpus_index) {
  const auto& g = green_components(dec, k);
  std::vector<ComponentOrdering> ords;
  for (const auto& comp : g.components) {
    ords.push_back(order_component(s, comp, dec.line));
    const auto& ord = ords.back();
    const auto pts = endpoints(comp);
    if (pts.size() <= 8) {
      ++crit[3].checked[corpus_index];
      const auto found = oracle::collinear_orderings(d, pts);
      std::vector<PointId> rev(ord.sequence.rbegin(), ord.sequence.rend());
      if (found.size() != 2 || ord.sequence == rev || !contains_seq(found, ord.sequence) || !contains_seq(found, rev))
        crit[3].fail(id, "ordering disagrees with permutation brute force");
    }
    for (PointId v : dec.line) {
      if (std::binary_search(pts.begin(), pts.end(), v)) continue;
      ++crit[4].checked[corpus_index];
      const auto gaps = oracle::insertion_gaps(d, ord.sequence, v);
      if (gaps.size() != 1 || insert_point(s, ord.sequence, v, dec.line).position != gaps[0])
        crit[4].fail(id, "insertion of " + std::to_string(v) + " is not unique or disagrees");
    }
  }
  for (std::size_t i = 0; i < ords.size(); ++i) {
    for (std::size_t j = i + 1; j < ords.size(); ++j) {
      ++crit[7].checked[corpus_index];
      const bool lib = concat_two_components(s, ords[i], ords[j]);
      const bool ref = oracle_concatenates(d, ords[i].sequence, ords[j].sequence);
      if (!lib || !ref) crit[7].fail(id, "components " + std::to_string(i) + " and " + std::to_string(j) + " do not concatenate");
    }
  }
}

void check_special_lines(const std::string& id, const FiniteMetricSpace& s, const oracle::Matrix& d,
                         const LineCatalog& catalog, const LevelDecomposition& dec, int k, int corpus_index) {
  const auto& g = green_components(dec, k);
  if (g.components.empty()) return;
  Criterion& c = crit[6];
  ++c.checked[corpus_index];
  const auto fam = level_special_lines(s, catalog, dec, k);
  if (!fam.certified()) c.fail(id, "family not certified: " + fam.violations.front());
  if (!distinct_by_direct_comparison(fam.lines)) c.fail(id, "special lines repeat");

  std::vector<std::vector<PointId>> sequences;
  for (const auto& comp : g.components) sequences.push_back(order_component(s, comp, dec.line).sequence);
  for (std::size_t i = 0; i < fam.size(); ++i) {
    const auto& step = std::get<SpecialStep>(fam.provenance[i]);
    const auto reference = oracle::line(d, step.u, step.a_next);
    if (!std::equal(reference.begin(), reference.end(), fam.lines[i].begin(), fam.lines[i].end()))
      c.fail(id, "special line differs from line(u_i, a_{i+1})");
    if (contains(fam.lines[i], step.a_i)) c.fail(id, "a_i lies on its special line");
    // Outside-point exclusion: points of L inserting at an end of this
    // component's ordering avoid its special lines.
    const auto& seq = sequences[step.component];
    for (PointId v : dec.line) {
      if (contains(seq, v)) continue;
      const auto gaps = oracle::insertion_gaps(d, seq, v);
      if (gaps.size() == 1 && (gaps[0] == 0 || gaps[0] == seq.size()) && contains(fam.lines[i], v))
        c.fail(id, "outside point " + std::to_string(v) + " lies on a special line");
    }
  }
}

void check_witness(const std::string& id, const FiniteMetricSpace& s, const oracle::Matrix& d,
                   const LineCatalog& catalog, int corpus_index) {
  Criterion& c = crit[9];
  ++c.checked[corpus_index];
  const auto all = oracle::all_lines(d);
  const auto r = extract_witness(s, catalog, WitnessMode::Best);
  if (r.m != all.size()) c.fail(id, "m disagrees with brute force");
  if (r.certified_lower_bound > r.m) c.fail(id, "certified bound exceeds m");
  for (const auto& fam : r.families) {
    if (!distinct_by_direct_comparison(fam.lines)) c.fail(id, "family lines repeat");
    for (const auto& line : fam.lines)
      if (!all.count(oracle::Ids(line.begin(), line.end()))) c.fail(id, "family member is not a line");
    if (!verify_family(s, fam).empty()) c.fail(id, "family fails re-verification");
  }
}

void examine(const std::string& id, const FiniteMetricSpace& s, int corpus_index) {
  const auto d = oracle::matrix_of(s);
  const auto catalog = build_catalog(s);
  for (const auto& entry : catalog.entries()) {
    if (corpus_index == 0) check_classification(id, s, d, entry);
    const auto dec = build_levels(s, entry);
    ++crit[5].checked[corpus_index];
    const auto audit = audit_structure(s, dec);
    if (!audit.empty()) crit[5].fail(id, audit.front().claim + ": " + audit.front().detail);
    for (int k = 2; k <= dec.height - 1; ++k) {
      check_components(id, s, d, dec, k, corpus_index);
      if (!catalog.has_universal()) check_special_lines(id, s, d, catalog, dec, k, corpus_index);
    }
  }
  if (!catalog.has_universal()) check_witness(id, s, d, catalog, corpus_index);
}

void guarded(const std::string& id, const FiniteMetricSpace& s, int corpus_index) {
  try {
    examine(id, s, corpus_index);
  } catch (const std::exception& e) {
    crit[0].fail(id, e.what());
  }
}

void exact_counts() {
  Criterion& c = crit[8];
  auto expect = [&](const std::string& name, std::size_t lines, bool universal) {
    ++c.checked[0];
    const auto s = builtin_space(name);
    const auto d = oracle::matrix_of(s);
    const auto catalog = build_catalog(s);
    const auto m = oracle::all_lines(d).size();
    if (lines && (catalog.line_count() != lines || m != lines)) c.fail(name, "line count " + std::to_string(catalog.line_count()));
    if (catalog.has_universal() != universal || oracle::has_universal(d) != universal)
      c.fail(name, universal ? "universal line missing" : "unexpected universal line");
  };
  expect("C5", 10, false);
  for (std::size_t n = 3; n <= 7; ++n) expect("K" + std::to_string(n), n * (n - 1) / 2, false);
  for (std::size_t n = 2; n <= 10; ++n) expect("P" + std::to_string(n), 0, true);
  for (std::size_t k = 2; k <= 6; ++k) expect("C" + std::to_string(2 * k), 0, true);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool report(int n, const std::string& what, const std::string& detail, bool extra_ok = true) {
  const Criterion& c = crit[n];
  const bool pass = c.failures == 0 && extra_ok;
  std::printf("criterion %d: %s  %s: %s, %zu failures\n", n, pass ? "PASS" : "FAIL", what.c_str(), detail.c_str(),
              c.failures);
  for (const auto& e : c.examples) std::printf("    %s\n", e.c_str());
  return pass;
}

std::string split(const Criterion& c, const std::string& unit) {
  return std::to_string(c.total()) + " " + unit + " (" + std::to_string(c.checked[0]) + " stated corpus, " +
         std::to_string(c.checked[1]) + " supplement)";
}

}  // namespace

int main() {
  // Criterion 1 on its own clock.
  const auto t1 = std::chrono::steady_clock::now();
  std::size_t graphs = 0;
  corpus::for_each_graph(2, 6, [&](const std::string& id, const FiniteMetricSpace& s) {
    ++graphs;
    ++crit[1].checked[0];
    if (!check_chen_chvatal(build_catalog(s)).holds) crit[1].fail(id, "fewer than n lines and no universal line");
  });
  const double conjecture_seconds = seconds_since(t1);

  const auto t0 = std::chrono::steady_clock::now();
  corpus::for_each_instance([](const std::string& id, const FiniteMetricSpace& s) { guarded(id, s, 0); });
  std::size_t trees = 0;
  corpus::for_each_tree(1, 2000, [&](const std::string& id, const FiniteMetricSpace& s) {
    ++trees;
    guarded(id, s, 1);
  });
  guarded("fixture two_components_no_universal", corpus::two_component_fixture(), 1);
  exact_counts();
  const double corpus_seconds = seconds_since(t0);

  std::printf("stated corpus: %zu connected graphs on 2..6 vertices + 1000 random metrics; supplement: %zu random trees + 1 fixture\n",
              graphs, trees);
  bool ok = true;
  char detail[128];
  std::snprintf(detail, sizeof detail, "%zu graphs in %.1f s", graphs, conjecture_seconds);
  ok &= report(1, "exhaustive conjecture check", detail, graphs == 27475 && conjecture_seconds < 300);
  ok &= report(2, "classification totality", std::to_string(crit[2].checked[0]) + " duos of generating pairs",
               crit[2].total() > 0);
  ok &= report(3, "ordering oracle", split(crit[3], "components"), crit[3].total() > 0);
  ok &= report(4, "insertion uniqueness", split(crit[4], "insertions"), crit[4].total() > 0);
  ok &= report(5, "structural audit", split(crit[5], "lines"), crit[5].total() > 0);
  ok &= report(6, "special-line certification", split(crit[6], "level families"), crit[6].total() > 0);
  ok &= report(7, "two-component concatenation", split(crit[7], "component duos"), crit[7].total() > 0);
  ok &= report(8, "exact small-instance counts", std::to_string(crit[8].total()) + " named spaces");
  ok &= report(9, "witness soundness", split(crit[9], "spaces without a universal line"), crit[9].total() > 0);
  if (crit[0].failures) {
    std::printf("unexpected errors: %zu\n", crit[0].failures);
    for (const auto& e : crit[0].examples) std::printf("    %s\n", e.c_str());
    ok = false;
  }
  std::printf("corpus pass took %.1f s\n", corpus_seconds);
  return ok ? 0 : 1;
}
