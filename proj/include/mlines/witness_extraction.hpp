#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mlines/collinear_ordering.hpp"
#include "mlines/line_enumeration.hpp"
#include "mlines/metric_core.hpp"
#include "mlines/pair_structure.hpp"

namespace mlines {

enum class WitnessKind { Chain, Star, Special };

constexpr std::string_view witness_kind_name(WitnessKind k) {
  switch (k) {
    case WitnessKind::Chain: return "chain";
    case WitnessKind::Star: return "star";
    case WitnessKind::Special: return "special";
  }
  return "unknown";
}

/// L_i = line(u, v) for a collinear sequence step (v, v_next), with u off
/// line(v, v_next).
struct ChainStep {
  std::size_t i = 0;
  PointId v = 0;
  PointId v_next = 0;
  PointId u = 0;
};

/// line(u_i, u_j) for two neighbours of a high-degree point in an antichain.
struct StarStep {
  PointId center = 0;
  PointId u_i = 0;
  PointId u_j = 0;
};

/// L_i = line(u, a_next) for consecutive openings (a_i, a_next) of a green
/// component in level k, with {u, a_i, a_next} not collinear.
struct SpecialStep {
  int k = 0;
  std::size_t component = 0;
  std::size_t i = 0;
  PointId a_i = 0;
  PointId a_next = 0;
  PointId u = 0;
};

using Provenance = std::variant<ChainStep, StarStep, SpecialStep>;

struct WitnessFamily {
  WitnessKind kind = WitnessKind::Chain;
  PointSet source_line;  // the line the construction started from, if any
  std::vector<PointSet> lines;
  std::vector<Provenance> provenance;  // parallel to lines
  std::vector<std::string> violations;
  std::vector<std::string> notes;

  std::size_t size() const noexcept { return lines.size(); }
  bool certified() const noexcept { return violations.empty(); }
};

/// Re-derives every line of the family from its provenance, checks the
/// defining property of each construction step, and compares all lines
/// pairwise as sets. Independent of how the family was built.
inline std::vector<std::string> verify_family(const FiniteMetricSpace& s, const WitnessFamily& fam) {
  std::vector<std::string> out;
  if (fam.lines.size() != fam.provenance.size()) out.push_back("provenance count mismatch");

  std::vector<PointId> star_neighbours;
  for (const auto& p : fam.provenance) {
    if (const auto* st = std::get_if<StarStep>(&p)) {
      star_neighbours.push_back(st->u_i);
      star_neighbours.push_back(st->u_j);
    }
  }
  std::sort(star_neighbours.begin(), star_neighbours.end());
  star_neighbours.erase(std::unique(star_neighbours.begin(), star_neighbours.end()), star_neighbours.end());

  for (std::size_t idx = 0; idx < std::min(fam.lines.size(), fam.provenance.size()); ++idx) {
    const PointSet& line = fam.lines[idx];
    const std::string tag = "line " + std::to_string(idx) + ": ";
    std::visit(
        [&](const auto& step) {
          using T = std::decay_t<decltype(step)>;
          if constexpr (std::is_same_v<T, ChainStep>) {
            if (detail::is_collinear(s, step.u, step.v, step.v_next))
              out.push_back(tag + "u is collinear with (v_i, v_i+1)");
            if (line != line_of(s, step.u, step.v)) out.push_back(tag + "does not equal line(u_i, v_i)");
            if (detail::in_set(line, step.v_next)) out.push_back(tag + "contains v_i+1");
          } else if constexpr (std::is_same_v<T, StarStep>) {
            if (!detail::is_between(s, step.u_i, step.center, step.u_j))
              out.push_back(tag + "center not between u_i and u_j");
            if (line != line_of(s, step.u_i, step.u_j)) out.push_back(tag + "does not equal line(u_i, u_j)");
            for (PointId w : star_neighbours) {
              if (w != step.u_i && w != step.u_j && detail::in_set(line, w))
                out.push_back(tag + "contains a third neighbour " + std::to_string(w));
            }
          } else {
            if (detail::is_collinear(s, step.u, step.a_i, step.a_next))
              out.push_back(tag + "u is collinear with (a_i, a_i+1)");
            if (line != line_of(s, step.u, step.a_next)) out.push_back(tag + "does not equal line(u_i, a_i+1)");
            if (detail::in_set(line, step.a_i)) out.push_back(tag + "contains a_i");
          }
        },
        fam.provenance[idx]);
  }

  for (std::size_t i = 0; i < fam.lines.size(); ++i) {
    for (std::size_t j = i + 1; j < fam.lines.size(); ++j) {
      if (fam.lines[i] == fam.lines[j])
        out.push_back("lines " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
    }
  }
  return out;
}

namespace detail {

inline void require_no_universal(const LineCatalog& catalog) {
  if (catalog.has_universal())
    throw Error(ErrorKind::UniversalLinePresent, "the space has a universal line");
}

inline PointId first_noncollinear(const FiniteMetricSpace& s, PointId a, PointId b) {
  for (PointId u = 0; u < s.size(); ++u) {
    if (u != a && u != b && !is_collinear(s, u, a, b)) return u;
  }
  throw Error(ErrorKind::UniversalLinePresent,
              "line(" + std::to_string(a) + "," + std::to_string(b) + ") is universal", {a, b});
}

// Collinear sequence of every endpoint on a chain, built by unique insertion
// starting from the top pair.
inline std::vector<PointId> chain_sequence(const FiniteMetricSpace& s, const std::vector<PointPair>& chain) {
  const PointPair top = chain.back();
  std::vector<PointId> seq{top.lo, top.hi};
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    for (PointId p : {it->lo, it->hi}) {
      if (std::find(seq.begin(), seq.end(), p) != seq.end()) continue;
      const std::size_t pos = unique_insertion(s, seq, p);
      seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(pos), p);
    }
  }
  return seq;
}

}  // namespace detail

/// Distinct lines from a collinear sequence v_1..v_t: L_i = line(u_i, v_i)
/// with u_i the smallest point off line(v_i, v_i+1). Produces t-1 lines.
inline WitnessFamily chain_witness(const FiniteMetricSpace& s, const LineCatalog& catalog,
                                   std::span<const PointId> seq) {
  detail::require_no_universal(catalog);
  if (!check_collinear_sequence(s, seq))
    throw Error(ErrorKind::SequenceNotCollinear, "sequence is not collinear");
  WitnessFamily fam;
  fam.kind = WitnessKind::Chain;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const PointId u = detail::first_noncollinear(s, seq[i], seq[i + 1]);
    fam.lines.push_back(line_of(s, u, seq[i]));
    fam.provenance.push_back(ChainStep{i, seq[i], seq[i + 1], u});
  }
  fam.notes.push_back("a " + std::to_string(seq.size()) + "-point sequence yields " +
                      std::to_string(fam.lines.size()) +
                      " constructed lines; the classical statement claims one more, which is not reported");
  fam.violations = verify_family(s, fam);
  return fam;
}

inline WitnessFamily chain_witness(const FiniteMetricSpace& s, std::span<const PointId> seq) {
  return chain_witness(s, build_catalog(s), seq);
}

/// Lines through pairs of neighbours of the highest-degree point of an
/// antichain of same-line generating pairs.
inline WitnessFamily star_witness(const FiniteMetricSpace& s, std::span<const PointPair> level) {
  if (level.empty()) throw Error(ErrorKind::DegreeTooSmall, "empty level");
  const PointSet line = line_of(s, level.front());
  for (const PointPair& e : level) {
    if (line_of(s, e) != line)
      throw Error(ErrorKind::DifferentLines, "pairs generate different lines", {e.lo, e.hi});
  }
  for (std::size_t i = 0; i < level.size(); ++i) {
    for (std::size_t j = i + 1; j < level.size(); ++j) {
      if (is_ordered(classify_unchecked(s, level[i], level[j]).kind))
        throw Error(ErrorKind::NotAntichain, "pairs " + detail::pair_str(level[i]) + " and " +
                                                 detail::pair_str(level[j]) + " are comparable");
    }
  }
  std::vector<std::size_t> degree(s.size(), 0);
  for (const PointPair& e : level) {
    ++degree[e.lo];
    ++degree[e.hi];
  }
  const auto center = static_cast<PointId>(std::max_element(degree.begin(), degree.end()) - degree.begin());
  if (degree[center] < 2)
    throw Error(ErrorKind::DegreeTooSmall, "every point has degree below 2 in the level");
  std::vector<PointId> nbrs;
  for (const PointPair& e : level) {
    if (e.contains(center)) nbrs.push_back(e.other(center));
  }
  std::sort(nbrs.begin(), nbrs.end());

  WitnessFamily fam;
  fam.kind = WitnessKind::Star;
  fam.source_line = line;
  for (std::size_t i = 0; i < nbrs.size(); ++i) {
    for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
      fam.lines.push_back(line_of(s, nbrs[i], nbrs[j]));
      fam.provenance.push_back(StarStep{center, nbrs[i], nbrs[j]});
    }
  }
  fam.violations = verify_family(s, fam);
  return fam;
}

namespace detail {
inline void require_middle_level(const LevelDecomposition& dec, int k) {
  if (k < 2 || k > dec.height - 1)
    throw Error(ErrorKind::LevelOutOfRange,
                "special lines need 2 <= k <= h(L)-1, got k=" + std::to_string(k) +
                    " with h(L)=" + std::to_string(dec.height));
}
}  // namespace detail

/// Special lines of one green component in level k, from the opening
/// sequence a_1..a_t of its standard ordering. Produces t-1 lines.
inline WitnessFamily special_lines(const FiniteMetricSpace& s, const LineCatalog& catalog,
                                   const LevelDecomposition& dec, int k, const ComponentOrdering& ord,
                                   std::size_t component_index = 0) {
  detail::require_no_universal(catalog);
  detail::require_middle_level(dec, k);
  const auto& lvl = dec.level_pairs(k);
  for (const PointPair& e : ord.component) {
    if (!std::binary_search(lvl.begin(), lvl.end(), e))
      throw Error(ErrorKind::InvalidArgument, "pair " + detail::pair_str(e) + " is not in level " + std::to_string(k));
  }
  WitnessFamily fam;
  fam.kind = WitnessKind::Special;
  fam.source_line = dec.line;
  for (std::size_t i = 0; i + 1 < ord.openings.size(); ++i) {
    const PointId a = ord.openings[i], a_next = ord.openings[i + 1];
    const PointId u = detail::first_noncollinear(s, a, a_next);
    fam.lines.push_back(line_of(s, u, a_next));
    fam.provenance.push_back(SpecialStep{k, component_index, i, a, a_next, u});
  }
  fam.violations = verify_family(s, fam);
  return fam;
}

/// All special lines of level k across its green components, with
/// cross-component distinctness re-verified and the outside-point
/// exclusion audited: no special line of a component contains a point of L
/// that inserts at either end of that component's ordering.
inline WitnessFamily level_special_lines(const FiniteMetricSpace& s, const LineCatalog& catalog,
                                         const LevelDecomposition& dec, int k) {
  detail::require_no_universal(catalog);
  detail::require_middle_level(dec, k);
  const GreenLevel& g = green_components(dec, k);
  WitnessFamily fam;
  fam.kind = WitnessKind::Special;
  fam.source_line = dec.line;
  std::vector<std::string> exclusion;
  for (std::size_t c = 0; c < g.components.size(); ++c) {
    const ComponentOrdering ord = order_component(s, g.components[c], dec.line);
    const WitnessFamily part = special_lines(s, catalog, dec, k, ord, c);
    for (PointId v : dec.line) {
      if (std::find(ord.sequence.begin(), ord.sequence.end(), v) != ord.sequence.end()) continue;
      if (insert_point(s, ord.sequence, v, dec.line).side == SidePlacement::Side::Inside) continue;
      for (std::size_t i = 0; i < part.lines.size(); ++i) {
        if (detail::in_set(part.lines[i], v))
          exclusion.push_back("component " + std::to_string(c) + ": special line " + std::to_string(i) +
                              " contains outside point " + std::to_string(v));
      }
    }
    fam.lines.insert(fam.lines.end(), part.lines.begin(), part.lines.end());
    fam.provenance.insert(fam.provenance.end(), part.provenance.begin(), part.provenance.end());
  }
  fam.violations = verify_family(s, fam);
  fam.violations.insert(fam.violations.end(), exclusion.begin(), exclusion.end());
  return fam;
}

enum class WitnessMode { Paper, Best };
enum class Branch { LargePart, BigAntichain, TallPoset, GreenMass, Direct };

constexpr std::string_view branch_name(Branch b) {
  switch (b) {
    case Branch::LargePart: return "LargePart";
    case Branch::BigAntichain: return "BigAntichain";
    case Branch::TallPoset: return "TallPoset";
    case Branch::GreenMass: return "GreenMass";
    case Branch::Direct: return "Direct";
  }
  return "unknown";
}

struct WitnessReport {
  std::size_t n = 0;
  std::size_t m = 0;
  WitnessMode mode = WitnessMode::Best;
  Branch branch = Branch::Direct;
  std::vector<WitnessFamily> families;
  std::size_t certified_lower_bound = 0;
  std::size_t best_family_size = 0;  // largest certified family, regardless of branch
  std::vector<std::string> notes;
};

namespace detail {

using i128 = __int128;

// Thresholds of the counting argument, compared exactly by cubing.
inline bool reaches_four_n_four_thirds(std::size_t size, std::size_t n) {  // size >= 4 n^{4/3}
  const i128 s = static_cast<i128>(size), nn = static_cast<i128>(n);
  return s * s * s >= 64 * nn * nn * nn * nn;
}
inline bool exceeds_n_four_thirds(std::size_t size, std::size_t n) {  // size > n^{4/3}
  const i128 s = static_cast<i128>(size), nn = static_cast<i128>(n);
  return s * s * s > nn * nn * nn * nn;
}
inline bool exceeds_two_cbrt_n(std::size_t d, std::size_t n) {  // d > 2 n^{1/3}
  const i128 x = static_cast<i128>(d);
  return x * x * x > 8 * static_cast<i128>(n);
}
inline bool exceeds_n_two_thirds(std::size_t h, std::size_t n) {  // h > n^{2/3}
  const i128 x = static_cast<i128>(h), nn = static_cast<i128>(n);
  return x * x * x > nn * nn;
}
inline bool reaches_n_two_thirds(std::size_t s, std::size_t n) {  // s >= n^{2/3}
  const i128 x = static_cast<i128>(s), nn = static_cast<i128>(n);
  return x * x * x >= nn * nn;
}
inline std::size_t ceil_four_n_four_thirds(std::size_t n) {
  std::size_t t = static_cast<std::size_t>(4.0 * std::pow(static_cast<double>(n), 4.0 / 3.0));
  while (t > 0 && reaches_four_n_four_thirds(t - 1, n)) --t;
  while (!reaches_four_n_four_thirds(t, n)) ++t;
  return t;
}

inline WitnessFamily top_chain_witness(const FiniteMetricSpace& s, const LineCatalog& catalog,
                                       const LevelDecomposition& dec) {
  std::size_t top = 0;
  while (dec.level_of[top] != dec.height) ++top;
  const auto seq = chain_sequence(s, dec.max_chain(top));
  WitnessFamily fam = chain_witness(s, catalog, seq);
  fam.source_line = dec.line;
  return fam;
}

inline std::optional<WitnessFamily> try_star(const FiniteMetricSpace& s, std::span<const PointPair> level) {
  try {
    return star_witness(s, level);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::DegreeTooSmall) return std::nullopt;
    throw;
  }
}

inline Branch branch_for(WitnessKind k) {
  switch (k) {
    case WitnessKind::Chain: return Branch::TallPoset;
    case WitnessKind::Star: return Branch::BigAntichain;
    case WitnessKind::Special: return Branch::GreenMass;
  }
  return Branch::Direct;
}

inline WitnessReport paper_mode(const FiniteMetricSpace& s, const LineCatalog& catalog, WitnessReport r) {
  const std::size_t n = r.n;
  const LineEntry* largest = &catalog.entries().front();
  for (const auto& e : catalog.entries())
    if (e.generators.size() > largest->generators.size()) largest = &e;
  const std::size_t threshold = ceil_four_n_four_thirds(n);

  if (!reaches_four_n_four_thirds(largest->generators.size(), n)) {
    r.branch = Branch::Direct;
    r.certified_lower_bound = r.m;
    r.notes.push_back("largest part |K(L)| = " + std::to_string(largest->generators.size()) +
                      " is below ceil(4 n^{4/3}) = " + std::to_string(threshold) +
                      "; the counting bound m >= C(n,2) / (4 n^{4/3}) applies");
    if (n * (n - 1) / 2 < threshold)
      r.notes.push_back("at n = " + std::to_string(n) +
                        " no part can reach 4 n^{4/3}, so the structural branches cannot fire");
    return r;
  }

  const LevelDecomposition dec = build_levels(s, *largest);
  r.notes.push_back("line with |K(L)| = " + std::to_string(dec.size()) + " >= ceil(4 n^{4/3}) = " +
                    std::to_string(threshold) + ", h(L) = " + std::to_string(dec.height));

  for (int k = 1; k <= dec.height; ++k) {
    const auto& lvl = dec.level_pairs(k);
    if (!exceeds_n_four_thirds(lvl.size(), n)) continue;
    auto fam = try_star(s, lvl);
    r.branch = Branch::BigAntichain;
    if (!fam) {
      r.notes.push_back("level " + std::to_string(k) + " exceeds n^{4/3} but has no point of degree 2");
      return r;
    }
    const PointId center = std::get<StarStep>(fam->provenance.front()).center;
    std::size_t degree = 0;
    for (const PointPair& e : lvl) degree += e.contains(center) ? 1 : 0;
    r.notes.push_back("level " + std::to_string(k) + " has " + std::to_string(lvl.size()) +
                      " > n^{4/3} pairs; max degree " + std::to_string(degree) +
                      (exceeds_two_cbrt_n(degree, n) ? " > 2 n^{1/3}" : " does not exceed 2 n^{1/3}"));
    r.certified_lower_bound = fam->certified() ? fam->size() : 0;
    r.families.push_back(std::move(*fam));
    return r;
  }

  if (exceeds_n_two_thirds(static_cast<std::size_t>(dec.height), n)) {
    r.branch = Branch::TallPoset;
    WitnessFamily fam = top_chain_witness(s, catalog, dec);
    r.notes.push_back("h(L) = " + std::to_string(dec.height) + " > n^{2/3}; chain witness from a longest chain");
    r.certified_lower_bound = fam.certified() ? fam.size() : 0;
    r.families.push_back(std::move(fam));
    return r;
  }

  const double cbrt_n = std::cbrt(static_cast<double>(n)), ln_n = std::log(static_cast<double>(n));
  r.notes.push_back(cbrt_n >= ln_n ? "n^{1/3} >= ln n: 2n^{4/3} - n ln n >= n^{4/3} holds"
                                   : "n^{1/3} < ln n: the step 2n^{4/3} - n ln n >= n^{4/3} needs larger n");
  for (int k = 2; k <= dec.height - 1; ++k) {
    std::size_t mass = 0;
    for (const auto& comp : green_components(dec, k).components) mass += comp.size();
    if (!reaches_n_two_thirds(mass, n)) continue;
    r.branch = Branch::GreenMass;
    WitnessFamily fam = level_special_lines(s, catalog, dec, k);
    r.notes.push_back("level " + std::to_string(k) + " has green mass " + std::to_string(mass) + " >= n^{2/3}");
    r.certified_lower_bound = fam.certified() ? fam.size() : 0;
    r.families.push_back(std::move(fam));
    return r;
  }
  r.branch = Branch::LargePart;
  r.notes.push_back("no middle level reaches green mass n^{2/3} at this n; no branch guard fires");
  return r;
}

inline WitnessReport best_mode(const FiniteMetricSpace& s, const LineCatalog& catalog, WitnessReport r) {
  std::optional<WitnessFamily> best[3];
  std::size_t computed[3] = {0, 0, 0};
  auto offer = [&](WitnessFamily fam) {
    const auto slot = static_cast<std::size_t>(fam.kind);
    ++computed[slot];
    if (!fam.certified()) {
      r.families.push_back(std::move(fam));
      return;
    }
    if (!best[slot] || fam.size() > best[slot]->size()) best[slot] = std::move(fam);
  };

  for (const LineEntry& entry : catalog.entries()) {
    const LevelDecomposition dec = build_levels(s, entry);
    offer(top_chain_witness(s, catalog, dec));
    for (int k = 1; k <= dec.height; ++k) {
      if (auto fam = try_star(s, dec.level_pairs(k))) offer(std::move(*fam));
    }
    for (int k = 2; k <= dec.height - 1; ++k) {
      if (!green_components(dec, k).components.empty()) offer(level_special_lines(s, catalog, dec, k));
    }
  }

  std::optional<WitnessKind> winner;
  for (std::size_t slot = 0; slot < 3; ++slot) {
    if (!best[slot]) continue;
    if (!winner || best[slot]->size() > r.best_family_size) {
      winner = best[slot]->kind;
      r.best_family_size = best[slot]->size();
    }
  }
  for (auto& fam : best) {
    if (fam) r.families.push_back(std::move(*fam));
  }
  for (std::size_t slot = 0; slot < 3; ++slot) {
    r.notes.push_back(std::string(witness_kind_name(static_cast<WitnessKind>(slot))) + " families computed: " +
                      std::to_string(computed[slot]));
  }
  if (!winner || r.m > r.best_family_size) {
    r.branch = Branch::Direct;
    r.certified_lower_bound = r.m;
  } else {
    r.branch = branch_for(*winner);
    r.certified_lower_bound = r.best_family_size;
  }
  return r;
}

}  // namespace detail

/// Certified lower bound on the number of lines, either by replaying the
/// case analysis of the counting argument (Paper) or by building every
/// family and keeping the largest (Best).
inline WitnessReport extract_witness(const FiniteMetricSpace& s, const LineCatalog& catalog, WitnessMode mode) {
  detail::require_no_universal(catalog);
  WitnessReport r;
  r.n = s.size();
  r.m = catalog.line_count();
  r.mode = mode;
  return mode == WitnessMode::Paper ? detail::paper_mode(s, catalog, std::move(r))
                                    : detail::best_mode(s, catalog, std::move(r));
}

inline WitnessReport extract_witness(const FiniteMetricSpace& s, WitnessMode mode) {
  return extract_witness(s, build_catalog(s), mode);
}

}  // namespace mlines
