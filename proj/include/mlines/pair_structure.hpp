#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mlines/line_enumeration.hpp"
#include "mlines/metric_core.hpp"

namespace mlines {

/// How two generating pairs of the same line sit relative to each other.
enum class RelationKind : std::uint8_t {
  Equal,            // o.1
  OrderedShared,    // o.2: {a,b} ⊃ {a,c}, [acb]
  OrderedDisjoint,  // o.3: [acdb]
  BlueShared,       // b.1: [bac]
  BlueDisjoint,     // b.2: [abcd]
  Green,            // [acbd]
  Red,
  Purple,
};

constexpr std::string_view relation_kind_name(RelationKind k) {
  switch (k) {
    case RelationKind::Equal: return "equal";
    case RelationKind::OrderedShared: return "ordered_shared";
    case RelationKind::OrderedDisjoint: return "ordered_disjoint";
    case RelationKind::BlueShared: return "blue_shared";
    case RelationKind::BlueDisjoint: return "blue_disjoint";
    case RelationKind::Green: return "green";
    case RelationKind::Red: return "red";
    case RelationKind::Purple: return "purple";
  }
  return "unknown";
}

constexpr bool is_ordered(RelationKind k) {
  return k == RelationKind::Equal || k == RelationKind::OrderedShared ||
         k == RelationKind::OrderedDisjoint;
}

constexpr bool is_blue(RelationKind k) {
  return k == RelationKind::BlueShared || k == RelationKind::BlueDisjoint;
}

/// Result of classifying two generating pairs. `first` is the longer pair
/// (ties go to the lexicographically smaller one); for ordered kinds
/// `second` lies inside `first`. `roles` holds the labeling (a, b, c, d)
/// whose distance equations define the kind; only the first `role_count`
/// entries are meaningful.
struct PairRelation {
  RelationKind kind = RelationKind::Equal;
  PointPair first;
  PointPair second;
  std::array<PointId, 4> roles{};
  std::uint8_t role_count = 0;
  Distance x = 0;  // red / purple parameters
  Distance y = 0;

  std::span<const PointId> labeling() const { return {roles.data(), role_count}; }
};

/// Checks the defining equations of `kind` for the labeling `roles`
/// (2 roles for Equal, 3 for the shared kinds, 4 otherwise).
inline bool satisfies_relation(const FiniteMetricSpace& s, RelationKind kind,
                               std::span<const PointId> roles) {
  using detail::is_between;
  auto seq = [&](std::initializer_list<PointId> pts) {
    return detail::is_collinear_sequence(s, std::span<const PointId>(pts.begin(), pts.size()));
  };
  switch (kind) {
    case RelationKind::Equal:
      return roles.size() == 2 && roles[0] != roles[1];
    case RelationKind::OrderedShared:
      return roles.size() == 3 && is_between(s, roles[0], roles[2], roles[1]);
    case RelationKind::BlueShared:
      return roles.size() == 3 && is_between(s, roles[1], roles[0], roles[2]);
    default:
      break;
  }
  if (roles.size() != 4) return false;
  const PointId a = roles[0], b = roles[1], c = roles[2], d = roles[3];
  switch (kind) {
    case RelationKind::OrderedDisjoint:
      return seq({a, c, d, b});
    case RelationKind::BlueDisjoint:
      return seq({a, b, c, d});
    case RelationKind::Green:
      return seq({a, c, b, d});
    case RelationKind::Red: {
      const Distance x = s(a, b), y = s(a, c);
      return s(c, d) == x && s(b, d) == y && s(a, d) == x + y && s(b, c) == x + y;
    }
    case RelationKind::Purple: {
      const Distance x = s(a, c), y = s(a, d);
      return s(b, d) == x && s(b, c) == y && s(a, b) == x + y && s(c, d) == x + y;
    }
    default:
      return false;
  }
}

/// Classification without the same-line check. Every matching kind is
/// searched for; anything other than exactly one match throws
/// ClassificationFailure.
inline PairRelation classify_unchecked(const FiniteMetricSpace& s, PointPair e1, PointPair e2) {
  const Distance d1 = s(e1.lo, e1.hi), d2 = s(e2.lo, e2.hi);
  if (d1 < d2 || (d1 == d2 && e2 < e1)) std::swap(e1, e2);

  PairRelation r;
  r.first = e1;
  r.second = e2;
  if (e1 == e2) {
    r.kind = RelationKind::Equal;
    r.roles = {e1.lo, e1.hi, 0, 0};
    r.role_count = 2;
    return r;
  }

  auto fail = [&](const std::string& why) {
    return Error(ErrorKind::ClassificationFailure,
                 "{" + std::to_string(e1.lo) + "," + std::to_string(e1.hi) + "} vs {" +
                     std::to_string(e2.lo) + "," + std::to_string(e2.hi) + "}: " + why,
                 {e1.lo, e1.hi, e2.lo, e2.hi});
  };

  int matches = 0;
  if (e1.shares_point_with(e2)) {
    const PointId a = e2.contains(e1.lo) ? e1.lo : e1.hi;
    const PointId b = e1.other(a), c = e2.other(a);
    r.roles = {a, b, c, 0};
    r.role_count = 3;
    for (RelationKind k : {RelationKind::OrderedShared, RelationKind::BlueShared}) {
      if (satisfies_relation(s, k, r.labeling())) {
        r.kind = k;
        ++matches;
      }
    }
  } else {
    // Labelings in lexicographic order so the first hit per kind is the
    // smallest one.
    std::array<std::array<PointId, 4>, 4> labelings{{
        {e1.lo, e1.hi, e2.lo, e2.hi},
        {e1.lo, e1.hi, e2.hi, e2.lo},
        {e1.hi, e1.lo, e2.lo, e2.hi},
        {e1.hi, e1.lo, e2.hi, e2.lo},
    }};
    std::sort(labelings.begin(), labelings.end());
    r.role_count = 4;
    for (RelationKind k : {RelationKind::OrderedDisjoint, RelationKind::BlueDisjoint,
                           RelationKind::Green, RelationKind::Red, RelationKind::Purple}) {
      for (const auto& lab : labelings) {
        if (satisfies_relation(s, k, lab)) {
          r.kind = k;
          r.roles = lab;
          ++matches;
          break;
        }
      }
    }
  }
  if (matches == 0) throw fail("no relation kind matches");
  if (matches > 1) throw fail("more than one relation kind matches");

  if (r.kind == RelationKind::Red) {
    r.x = s(r.roles[0], r.roles[1]);
    r.y = s(r.roles[0], r.roles[2]);
  } else if (r.kind == RelationKind::Purple) {
    r.x = s(r.roles[0], r.roles[2]);
    r.y = s(r.roles[0], r.roles[3]);
  }
  return r;
}

/// Classifies two pairs that generate the same line.
inline PairRelation classify(const FiniteMetricSpace& s, const PointPair& e1, const PointPair& e2) {
  if (e1.lo == e1.hi || e2.lo == e2.hi)
    throw Error(ErrorKind::NonDistinctPoints, "pairs need two distinct points");
  if (line_of(s, e1) != line_of(s, e2))
    throw Error(ErrorKind::DifferentLines, "pairs generate different lines",
                {e1.lo, e1.hi, e2.lo, e2.hi});
  return classify_unchecked(s, e1, e2);
}

/// Isolated vertices and green components (size >= 2) of one level's green graph.
struct GreenLevel {
  int k = 0;
  std::vector<PointPair> isolated;
  std::vector<std::vector<PointPair>> components;
};

/// Poset levels of K(L) under the ordered relation, with the coloured
/// relations needed downstream.
struct LevelDecomposition {
  PointSet line;
  std::vector<PointPair> pairs;             // K(L), ascending
  std::vector<int> level_of;                // ℓ(e) per pair index
  std::vector<std::ptrdiff_t> chain_parent;  // predecessor on a longest chain, -1 if minimal
  int height = 0;
  std::vector<std::vector<PointPair>> levels;  // levels[k - 1]
  std::vector<PointPair> purple;               // U(L)
  std::vector<PointPair> red;                  // D(L)
  std::vector<GreenLevel> green;               // k = 2 .. height - 1, at green[k - 2]

  // |K| x |K| row-major tables.
  std::vector<RelationKind> kinds;
  std::vector<std::uint8_t> below;  // below[i * |K| + j]: pairs[i] strictly below pairs[j]

  std::size_t size() const noexcept { return pairs.size(); }

  std::size_t index_of(const PointPair& e) const {
    const auto it = std::lower_bound(pairs.begin(), pairs.end(), e);
    if (it == pairs.end() || *it != e)
      throw Error(ErrorKind::InvalidArgument, "pair is not a generator of this line", {e.lo, e.hi});
    return static_cast<std::size_t>(it - pairs.begin());
  }
  bool contains(const PointPair& e) const { return std::binary_search(pairs.begin(), pairs.end(), e); }
  int level(const PointPair& e) const { return level_of[index_of(e)]; }
  RelationKind kind(std::size_t i, std::size_t j) const { return kinds[i * pairs.size() + j]; }
  bool strictly_below(std::size_t i, std::size_t j) const { return below[i * pairs.size() + j] != 0; }

  const std::vector<PointPair>& level_pairs(int k) const {
    if (k < 1 || k > height)
      throw Error(ErrorKind::LevelOutOfRange, "level " + std::to_string(k) + " outside 1.." + std::to_string(height));
    return levels[static_cast<std::size_t>(k - 1)];
  }

  /// A longest chain e_1 ≺ ... ≺ e_k ending at pairs[idx], bottom first.
  std::vector<PointPair> max_chain(std::size_t idx) const {
    std::vector<PointPair> chain;
    for (auto i = static_cast<std::ptrdiff_t>(idx); i >= 0; i = chain_parent[static_cast<std::size_t>(i)])
      chain.push_back(pairs[static_cast<std::size_t>(i)]);
    std::reverse(chain.begin(), chain.end());
    return chain;
  }
};

namespace detail {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> rank_;
};

inline GreenLevel compute_green_level(const LevelDecomposition& dec, int k) {
  GreenLevel out;
  out.k = k;
  const auto& members = dec.levels[static_cast<std::size_t>(k - 1)];
  std::vector<std::size_t> idx;
  idx.reserve(members.size());
  for (const PointPair& e : members) idx.push_back(dec.index_of(e));

  UnionFind uf(members.size());
  std::vector<bool> has_edge(members.size(), false);
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      if (dec.kind(idx[i], idx[j]) == RelationKind::Green) {
        uf.unite(i, j);
        has_edge[i] = has_edge[j] = true;
      }
    }
  }
  std::vector<std::vector<PointPair>> by_root(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (has_edge[i]) {
      by_root[uf.find(i)].push_back(members[i]);
    } else {
      out.isolated.push_back(members[i]);
    }
  }
  for (auto& comp : by_root) {
    if (comp.empty()) continue;
    std::sort(comp.begin(), comp.end());
    out.components.push_back(std::move(comp));
  }
  std::sort(out.components.begin(), out.components.end());
  return out;
}

}  // namespace detail

/// Builds the poset on K(L), its levels, the purple and red sets, and the
/// green graph data for every middle level.
inline LevelDecomposition build_levels(const FiniteMetricSpace& space, const LineEntry& entry) {
  LevelDecomposition dec;
  dec.line = entry.line;
  dec.pairs = entry.generators;
  std::sort(dec.pairs.begin(), dec.pairs.end());
  const std::size_t m = dec.pairs.size();
  dec.kinds.assign(m * m, RelationKind::Equal);
  dec.below.assign(m * m, 0);

  std::vector<bool> is_purple(m, false), is_red(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const PairRelation r = classify_unchecked(space, dec.pairs[i], dec.pairs[j]);
      dec.kinds[i * m + j] = dec.kinds[j * m + i] = r.kind;
      if (r.kind == RelationKind::OrderedShared || r.kind == RelationKind::OrderedDisjoint) {
        const bool i_inner = r.second == dec.pairs[i];
        dec.below[i_inner ? i * m + j : j * m + i] = 1;
      } else if (r.kind == RelationKind::Purple) {
        is_purple[i] = is_purple[j] = true;
      } else if (r.kind == RelationKind::Red) {
        is_red[i] = is_red[j] = true;
      }
    }
  }

  // Strictly nested pairs are strictly shorter, so ascending length is a
  // topological order of the poset.
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return space(dec.pairs[a].lo, dec.pairs[a].hi) < space(dec.pairs[b].lo, dec.pairs[b].hi);
  });
  dec.level_of.assign(m, 1);
  dec.chain_parent.assign(m, -1);
  for (std::size_t j : order) {
    for (std::size_t i = 0; i < m; ++i) {
      if (dec.below[i * m + j] && dec.level_of[i] + 1 > dec.level_of[j]) {
        dec.level_of[j] = dec.level_of[i] + 1;
        dec.chain_parent[j] = static_cast<std::ptrdiff_t>(i);
      }
    }
  }

  dec.height = m == 0 ? 0 : *std::max_element(dec.level_of.begin(), dec.level_of.end());
  dec.levels.assign(static_cast<std::size_t>(dec.height), {});
  for (std::size_t i = 0; i < m; ++i) {
    dec.levels[static_cast<std::size_t>(dec.level_of[i] - 1)].push_back(dec.pairs[i]);
    if (is_purple[i]) dec.purple.push_back(dec.pairs[i]);
    if (is_red[i]) dec.red.push_back(dec.pairs[i]);
  }
  for (int k = 2; k <= dec.height - 1; ++k) dec.green.push_back(detail::compute_green_level(dec, k));
  return dec;
}

/// Green graph data of level k; only defined for 2 <= k <= h(L) - 1.
inline const GreenLevel& green_components(const LevelDecomposition& dec, int k) {
  if (k < 2 || k > dec.height - 1)
    throw Error(ErrorKind::LevelOutOfRange,
                "green components need 2 <= k <= h(L)-1, got k=" + std::to_string(k) +
                    " with h(L)=" + std::to_string(dec.height));
  return dec.green[static_cast<std::size_t>(k - 2)];
}

struct AuditFailure {
  std::string claim;
  std::string detail;
};

namespace detail {
inline std::string pair_str(const PointPair& e) {
  return "{" + std::to_string(e.lo) + "," + std::to_string(e.hi) + "}";
}
}  // namespace detail

/// Re-checks the structural facts about K(L) directly on the instance.
/// Each fact is only checked within its hypotheses. Returns the violations.
inline std::vector<AuditFailure> audit_structure(const FiniteMetricSpace& space,
                                                 const LevelDecomposition& dec) {
  using detail::pair_str;
  std::vector<AuditFailure> out;
  const std::size_t m = dec.size();
  const auto n = static_cast<PointId>(space.size());

  // Levels are antichains whose members are pairwise blue, green, red or purple.
  for (int k = 1; k <= dec.height; ++k) {
    const auto& lvl = dec.level_pairs(k);
    for (std::size_t i = 0; i < lvl.size(); ++i) {
      for (std::size_t j = i + 1; j < lvl.size(); ++j) {
        const std::size_t a = dec.index_of(lvl[i]), b = dec.index_of(lvl[j]);
        if (dec.strictly_below(a, b) || dec.strictly_below(b, a) || is_ordered(dec.kind(a, b)))
          out.push_back({"antichain", "level " + std::to_string(k) + ": " + pair_str(lvl[i]) +
                                          " and " + pair_str(lvl[j]) + " are comparable"});
        PairRelation r;
        try {
          r = classify_unchecked(space, lvl[i], lvl[j]);
        } catch (const Error& e) {
          out.push_back({"level_complete", e.what()});
          continue;
        }
        if (is_ordered(r.kind) || !satisfies_relation(space, r.kind, r.labeling()))
          out.push_back({"level_complete", "level " + std::to_string(k) + ": " + pair_str(lvl[i]) +
                                               " and " + pair_str(lvl[j]) + " not coloured"});
      }
    }
  }

  // At least k-1 inner points, read off a longest chain.
  for (std::size_t idx = 0; idx < m; ++idx) {
    const PointPair e = dec.pairs[idx];
    const int k = dec.level_of[idx];
    const auto chain = dec.max_chain(idx);
    bool chain_ok = static_cast<int>(chain.size()) == k;
    for (std::size_t c = 0; chain_ok && c + 1 < chain.size(); ++c)
      chain_ok = dec.strictly_below(dec.index_of(chain[c]), dec.index_of(chain[c + 1]));
    PointSet inner;
    for (const PointPair& f : chain) {
      for (PointId p : {f.lo, f.hi})
        if (!e.contains(p)) inner.push_back(p);
    }
    std::sort(inner.begin(), inner.end());
    inner.erase(std::unique(inner.begin(), inner.end()), inner.end());
    std::sort(inner.begin(), inner.end(), [&](PointId x, PointId y) { return space(e.lo, x) < space(e.lo, y); });
    std::vector<PointId> seq{e.lo};
    seq.insert(seq.end(), inner.begin(), inner.end());
    seq.push_back(e.hi);
    if (!chain_ok || static_cast<int>(inner.size()) < k - 1 || !detail::is_collinear_sequence(space, seq))
      out.push_back({"inner_points", pair_str(e) + " at level " + std::to_string(k) +
                                         " lacks a collinear sequence with k-1 inner points"});
  }

  for (const PointPair& e : dec.red) {
    for (PointId v = 0; v < n; ++v) {
      if (!e.contains(v) && detail::is_between(space, e.lo, v, e.hi))
        out.push_back({"red_no_interior", std::to_string(v) + " lies between red " + pair_str(e)});
    }
    if (dec.level(e) != 1) out.push_back({"red_minimal", "red " + pair_str(e) + " is not minimal"});
  }

  for (const PointPair& e : dec.purple) {
    for (PointId v : dec.line) {
      if (!e.contains(v) && !detail::is_between(space, e.lo, v, e.hi))
        out.push_back({"purple_between", std::to_string(v) + " not between purple " + pair_str(e)});
    }
  }

  if (!dec.purple.empty()) {
    std::vector<PointPair> maximal;
    for (std::size_t j = 0; j < m; ++j) {
      bool top = true;
      for (std::size_t i = 0; i < m && top; ++i) top = !dec.strictly_below(j, i);
      if (top) maximal.push_back(dec.pairs[j]);
    }
    if (maximal != dec.purple)
      out.push_back({"purple_maximal", "purple set differs from the maximal elements"});
    for (std::size_t i = 0; i < dec.purple.size(); ++i) {
      for (std::size_t j = i + 1; j < dec.purple.size(); ++j) {
        if (dec.kind(dec.index_of(dec.purple[i]), dec.index_of(dec.purple[j])) != RelationKind::Purple)
          out.push_back({"purple_mutual", pair_str(dec.purple[i]) + " and " + pair_str(dec.purple[j]) +
                                              " are not purple-related"});
      }
    }
    for (std::size_t f = 0; f < m; ++f) {
      if (std::binary_search(dec.purple.begin(), dec.purple.end(), dec.pairs[f])) continue;
      for (const PointPair& e : dec.purple) {
        if (!dec.strictly_below(f, dec.index_of(e)))
          out.push_back({"purple_dominates", pair_str(dec.pairs[f]) + " is not below purple " + pair_str(e)});
      }
    }
    if (dec.level_pairs(dec.height) != dec.purple)
      out.push_back({"purple_top_level", "purple set is not the top level"});
  }

  for (int k = 2; k <= dec.height - 1; ++k) {
    const auto& g = green_components(dec, k);
    if (static_cast<std::size_t>(k - 1) * g.isolated.size() > space.size())
      out.push_back({"isolated_bound", "level " + std::to_string(k) + ": |Q| = " +
                                           std::to_string(g.isolated.size()) + " exceeds n/(k-1)"});
  }
  return out;
}

}  // namespace mlines
