#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mlines/metric_core.hpp"
#include "mlines/pair_structure.hpp"

namespace mlines {

/// Green-edge graph on a set of generating pairs.
struct GreenGraph {
  std::vector<PointPair> vertices;
  std::vector<std::vector<std::size_t>> adjacency;
};

/// True iff the two disjoint pairs interleave as [acbd] with {a,b} = e1 and
/// {c,d} = e2 for some labeling.
inline bool is_green(const FiniteMetricSpace& s, const PointPair& e1, const PointPair& e2) {
  if (e1.shares_point_with(e2)) return false;
  for (PointId a : {e1.lo, e1.hi}) {
    const PointId b = e1.other(a);
    for (PointId c : {e2.lo, e2.hi}) {
      const PointId d = e2.other(c);
      if (satisfies_relation(s, RelationKind::Green, std::array<PointId, 4>{a, b, c, d})) return true;
    }
  }
  return false;
}

inline GreenGraph make_green_graph(const FiniteMetricSpace& s, std::span<const PointPair> pairs) {
  GreenGraph g;
  g.vertices.assign(pairs.begin(), pairs.end());
  g.adjacency.resize(g.vertices.size());
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < g.vertices.size(); ++j) {
      if (is_green(s, g.vertices[i], g.vertices[j])) {
        g.adjacency[i].push_back(j);
        g.adjacency[j].push_back(i);
      }
    }
  }
  return g;
}

namespace detail {

// Tree degree of every vertex in a DFS spanning tree rooted at 0; empty if
// the graph is disconnected.
inline std::vector<std::size_t> dfs_tree_degrees(const GreenGraph& g) {
  const std::size_t n = g.vertices.size();
  std::vector<std::size_t> degree(n, 0);
  std::vector<bool> seen(n, false);
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};  // (vertex, next neighbour slot)
  seen[0] = true;
  std::size_t visited = 1;
  while (!stack.empty()) {
    auto& [v, slot] = stack.back();
    if (slot == g.adjacency[v].size()) {
      stack.pop_back();
      continue;
    }
    const std::size_t w = g.adjacency[v][slot++];
    if (seen[w]) continue;
    seen[w] = true;
    ++visited;
    ++degree[v];
    ++degree[w];
    stack.emplace_back(w, 0);
  }
  if (visited != n) return {};
  return degree;
}

inline bool is_connected(const GreenGraph& g) {
  return g.vertices.size() <= 1 || !dfs_tree_degrees(g).empty();
}

}  // namespace detail

/// A vertex whose removal keeps the graph connected: the smallest-index
/// leaf of a DFS spanning tree rooted at vertex 0.
inline std::size_t non_cut_vertex(const GreenGraph& g) {
  if (g.vertices.size() < 2) throw Error(ErrorKind::TooSmall, "graph needs at least 2 vertices");
  const auto degree = detail::dfs_tree_degrees(g);
  if (degree.empty()) throw Error(ErrorKind::Disconnected, "green graph is not connected");
  for (std::size_t v = 0; v < degree.size(); ++v)
    if (degree[v] == 1) return v;
  throw Error(ErrorKind::Disconnected, "spanning tree without a leaf");
}

/// Where a point lands when inserted into a collinear ordering. `position`
/// is the index it takes in the extended sequence.
struct SidePlacement {
  enum class Side { Inside, OutsideLeft, OutsideRight };
  Side side = Side::Inside;
  std::size_t position = 0;

  friend bool operator==(const SidePlacement&, const SidePlacement&) = default;
};

namespace detail {

// Every position at which v extends seq to a collinear sequence.
inline std::vector<std::size_t> insertion_positions(const FiniteMetricSpace& s,
                                                    std::span<const PointId> seq, PointId v) {
  std::vector<std::size_t> hits;
  std::vector<PointId> candidate(seq.size() + 1);
  for (std::size_t pos = 0; pos <= seq.size(); ++pos) {
    std::copy(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(pos), candidate.begin());
    candidate[pos] = v;
    std::copy(seq.begin() + static_cast<std::ptrdiff_t>(pos), seq.end(),
              candidate.begin() + static_cast<std::ptrdiff_t>(pos) + 1);
    if (is_collinear_sequence(s, candidate)) hits.push_back(pos);
  }
  return hits;
}

inline std::size_t unique_insertion(const FiniteMetricSpace& s, std::span<const PointId> seq, PointId v) {
  const auto hits = insertion_positions(s, seq, v);
  if (hits.empty())
    throw Error(ErrorKind::NoValidPosition, "no position for point " + std::to_string(v), {v});
  if (hits.size() > 1)
    throw Error(ErrorKind::NoValidPosition, "several positions for point " + std::to_string(v), {v});
  return hits.front();
}

}  // namespace detail

/// Inserts v into a collinear ordering of points of `line`; exactly one
/// position must work.
inline SidePlacement insert_point(const FiniteMetricSpace& s, std::span<const PointId> seq,
                                  PointId v, const PointSet& line) {
  if (!detail::in_set(line, v))
    throw Error(ErrorKind::NotOnLine, "point " + std::to_string(v) + " is not on the line", {v});
  if (std::find(seq.begin(), seq.end(), v) != seq.end())
    throw Error(ErrorKind::AlreadyPresent, "point " + std::to_string(v) + " already in the ordering", {v});
  const std::size_t pos = detail::unique_insertion(s, seq, v);
  if (pos == 0) return {SidePlacement::Side::OutsideLeft, 0};
  if (pos == seq.size()) return {SidePlacement::Side::OutsideRight, pos};
  return {SidePlacement::Side::Inside, pos};
}

/// Collinear ordering of all endpoints of a green-connected set of pairs,
/// in standard orientation (first point has the smaller index).
struct ComponentOrdering {
  PointSet line;
  std::vector<PointPair> component;                 // ascending
  std::vector<PointId> sequence;
  std::vector<std::pair<PointId, PointId>> roles;  // (opening, closing), parallel to component
  std::vector<PointId> openings;                   // by position

  std::size_t position_of(PointId p) const {
    return static_cast<std::size_t>(std::find(sequence.begin(), sequence.end(), p) - sequence.begin());
  }
  /// Opening/closing pairs ordered by opening position: (a_1,b_1), ..., (a_t,b_t).
  std::vector<std::pair<PointId, PointId>> roles_by_opening() const {
    auto r = roles;
    std::sort(r.begin(), r.end(), [&](const auto& x, const auto& y) {
      return position_of(x.first) < position_of(y.first);
    });
    return r;
  }
};

namespace detail {

inline void fill_roles(ComponentOrdering& ord) {
  ord.roles.clear();
  for (const PointPair& e : ord.component) {
    const bool lo_first = ord.position_of(e.lo) < ord.position_of(e.hi);
    ord.roles.emplace_back(lo_first ? e.lo : e.hi, lo_first ? e.hi : e.lo);
  }
  ord.openings.clear();
  for (const auto& [open, close] : ord.roles_by_opening()) {
    if (std::find(ord.openings.begin(), ord.openings.end(), open) == ord.openings.end())
      ord.openings.push_back(open);
  }
}

}  // namespace detail

/// Builds the standard collinear ordering by repeatedly stripping a
/// non-cut vertex, then re-inserting the stripped pairs' endpoints one at a
/// time in reverse order.
inline ComponentOrdering order_component(const FiniteMetricSpace& s, std::span<const PointPair> component,
                                         const PointSet& line) {
  if (component.empty()) throw Error(ErrorKind::TooSmall, "empty component");
  ComponentOrdering ord;
  ord.line = line;
  ord.component.assign(component.begin(), component.end());
  std::sort(ord.component.begin(), ord.component.end());
  ord.component.erase(std::unique(ord.component.begin(), ord.component.end()), ord.component.end());
  for (const PointPair& e : ord.component) {
    if (!detail::in_set(line, e.lo) || !detail::in_set(line, e.hi))
      throw Error(ErrorKind::NotOnLine, "pair " + detail::pair_str(e) + " is not on the line", {e.lo, e.hi});
  }

  GreenGraph full = make_green_graph(s, ord.component);
  if (!detail::is_connected(full))
    throw Error(ErrorKind::NotGreenConnected, "pairs are not connected by green relations");

  std::vector<PointPair> remaining = ord.component;
  std::vector<PointPair> stripped;
  while (remaining.size() > 1) {
    const GreenGraph g = make_green_graph(s, remaining);
    const std::size_t v = non_cut_vertex(g);
    stripped.push_back(remaining[v]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(v));
  }

  std::vector<PointId> seq{remaining.front().lo, remaining.front().hi};
  for (auto it = stripped.rbegin(); it != stripped.rend(); ++it) {
    for (PointId p : {it->lo, it->hi}) {
      if (std::find(seq.begin(), seq.end(), p) != seq.end()) continue;
      const SidePlacement place = insert_point(s, seq, p, line);
      seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(place.position), p);
    }
  }
  if (!check_collinear_sequence(s, seq))
    throw Error(ErrorKind::NoValidPosition, "assembled ordering is not collinear");
  if (seq.front() > seq.back()) std::reverse(seq.begin(), seq.end());
  ord.sequence = std::move(seq);
  detail::fill_roles(ord);
  return ord;
}

inline ComponentOrdering reversed(const ComponentOrdering& ord) {
  ComponentOrdering r = ord;
  std::reverse(r.sequence.begin(), r.sequence.end());
  detail::fill_roles(r);
  return r;
}

/// Split index s such that v is on the right side of every role occurrence
/// at positions < s and on the left side of every one at positions >= s.
inline std::size_t partition_sides(const FiniteMetricSpace& s, const ComponentOrdering& ord, PointId v) {
  if (!detail::in_set(ord.line, v))
    throw Error(ErrorKind::NotOnLine, "point " + std::to_string(v) + " is not on the line", {v});
  if (std::find(ord.sequence.begin(), ord.sequence.end(), v) != ord.sequence.end())
    throw Error(ErrorKind::AlreadyPresent, "point " + std::to_string(v) + " already in the ordering", {v});

  // 0 = no role, 1 = left, 2 = right, 3 = mixed.
  std::vector<int> side(ord.sequence.size(), 0);
  auto mark = [&](PointId p, bool left) { side[ord.position_of(p)] |= left ? 1 : 2; };
  for (const auto& [a, b] : ord.roles) {
    mark(a, detail::is_between(s, v, a, b));
    mark(b, !detail::is_between(s, a, b, v));
  }
  std::size_t split = 0;
  while (split < side.size() && side[split] == 2) ++split;
  for (std::size_t p = split; p < side.size(); ++p) {
    if (side[p] != 1)
      throw Error(ErrorKind::NoValidSplit, "no side partition for point " + std::to_string(v), {v});
  }
  return split;
}

/// Structural invariants of an ordering; returns the violated ones.
inline std::vector<std::string> check_ordering_invariants(const FiniteMetricSpace& s,
                                                          const ComponentOrdering& ord) {
  std::vector<std::string> out;
  if (ord.sequence.size() < 2 || !check_collinear_sequence(s, ord.sequence))
    out.push_back("sequence is not collinear");
  PointSet endpoints;
  for (const PointPair& e : ord.component) {
    endpoints.push_back(e.lo);
    endpoints.push_back(e.hi);
  }
  std::sort(endpoints.begin(), endpoints.end());
  endpoints.erase(std::unique(endpoints.begin(), endpoints.end()), endpoints.end());
  PointSet seq_set = ord.sequence;
  std::sort(seq_set.begin(), seq_set.end());
  if (seq_set != endpoints) out.push_back("sequence is not the endpoint set");
  if (!ord.sequence.empty() && ord.sequence.front() > ord.sequence.back())
    out.push_back("not in standard orientation");
  if (ord.openings.size() != ord.component.size()) out.push_back("openings are not distinct");

  const auto by_open = ord.roles_by_opening();
  for (std::size_t i = 0; i < by_open.size(); ++i) {
    if (ord.position_of(by_open[i].first) >= ord.position_of(by_open[i].second))
      out.push_back("opening after closing");
    if (i + 1 == by_open.size()) continue;
    const auto [a1, b1] = by_open[i];
    const auto [a2, b2] = by_open[i + 1];
    if (ord.position_of(b1) >= ord.position_of(b2))
      out.push_back("closings out of order at " + std::to_string(i));
    const bool distinct = a1 != a2 && a1 != b1 && a1 != b2 && a2 != b1 && a2 != b2 && b1 != b2;
    if (!distinct || !(ord.position_of(a2) < ord.position_of(b1)) ||
        !is_green(s, PointPair::of(a1, b1), PointPair::of(a2, b2)))
      out.push_back("consecutive pairs do not interleave at " + std::to_string(i));
  }
  return out;
}

/// Whether some orientation of the two orderings concatenates to a
/// collinear sequence. A point shared by the two orderings may only appear
/// at the junction, where it is counted once.
inline bool concat_two_components(const FiniteMetricSpace& s, const ComponentOrdering& first,
                                  const ComponentOrdering& second) {
  if (first.component == second.component)
    throw Error(ErrorKind::SameComponent, "the two components are identical");
  for (bool rev1 : {false, true}) {
    for (bool rev2 : {false, true}) {
      std::vector<PointId> left = first.sequence, right = second.sequence;
      if (rev1) std::reverse(left.begin(), left.end());
      if (rev2) std::reverse(right.begin(), right.end());
      std::vector<PointId> joined = left;
      auto start = right.begin();
      if (left.back() == right.front()) ++start;
      joined.insert(joined.end(), start, right.end());
      PointSet check = joined;
      std::sort(check.begin(), check.end());
      if (std::adjacent_find(check.begin(), check.end()) != check.end()) continue;
      if (detail::is_collinear_sequence(s, joined)) return true;
    }
  }
  return false;
}

}  // namespace mlines
