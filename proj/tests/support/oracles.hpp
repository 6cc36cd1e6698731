#pragma once

// Brute-force reference implementations. They work on raw integer matrices
// and share no code with the library beyond the PointId/Distance aliases.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mlines/metric_core.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<std::int64_t>>;
using Ids = std::vector<std::uint32_t>;

inline Matrix matrix_of(const mlines::FiniteMetricSpace& s) {
  Matrix d(s.size(), std::vector<std::int64_t>(s.size()));
  for (std::uint32_t i = 0; i < s.size(); ++i)
    for (std::uint32_t j = 0; j < s.size(); ++j) d[i][j] = s(i, j);
  return d;
}

inline bool between(const Matrix& d, std::size_t a, std::size_t x, std::size_t b) {
  return d[a][b] == d[a][x] + d[x][b];
}

inline bool collinear(const Matrix& d, std::size_t a, std::size_t b, std::size_t c) {
  return between(d, a, b, c) || between(d, b, a, c) || between(d, a, c, b);
}

inline bool collinear_sequence(const Matrix& d, const Ids& seq) {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) sum += d[seq[i]][seq[i + 1]];
  return d[seq.front()][seq.back()] == sum;
}

/// The line through a and b straight from its definition.
inline Ids line(const Matrix& d, std::size_t a, std::size_t b) {
  Ids out;
  for (std::size_t x = 0; x < d.size(); ++x) {
    if (x == a || x == b || collinear(d, a, b, x)) out.push_back(static_cast<std::uint32_t>(x));
  }
  return out;
}

inline std::set<Ids> all_lines(const Matrix& d) {
  std::set<Ids> out;
  for (std::size_t a = 0; a < d.size(); ++a)
    for (std::size_t b = a + 1; b < d.size(); ++b) out.insert(line(d, a, b));
  return out;
}

inline bool has_universal(const Matrix& d) {
  for (const Ids& l : all_lines(d))
    if (l.size() == d.size()) return true;
  return false;
}

/// All-pairs shortest paths by Floyd-Warshall on an edge list.
inline Matrix shortest_paths(std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, std::int64_t>>& edges) {
  const std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
  Matrix d(n, std::vector<std::int64_t>(n, inf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (auto [u, v, w] : edges) d[u][v] = d[v][u] = std::min(d[u][v], w);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

/// Every ordering of `points` that is a collinear sequence.
inline std::vector<Ids> collinear_orderings(const Matrix& d, Ids points) {
  std::vector<Ids> out;
  std::sort(points.begin(), points.end());
  do {
    if (collinear_sequence(d, points)) out.push_back(points);
  } while (std::next_permutation(points.begin(), points.end()));
  return out;
}

/// Every gap index (0..size) where inserting v keeps the sequence collinear.
inline std::vector<std::size_t> insertion_gaps(const Matrix& d, const Ids& seq, std::uint32_t v) {
  std::vector<std::size_t> out;
  for (std::size_t pos = 0; pos <= seq.size(); ++pos) {
    Ids s = seq;
    s.insert(s.begin() + static_cast<std::ptrdiff_t>(pos), v);
    if (collinear_sequence(d, s)) out.push_back(pos);
  }
  return out;
}

/// Number of connected labeled graphs on n vertices, by testing all masks.
inline std::size_t count_connected_graphs(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  std::size_t count = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x];
      return x;
    };
    std::size_t comps = n;
    for (std::size_t e = 0; e < slots.size(); ++e) {
      if (!(mask >> e & 1)) continue;
      const std::size_t a = find(slots[e].first), b = find(slots[e].second);
      if (a != b) {
        parent[a] = b;
        --comps;
      }
    }
    if (comps == 1) ++count;
  }
  return count;
}

// Distance equations of the pair relations, evaluated on a role labeling.

inline bool ordered_shared(const Matrix& d, std::size_t a, std::size_t b, std::size_t c) { return between(d, a, c, b); }

inline bool ordered_disjoint(const Matrix& d, std::size_t a, std::size_t b, std::size_t c, std::size_t e) {
  return collinear_sequence(d, {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(c),
                                static_cast<std::uint32_t>(e), static_cast<std::uint32_t>(b)});
}

inline bool red(const Matrix& d, std::size_t a, std::size_t b, std::size_t c, std::size_t e) {
  const auto x = d[a][b], y = d[a][c];
  return d[c][e] == x && d[b][e] == y && d[a][e] == x + y && d[b][c] == x + y;
}

inline bool purple(const Matrix& d, std::size_t a, std::size_t b, std::size_t c, std::size_t e) {
  const auto x = d[a][c], y = d[a][e];
  return d[b][e] == x && d[b][c] == y && d[a][b] == x + y && d[c][e] == x + y;
}

using Pair = std::pair<std::size_t, std::size_t>;

inline bool shares_point(Pair e, Pair f) {
  return e.first == f.first || e.first == f.second || e.second == f.first || e.second == f.second;
}

// f strictly nested in e, straight from the segment picture.
inline bool nested(const Matrix& d, Pair e, Pair f) {
  if (e == f) return false;
  if (shares_point(e, f)) {
    const std::size_t a = (e.first == f.first || e.first == f.second) ? e.first : e.second;
    const std::size_t b = a == e.first ? e.second : e.first, c = a == f.first ? f.second : f.first;
    return between(d, a, c, b);
  }
  for (auto [a, b] : {Pair{e.first, e.second}, Pair{e.second, e.first}})
    for (auto [c, x] : {Pair{f.first, f.second}, Pair{f.second, f.first}})
      if (ordered_disjoint(d, a, b, c, x)) return true;
  return false;
}

// Number of relation kinds, Equal aside, that some labeling of two distinct
// generating pairs of one line satisfies. Exactly one is expected.
inline int relation_kind_count(const Matrix& d, Pair e1, Pair e2) {
  if (d[e1.first][e1.second] < d[e2.first][e2.second]) std::swap(e1, e2);
  int count = 0;
  if (shares_point(e1, e2)) {
    const std::size_t a = (e1.first == e2.first || e1.first == e2.second) ? e1.first : e1.second;
    const std::size_t b = a == e1.first ? e1.second : e1.first, c = a == e2.first ? e2.second : e2.first;
    count += between(d, a, c, b);
    count += between(d, b, a, c);
    return count;
  }
  std::vector<std::array<std::uint32_t, 4>> labs;
  for (auto [a, b] : {Pair{e1.first, e1.second}, Pair{e1.second, e1.first}})
    for (auto [c, x] : {Pair{e2.first, e2.second}, Pair{e2.second, e2.first}})
      labs.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(c),
                      static_cast<std::uint32_t>(x)});
  auto any = [&](auto pred) {
    for (auto [a, b, c, x] : labs)
      if (pred(a, b, c, x)) return 1;
    return 0;
  };
  count += any([&](auto a, auto b, auto c, auto x) { return ordered_disjoint(d, a, b, c, x); });
  count += any([&](auto a, auto b, auto c, auto x) { return collinear_sequence(d, Ids{a, b, c, x}); });
  count += any([&](auto a, auto b, auto c, auto x) { return collinear_sequence(d, Ids{a, c, b, x}); });
  count += any([&](auto a, auto b, auto c, auto x) { return red(d, a, b, c, x); });
  count += any([&](auto a, auto b, auto c, auto x) { return purple(d, a, b, c, x); });
  return count;
}

}  // namespace oracle
