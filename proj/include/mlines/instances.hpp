#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mlines/errors.hpp"
#include "mlines/metric_core.hpp"

namespace mlines {

struct Edge {
  PointId u = 0;
  PointId v = 0;
  Distance weight = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Simple undirected graph with positive integer edge weights.
struct GraphSpec {
  std::size_t n = 0;
  std::vector<Edge> edges;

  friend bool operator==(const GraphSpec&, const GraphSpec&) = default;
};

inline GraphSpec path_graph(std::size_t n) {
  GraphSpec g{n, {}};
  for (PointId i = 0; i + 1 < n; ++i) g.edges.push_back({i, i + 1, 1});
  return g;
}

inline GraphSpec cycle_graph(std::size_t n) {
  GraphSpec g = path_graph(n);
  if (n >= 3) g.edges.push_back({static_cast<PointId>(n - 1), 0, 1});
  return g;
}

inline GraphSpec complete_graph(std::size_t n) {
  GraphSpec g{n, {}};
  for (PointId i = 0; i < n; ++i)
    for (PointId j = i + 1; j < n; ++j) g.edges.push_back({i, j, 1});
  return g;
}

/// K_{1,leaves} with centre 0.
inline GraphSpec star_graph(std::size_t leaves) {
  GraphSpec g{leaves + 1, {}};
  for (PointId i = 1; i <= leaves; ++i) g.edges.push_back({0, i, 1});
  return g;
}

/// All-pairs shortest paths: BFS for unit weights, Dijkstra otherwise.
inline FiniteMetricSpace graph_metric(const GraphSpec& g) {
  const std::size_t n = g.n;
  if (n < 2) throw Error(ErrorKind::TooFewPoints, "a graph metric needs at least 2 vertices");
  std::vector<std::vector<std::pair<PointId, Distance>>> adj(n);
  std::vector<bool> seen_edge(n * n, false);
  bool unit = true;
  for (const Edge& e : g.edges) {
    if (e.u >= n || e.v >= n)
      throw Error(ErrorKind::InvalidEdge, "edge endpoint out of range", {e.u, e.v});
    if (e.u == e.v) throw Error(ErrorKind::InvalidEdge, "self-loop at " + std::to_string(e.u), {e.u});
    if (e.weight < 1 || e.weight > kMaxDistance / static_cast<Distance>(n))
      throw Error(ErrorKind::InvalidEdge, "edge weight must be a positive integer", {e.u, e.v});
    if (seen_edge[e.u * n + e.v])
      throw Error(ErrorKind::InvalidEdge,
                  "duplicate edge " + std::to_string(e.u) + "-" + std::to_string(e.v), {e.u, e.v});
    seen_edge[e.u * n + e.v] = seen_edge[e.v * n + e.u] = true;
    adj[e.u].push_back({e.v, e.weight});
    adj[e.v].push_back({e.u, e.weight});
    unit = unit && e.weight == 1;
  }

  constexpr Distance kInf = std::numeric_limits<Distance>::max();
  std::vector<std::vector<Distance>> dist(n, std::vector<Distance>(n, kInf));
  for (PointId src = 0; src < n; ++src) {
    auto& d = dist[src];
    d[src] = 0;
    if (unit) {
      std::queue<PointId> q;
      q.push(src);
      while (!q.empty()) {
        const PointId x = q.front();
        q.pop();
        for (const auto& [y, w] : adj[x]) {
          if (d[y] == kInf) {
            d[y] = d[x] + 1;
            q.push(y);
          }
        }
      }
    } else {
      using Item = std::pair<Distance, PointId>;
      std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
      pq.push({0, src});
      while (!pq.empty()) {
        const auto [dx, x] = pq.top();
        pq.pop();
        if (dx != d[x]) continue;
        for (const auto& [y, w] : adj[x]) {
          if (dx + w < d[y]) {
            d[y] = dx + w;
            pq.push({d[y], y});
          }
        }
      }
    }
    for (PointId t = 0; t < n; ++t) {
      if (d[t] == kInf)
        throw Error(ErrorKind::Disconnected,
                    "no path between " + std::to_string(src) + " and " + std::to_string(t), {src, t});
    }
  }
  return validate_metric(dist);
}

/// Floyd-Warshall shortest-path closure of a symmetric non-negative matrix.
inline std::vector<std::vector<Distance>> metric_closure(std::vector<std::vector<Distance>> d) {
  const std::size_t n = d.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

/// Symmetric matrix of uniform integers in [1, max_entry] (upper triangle
/// drawn row by row from mt19937_64(seed)), closed under shortest paths.
inline std::vector<std::vector<Distance>> random_distance_matrix(std::size_t n, std::uint64_t seed,
                                                                 Distance max_entry) {
  if (n < 2) throw Error(ErrorKind::TooFewPoints, "random metric needs n >= 2");
  if (max_entry < 1 || max_entry > kMaxDistance / static_cast<Distance>(n))
    throw Error(ErrorKind::InvalidArgument, "max_entry must be in [1, 2^50 / n]");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Distance> dist(1, max_entry);
  std::vector<std::vector<Distance>> d(n, std::vector<Distance>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = dist(rng);
  return metric_closure(std::move(d));
}

inline FiniteMetricSpace random_metric(std::size_t n, std::uint64_t seed, Distance max_entry) {
  return validate_metric(random_distance_matrix(n, seed, max_entry));
}

/// Random connected graph: vertex i >= 1 attaches to a uniform earlier
/// vertex, then up to `extra_edges` further distinct edges are drawn.
/// Weights are uniform in [1, max_weight]. Deterministic in `seed`.
inline GraphSpec random_connected_graph(std::size_t n, std::uint64_t seed, std::size_t extra_edges,
                                        Distance max_weight = 1) {
  if (n < 2) throw Error(ErrorKind::TooFewPoints, "random graph needs n >= 2");
  if (max_weight < 1 || max_weight > kMaxDistance / static_cast<Distance>(n))
    throw Error(ErrorKind::InvalidArgument, "max_weight must be in [1, 2^50 / n]");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Distance> weight(1, max_weight);
  GraphSpec g{n, {}};
  std::vector<bool> used(n * n, false);
  auto add = [&](PointId u, PointId v) {
    if (u == v || used[u * n + v]) return;
    used[u * n + v] = used[v * n + u] = true;
    g.edges.push_back({std::min(u, v), std::max(u, v), weight(rng)});
  };
  for (PointId v = 1; v < n; ++v) add(static_cast<PointId>(rng() % v), v);
  for (std::size_t e = 0; e < extra_edges; ++e)
    add(static_cast<PointId>(rng() % n), static_cast<PointId>(rng() % n));
  return g;
}

/// L1 (Manhattan) distances between integer points in the plane.
inline FiniteMetricSpace l1_metric(const std::vector<std::pair<std::int64_t, std::int64_t>>& points) {
  const std::size_t n = points.size();
  if (n < 2) throw Error(ErrorKind::TooFewPoints, "need at least 2 points");
  std::vector<std::vector<Distance>> d(n, std::vector<Distance>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (points[i] == points[j])
        throw Error(ErrorKind::DuplicatePoint, "points " + std::to_string(i) + " and " + std::to_string(j) + " coincide", {i, j});
      const Distance dx = points[i].first - points[j].first, dy = points[i].second - points[j].second;
      d[i][j] = d[j][i] = (dx < 0 ? -dx : dx) + (dy < 0 ? -dy : dy);
    }
  }
  return validate_metric(d);
}

/// "n m" followed by m lines "i j [w]". Blank lines and '#' comments skipped.
inline GraphSpec parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) rows.push_back(line);
  }
  if (rows.empty()) throw Error(ErrorKind::Parse, "empty edge list");
  auto fail = [](std::size_t row, const std::string& why) {
    return Error(ErrorKind::Parse, "edge list row " + std::to_string(row + 1) + ": " + why);
  };
  GraphSpec g;
  std::size_t m = 0;
  {
    std::istringstream header(rows[0]);
    long long n_in = -1, m_in = -1;
    std::string extra;
    if (!(header >> n_in >> m_in) || (header >> extra) || n_in < 0 || m_in < 0)
      throw fail(0, "expected \"n m\"");
    g.n = static_cast<std::size_t>(n_in);
    m = static_cast<std::size_t>(m_in);
  }
  if (rows.size() - 1 != m)
    throw fail(0, "header announces " + std::to_string(m) + " edges, found " + std::to_string(rows.size() - 1));
  for (std::size_t r = 1; r < rows.size(); ++r) {
    std::istringstream row(rows[r]);
    long long u = -1, v = -1, w = 1;
    std::string extra;
    if (!(row >> u >> v) || u < 0 || v < 0) throw fail(r, "expected \"i j [w]\"");
    if (!(row >> w)) {
      if (!row.eof()) throw fail(r, "bad weight");
      w = 1;
    } else if (row >> extra) {
      throw fail(r, "trailing fields");
    }
    g.edges.push_back({static_cast<PointId>(u), static_cast<PointId>(v), static_cast<Distance>(w)});
  }
  return g;
}

inline std::string format_edge_list(const GraphSpec& g) {
  std::string out = std::to_string(g.n) + " " + std::to_string(g.edges.size()) + "\n";
  for (const Edge& e : g.edges) {
    out += std::to_string(e.u) + " " + std::to_string(e.v);
    if (e.weight != 1) out += " " + std::to_string(e.weight);
    out += "\n";
  }
  return out;
}

/// FNV-1a over n and the scaled distance matrix.
inline std::uint64_t content_hash(const FiniteMetricSpace& s) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(s.size());
  mix(static_cast<std::uint64_t>(s.scale()));
  for (PointId i = 0; i < s.size(); ++i)
    for (Distance d : s.row(i)) mix(static_cast<std::uint64_t>(d));
  return h;
}

/// Streams every labeled connected simple graph on n vertices in ascending
/// edge-mask order. Bit t of the mask is the t-th pair in lexicographic
/// order (0,1), (0,2), ..., (n-2,n-1). With `dedup`, only the graph whose
/// mask is minimal over all vertex relabelings is emitted per isomorphism
/// class.
class ConnectedGraphEnumerator {
 public:
  static constexpr std::size_t kMaxN = 7;

  explicit ConnectedGraphEnumerator(std::size_t n, bool dedup = false, std::uint64_t start_mask = 0)
      : n_(n), dedup_(dedup), next_mask_(start_mask) {
    if (n < 2 || n > kMaxN)
      throw Error(ErrorKind::NOutOfRange, "graph enumeration supports 2 <= n <= 7, got " + std::to_string(n));
    edge_count_ = n * (n - 1) / 2;
    end_mask_ = std::uint64_t{1} << edge_count_;
    for (PointId i = 0; i < n; ++i)
      for (PointId j = i + 1; j < n; ++j) {
        edge_index_[i][j] = edge_index_[j][i] = static_cast<int>(pairs_.size());
        pairs_.push_back({i, j});
      }
  }

  std::size_t n() const noexcept { return n_; }
  /// Mask the next call to next() starts from; pass it back to resume.
  std::uint64_t position() const noexcept { return next_mask_; }
  std::uint64_t end_mask() const noexcept { return end_mask_; }

  /// Returns the next graph and its mask, or nullopt when exhausted.
  std::optional<std::pair<std::uint64_t, GraphSpec>> next() {
    while (next_mask_ < end_mask_) {
      const std::uint64_t mask = next_mask_++;
      if (!connected(mask)) continue;
      if (dedup_ && !canonical(mask)) continue;
      return std::pair{mask, to_graph(mask)};
    }
    return std::nullopt;
  }

  GraphSpec to_graph(std::uint64_t mask) const {
    GraphSpec g{n_, {}};
    for (std::size_t t = 0; t < edge_count_; ++t)
      if (mask >> t & 1u) g.edges.push_back({pairs_[t].first, pairs_[t].second, 1});
    return g;
  }

  bool connected(std::uint64_t mask) const {
    std::uint32_t adj[kMaxN] = {};
    for (std::size_t t = 0; t < edge_count_; ++t) {
      if (mask >> t & 1u) {
        adj[pairs_[t].first] |= 1u << pairs_[t].second;
        adj[pairs_[t].second] |= 1u << pairs_[t].first;
      }
    }
    std::uint32_t reached = 1, frontier = 1;
    while (frontier) {
      std::uint32_t grow = 0;
      for (std::size_t v = 0; v < n_; ++v)
        if (frontier >> v & 1u) grow |= adj[v];
      frontier = grow & ~reached;
      reached |= grow;
    }
    return reached == (1u << n_) - 1;
  }

  bool canonical(std::uint64_t mask) const {
    std::array<PointId, kMaxN> perm{};
    std::iota(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_), PointId{0});
    std::vector<std::size_t> present;
    for (std::size_t t = 0; t < edge_count_; ++t)
      if (mask >> t & 1u) present.push_back(t);
    while (std::next_permutation(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_))) {
      std::uint64_t image = 0;
      for (std::size_t t : present)
        image |= std::uint64_t{1} << edge_index_[perm[pairs_[t].first]][perm[pairs_[t].second]];
      if (image < mask) return false;
    }
    return true;
  }

 private:
  std::size_t n_;
  bool dedup_;
  std::uint64_t next_mask_;
  std::uint64_t end_mask_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<std::pair<PointId, PointId>> pairs_;
  int edge_index_[kMaxN][kMaxN] = {};
};

/// Eager form of the enumerator.
inline std::vector<GraphSpec> enumerate_connected_graphs(std::size_t n, bool dedup = false) {
  ConnectedGraphEnumerator it(n, dedup);
  std::vector<GraphSpec> out;
  while (auto g = it.next()) out.push_back(std::move(g->second));
  return out;
}

/// Builtin reference spaces by name: P<n>, C<n>, K<n> (path, cycle,
/// complete graph on n vertices) and S<k> (star with k leaves).
inline GraphSpec builtin_graph(std::string_view name) {
  if (name.size() < 2) throw Error(ErrorKind::InvalidArgument, "unknown builtin '" + std::string(name) + "'");
  std::size_t k = 0;
  const auto digits = name.substr(1);
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
  if (ec != std::errc{} || ptr != digits.data() + digits.size())
    throw Error(ErrorKind::InvalidArgument, "unknown builtin '" + std::string(name) + "'");
  switch (name.front()) {
    case 'P': return path_graph(k);
    case 'C':
      if (k < 3) throw Error(ErrorKind::InvalidArgument, "cycles need at least 3 vertices");
      return cycle_graph(k);
    case 'K': return complete_graph(k);
    case 'S': return star_graph(k);
    default: throw Error(ErrorKind::InvalidArgument, "unknown builtin '" + std::string(name) + "'");
  }
}

inline FiniteMetricSpace builtin_space(std::string_view name) { return graph_metric(builtin_graph(name)); }

}  // namespace mlines
