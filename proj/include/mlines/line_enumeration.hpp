#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "mlines/metric_core.hpp"

namespace mlines {

namespace detail {
inline void require_distinct_ids(PointId a, PointId b, std::size_t n) {
  if (a >= n || b >= n) throw Error(ErrorKind::InvalidArgument, "point id out of range");
  if (a == b) throw Error(ErrorKind::NonDistinctPoints, "pair needs two distinct points", {a});
}
}  // namespace detail

/// One distinct line together with every pair that generates it.
struct LineEntry {
  PointSet line;
  std::vector<PointPair> generators;  // ascending
};

/// Partition of all unordered pairs by the line they generate. Entries are
/// ordered lexicographically by their point set.
class LineCatalog {
 public:
  LineCatalog() = default;
  LineCatalog(std::size_t n, std::vector<LineEntry> entries)
      : n_(n), entries_(std::move(entries)), pair_to_entry_(n * n, 0) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].line.size() == n_) universal_ = i;
      for (const PointPair& e : entries_[i].generators) {
        pair_to_entry_[e.lo * n_ + e.hi] = i;
        pair_to_entry_[e.hi * n_ + e.lo] = i;
      }
    }
  }

  std::size_t point_count() const noexcept { return n_; }
  std::size_t line_count() const noexcept { return entries_.size(); }
  const std::vector<LineEntry>& entries() const noexcept { return entries_; }
  bool has_universal() const noexcept { return universal_.has_value(); }
  const LineEntry* universal() const noexcept {
    return universal_ ? &entries_[*universal_] : nullptr;
  }

  /// Index of the entry whose K(L) contains {a, b}.
  std::size_t entry_index_of(PointId a, PointId b) const {
    detail::require_distinct_ids(a, b, n_);
    return pair_to_entry_[a * n_ + b];
  }
  const LineEntry& entry_of(PointId a, PointId b) const { return entries_[entry_index_of(a, b)]; }
  const LineEntry& entry_of(const PointPair& e) const { return entry_of(e.lo, e.hi); }

  const LineEntry* find(const PointSet& line) const {
    const auto it = std::lower_bound(entries_.begin(), entries_.end(), line,
                                     [](const LineEntry& e, const PointSet& key) { return e.line < key; });
    return it != entries_.end() && it->line == line ? &*it : nullptr;
  }

 private:
  std::size_t n_ = 0;
  std::vector<LineEntry> entries_;
  std::vector<std::size_t> pair_to_entry_;
  std::optional<std::size_t> universal_;
};

inline LineCatalog build_catalog(const FiniteMetricSpace& space) {
  const auto n = static_cast<PointId>(space.size());
  std::map<PointSet, std::vector<PointPair>> groups;
  for (PointId a = 0; a < n; ++a) {
    for (PointId b = a + 1; b < n; ++b) groups[line_of(space, a, b)].push_back({a, b});
  }
  std::vector<LineEntry> entries;
  entries.reserve(groups.size());
  for (auto& [line, gens] : groups) entries.push_back({line, std::move(gens)});
  return LineCatalog(space.size(), std::move(entries));
}

/// Some pair whose line is the whole space, scanning pairs in ascending order.
inline std::optional<PointPair> has_universal_line(const FiniteMetricSpace& space) {
  const auto n = static_cast<PointId>(space.size());
  for (PointId a = 0; a < n; ++a) {
    for (PointId b = a + 1; b < n; ++b) {
      bool all = true;
      for (PointId x = 0; x < n && all; ++x) {
        all = x == a || x == b || detail::is_collinear(space, a, b, x);
      }
      if (all) return PointPair{a, b};
    }
  }
  return std::nullopt;
}

struct ChenChvatalCheck {
  bool universal = false;
  std::size_t line_count = 0;
  bool holds = false;
};

inline ChenChvatalCheck check_chen_chvatal(const LineCatalog& catalog) {
  ChenChvatalCheck r;
  r.universal = catalog.has_universal();
  r.line_count = catalog.line_count();
  r.holds = r.universal || r.line_count >= catalog.point_count();
  return r;
}

inline ChenChvatalCheck check_chen_chvatal(const FiniteMetricSpace& space) {
  return check_chen_chvatal(build_catalog(space));
}

}  // namespace mlines
