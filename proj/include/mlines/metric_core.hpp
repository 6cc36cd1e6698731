#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mlines/errors.hpp"

namespace mlines {

using PointId = std::uint32_t;
/// Distances live on an integer grid: the original rational value is
/// `distance / space.scale()`.
using Distance = std::int64_t;
/// Canonical point set: strictly ascending ids.
using PointSet = std::vector<PointId>;

/// Largest distance accepted after scaling; leaves headroom for sums along
/// sequences of up to a few thousand points.
inline constexpr Distance kMaxDistance = Distance{1} << 50;

/// Unordered pair of distinct points, stored with `lo < hi`.
struct PointPair {
  PointId lo = 0;
  PointId hi = 0;

  static constexpr PointPair of(PointId a, PointId b) {
    return a < b ? PointPair{a, b} : PointPair{b, a};
  }
  constexpr bool contains(PointId p) const { return p == lo || p == hi; }
  constexpr PointId other(PointId p) const { return p == lo ? hi : lo; }
  constexpr bool shares_point_with(const PointPair& o) const {
    return contains(o.lo) || contains(o.hi);
  }

  friend constexpr auto operator<=>(const PointPair&, const PointPair&) = default;
};

/// Exact rational read from input files. Always normalized: `den > 0`,
/// `gcd(|num|, den) == 1`.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den) {
    if (den == 0) throw Error(ErrorKind::Parse, "zero denominator");
    if (den < 0) {
      if (num == INT64_MIN || den == INT64_MIN)
        throw Error(ErrorKind::Overflow, "rational out of range");
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num, den);
    return Rational{num / g, den / g};
  }

  /// Accepts "p", "p/q" with optional surrounding whitespace and sign on p.
  static Rational parse(std::string_view text) {
    auto trim = [](std::string_view s) {
      const auto first = s.find_first_not_of(" \t\r\n");
      if (first == std::string_view::npos) return std::string_view{};
      const auto last = s.find_last_not_of(" \t\r\n");
      return s.substr(first, last - first + 1);
    };
    auto parse_int = [&](std::string_view s) {
      s = trim(s);
      if (!s.empty() && s.front() == '+') s.remove_prefix(1);
      std::int64_t value = 0;
      const auto* end = s.data() + s.size();
      const auto [ptr, ec] = std::from_chars(s.data(), end, value);
      if (s.empty() || ec == std::errc::invalid_argument || ptr != end)
        throw Error(ErrorKind::Parse, "not a rational: '" + std::string(text) + "'");
      if (ec == std::errc::result_out_of_range)
        throw Error(ErrorKind::Overflow, "integer out of range: '" + std::string(text) + "'");
      return value;
    };
    const std::string_view body = trim(text);
    const auto slash = body.find('/');
    if (slash == std::string_view::npos) return Rational{parse_int(body), 1};
    return make(parse_int(body.substr(0, slash)), parse_int(body.substr(slash + 1)));
  }

  friend constexpr bool operator==(const Rational&, const Rational&) = default;
};

using RationalMatrix = std::vector<std::vector<Rational>>;

/// A validated finite metric space over points 0..n-1. Immutable.
class FiniteMetricSpace {
 public:
  std::size_t size() const noexcept { return n_; }

  Distance operator()(PointId a, PointId b) const noexcept {
    return dist_[static_cast<std::size_t>(a) * n_ + b];
  }

  /// Common denominator the input rationals were scaled by.
  Distance scale() const noexcept { return scale_; }

  std::span<const Distance> row(PointId a) const noexcept {
    return {dist_.data() + static_cast<std::size_t>(a) * n_, n_};
  }

  /// External point labels, empty when the input had none.
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::string label(PointId p) const {
    return labels_.empty() ? std::to_string(p) : labels_[p];
  }

  friend bool operator==(const FiniteMetricSpace& a, const FiniteMetricSpace& b) {
    return a.n_ == b.n_ && a.scale_ == b.scale_ && a.dist_ == b.dist_;
  }

  friend FiniteMetricSpace validate_metric(const RationalMatrix& raw,
                                           std::vector<std::string> labels);

 private:
  FiniteMetricSpace() = default;

  std::size_t n_ = 0;
  Distance scale_ = 1;
  std::vector<Distance> dist_;
  std::vector<std::string> labels_;
};

/// Checks the metric axioms exactly and rescales every entry to the integer
/// grid given by the least common denominator. Checks run in the order:
/// shape, diagonal, symmetry, sign, identity of indiscernibles, triangle.
inline FiniteMetricSpace validate_metric(const RationalMatrix& raw,
                                         std::vector<std::string> labels = {}) {
  const std::size_t n = raw.size();
  if (n < 2) throw Error(ErrorKind::TooFewPoints, "a metric space needs at least 2 points");
  for (std::size_t i = 0; i < n; ++i) {
    if (raw[i].size() != n)
      throw Error(ErrorKind::NotSquare,
                  "row " + std::to_string(i) + " has " + std::to_string(raw[i].size()) +
                      " entries, expected " + std::to_string(n),
                  {i});
  }
  if (!labels.empty() && labels.size() != n)
    throw Error(ErrorKind::InvalidArgument, "label count does not match point count");

  std::int64_t scale = 1;
  for (const auto& row : raw) {
    for (const Rational& r : row) {
      const Rational q = Rational::make(r.num, r.den);
      const std::int64_t g = std::gcd(scale, q.den);
      std::int64_t next = 0;
      if (__builtin_mul_overflow(scale / g, q.den, &next) || next > kMaxDistance)
        throw Error(ErrorKind::Overflow, "common denominator too large");
      scale = next;
    }
  }

  FiniteMetricSpace space;
  space.n_ = n;
  space.scale_ = scale;
  space.dist_.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Rational q = Rational::make(raw[i][j].num, raw[i][j].den);
      Distance scaled = 0;
      if (__builtin_mul_overflow(q.num, scale / q.den, &scaled) || scaled > kMaxDistance ||
          scaled < -kMaxDistance)
        throw Error(ErrorKind::Overflow,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) + ") too large", {i, j});
      space.dist_[i * n + j] = scaled;
    }
  }

  const auto& d = space.dist_;
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i * n + i] != 0)
      throw Error(ErrorKind::NonzeroDiagonal, "d(" + std::to_string(i) + "," + std::to_string(i) + ") != 0", {i});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d[i * n + j] != d[j * n + i])
        throw Error(ErrorKind::Asymmetric,
                    "d(" + std::to_string(i) + "," + std::to_string(j) + ") != d(" +
                        std::to_string(j) + "," + std::to_string(i) + ")",
                    {i, j});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d[i * n + j] < 0)
        throw Error(ErrorKind::NegativeEntry,
                    "d(" + std::to_string(i) + "," + std::to_string(j) + ") < 0", {i, j});
      if (d[i * n + j] == 0)
        throw Error(ErrorKind::ZeroOffDiagonal,
                    "d(" + std::to_string(i) + "," + std::to_string(j) + ") == 0", {i, j});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (d[i * n + k] > d[i * n + j] + d[j * n + k])
          throw Error(ErrorKind::TriangleViolation,
                      "d(" + std::to_string(i) + "," + std::to_string(k) + ") > d(" +
                          std::to_string(i) + "," + std::to_string(j) + ") + d(" +
                          std::to_string(j) + "," + std::to_string(k) + ")",
                      {i, j, k});
      }
    }
  }
  space.labels_ = std::move(labels);
  return space;
}

/// Integer-entry convenience overload.
inline FiniteMetricSpace validate_metric(const std::vector<std::vector<Distance>>& raw,
                                         std::vector<std::string> labels = {}) {
  RationalMatrix m(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    m[i].reserve(raw[i].size());
    for (Distance v : raw[i]) m[i].push_back(Rational{v, 1});
  }
  return validate_metric(m, std::move(labels));
}

namespace detail {

inline void require_distinct(const FiniteMetricSpace& space, std::initializer_list<PointId> pts) {
  for (auto it = pts.begin(); it != pts.end(); ++it) {
    if (*it >= space.size())
      throw Error(ErrorKind::InvalidArgument, "point id " + std::to_string(*it) + " out of range", {*it});
    for (auto jt = pts.begin(); jt != it; ++jt) {
      if (*it == *jt)
        throw Error(ErrorKind::NonDistinctPoints, "point " + std::to_string(*it) + " repeated", {*it});
    }
  }
}

// [a x b], unchecked.
inline bool is_between(const FiniteMetricSpace& s, PointId a, PointId x, PointId b) {
  return s(a, b) == s(a, x) + s(x, b);
}

inline bool is_collinear(const FiniteMetricSpace& s, PointId a, PointId b, PointId c) {
  return is_between(s, a, c, b) || is_between(s, c, a, b) || is_between(s, a, b, c);
}

// Sum condition only; callers guarantee distinctness.
inline bool is_collinear_sequence(const FiniteMetricSpace& s, std::span<const PointId> seq) {
  Distance total = 0;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) total += s(seq[i], seq[i + 1]);
  return total == s(seq.front(), seq.back());
}

inline bool in_set(const PointSet& set, PointId p) {
  return std::binary_search(set.begin(), set.end(), p);
}

}  // namespace detail

/// True iff d(a,b) = d(a,x) + d(x,b).
inline bool between(const FiniteMetricSpace& space, PointId a, PointId x, PointId b) {
  detail::require_distinct(space, {a, x, b});
  return detail::is_between(space, a, x, b);
}

inline bool is_collinear_triple(const FiniteMetricSpace& space, PointId a, PointId b, PointId c) {
  detail::require_distinct(space, {a, b, c});
  return detail::is_collinear(space, a, b, c);
}

inline bool check_collinear_sequence(const FiniteMetricSpace& space, std::span<const PointId> seq) {
  if (seq.size() < 2)
    throw Error(ErrorKind::InvalidArgument, "a collinear sequence needs at least 2 points");
  std::vector<bool> seen(space.size(), false);
  for (PointId p : seq) {
    if (p >= space.size())
      throw Error(ErrorKind::InvalidArgument, "point id " + std::to_string(p) + " out of range", {p});
    if (seen[p])
      throw Error(ErrorKind::NonDistinctPoints, "point " + std::to_string(p) + " repeated", {p});
    seen[p] = true;
  }
  return detail::is_collinear_sequence(space, seq);
}

/// The line through a and b: a, b, and every point collinear with both.
inline PointSet line_of(const FiniteMetricSpace& space, PointId a, PointId b) {
  detail::require_distinct(space, {a, b});
  PointSet line;
  for (PointId x = 0; x < space.size(); ++x) {
    if (x == a || x == b || detail::is_collinear(space, a, b, x)) line.push_back(x);
  }
  return line;
}

inline PointSet line_of(const FiniteMetricSpace& space, const PointPair& e) {
  return line_of(space, e.lo, e.hi);
}

}  // namespace mlines
