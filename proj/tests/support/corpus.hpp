#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "mlines/instances.hpp"
#include "mlines/matrix_io.hpp"

namespace corpus {

// Random instance i (seed i) has 4 + i % 7 points and max_entry 2 + i % 4,
// so every size 4..10 meets every sampling range.
inline std::size_t random_n(std::uint64_t seed) { return 4 + seed % 7; }
inline mlines::Distance random_max_entry(std::uint64_t seed) { return 2 + static_cast<mlines::Distance>(seed % 4); }

inline mlines::FiniteMetricSpace random_instance(std::uint64_t seed) {
  return mlines::random_metric(random_n(seed), seed, random_max_entry(seed));
}

using Visit = std::function<void(const std::string&, const mlines::FiniteMetricSpace&)>;

inline void for_each_graph(std::size_t n_min, std::size_t n_max, const Visit& visit) {
  for (std::size_t n = n_min; n <= n_max; ++n) {
    mlines::ConnectedGraphEnumerator it(n);
    while (auto g = it.next()) visit("graph n=" + std::to_string(n) + " mask=" + std::to_string(g->first), mlines::graph_metric(g->second));
  }
}

inline void for_each_random(std::uint64_t first_seed, std::uint64_t last_seed, const Visit& visit) {
  for (std::uint64_t seed = first_seed; seed <= last_seed; ++seed) visit("random seed=" + std::to_string(seed), random_instance(seed));
}

/// Connected graphs on 2..6 vertices followed by random metrics with seeds 1..1000.
inline void for_each_instance(const Visit& visit) {
  for_each_graph(2, 6, visit);
  for_each_random(1, 1000, visit);
}

// Sparse trees on 7..10 vertices. Unlike the dense samples above these have
// middle levels with two or more green components.
inline void for_each_tree(std::uint64_t first_seed, std::uint64_t last_seed, const Visit& visit) {
  for (std::uint64_t seed = first_seed; seed <= last_seed; ++seed)
    visit("tree seed=" + std::to_string(seed), mlines::graph_metric(mlines::random_connected_graph(7 + seed % 4, seed, 0)));
}

#ifdef MLINES_TEST_DATA
// A space without a universal line where one level splits into two green components.
inline mlines::FiniteMetricSpace two_component_fixture() {
  return mlines::graph_metric(
      mlines::parse_edge_list(mlines::read_text_file(MLINES_TEST_DATA "/two_components_no_universal.edges")));
}
#endif

}  // namespace corpus
