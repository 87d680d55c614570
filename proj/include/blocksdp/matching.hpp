#pragma once

#include <cstddef>
#include <vector>

namespace blocksdp {

inline constexpr int kUnmatched = -1;

struct BipartiteMatching {
    std::vector<int> left_to_right;  // kUnmatched where a left vertex is free
    std::size_t size = 0;
};

/// Maximum matching by repeated augmenting paths (Kuhn). Left vertices are
/// tried in index order and adjacency lists are scanned in the order given,
/// so the result is deterministic.
BipartiteMatching max_bipartite_matching(std::size_t right_count, const std::vector<std::vector<int>>& adjacency);

/// For a non-saturating matching: the left vertices reachable by alternating
/// paths from free left vertices. Their neighbourhood is strictly smaller
/// than the set itself (a Hall violator).
struct HallViolator {
    std::vector<int> left;
    std::vector<int> neighbours;
};
HallViolator hall_violator(std::size_t right_count, const std::vector<std::vector<int>>& adjacency,
                           const BipartiteMatching& matching);

}  // namespace blocksdp
