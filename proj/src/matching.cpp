#include "blocksdp/matching.hpp"

#include <algorithm>
#include <queue>

namespace blocksdp {

namespace {

bool augment(int u, const std::vector<std::vector<int>>& adj, std::vector<int>& right_to_left, std::vector<int>& left_to_right,
             std::vector<char>& visited) {
    for (int r : adj[static_cast<std::size_t>(u)]) {
        if (visited[static_cast<std::size_t>(r)]) continue;
        visited[static_cast<std::size_t>(r)] = 1;
        const int owner = right_to_left[static_cast<std::size_t>(r)];
        if (owner == kUnmatched || augment(owner, adj, right_to_left, left_to_right, visited)) {
            right_to_left[static_cast<std::size_t>(r)] = u;
            left_to_right[static_cast<std::size_t>(u)] = r;
            return true;
        }
    }
    return false;
}

}  // namespace

BipartiteMatching max_bipartite_matching(std::size_t right_count, const std::vector<std::vector<int>>& adjacency) {
    BipartiteMatching m;
    m.left_to_right.assign(adjacency.size(), kUnmatched);
    std::vector<int> right_to_left(right_count, kUnmatched);
    std::vector<char> visited(right_count);
    for (std::size_t u = 0; u < adjacency.size(); ++u) {
        std::fill(visited.begin(), visited.end(), 0);
        if (augment(static_cast<int>(u), adjacency, right_to_left, m.left_to_right, visited)) ++m.size;
    }
    return m;
}

HallViolator hall_violator(std::size_t right_count, const std::vector<std::vector<int>>& adjacency,
                           const BipartiteMatching& matching) {
    std::vector<int> right_to_left(right_count, kUnmatched);
    for (std::size_t u = 0; u < matching.left_to_right.size(); ++u) {
        const int r = matching.left_to_right[u];
        if (r != kUnmatched) right_to_left[static_cast<std::size_t>(r)] = static_cast<int>(u);
    }
    std::vector<char> seen_left(adjacency.size()), seen_right(right_count);
    std::queue<int> frontier;
    for (std::size_t u = 0; u < adjacency.size(); ++u) {
        if (matching.left_to_right[u] == kUnmatched) {
            seen_left[u] = 1;
            frontier.push(static_cast<int>(u));
        }
    }
    while (!frontier.empty()) {
        const int u = frontier.front();
        frontier.pop();
        for (int r : adjacency[static_cast<std::size_t>(u)]) {
            if (seen_right[static_cast<std::size_t>(r)]) continue;
            seen_right[static_cast<std::size_t>(r)] = 1;
            const int next = right_to_left[static_cast<std::size_t>(r)];
            if (next != kUnmatched && !seen_left[static_cast<std::size_t>(next)]) {
                seen_left[static_cast<std::size_t>(next)] = 1;
                frontier.push(next);
            }
        }
    }
    HallViolator h;
    for (std::size_t u = 0; u < adjacency.size(); ++u)
        if (seen_left[u]) h.left.push_back(static_cast<int>(u));
    for (std::size_t r = 0; r < right_count; ++r)
        if (seen_right[r]) h.neighbours.push_back(static_cast<int>(r));
    return h;
}

}  // namespace blocksdp
