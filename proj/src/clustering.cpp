#include <algorithm>
#include <numeric>

#include "mtmclp/separation.hpp"

namespace mtmclp {

namespace {

int find_root(std::vector<int>& parent, int v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

}  // namespace

// Nearest-neighbour chain agglomeration. Complete linkage is reducible, so the
// chain produces the same dendrogram as naive agglomeration in O(n^2).
std::vector<std::vector<int>> complete_linkage(std::span<const Point> points,
                                               const NormSpec& norm, double threshold) {
  const int n = static_cast<int>(points.size());
  std::vector<std::vector<int>> clusters;
  if (n == 0) return clusters;

  std::vector<double> dist(static_cast<std::size_t>(n) * n, 0.0);
  auto at = [&](int a, int b) -> double& { return dist[static_cast<std::size_t>(a) * n + b]; };
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) at(a, b) = at(b, a) = distance(points[a], points[b], norm);
  }

  std::vector<char> active(n, 1);
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<int> chain;
  int remaining = n;
  while (remaining > 1) {
    if (chain.empty()) {
      int first = 0;
      while (!active[first]) ++first;
      chain.push_back(first);
    }
    const int a = chain.back();
    const int prev = chain.size() >= 2 ? chain[chain.size() - 2] : -1;
    int best = prev;
    double best_d = prev >= 0 ? at(a, prev) : 0.0;
    for (int c = 0; c < n; ++c) {
      if (!active[c] || c == a) continue;
      if (best < 0 || at(a, c) < best_d) {
        best = c;
        best_d = at(a, c);
      }
    }
    if (best != prev) {
      chain.push_back(best);
      continue;
    }
    // a and prev are reciprocal nearest neighbours: merge prev into a.
    chain.pop_back();
    chain.pop_back();
    if (best_d <= threshold + kGeomTolerance) {
      parent[find_root(parent, prev)] = find_root(parent, a);
    }
    for (int c = 0; c < n; ++c) {
      if (!active[c] || c == a || c == prev) continue;
      at(a, c) = at(c, a) = std::max(at(a, c), at(prev, c));
    }
    active[prev] = 0;
    --remaining;
  }

  std::vector<int> slot(n, -1);
  for (int i = 0; i < n; ++i) {
    const int r = find_root(parent, i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(clusters.size());
      clusters.emplace_back();
    }
    clusters[slot[r]].push_back(i);
  }
  return clusters;
}

}  // namespace mtmclp
