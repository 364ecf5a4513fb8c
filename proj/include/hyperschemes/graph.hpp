#pragma once

#include "hyperschemes/scheme.hpp"

#include <deque>

namespace hyperschemes {

/// Undirected simple graph as adjacency lists.
struct Graph {
  std::vector<std::vector<int>> adj;

  std::size_t size() const noexcept { return adj.size(); }

  void add_edge(int u, int v) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }

  static Graph from_adjacency_matrix(const std::vector<std::vector<int>>& m) {
    Graph g;
    g.adj.resize(m.size());
    for (std::size_t u = 0; u < m.size(); ++u) {
      if (m[u].size() != m.size()) throw Error(ErrorCode::NonSquare, "adjacency matrix is not square");
      for (std::size_t v = 0; v < m.size(); ++v) {
        if (m[u][v] != m[v][u]) throw Error(ErrorCode::InvalidInput, "adjacency matrix is not symmetric");
        if (m[u][v] && u == v) throw Error(ErrorCode::InvalidInput, "graph has a loop");
        if (m[u][v]) g.adj[u].push_back(static_cast<int>(v));
      }
    }
    return g;
  }

  /// All-pairs BFS distances; -1 for unreachable.
  std::vector<int> distances() const {
    const std::size_t n = size();
    std::vector<int> d(n * n, -1);
    std::deque<int> q;
    for (std::size_t s = 0; s < n; ++s) {
      int* row = &d[s * n];
      row[s] = 0;
      q.assign(1, static_cast<int>(s));
      while (!q.empty()) {
        const int u = q.front();
        q.pop_front();
        for (int v : adj[u])
          if (row[v] < 0) {
            row[v] = row[u] + 1;
            q.push_back(v);
          }
      }
    }
    return d;
  }
};

inline Graph cycle_graph(int n) {
  Graph g;
  g.adj.resize(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

inline Graph complete_graph(int n) {
  Graph g;
  g.adj.resize(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

inline Graph path_graph(int n) {
  Graph g;
  g.adj.resize(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

/// Outer 5-cycle 0..4, inner pentagram 5..9, spokes i -- i+5.
inline Graph petersen_graph() {
  Graph g;
  g.adj.resize(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(5 + i, 5 + (i + 2) % 5);
    g.add_edge(i, i + 5);
  }
  return g;
}

/// Distance partition of a connected graph; classes are "0".."diameter".
inline RelationPartition distance_partition(const Graph& g) {
  const std::size_t n = g.size();
  if (n == 0) throw Error(ErrorCode::InvalidInput, "empty graph");
  auto d = g.distances();
  int diam = 0;
  for (int v : d) {
    if (v < 0) throw Error(ErrorCode::InvalidInput, "graph is not connected");
    diam = std::max(diam, v);
  }
  std::vector<std::string> points, classes;
  for (std::size_t v = 0; v < n; ++v) points.push_back("v" + std::to_string(v));
  for (int k = 0; k <= diam; ++k) classes.push_back(std::to_string(k));
  return RelationPartition(std::move(points), std::move(classes), std::move(d));
}

/// Succeeds iff the distance partition is an association scheme.
inline Scheme scheme_from_distance_regular_graph(const Graph& g) {
  try {
    return build_scheme(distance_partition(g));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InconsistentIntersection)
      throw Error(ErrorCode::NotDistanceRegular, e.what());
    throw;
  }
}

}  // namespace hyperschemes
