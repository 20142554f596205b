#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace svcnet {

/// Minimal adjacency-list digraph; the structural substrate the metric and
/// community code operates on.
struct Digraph {
  std::size_t n = 0;
  std::vector<std::vector<std::uint32_t>> out, in;
  std::size_t m = 0;

  explicit Digraph(std::size_t nodes = 0) : n(nodes), out(nodes), in(nodes) {}

  void add_edge(std::uint32_t u, std::uint32_t v) {
    out[u].push_back(v);
    in[v].push_back(u);
    ++m;
  }

  std::vector<std::size_t> out_degrees() const {
    std::vector<std::size_t> d(n);
    for (std::size_t v = 0; v < n; ++v) d[v] = out[v].size();
    return d;
  }
  std::vector<std::size_t> in_degrees() const {
    std::vector<std::size_t> d(n);
    for (std::size_t v = 0; v < n; ++v) d[v] = in[v].size();
    return d;
  }
  std::vector<std::size_t> total_degrees() const {
    std::vector<std::size_t> d(n);
    for (std::size_t v = 0; v < n; ++v) d[v] = out[v].size() + in[v].size();
    return d;
  }
};

/// Undirected simple projection: reciprocal directed edges collapse to one
/// undirected edge; adjacency lists sorted and duplicate-free.
struct UGraph {
  std::size_t n = 0;
  std::vector<std::vector<std::uint32_t>> adj;
  std::size_t m = 0;  // undirected edge count

  explicit UGraph(std::size_t nodes = 0) : n(nodes), adj(nodes) {}

  std::size_t degree(std::uint32_t v) const { return adj[v].size(); }
};

inline UGraph undirected_projection(const Digraph& g) {
  UGraph u(g.n);
  for (std::size_t v = 0; v < g.n; ++v) {
    for (const std::uint32_t w : g.out[v]) {
      if (w == v) continue;
      u.adj[v].push_back(w);
      u.adj[w].push_back(static_cast<std::uint32_t>(v));
    }
  }
  for (auto& a : u.adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  std::size_t stubs = 0;
  for (const auto& a : u.adj) stubs += a.size();
  u.m = stubs / 2;
  return u;
}

/// Weakly connected components, direction ignored. Members ascending; the
/// component list is sorted by (size descending, smallest member ascending),
/// which is the deterministic giant-component tie-break.
inline std::vector<std::vector<std::uint32_t>> weak_components(const Digraph& g) {
  std::vector<std::uint32_t> parent(g.n);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  const auto unite = [&](std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  for (std::size_t v = 0; v < g.n; ++v)
    for (const std::uint32_t w : g.out[v]) unite(static_cast<std::uint32_t>(v), w);

  std::vector<std::vector<std::uint32_t>> by_root(g.n);
  for (std::size_t v = 0; v < g.n; ++v)
    by_root[find(static_cast<std::uint32_t>(v))].push_back(static_cast<std::uint32_t>(v));

  std::vector<std::vector<std::uint32_t>> comps;
  for (auto& c : by_root)
    if (!c.empty()) comps.push_back(std::move(c));
  std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  return comps;
}

}  // namespace svcnet
