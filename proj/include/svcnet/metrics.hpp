#pragma once

#include <cmath>
#include <cstdint>
#include <deque>
#include <optional>
#include <unordered_set>
#include <vector>

#include "svcnet/digraph.hpp"
#include "svcnet/error.hpp"
#include "svcnet/network.hpp"
#include "svcnet/rng.hpp"

namespace svcnet {

/// Directed edge density M / (N(N-1)) of a simple digraph.
inline double density(std::size_t n_nodes, std::size_t n_edges) {
  if (n_nodes < 2) throw ValidationError("density requires at least 2 nodes");
  return static_cast<double>(n_edges) /
         (static_cast<double>(n_nodes) * static_cast<double>(n_nodes - 1));
}

inline double density(const InteractionNetwork& net) {
  return density(net.node_count(), net.edge_count());
}

struct DistanceStats {
  double avg = 0.0;            // mean over reachable ordered pairs (u != v)
  std::size_t diameter = 0;    // max over reachable ordered pairs
  std::size_t reachable_pairs = 0;
};

/// Directed shortest-path statistics via one BFS per source.
/// Throws when no ordered pair is reachable.
inline DistanceStats distance_stats(const Digraph& g) {
  DistanceStats st;
  std::uint64_t total = 0;
  std::vector<std::uint32_t> dist(g.n);
  std::vector<std::uint32_t> queue(g.n);
  for (std::size_t s = 0; s < g.n; ++s) {
    std::fill(dist.begin(), dist.end(), UINT32_MAX);
    dist[s] = 0;
    std::size_t head = 0, tail = 0;
    queue[tail++] = static_cast<std::uint32_t>(s);
    while (head < tail) {
      const std::uint32_t u = queue[head++];
      for (const std::uint32_t v : g.out[u]) {
        if (dist[v] != UINT32_MAX) continue;
        dist[v] = dist[u] + 1;
        queue[tail++] = v;
        total += dist[v];
        st.diameter = std::max<std::size_t>(st.diameter, dist[v]);
        ++st.reachable_pairs;
      }
    }
  }
  if (st.reachable_pairs == 0)
    throw ValidationError("no reachable ordered pairs: distances undefined");
  st.avg = static_cast<double>(total) / static_cast<double>(st.reachable_pairs);
  return st;
}

inline DistanceStats distance_stats(const InteractionNetwork& net) {
  return distance_stats(net.digraph());
}

inline double avg_distance(const InteractionNetwork& net) { return distance_stats(net).avg; }
inline std::size_t diameter(const InteractionNetwork& net) { return distance_stats(net).diameter; }

/// Global transitivity of the undirected projection:
/// 3 * triangles / connected triples. nullopt when there is no triple.
inline std::optional<double> clustering(const UGraph& u) {
  std::uint64_t triples = 0;
  for (std::size_t v = 0; v < u.n; ++v) {
    const std::uint64_t d = u.adj[v].size();
    triples += d * (d - 1) / 2;
  }
  if (triples == 0) return std::nullopt;
  // Sum over edges of |N(a) ∩ N(b)| counts each triangle three times.
  std::uint64_t closed = 0;
  for (std::uint32_t a = 0; a < u.n; ++a) {
    for (const std::uint32_t b : u.adj[a]) {
      if (b <= a) continue;
      const auto& na = u.adj[a];
      const auto& nb = u.adj[b];
      std::size_t i = 0, j = 0;
      while (i < na.size() && j < nb.size()) {
        if (na[i] < nb[j]) ++i;
        else if (na[i] > nb[j]) ++j;
        else { ++closed; ++i; ++j; }
      }
    }
  }
  return static_cast<double>(closed) / static_cast<double>(triples);
}

inline std::optional<double> clustering(const InteractionNetwork& net) {
  return clustering(undirected_projection(net.digraph()));
}

/// Degree assortativity: Pearson correlation of endpoint degrees over the
/// undirected projection's edges, each edge contributing both orientations.
/// nullopt when the endpoint degrees have zero variance (regular graphs).
inline std::optional<double> assortativity(const UGraph& u) {
  std::uint64_t pairs = 0;
  double sum = 0.0;
  for (std::uint32_t a = 0; a < u.n; ++a)
    for (const std::uint32_t b : u.adj[a]) {
      (void)b;
      sum += static_cast<double>(u.adj[a].size());
      ++pairs;
    }
  if (pairs == 0) return std::nullopt;
  const double mean = sum / static_cast<double>(pairs);
  double sxy = 0.0, sxx = 0.0;
  for (std::uint32_t a = 0; a < u.n; ++a) {
    const double da = static_cast<double>(u.adj[a].size()) - mean;
    for (const std::uint32_t b : u.adj[a]) {
      const double db = static_cast<double>(u.adj[b].size()) - mean;
      sxy += da * db;
      sxx += da * da;
    }
  }
  if (sxx == 0.0) return std::nullopt;
  return sxy / sxx;
}

inline std::optional<double> assortativity(const InteractionNetwork& net) {
  return assortativity(undirected_projection(net.digraph()));
}

/// Uniform directed G(n, M): m distinct ordered pairs, no self-loops.
inline Digraph sample_gnm_digraph(std::size_t n, std::size_t m, Rng& rng) {
  const std::size_t max_edges = n * (n - 1);
  if (m > max_edges) throw ValidationError("infeasible edge count for G(n,M) sample");
  Digraph g(n);
  if (m == 0) return g;
  if (m * 2 <= max_edges) {
    std::unordered_set<std::uint64_t> taken;
    taken.reserve(m * 2);
    while (taken.size() < m) {
      const std::uint64_t u = rng.below(n);
      std::uint64_t v = rng.below(n - 1);
      if (v >= u) ++v;
      if (taken.insert(u * n + v).second)
        g.add_edge(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
    }
  } else {
    // Dense case: exclude (max_edges - m) pairs instead.
    std::unordered_set<std::uint64_t> excluded;
    excluded.reserve((max_edges - m) * 2);
    while (excluded.size() < max_edges - m) {
      const std::uint64_t u = rng.below(n);
      std::uint64_t v = rng.below(n - 1);
      if (v >= u) ++v;
      excluded.insert(u * n + v);
    }
    for (std::uint64_t u = 0; u < n; ++u)
      for (std::uint64_t v = 0; v < n; ++v)
        if (u != v && !excluded.count(u * n + v))
          g.add_edge(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
  }
  return g;
}

struct ErBaseline {
  double avg_distance = 0.0;             // mean over samples with reachable pairs
  std::optional<double> clustering;      // mean over samples with triples
  unsigned distance_samples = 0;         // samples contributing to avg_distance
  unsigned clustering_samples = 0;
  unsigned samples_requested = 0;
  std::uint64_t seed = 0;
};

/// Erdos-Renyi baseline: samples R directed G(n,M) graphs and averages the
/// directed average distance and the projected clustering over the samples
/// where each is defined. Per-sample RNG streams derive from (seed, index),
/// so the result is identical for any thread count.
inline ErBaseline er_baseline(std::size_t n, std::size_t m, unsigned samples,
                              std::uint64_t seed, unsigned threads = 1) {
  if (samples == 0) throw ValidationError("er_baseline requires at least 1 sample");
  if (n < 1 || m > n * (n - 1)) throw ValidationError("infeasible (n, m) for ER baseline");
  ErBaseline out;
  out.samples_requested = samples;
  out.seed = seed;

  std::vector<std::optional<double>> ls(samples), cs(samples);
  const Rng root(seed);
  detail::parallel_for(samples, threads, [&](std::size_t i) {
    Rng rng = root.stream("er-sample", i);
    const Digraph g = sample_gnm_digraph(n, m, rng);
    try {
      ls[i] = distance_stats(g).avg;
    } catch (const ValidationError&) {
      ls[i] = std::nullopt;
    }
    cs[i] = clustering(undirected_projection(g));
  });

  double lsum = 0.0, csum = 0.0;
  for (unsigned i = 0; i < samples; ++i) {
    if (ls[i]) { lsum += *ls[i]; ++out.distance_samples; }
    if (cs[i]) { csum += *cs[i]; ++out.clustering_samples; }
  }
  if (out.distance_samples == 0)
    throw ValidationError("er_baseline: no sample had a reachable pair");
  out.avg_distance = lsum / out.distance_samples;
  if (out.clustering_samples > 0) out.clustering = csum / out.clustering_samples;
  return out;
}

/// The full small-world/clustering/assortativity panel for one network
/// (typically a giant component), with ER ratios.
struct TopologyReport {
  std::size_t n_nodes = 0;
  std::size_t n_edges = 0;
  double density = 0.0;
  double avg_distance = 0.0;
  std::size_t diameter = 0;
  std::size_t reachable_pairs = 0;
  std::optional<double> clustering;
  std::optional<double> assortativity;
  double l_er = 0.0;
  std::optional<double> c_er;
  std::optional<double> l_ratio;  // L / L_ER
  std::optional<double> c_ratio;  // C / C_ER
  unsigned er_samples = 0;
  std::uint64_t seed = 0;
};

inline TopologyReport topology_report(const InteractionNetwork& net, unsigned er_samples,
                                      std::uint64_t seed, unsigned threads = 1) {
  TopologyReport r;
  r.n_nodes = net.node_count();
  r.n_edges = net.edge_count();
  r.density = density(net);
  const Digraph g = net.digraph();
  const DistanceStats d = distance_stats(g);
  r.avg_distance = d.avg;
  r.diameter = d.diameter;
  r.reachable_pairs = d.reachable_pairs;
  const UGraph u = undirected_projection(g);
  r.clustering = clustering(u);
  r.assortativity = assortativity(u);
  const ErBaseline er = er_baseline(r.n_nodes, r.n_edges, er_samples, seed, threads);
  r.l_er = er.avg_distance;
  r.c_er = er.clustering;
  if (er.avg_distance > 0.0) r.l_ratio = r.avg_distance / er.avg_distance;
  if (r.clustering && er.clustering && *er.clustering > 0.0)
    r.c_ratio = *r.clustering / *er.clustering;
  r.er_samples = er_samples;
  r.seed = seed;
  return r;
}

}  // namespace svcnet
