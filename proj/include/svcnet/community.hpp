#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "svcnet/digraph.hpp"
#include "svcnet/error.hpp"
#include "svcnet/network.hpp"

namespace svcnet {

/// A node partition of a network's undirected projection.
struct Partition {
  std::vector<std::string> labels;                      // node labels, network order
  std::vector<std::uint32_t> assignment;                // node index -> community index
  std::vector<std::vector<std::uint32_t>> communities;  // size desc, min member asc
  std::vector<std::size_t> sizes;
  double modularity = 0.0;
};

/// Newman-Girvan modularity Q = sum_c (e_cc - a_c^2) over the undirected
/// projection: e_cc is the fraction of edges inside community c, a_c the
/// fraction of edge endpoints in c. Zero-edge graphs score 0.
inline double modularity(const UGraph& u, std::span<const std::uint32_t> assignment) {
  if (assignment.size() != u.n)
    throw ValidationError("modularity: assignment does not cover every node");
  if (u.m == 0) return 0.0;
  std::uint32_t k = 0;
  for (const std::uint32_t c : assignment) k = std::max(k, c + 1);
  std::vector<double> internal(k, 0.0), stubs(k, 0.0);
  for (std::uint32_t a = 0; a < u.n; ++a) {
    stubs[assignment[a]] += static_cast<double>(u.adj[a].size());
    for (const std::uint32_t b : u.adj[a])
      if (b > a && assignment[a] == assignment[b]) internal[assignment[a]] += 1.0;
  }
  const double m = static_cast<double>(u.m);
  double q = 0.0;
  for (std::uint32_t c = 0; c < k; ++c) {
    const double a_c = stubs[c] / (2.0 * m);
    q += internal[c] / m - a_c * a_c;
  }
  return q;
}

inline double modularity(const InteractionNetwork& net,
                         std::span<const std::uint32_t> assignment) {
  return modularity(undirected_projection(net.digraph()), assignment);
}

inline double modularity(const InteractionNetwork& net, const Partition& p) {
  return modularity(net, p.assignment);
}

namespace detail {

/// Connected components of an undirected graph, sorted like weak_components.
inline std::vector<std::vector<std::uint32_t>> components_of(const UGraph& u) {
  std::vector<std::vector<std::uint32_t>> comps;
  std::vector<char> seen(u.n, 0);
  for (std::uint32_t s = 0; s < u.n; ++s) {
    if (seen[s]) continue;
    std::vector<std::uint32_t> comp{s};
    seen[s] = 1;
    for (std::size_t head = 0; head < comp.size(); ++head)
      for (const std::uint32_t w : u.adj[comp[head]])
        if (!seen[w]) {
          seen[w] = 1;
          comp.push_back(w);
        }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  return comps;
}

}  // namespace detail

struct WalktrapMerge {
  std::uint32_t a = 0, b = 0;     // merged community ids
  std::uint32_t merged = 0;       // id of the resulting community
  double delta_sigma = 0.0;
  double q_after = 0.0;           // global modularity after this merge
};

struct WalktrapResult {
  Partition partition;
  std::vector<WalktrapMerge> merges;  // N - #components merges in total
  double q_singletons = 0.0;          // modularity of the all-singletons cut
};

/// Random-walk community detection (Pons & Latapy). Works on the undirected
/// projection; disconnected inputs are processed per component and the cut of
/// each component's dendrogram is chosen to maximize its global-modularity
/// contribution. Fully deterministic: merge ties break on the smallest
/// (community id, community id) pair; community ids are node indices for
/// singletons, then N + k for the k-th merge.
inline WalktrapResult walktrap(const InteractionNetwork& net, unsigned walk_length = 4) {
  if (net.node_count() == 0) throw ValidationError("walktrap on an empty network");
  if (walk_length < 1) throw ValidationError("walktrap requires walk length >= 1");
  const UGraph ug = undirected_projection(net.digraph());
  const double m = static_cast<double>(ug.m);

  WalktrapResult result;
  for (std::uint32_t v = 0; v < ug.n; ++v) {
    if (ug.m == 0) continue;
    const double a_v = static_cast<double>(ug.adj[v].size()) / (2.0 * m);
    result.q_singletons -= a_v * a_v;
  }

  std::vector<std::vector<std::uint32_t>> final_comms;
  double q_total = 0.0;
  double q_running = result.q_singletons;
  std::uint32_t next_merge_id = static_cast<std::uint32_t>(ug.n);

  for (const auto& comp : detail::components_of(ug)) {
    const std::size_t s = comp.size();
    if (s == 1 || ug.m == 0) {
      for (const std::uint32_t v : comp) {
        final_comms.push_back({v});
        if (ug.m > 0) {
          const double a_v = static_cast<double>(ug.adj[v].size()) / (2.0 * m);
          q_total -= a_v * a_v;
        }
      }
      continue;
    }

    // Local view of the component.
    std::vector<std::uint32_t> local_of(ug.n, UINT32_MAX);
    for (std::size_t i = 0; i < s; ++i) local_of[comp[i]] = static_cast<std::uint32_t>(i);
    std::vector<std::vector<std::uint32_t>> adj(s);
    std::vector<double> deg(s);
    for (std::size_t i = 0; i < s; ++i) {
      for (const std::uint32_t w : ug.adj[comp[i]]) adj[i].push_back(local_of[w]);
      deg[i] = static_cast<double>(adj[i].size());
    }

    // t-step transition rows, one per node.
    std::vector<std::vector<double>> rows(s);
    std::vector<double> cur(s), nxt(s);
    for (std::size_t src = 0; src < s; ++src) {
      std::fill(cur.begin(), cur.end(), 0.0);
      cur[src] = 1.0;
      for (unsigned step = 0; step < walk_length; ++step) {
        std::fill(nxt.begin(), nxt.end(), 0.0);
        for (std::size_t u = 0; u < s; ++u) {
          if (cur[u] == 0.0) continue;
          const double share = cur[u] / deg[u];
          for (const std::uint32_t w : adj[u]) nxt[w] += share;
        }
        cur.swap(nxt);
      }
      rows[src] = cur;
    }

    struct Comm {
      bool active = false;
      std::uint32_t id = 0;      // global community id (for the dendrogram)
      std::size_t size = 0;
      double stubs = 0.0;        // sum of degrees
      double internal = 0.0;     // internal edge count
      std::vector<double> row;   // average transition row
      std::map<std::uint32_t, double> nbrs;  // slot -> inter-community edges
    };
    std::vector<Comm> comms(s);
    for (std::size_t i = 0; i < s; ++i) {
      comms[i].active = true;
      comms[i].id = comp[i];
      comms[i].size = 1;
      comms[i].stubs = deg[i];
      comms[i].row = rows[i];
      for (const std::uint32_t w : adj[i]) comms[i].nbrs[w] += 1.0;
    }

    const auto delta_sigma = [&](const Comm& c1, const Comm& c2) {
      double r2 = 0.0;
      for (std::size_t k = 0; k < s; ++k) {
        const double d = c1.row[k] - c2.row[k];
        r2 += d * d / deg[k];
      }
      const double w = static_cast<double>(c1.size) * static_cast<double>(c2.size) /
                       static_cast<double>(c1.size + c2.size);
      return w * r2 / static_cast<double>(s);
    };

    // Candidate merges between adjacent communities, ordered by
    // (delta sigma, slot pair) so ties break deterministically.
    std::set<std::tuple<double, std::uint32_t, std::uint32_t>> heap;
    for (std::uint32_t i = 0; i < s; ++i)
      for (const auto& [j, w] : comms[i].nbrs)
        if (i < j) heap.insert({delta_sigma(comms[i], comms[j]), i, j});

    // Merge to a single community, tracking the modularity contribution of
    // this component after every merge; cut at the best step.
    double contrib = 0.0;
    for (std::size_t i = 0; i < s; ++i) {
      const double a_c = comms[i].stubs / (2.0 * m);
      contrib -= a_c * a_c;
    }
    double best_contrib = contrib;
    std::size_t best_step = 0;

    std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> local_merges;
    for (std::size_t step = 1; step < s; ++step) {
      const auto [sigma, ca, cb] = *heap.begin();
      Comm& c1 = comms[ca];
      Comm& c2 = comms[cb];

      const double e12 = c1.nbrs.at(cb);
      contrib += 2.0 * (e12 / m - (c1.stubs / (2.0 * m)) * (c2.stubs / (2.0 * m)));
      q_running += 2.0 * (e12 / m - (c1.stubs / (2.0 * m)) * (c2.stubs / (2.0 * m)));

      Comm merged;
      merged.active = true;
      merged.id = next_merge_id++;
      merged.size = c1.size + c2.size;
      merged.stubs = c1.stubs + c2.stubs;
      merged.internal = c1.internal + c2.internal + e12;
      merged.row.resize(s);
      const double w1 = static_cast<double>(c1.size) / static_cast<double>(merged.size);
      const double w2 = static_cast<double>(c2.size) / static_cast<double>(merged.size);
      for (std::size_t k = 0; k < s; ++k) merged.row[k] = w1 * c1.row[k] + w2 * c2.row[k];
      for (const auto& [nb, w] : c1.nbrs)
        if (nb != cb) merged.nbrs[nb] += w;
      for (const auto& [nb, w] : c2.nbrs)
        if (nb != ca) merged.nbrs[nb] += w;

      const auto new_slot = static_cast<std::uint32_t>(comms.size());
      // Retire the merged pair's candidate entries and rewire neighbors.
      for (const auto& [nb, w] : c1.nbrs) {
        if (nb == cb) continue;
        heap.erase({delta_sigma(c1, comms[nb]), std::min(ca, nb), std::max(ca, nb)});
        comms[nb].nbrs.erase(ca);
      }
      for (const auto& [nb, w] : c2.nbrs) {
        if (nb == ca) continue;
        heap.erase({delta_sigma(c2, comms[nb]), std::min(cb, nb), std::max(cb, nb)});
        comms[nb].nbrs.erase(cb);
      }
      heap.erase({sigma, ca, cb});
      c1.active = false;
      c2.active = false;

      const std::uint32_t id_a = comms[ca].id, id_b = comms[cb].id;
      comms.push_back(std::move(merged));
      for (const auto& [nb, w] : comms[new_slot].nbrs) {
        comms[nb].nbrs[new_slot] = w;
        heap.insert({delta_sigma(comms[new_slot], comms[nb]),
                     std::min(new_slot, nb), std::max(new_slot, nb)});
      }

      result.merges.push_back({id_a, id_b, comms[new_slot].id, sigma, q_running});
      local_merges.emplace_back(ca, cb, new_slot);
      if (contrib > best_contrib) {
        best_contrib = contrib;
        best_step = step;
      }
    }

    // Replay merges up to the best step to extract this component's cut.
    std::vector<std::uint32_t> slot_root(comms.size());
    for (std::size_t i = 0; i < comms.size(); ++i) slot_root[i] = static_cast<std::uint32_t>(i);
    const auto find_root = [&](std::uint32_t x) {
      while (slot_root[x] != x) {
        slot_root[x] = slot_root[slot_root[x]];
        x = slot_root[x];
      }
      return x;
    };
    for (std::size_t step = 0; step < best_step; ++step) {
      const auto [ca, cb, ms] = local_merges[step];
      slot_root[find_root(ca)] = ms;
      slot_root[find_root(cb)] = ms;
    }
    std::map<std::uint32_t, std::vector<std::uint32_t>> cut;
    for (std::size_t i = 0; i < s; ++i)
      cut[find_root(static_cast<std::uint32_t>(i))].push_back(comp[i]);
    for (auto& [root, members] : cut) final_comms.push_back(std::move(members));
    q_total += best_contrib;
  }

  // Renumber communities by (size desc, min member asc).
  std::sort(final_comms.begin(), final_comms.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.front() < b.front();
  });
  Partition& p = result.partition;
  p.labels = net.nodes;
  p.assignment.assign(ug.n, 0);
  for (std::uint32_t c = 0; c < final_comms.size(); ++c) {
    for (const std::uint32_t v : final_comms[c]) p.assignment[v] = c;
    p.sizes.push_back(final_comms[c].size());
  }
  p.communities = std::move(final_comms);
  p.modularity = q_total;
  return result;
}

/// Community sizes ranked descending, rank starting at 1.
inline std::vector<std::pair<std::size_t, std::size_t>> community_size_distribution(
    const Partition& p) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < p.sizes.size(); ++i) out.emplace_back(i + 1, p.sizes[i]);
  return out;
}

/// Fraction of nodes held by the k largest communities.
inline double top_community_share(const Partition& p, std::size_t k) {
  std::size_t total = 0, top = 0;
  for (std::size_t i = 0; i < p.sizes.size(); ++i) {
    total += p.sizes[i];
    if (i < k) top += p.sizes[i];
  }
  return total == 0 ? 0.0 : static_cast<double>(top) / static_cast<double>(total);
}

/// Communities x domains contingency table with a size-weighted purity score.
struct DomainMixing {
  std::vector<std::string> domains;                  // sorted, unique
  std::vector<std::vector<std::size_t>> counts;      // [community][domain]
  double purity = 0.0;                               // mean max-domain fraction, size-weighted
};

inline DomainMixing community_domain_mixing(const Partition& p,
                                            const std::map<std::string, std::string>& labels) {
  static const std::string kUnclassified = "unclassified";
  DomainMixing mix;
  std::map<std::string, std::size_t> domain_index;
  const auto domain_of = [&](const std::string& node) -> const std::string& {
    const auto it = labels.find(node);
    return it == labels.end() ? kUnclassified : it->second;
  };
  for (std::uint32_t v = 0; v < p.labels.size(); ++v) domain_index.emplace(domain_of(p.labels[v]), 0);
  for (auto& [name, idx] : domain_index) {
    idx = mix.domains.size();
    mix.domains.push_back(name);
  }
  mix.counts.assign(p.communities.size(), std::vector<std::size_t>(mix.domains.size(), 0));
  for (std::size_t c = 0; c < p.communities.size(); ++c)
    for (const std::uint32_t v : p.communities[c])
      ++mix.counts[c][domain_index.at(domain_of(p.labels[v]))];

  std::size_t total = 0, majority = 0;
  for (std::size_t c = 0; c < mix.counts.size(); ++c) {
    std::size_t comm_total = 0, comm_max = 0;
    for (const std::size_t cnt : mix.counts[c]) {
      comm_total += cnt;
      comm_max = std::max(comm_max, cnt);
    }
    total += comm_total;
    majority += comm_max;
  }
  mix.purity = total == 0 ? 0.0 : static_cast<double>(majority) / static_cast<double>(total);
  return mix;
}

}  // namespace svcnet
