// Test-side oracles: independent brute-force implementations used to compute
// and freeze expected values. These must stay independent of the library
// code paths they check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "svcnet/compose.hpp"
#include "svcnet/network.hpp"
#include "svcnet/ontology.hpp"
#include "svcnet/rng.hpp"
#include "svcnet/service_model.hpp"

namespace oracles {

inline std::string fixture_path(const std::string& name) {
  return std::string(SVCNET_FIXTURE_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---------------------------------------------------------------------------
// Ontology closure by repeated relational join to fixpoint.
inline std::set<std::pair<std::string, std::string>> closure_bruteforce(
    const std::vector<std::string>& concepts,
    const std::vector<std::pair<std::string, std::string>>& edges) {
  std::set<std::pair<std::string, std::string>> rel;
  for (const std::string& c : concepts) rel.emplace(c, c);
  for (const auto& e : edges) rel.insert(e);
  for (;;) {
    std::set<std::pair<std::string, std::string>> next = rel;
    for (const auto& [a, b] : rel)
      for (const auto& [c, d] : rel)
        if (b == c) next.emplace(a, d);
    if (next == rel) return rel;
    rel = std::move(next);
  }
}

// ---------------------------------------------------------------------------
// Naive network oracles: triple loops over pairs x inputs x outputs, going
// through the public match_degree/satisfies path only.
inline std::set<std::pair<std::string, std::string>> naive_operation_edges(
    const svcnet::Collection& coll, const svcnet::OntologyRegistry& onts,
    svcnet::MatchLevel level, svcnet::Invocation invocation) {
  std::set<std::pair<std::string, std::string>> edges;
  const auto& ops = coll.operations();
  for (const svcnet::Operation& src : ops) {
    for (const svcnet::Operation& dst : ops) {
      if (src.id() == dst.id()) continue;
      if (dst.inputs.empty()) continue;
      std::size_t satisfied = 0;
      std::set<svcnet::ConceptRef> distinct_inputs(dst.inputs.begin(), dst.inputs.end());
      for (const svcnet::ConceptRef& in : distinct_inputs) {
        bool ok = false;
        for (const svcnet::ConceptRef& out : src.outputs)
          if (svcnet::satisfies(onts.match_degree(out, in), level)) {
            ok = true;
            break;
          }
        if (ok) ++satisfied;
      }
      const bool linked = invocation == svcnet::Invocation::Full
                              ? satisfied == distinct_inputs.size()
                              : satisfied > 0;
      if (linked) edges.emplace(src.id(), dst.id());
    }
  }
  return edges;
}

inline std::map<std::pair<std::string, std::string>, std::set<std::string>>
naive_parameter_edges(const svcnet::Collection& coll) {
  std::map<std::pair<std::string, std::string>, std::set<std::string>> edges;
  for (const svcnet::Operation& op : coll.operations()) {
    std::set<svcnet::ConceptRef> ins(op.inputs.begin(), op.inputs.end());
    std::set<svcnet::ConceptRef> outs(op.outputs.begin(), op.outputs.end());
    for (const svcnet::ConceptRef& in : ins)
      for (const svcnet::ConceptRef& out : outs)
        if (!(in == out)) edges[{in.str(), out.str()}].insert(op.id());
  }
  return edges;
}

inline std::set<std::pair<std::string, std::string>> edge_labels(
    const svcnet::InteractionNetwork& net) {
  std::set<std::pair<std::string, std::string>> out;
  for (const svcnet::NetEdge& e : net.edges) out.emplace(net.nodes[e.src], net.nodes[e.dst]);
  return out;
}

// ---------------------------------------------------------------------------
// All-pairs shortest paths by Floyd-Warshall.
struct FloydResult {
  double avg = 0.0;
  std::size_t diameter = 0;
  std::size_t reachable = 0;
};

inline std::optional<FloydResult> floyd_warshall(std::size_t n,
                                                 const std::vector<std::pair<int, int>>& edges) {
  constexpr long kInf = 1u << 29;
  std::vector<std::vector<long>> d(n, std::vector<long>(n, kInf));
  for (std::size_t v = 0; v < n; ++v) d[v][v] = 0;
  for (const auto& [a, b] : edges) d[a][b] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  FloydResult r;
  long total = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || d[i][j] >= kInf) continue;
      total += d[i][j];
      r.diameter = std::max(r.diameter, static_cast<std::size_t>(d[i][j]));
      ++r.reachable;
    }
  if (r.reachable == 0) return std::nullopt;
  r.avg = static_cast<double>(total) / static_cast<double>(r.reachable);
  return r;
}

// ---------------------------------------------------------------------------
// Clustering by exhaustive triple enumeration on the undirected projection.
inline std::optional<double> clustering_bruteforce(std::size_t n,
                                                   const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const auto& [a, b] : edges)
    if (a != b) adj[a][b] = adj[b][a] = 1;
  std::size_t triangles = 0, triples = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        if (i == j || i == k) continue;
        if (adj[i][j] && adj[i][k]) {
          ++triples;  // path j-i-k centred at i
          if (adj[j][k]) ++triangles;
        }
      }
  if (triples == 0) return std::nullopt;
  // Each triangle shows up as a closed triple at each of its three corners.
  return static_cast<double>(triangles) / static_cast<double>(triples);
}

// Assortativity by the direct one-pass Pearson formula over projected edges.
inline std::optional<double> assortativity_bruteforce(
    std::size_t n, const std::vector<std::pair<int, int>>& edges) {
  std::set<std::pair<int, int>> und;
  for (const auto& [a, b] : edges)
    if (a != b) und.emplace(std::min(a, b), std::max(a, b));
  std::vector<std::size_t> deg(n, 0);
  for (const auto& [a, b] : und) {
    ++deg[a];
    ++deg[b];
  }
  double sx = 0, sxx = 0, sxy = 0;
  std::size_t m2 = 0;
  for (const auto& [a, b] : und) {
    const double x = static_cast<double>(deg[a]);
    const double y = static_cast<double>(deg[b]);
    sx += x + y;
    sxx += x * x + y * y;
    sxy += 2 * x * y;
    m2 += 2;
  }
  if (m2 == 0) return std::nullopt;
  const double mean = sx / static_cast<double>(m2);
  const double var = sxx / static_cast<double>(m2) - mean * mean;
  if (var <= 0.0) return std::nullopt;
  const double cov = sxy / static_cast<double>(m2) - mean * mean;
  return cov / var;
}

// Modularity by the direct per-node-pair formula:
// Q = (1/2m) sum_ij (A_ij - d_i d_j / 2m) delta(c_i, c_j).
inline double modularity_bruteforce(std::size_t n, const std::vector<std::pair<int, int>>& edges,
                                    const std::vector<std::uint32_t>& assignment) {
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const auto& [a, b] : edges)
    if (a != b) adj[a][b] = adj[b][a] = 1;
  std::vector<double> deg(n, 0);
  double two_m = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (adj[i][j]) {
        deg[i] += 1;
        two_m += 1;
      }
  if (two_m == 0) return 0.0;
  double q = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (assignment[i] != assignment[j]) continue;
      q += (adj[i][j] ? 1.0 : 0.0) - deg[i] * deg[j] / two_m;
    }
  return q / two_m;
}

// ---------------------------------------------------------------------------
// Exhaustive composition solvability: try every operation subset; a subset
// works if it can be greedily ordered (inputs satisfied by provided + earlier
// outputs) and the goals end satisfied within the depth budget.
inline bool compose_solvable_bruteforce(const svcnet::CompositionRequest& req,
                                        const svcnet::Collection& coll,
                                        const svcnet::OntologyRegistry& onts) {
  const auto& ops = coll.operations();
  const std::size_t n = ops.size();
  const auto concept_satisfied = [&](const std::vector<svcnet::ConceptRef>& have,
                                     const svcnet::ConceptRef& want) {
    for (const svcnet::ConceptRef& c : have)
      if (svcnet::satisfies(onts.match_degree(c, want), req.level)) return true;
    return false;
  };
  const auto goals_met = [&](const std::vector<svcnet::ConceptRef>& have) {
    for (const svcnet::ConceptRef& g : req.goals)
      if (!concept_satisfied(have, g)) return false;
    return true;
  };

  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    std::vector<svcnet::ConceptRef> have = req.provided;
    std::vector<char> used(n, 0);
    std::size_t rounds = 0;
    std::size_t placed = 0;
    const std::size_t subset_size = static_cast<std::size_t>(__builtin_popcountll(mask));
    while (placed < subset_size && rounds < req.max_depth) {
      std::vector<std::size_t> fire;
      for (std::size_t i = 0; i < n; ++i) {
        if (!(mask >> i & 1) || used[i]) continue;
        bool ok = true;
        for (const svcnet::ConceptRef& in : ops[i].inputs)
          if (!concept_satisfied(have, in)) {
            ok = false;
            break;
          }
        if (ok) fire.push_back(i);
      }
      if (fire.empty()) break;
      ++rounds;
      for (const std::size_t i : fire) {
        used[i] = 1;
        ++placed;
        have.insert(have.end(), ops[i].outputs.begin(), ops[i].outputs.end());
      }
    }
    if (placed == subset_size && goals_met(have)) return true;
  }
  return false;
}

// Independent plan validator: simulate execution in step order.
inline bool validate_plan(const svcnet::CompositionRequest& req, const svcnet::Collection& coll,
                          const svcnet::OntologyRegistry& onts,
                          const svcnet::CompositionPlan& plan) {
  if (!plan.solvable) return false;
  std::map<std::string, const svcnet::Operation*> by_id;
  for (const svcnet::Operation& op : coll.operations()) by_id[op.id()] = &op;

  const auto satisfied_by = [&](const std::vector<svcnet::ConceptRef>& have,
                                const svcnet::ConceptRef& want) {
    for (const svcnet::ConceptRef& c : have)
      if (svcnet::satisfies(onts.match_degree(c, want), req.level)) return true;
    return false;
  };

  std::vector<svcnet::ConceptRef> have = req.provided;
  std::set<std::string> executed;
  std::map<std::string, std::size_t> chain;  // op -> chain depth
  std::size_t max_chain = 0;
  for (const svcnet::PlanStep& step : plan.steps) {
    const auto it = by_id.find(step.op);
    if (it == by_id.end()) return false;
    const svcnet::Operation& op = *it->second;
    std::size_t depth = 1;
    for (const svcnet::ConceptRef& in : op.inputs) {
      if (!satisfied_by(have, in)) return false;
      const auto binding = step.bindings.find(in.str());
      if (binding == step.bindings.end()) return false;
      if (binding->second != "provided") {
        if (!executed.count(binding->second)) return false;  // acyclic, earlier step
        depth = std::max(depth, chain[binding->second] + 1);
      }
    }
    executed.insert(step.op);
    chain[step.op] = depth;
    max_chain = std::max(max_chain, depth);
    have.insert(have.end(), op.outputs.begin(), op.outputs.end());
  }
  for (const svcnet::ConceptRef& g : req.goals)
    if (!satisfied_by(have, g)) return false;
  if (plan.steps.empty()) return plan.depth == 0;
  return plan.depth == max_chain && max_chain <= req.max_depth;
}

// ---------------------------------------------------------------------------
// Random inputs for the oracle-equivalence suites (generation may share the
// library Rng; only checked computations need independence).
inline svcnet::Ontology random_dag_ontology(const std::string& id, std::size_t n_concepts,
                                            svcnet::Rng& rng) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n_concepts; ++i) names.push_back("k" + std::to_string(i));
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::size_t> depth(n_concepts, 0);
  for (std::size_t i = 1; i < n_concepts; ++i) {
    if (rng.unit() < 0.35) continue;  // root
    std::vector<std::size_t> eligible;
    for (std::size_t j = 0; j < i; ++j)
      if (depth[j] <= 2) eligible.push_back(j);
    if (eligible.empty()) continue;
    const std::size_t parent = eligible[rng.index(eligible.size())];
    edges.emplace_back(names[i], names[parent]);
    depth[i] = depth[parent] + 1;
    if (rng.unit() < 0.15) {
      const std::size_t parent2 = eligible[rng.index(eligible.size())];
      if (parent2 != parent) {
        edges.emplace_back(names[i], names[parent2]);
        depth[i] = std::max(depth[i], depth[parent2] + 1);
      }
    }
  }
  return svcnet::Ontology(id, names, edges);
}

inline svcnet::Collection random_collection(const svcnet::Ontology& ont, std::size_t n_ops,
                                            svcnet::Rng& rng) {
  std::vector<svcnet::Service> services;
  for (std::size_t i = 0; i < n_ops; ++i) {
    svcnet::Operation op;
    op.service = "s" + std::to_string(i);
    op.name = "op";
    const std::size_t n_in = rng.index(4);   // 0..3
    const std::size_t n_out = rng.index(4);
    for (std::size_t k = 0; k < n_in; ++k)
      op.inputs.push_back({ont.id(), ont.concept_names()[rng.index(ont.concept_count())]});
    for (std::size_t k = 0; k < n_out; ++k)
      op.outputs.push_back({ont.id(), ont.concept_names()[rng.index(ont.concept_count())]});
    services.push_back({op.service, {op}});
  }
  return svcnet::Collection(std::move(services));
}

inline std::vector<std::pair<int, int>> random_digraph_edges(std::size_t n, double p,
                                                             svcnet::Rng& rng) {
  std::vector<std::pair<int, int>> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v && rng.unit() < p) edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  return edges;
}

inline svcnet::InteractionNetwork network_from_edges(std::size_t n,
                                                     const std::vector<std::pair<int, int>>& edges) {
  svcnet::InteractionNetwork net;
  for (std::size_t v = 0; v < n; ++v) net.nodes.push_back("n" + std::to_string(v));
  std::set<std::pair<int, int>> sorted(edges.begin(), edges.end());
  for (const auto& [a, b] : sorted)
    if (a != b)
      net.edges.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)});
  return net;
}

// ---------------------------------------------------------------------------
// Discrete power-law sampler: inverse CDF of the continuous Pareto with
// rounding, tail P(K >= k) = ((k - 1/2)/(xmin - 1/2))^-(gamma - 1).
inline std::vector<std::size_t> sample_power_law(double gamma, std::size_t xmin, std::size_t n,
                                                 svcnet::Rng& rng) {
  std::vector<std::size_t> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.unit();
    const double x =
        (static_cast<double>(xmin) - 0.5) * std::pow(1.0 - u, -1.0 / (gamma - 1.0));
    out.push_back(static_cast<std::size_t>(std::min(std::floor(x + 0.5), 1e15)));
  }
  return out;
}

// Set partitions of {0..n-1} as restricted-growth strings (for exhaustive
// modularity maximization on tiny graphs).
template <typename Fn>
void for_each_partition(std::size_t n, Fn&& fn) {
  std::vector<std::uint32_t> a(n, 0);
  std::vector<std::uint32_t> maxima(n, 0);
  for (;;) {
    fn(a);
    std::size_t i = n;
    while (i-- > 1) {
      const std::uint32_t cap = maxima[i - 1] + 1;
      if (a[i] < cap) {
        ++a[i];
        maxima[i] = std::max(maxima[i - 1], a[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
          a[j] = 0;
          maxima[j] = maxima[i];
        }
        break;
      }
      if (i == 1) return;
    }
    if (n <= 1) return;
  }
}

}  // namespace oracles
