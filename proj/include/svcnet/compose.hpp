#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "svcnet/bitset.hpp"
#include "svcnet/community.hpp"
#include "svcnet/error.hpp"
#include "svcnet/network.hpp"
#include "svcnet/ontology.hpp"
#include "svcnet/service_model.hpp"

namespace svcnet {

enum class Strategy : std::uint8_t { Forward, Backward, HubSeeded, CommunityPruned, TwoPhase };

constexpr std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Forward: return "forward";
    case Strategy::Backward: return "backward";
    case Strategy::HubSeeded: return "hub-seeded";
    case Strategy::CommunityPruned: return "community-pruned";
    case Strategy::TwoPhase: return "two-phase";
  }
  return "?";
}

inline Strategy parse_strategy(std::string_view s) {
  if (s == "forward") return Strategy::Forward;
  if (s == "backward") return Strategy::Backward;
  if (s == "hub-seeded") return Strategy::HubSeeded;
  if (s == "community-pruned") return Strategy::CommunityPruned;
  if (s == "two-phase") return Strategy::TwoPhase;
  throw ParseError("unknown strategy '" + std::string(s) +
                   "': expected forward|backward|hub-seeded|community-pruned|two-phase");
}

struct CompositionRequest {
  std::vector<ConceptRef> provided;
  std::vector<ConceptRef> goals;  // non-empty
  MatchLevel level = MatchLevel::Exact;
  std::size_t max_depth = 8;      // >= 1
  Strategy strategy = Strategy::Forward;
  /// Validation-mode flag: invoke operations when at least one input is
  /// satisfied instead of all. Off by default.
  bool partial_invocation = false;
};

struct PlanStep {
  std::string op;
  /// input concept -> "provided" or the id of the producing earlier step
  std::map<std::string, std::string> bindings;
};

struct CompositionPlan {
  bool solvable = false;
  std::vector<PlanStep> steps;  // topologically ordered
  std::size_t depth = 0;        // longest invocation chain
  struct Stats {
    std::size_t candidates_examined = 0;
    bool phase1_only = false;
    std::size_t pruned_candidates = 0;
    std::size_t total_candidates = 0;
  } stats;
};

namespace detail {

constexpr std::size_t kNever = std::numeric_limits<std::size_t>::max();

/// Concept universe (collection concepts + request concepts), satisfier table
/// at the request level, and per-operation input/output sets.
struct SearchContext {
  ConceptTable table;
  std::vector<Bitset> sat;  // sat[u]: concepts that satisfy input u at level
  std::vector<std::vector<std::uint32_t>> op_inputs;
  std::vector<std::vector<std::uint32_t>> op_outputs;
  std::vector<Bitset> op_output_bits;
  std::vector<std::string> op_ids;
  Bitset provided_bits;
  std::vector<std::uint32_t> provided_idx;
  std::vector<std::uint32_t> goal_idx;

  static SearchContext build(const CompositionRequest& req, const Collection& coll,
                             const OntologyRegistry& onts) {
    if (req.goals.empty()) throw ValidationError("composition request has no goals");
    if (req.max_depth < 1) throw ValidationError("composition request needs max_depth >= 1");
    SearchContext ctx;
    CollectionIndex idx = CollectionIndex::build(coll, onts);
    ctx.table = std::move(idx.table);
    ctx.op_inputs = std::move(idx.op_inputs);
    ctx.op_outputs = std::move(idx.op_outputs);
    ctx.op_ids = std::move(idx.op_ids);
    for (const ConceptRef& c : req.provided) ctx.provided_idx.push_back(ctx.table.add(c, onts));
    for (const ConceptRef& g : req.goals) ctx.goal_idx.push_back(ctx.table.add(g, onts));

    const std::size_t d = ctx.table.concepts.size();
    ctx.sat = satisfier_table(ctx.table, req.level);
    ctx.op_output_bits.clear();
    for (const auto& outs : ctx.op_outputs) {
      Bitset b(d);
      for (const std::uint32_t c : outs) b.set(c);
      ctx.op_output_bits.push_back(std::move(b));
    }
    ctx.provided_bits = Bitset(d);
    for (const std::uint32_t c : ctx.provided_idx) ctx.provided_bits.set(c);
    return ctx;
  }

  bool goal_satisfied(const Bitset& available, std::uint32_t g) const {
    return available.intersects(sat[g]);
  }
  bool all_goals_satisfied(const Bitset& available) const {
    for (const std::uint32_t g : goal_idx)
      if (!goal_satisfied(available, g)) return false;
    return true;
  }
};

/// Synchronous-round forward reachability: in each round every not-yet-used
/// candidate whose inputs are satisfied by the current concept set fires, and
/// its outputs join the set at the end of the round. The rounds are exactly
/// the minimal plan depths.
struct ForwardRun {
  bool solvable = false;
  std::size_t rounds = 0;
  Bitset available;
  std::vector<std::size_t> op_round;        // kNever if the op never fired
  std::vector<std::size_t> concept_round;   // first availability; 0 = provided
  std::vector<std::uint32_t> concept_producer;  // op that first produced it
  std::size_t candidates_examined = 0;
};

/// `order`: candidate scan order (the strategy's tie-breaking). `allowed`:
/// restriction of the candidate set, empty = all operations.
inline ForwardRun run_forward(const SearchContext& ctx, const CompositionRequest& req,
                              const std::vector<std::uint32_t>& order,
                              const std::vector<char>* allowed = nullptr) {
  const std::size_t n_ops = ctx.op_ids.size();
  const std::size_t d = ctx.table.concepts.size();
  ForwardRun run;
  run.available = ctx.provided_bits;
  run.op_round.assign(n_ops, kNever);
  run.concept_round.assign(d, kNever);
  run.concept_producer.assign(d, UINT32_MAX);
  for (const std::uint32_t c : ctx.provided_idx) run.concept_round[c] = 0;

  if (ctx.all_goals_satisfied(run.available)) {
    run.solvable = true;
    return run;
  }

  const auto invocable = [&](std::uint32_t op) {
    const auto& inputs = ctx.op_inputs[op];
    if (inputs.empty()) return true;  // zero-input operations are sources
    if (req.partial_invocation) {
      for (const std::uint32_t u : inputs)
        if (run.available.intersects(ctx.sat[u])) return true;
      return false;
    }
    for (const std::uint32_t u : inputs)
      if (!run.available.intersects(ctx.sat[u])) return false;
    return true;
  };

  for (std::size_t round = 1; round <= req.max_depth; ++round) {
    std::vector<std::uint32_t> fired;
    for (const std::uint32_t op : order) {
      if (run.op_round[op] != kNever) continue;
      if (allowed && !(*allowed)[op]) continue;
      ++run.candidates_examined;
      if (invocable(op)) fired.push_back(op);
    }
    if (fired.empty()) return run;  // fixpoint, goals unmet
    for (const std::uint32_t op : fired) {
      run.op_round[op] = round;
      for (const std::uint32_t c : ctx.op_outputs[op]) {
        if (run.concept_round[c] != kNever) continue;
        run.concept_round[c] = round;
        run.concept_producer[c] = op;
        run.available.set(c);
      }
    }
    run.rounds = round;
    if (ctx.all_goals_satisfied(run.available)) {
      run.solvable = true;
      return run;
    }
  }
  return run;
}

/// Deterministic choice of the concept that discharges goal-or-input `u`:
/// earliest availability first (provided beats produced), then the smallest
/// concept index.
inline std::optional<std::uint32_t> pick_satisfying_concept(const SearchContext& ctx,
                                                            const ForwardRun& run,
                                                            std::uint32_t u,
                                                            std::size_t round_bound) {
  std::optional<std::uint32_t> best;
  for (std::uint32_t c = 0; c < ctx.table.concepts.size(); ++c) {
    if (!ctx.sat[u].test(c)) continue;
    if (run.concept_round[c] == kNever || run.concept_round[c] > round_bound) continue;
    if (!best || run.concept_round[c] < run.concept_round[*best]) best = c;
  }
  return best;
}

/// Extracts a minimal-depth plan from a successful forward run by following
/// each goal back through first producers.
inline CompositionPlan extract_plan(const SearchContext& ctx, const ForwardRun& run) {
  CompositionPlan plan;
  plan.solvable = true;
  plan.stats.candidates_examined = run.candidates_examined;

  std::vector<char> needed(ctx.op_ids.size(), 0);
  std::vector<std::uint32_t> work;
  const auto require_concept = [&](std::uint32_t c) {
    if (run.concept_round[c] == 0) return;  // provided
    const std::uint32_t op = run.concept_producer[c];
    if (!needed[op]) {
      needed[op] = 1;
      work.push_back(op);
    }
  };

  for (const std::uint32_t g : ctx.goal_idx) {
    const auto c = pick_satisfying_concept(ctx, run, g, run.rounds);
    require_concept(*c);
  }
  std::map<std::uint32_t, std::map<std::string, std::string>> bindings;
  while (!work.empty()) {
    const std::uint32_t op = work.back();
    work.pop_back();
    auto& b = bindings[op];
    for (const std::uint32_t u : ctx.op_inputs[op]) {
      const auto c = pick_satisfying_concept(ctx, run, u, run.op_round[op] - 1);
      b[ctx.table.concepts[u].str()] =
          run.concept_round[*c] == 0 ? "provided" : ctx.op_ids[run.concept_producer[*c]];
      require_concept(*c);
    }
  }

  std::vector<std::uint32_t> ops;
  for (std::uint32_t op = 0; op < needed.size(); ++op)
    if (needed[op]) ops.push_back(op);
  std::sort(ops.begin(), ops.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (run.op_round[a] != run.op_round[b]) return run.op_round[a] < run.op_round[b];
    return ctx.op_ids[a] < ctx.op_ids[b];
  });
  for (const std::uint32_t op : ops) {
    plan.steps.push_back({ctx.op_ids[op], std::move(bindings[op])});
    plan.depth = std::max(plan.depth, run.op_round[op]);
  }
  return plan;
}

/// Candidate order shared by the forward family: operation id ascending.
inline std::vector<std::uint32_t> id_order(const SearchContext& ctx) {
  std::vector<std::uint32_t> order(ctx.op_ids.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return ctx.op_ids[a] < ctx.op_ids[b];
  });
  return order;
}

/// Degree-ranked order from the level's operation network (hubs: out-degree;
/// authorities: in-degree), ties by operation id.
inline std::vector<std::uint32_t> degree_order(const SearchContext& ctx, const Collection& coll,
                                               const OntologyRegistry& onts, MatchLevel level,
                                               bool by_out_degree) {
  const InteractionNetwork net = build_operation_network(coll, onts, level, Invocation::Full);
  const Digraph g = net.digraph();
  const auto deg = by_out_degree ? g.out_degrees() : g.in_degrees();
  // The network's node order is the collection order, which is also the
  // context's operation order.
  std::vector<std::uint32_t> order(ctx.op_ids.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (deg[a] != deg[b]) return deg[a] > deg[b];
    return ctx.op_ids[a] < ctx.op_ids[b];
  });
  return order;
}

}  // namespace svcnet::detail (composition internals)

/// Forward chaining: grow the set of available concepts round by round until
/// every goal is satisfied, then extract a minimal-depth plan. HubSeeded is
/// the same search with candidates reordered by descending out-degree.
inline CompositionPlan forward_search(const CompositionRequest& req, const Collection& coll,
                                      const OntologyRegistry& onts) {
  const auto ctx = detail::SearchContext::build(req, coll, onts);
  const auto order = req.strategy == Strategy::HubSeeded
                         ? detail::degree_order(ctx, coll, onts, req.level, true)
                         : detail::id_order(ctx);
  const auto run = detail::run_forward(ctx, req, order);
  if (!run.solvable) {
    CompositionPlan plan;
    plan.stats.candidates_examined = run.candidates_examined;
    return plan;
  }
  return detail::extract_plan(ctx, run);
}

/// Goal regression over the forward-feasibility rounds: producers are chosen
/// authority-first (descending in-degree in the level's operation network),
/// their inputs become subgoals unless provided. Complete under max_depth
/// because feasibility is decided by the same round fixpoint as forward
/// search; the extracted plan is re-validated by simulation.
inline CompositionPlan backward_search(const CompositionRequest& req, const Collection& coll,
                                       const OntologyRegistry& onts) {
  const auto ctx = detail::SearchContext::build(req, coll, onts);
  const auto run = detail::run_forward(ctx, req, detail::id_order(ctx));
  CompositionPlan plan;
  if (!run.solvable) {
    plan.stats.candidates_examined = run.candidates_examined;
    return plan;
  }
  const auto authority_order = detail::degree_order(ctx, coll, onts, req.level, false);

  plan.solvable = true;
  std::vector<char> selected(ctx.op_ids.size(), 0);
  std::map<std::uint32_t, std::map<std::string, std::string>> bindings;
  std::vector<std::uint32_t> selected_ops;

  // satisfy(u, bound): bind subgoal u to "provided" or to a producer whose
  // round stays within the consumer's bound, authority-first.
  const auto satisfy = [&](std::uint32_t u, std::size_t bound) -> std::string {
    if (ctx.provided_bits.intersects(ctx.sat[u])) return "provided";
    for (const std::uint32_t op : authority_order) {
      if (run.op_round[op] == detail::kNever || run.op_round[op] > bound) continue;
      ++plan.stats.candidates_examined;
      if (!ctx.op_output_bits[op].intersects(ctx.sat[u])) continue;
      if (!selected[op]) {
        selected[op] = 1;
        selected_ops.push_back(op);
      }
      return ctx.op_ids[op];
    }
    throw Error("backward regression lost a feasible subgoal");  // unreachable
  };

  for (const std::uint32_t g : ctx.goal_idx) satisfy(g, run.rounds);
  // Bind the inputs of every selected op in selection order; satisfy() may
  // select further producers, growing the worklist.
  for (std::size_t i = 0; i < selected_ops.size(); ++i) {
    const std::uint32_t op = selected_ops[i];
    auto& b = bindings[op];
    for (const std::uint32_t u : ctx.op_inputs[op])
      b[ctx.table.concepts[u].str()] = satisfy(u, run.op_round[op] - 1);
  }

  std::sort(selected_ops.begin(), selected_ops.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (run.op_round[a] != run.op_round[b]) return run.op_round[a] < run.op_round[b];
    return ctx.op_ids[a] < ctx.op_ids[b];
  });
  for (const std::uint32_t op : selected_ops) {
    plan.steps.push_back({ctx.op_ids[op], std::move(bindings[op])});
    plan.depth = std::max(plan.depth, run.op_round[op]);
  }

  // Forward re-validation of the regression result.
  Bitset have = ctx.provided_bits;
  for (const auto& step : plan.steps) {
    const auto it = std::find(ctx.op_ids.begin(), ctx.op_ids.end(), step.op);
    const auto op = static_cast<std::uint32_t>(it - ctx.op_ids.begin());
    for (const std::uint32_t u : ctx.op_inputs[op])
      if (!have.intersects(ctx.sat[u])) throw Error("backward plan failed forward validation");
    for (const std::uint32_t c : ctx.op_outputs[op]) have.set(c);
  }
  if (!ctx.all_goals_satisfied(have)) throw Error("backward plan failed forward validation");
  return plan;
}

/// Community-guided search: candidates restricted to the communities holding
/// a goal-producing operation plus their one-ring neighbors in the level's
/// operation network; falls back to the unpruned search when that fails.
inline CompositionPlan community_pruned_search(const CompositionRequest& req,
                                               const Collection& coll,
                                               const OntologyRegistry& onts,
                                               const Partition& partition) {
  const auto ctx = detail::SearchContext::build(req, coll, onts);
  const std::size_t n_ops = ctx.op_ids.size();
  CompositionPlan plan;
  plan.stats.total_candidates = n_ops;

  if (partition.labels.empty()) {
    plan = forward_search(req, coll, onts);
    plan.stats.total_candidates = n_ops;
    plan.stats.pruned_candidates = n_ops;
    return plan;
  }

  std::map<std::string, std::uint32_t> community_of_label;
  for (std::uint32_t v = 0; v < partition.labels.size(); ++v)
    community_of_label.emplace(partition.labels[v], partition.assignment[v]);

  const std::size_t n_comms = partition.communities.size();
  std::vector<char> community_allowed(n_comms, 0);
  const auto community_of_op = [&](std::uint32_t op) -> std::optional<std::uint32_t> {
    const auto it = community_of_label.find(ctx.op_ids[op]);
    if (it == community_of_label.end()) return std::nullopt;
    return it->second;
  };
  for (std::uint32_t op = 0; op < n_ops; ++op) {
    bool produces_goal = false;
    for (const std::uint32_t g : ctx.goal_idx)
      if (ctx.op_output_bits[op].intersects(ctx.sat[g])) {
        produces_goal = true;
        break;
      }
    if (!produces_goal) continue;
    if (const auto c = community_of_op(op)) community_allowed[*c] = 1;
  }

  // One ring: communities adjacent to an allowed one in the operation network.
  const InteractionNetwork opnet =
      build_operation_network(coll, onts, req.level, Invocation::Full);
  std::vector<char> ring = community_allowed;
  for (const NetEdge& e : opnet.edges) {
    const auto ca = community_of_label.find(opnet.nodes[e.src]);
    const auto cb = community_of_label.find(opnet.nodes[e.dst]);
    if (ca == community_of_label.end() || cb == community_of_label.end()) continue;
    if (ca->second == cb->second) continue;
    if (community_allowed[ca->second]) ring[cb->second] = 1;
    if (community_allowed[cb->second]) ring[ca->second] = 1;
  }

  std::vector<char> allowed(n_ops, 0);
  std::size_t n_allowed = 0;
  for (std::uint32_t op = 0; op < n_ops; ++op) {
    const auto c = community_of_op(op);
    if (c && ring[*c]) {
      allowed[op] = 1;
      ++n_allowed;
    }
  }
  plan.stats.pruned_candidates = n_allowed;

  const auto order = detail::id_order(ctx);
  const auto pruned_run = detail::run_forward(ctx, req, order, &allowed);
  if (pruned_run.solvable) {
    auto out = detail::extract_plan(ctx, pruned_run);
    out.stats.pruned_candidates = n_allowed;
    out.stats.total_candidates = n_ops;
    return out;
  }
  const auto full_run = detail::run_forward(ctx, req, order);
  plan.stats.candidates_examined =
      pruned_run.candidates_examined + full_run.candidates_examined;
  if (!full_run.solvable) return plan;
  auto out = detail::extract_plan(ctx, full_run);
  out.stats.candidates_examined = plan.stats.candidates_examined;
  out.stats.pruned_candidates = n_allowed;
  out.stats.total_candidates = n_ops;
  return out;
}

/// Two-phase search. Phase 1 decides existence on the parameter layer alone:
/// a within-operation dependency edge u->v is traversable once some already
/// obtainable concept satisfies u at the request level, and the start set is
/// the provided concepts plus the outputs of zero-input operations (both
/// required for agreement with forward search at every level). If any goal is
/// unreachable the request is rejected without any operation-level work.
/// Phase 2 runs forward search over the operations appearing on surviving
/// provided-to-goal dependency paths.
inline CompositionPlan two_phase_search(const CompositionRequest& req, const Collection& coll,
                                        const OntologyRegistry& onts) {
  const auto ctx = detail::SearchContext::build(req, coll, onts);
  const std::size_t n_ops = ctx.op_ids.size();
  const std::size_t d = ctx.table.concepts.size();
  CompositionPlan plan;
  plan.stats.total_candidates = n_ops;

  if (ctx.all_goals_satisfied(ctx.provided_bits)) {
    plan.solvable = true;
    return plan;
  }

  // Parameter-layer dependency edges u -> (v, op).
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> dep_out(d);
  for (std::uint32_t op = 0; op < n_ops; ++op)
    for (const std::uint32_t u : ctx.op_inputs[op])
      for (const std::uint32_t v : ctx.op_outputs[op])
        if (u != v) dep_out[u].emplace_back(v, op);

  // Phase 1: level-aware reachability fixpoint over concepts.
  Bitset obtainable(d);
  std::vector<std::uint32_t> queue;
  const auto obtain = [&](std::uint32_t c) {
    if (!obtainable.test(c)) {
      obtainable.set(c);
      queue.push_back(c);
    }
  };
  for (const std::uint32_t c : ctx.provided_idx) obtain(c);
  for (std::uint32_t op = 0; op < n_ops; ++op)
    if (ctx.op_inputs[op].empty())
      for (const std::uint32_t c : ctx.op_outputs[op]) obtain(c);

  std::vector<char> fed(d, 0);
  while (!queue.empty()) {
    const std::uint32_t c = queue.back();
    queue.pop_back();
    for (std::uint32_t u = 0; u < d; ++u) {
      if (fed[u] || !ctx.sat[u].test(c)) continue;
      fed[u] = 1;
      for (const auto& [v, op] : dep_out[u]) obtain(v);
    }
  }
  for (const std::uint32_t g : ctx.goal_idx) {
    if (!obtainable.intersects(ctx.sat[g])) {
      plan.stats.phase1_only = true;  // no operation-level work was done
      return plan;
    }
  }

  // Useful concepts: can still feed a goal through traversable edges.
  Bitset useful(d);
  std::vector<std::uint32_t> bqueue;
  const auto mark_useful = [&](std::uint32_t c) {
    if (!useful.test(c)) {
      useful.set(c);
      bqueue.push_back(c);
    }
  };
  for (const std::uint32_t g : ctx.goal_idx)
    for (std::uint32_t c = 0; c < d; ++c)
      if (ctx.sat[g].test(c)) mark_useful(c);
  // Reverse closure: y is useful when y satisfies some fed input u that has a
  // dependency edge into a useful concept.
  std::vector<std::vector<std::uint32_t>> dep_in(d);
  for (std::uint32_t u = 0; u < d; ++u)
    for (const auto& [v, op] : dep_out[u]) dep_in[v].push_back(u);
  while (!bqueue.empty()) {
    const std::uint32_t v = bqueue.back();
    bqueue.pop_back();
    for (const std::uint32_t u : dep_in[v]) {
      if (!fed[u]) continue;
      for (std::uint32_t y = 0; y < d; ++y)
        if (ctx.sat[u].test(y)) mark_useful(y);
    }
  }

  std::vector<char> candidates(n_ops, 0);
  std::size_t n_candidates = 0;
  for (std::uint32_t op = 0; op < n_ops; ++op) {
    bool on_path = false;
    if (ctx.op_inputs[op].empty()) {
      for (const std::uint32_t v : ctx.op_outputs[op])
        if (useful.test(v)) {
          on_path = true;
          break;
        }
    } else {
      for (const std::uint32_t u : ctx.op_inputs[op]) {
        if (!fed[u]) continue;
        for (const std::uint32_t v : ctx.op_outputs[op])
          if (v != u && useful.test(v)) {
            on_path = true;
            break;
          }
        if (on_path) break;
      }
    }
    if (on_path) {
      candidates[op] = 1;
      ++n_candidates;
    }
  }
  plan.stats.pruned_candidates = n_candidates;

  const auto run = detail::run_forward(ctx, req, detail::id_order(ctx), &candidates);
  plan.stats.candidates_examined = run.candidates_examined;
  if (!run.solvable) return plan;
  auto out = detail::extract_plan(ctx, run);
  out.stats.pruned_candidates = n_candidates;
  out.stats.total_candidates = n_ops;
  return out;
}

/// Strategy dispatch. CommunityPruned computes a Walktrap partition of the
/// level's operation-network giant component when none is supplied.
inline CompositionPlan compose(const CompositionRequest& req, const Collection& coll,
                               const OntologyRegistry& onts,
                               const Partition* partition = nullptr) {
  switch (req.strategy) {
    case Strategy::Forward:
    case Strategy::HubSeeded:
      return forward_search(req, coll, onts);
    case Strategy::Backward:
      return backward_search(req, coll, onts);
    case Strategy::TwoPhase:
      return two_phase_search(req, coll, onts);
    case Strategy::CommunityPruned: {
      if (partition) return community_pruned_search(req, coll, onts, *partition);
      const InteractionNetwork net =
          build_operation_network(coll, onts, req.level, Invocation::Full);
      const ComponentDecomposition comps = decompose(net);
      Partition part;
      if (comps.giant) {
        const InteractionNetwork giant =
            induced_subnetwork(net, comps.components[*comps.giant]);
        part = walktrap(giant).partition;
      }
      return community_pruned_search(req, coll, onts, part);
    }
  }
  throw Error("unreachable strategy");
}

inline std::string plan_to_json(const CompositionPlan& plan) {
  nlohmann::ordered_json doc;
  doc["solvable"] = plan.solvable;
  auto& steps = doc["steps"] = nlohmann::ordered_json::array();
  for (const PlanStep& s : plan.steps) steps.push_back(s.op);
  auto& bindings = doc["bindings"] = nlohmann::ordered_json::object();
  for (const PlanStep& s : plan.steps) {
    nlohmann::ordered_json b = nlohmann::ordered_json::object();
    for (const auto& [input, source] : s.bindings) b[input] = source;
    bindings[s.op] = std::move(b);
  }
  doc["depth"] = plan.depth;
  doc["stats"] = {{"candidates_examined", plan.stats.candidates_examined},
                  {"phase1_only", plan.stats.phase1_only},
                  {"pruned_candidates", plan.stats.pruned_candidates},
                  {"total_candidates", plan.stats.total_candidates}};
  return doc.dump(2) + "\n";
}

}  // namespace svcnet
