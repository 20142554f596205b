#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "svcnet/error.hpp"
#include "svcnet/ontology.hpp"
#include "svcnet/rng.hpp"
#include "svcnet/service_model.hpp"

namespace svcnet {

struct GeneratorConfig {
  std::uint32_t n_services = 0;
  std::uint32_t ops_per_service = 1;
  std::uint32_t n_concepts = 0;
  /// Zipf exponent of concept reuse: 0 = uniform, larger = heavier reuse of
  /// low-index concepts, which is what makes hub parameters emerge.
  double concept_reuse_skew = 1.0;
  std::uint64_t seed = 0;
  std::string ontology_id = "synth";
};

struct GeneratedCorpus {
  Ontology ontology;
  Collection collection;
};

namespace detail {

inline std::string zero_padded(std::string_view prefix, std::uint32_t i, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*u", width, i);
  return std::string(prefix) + buf;
}

/// Draw an index from the Zipf-like weights w_i = (i+1)^-skew.
class ZipfSampler {
 public:
  ZipfSampler(std::uint32_t n, double skew) : cumulative_(n) {
    double total = 0.0;
    for (std::uint32_t i = 0; i < n; ++i) {
      total += std::pow(static_cast<double>(i + 1), -skew);
      cumulative_[i] = total;
    }
    for (double& c : cumulative_) c /= total;
  }

  std::uint32_t draw(Rng& rng) const {
    const double u = rng.unit();
    std::size_t lo = 0, hi = cumulative_.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (cumulative_[mid] <= u) lo = mid + 1;
      else hi = mid;
    }
    return static_cast<std::uint32_t>(lo);
  }

 private:
  std::vector<double> cumulative_;
};

}  // namespace detail

/// Deterministic synthetic corpus: a depth-bounded concept DAG plus services
/// whose parameter concepts are drawn from a Zipf-like reuse distribution.
/// Identical seeds give byte-identical serialized files.
inline GeneratedCorpus generate_collection(const GeneratorConfig& cfg) {
  const std::uint64_t total_ops =
      static_cast<std::uint64_t>(cfg.n_services) * cfg.ops_per_service;
  if (cfg.n_concepts == 0 && total_ops > 0)
    throw ValidationError("generator: zero concepts with nonzero operations");

  const Rng root(cfg.seed);

  // Concept hierarchy: each non-root concept may attach to one or two earlier
  // concepts of depth <= 2, keeping the DAG at depth <= 3.
  std::vector<std::string> names;
  names.reserve(cfg.n_concepts);
  for (std::uint32_t i = 0; i < cfg.n_concepts; ++i)
    names.push_back(detail::zero_padded("c", i, 4));
  std::vector<std::pair<std::string, std::string>> edges;
  {
    Rng rng = root.stream("ontology");
    std::vector<std::uint32_t> depth(cfg.n_concepts, 0);
    std::vector<std::uint32_t> eligible;
    for (std::uint32_t i = 1; i < cfg.n_concepts; ++i) {
      eligible.clear();
      for (std::uint32_t j = 0; j < i; ++j)
        if (depth[j] <= 2) eligible.push_back(j);
      const double r = rng.unit();
      std::uint32_t n_parents = r < 0.40 ? 0 : (r < 0.90 ? 1 : 2);
      if (eligible.empty()) n_parents = 0;
      std::uint32_t max_parent_depth = 0;
      for (std::uint32_t p = 0; p < n_parents; ++p) {
        const std::uint32_t parent = eligible[rng.index(eligible.size())];
        edges.emplace_back(names[i], names[parent]);
        max_parent_depth = std::max(max_parent_depth, depth[parent] + 1);
      }
      if (n_parents == 2 && edges.size() >= 2 &&
          edges[edges.size() - 1].second == edges[edges.size() - 2].second)
        edges.pop_back();  // same parent drawn twice
      depth[i] = max_parent_depth;
    }
  }
  Ontology ontology(cfg.ontology_id, names, std::move(edges));

  const detail::ZipfSampler zipf(std::max<std::uint32_t>(cfg.n_concepts, 1),
                                 cfg.concept_reuse_skew);
  Rng rng = root.stream("services");
  const auto draw_count = [&](Rng& r) -> std::uint32_t {
    const double u = r.unit();
    if (u < 0.10) return 0;
    if (u < 0.45) return 1;
    if (u < 0.80) return 2;
    return 3;
  };

  std::vector<Service> services;
  services.reserve(cfg.n_services);
  for (std::uint32_t s = 0; s < cfg.n_services; ++s) {
    Service service;
    service.name = detail::zero_padded("s", s, 3);
    for (std::uint32_t o = 0; o < cfg.ops_per_service; ++o) {
      Operation op;
      op.service = service.name;
      op.name = "op" + std::to_string(o + 1);
      std::uint32_t n_in = draw_count(rng);
      std::uint32_t n_out = draw_count(rng);
      if (n_in == 0 && n_out == 0) n_out = 1;
      for (std::uint32_t k = 0; k < n_in; ++k)
        op.inputs.push_back({cfg.ontology_id, names[zipf.draw(rng)]});
      for (std::uint32_t k = 0; k < n_out; ++k)
        op.outputs.push_back({cfg.ontology_id, names[zipf.draw(rng)]});
      service.operations.push_back(std::move(op));
    }
    services.push_back(std::move(service));
  }
  return {std::move(ontology), Collection(std::move(services))};
}

}  // namespace svcnet
