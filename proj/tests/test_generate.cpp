#include <doctest.h>

#include <cmath>
#include <map>

#include "svcnet/generate.hpp"
#include "svcnet/rng.hpp"

using namespace svcnet;

TEST_CASE("generator is byte-deterministic per seed") {
  GeneratorConfig cfg;
  cfg.n_services = 10;
  cfg.ops_per_service = 1;
  cfg.n_concepts = 20;
  cfg.concept_reuse_skew = 1.0;
  cfg.seed = 1;
  const GeneratedCorpus a = generate_collection(cfg);
  const GeneratedCorpus b = generate_collection(cfg);
  CHECK(serialize_collection(a.collection) == serialize_collection(b.collection));
  CHECK(serialize_ontology(a.ontology) == serialize_ontology(b.ontology));

  cfg.seed = 2;
  const GeneratedCorpus c = generate_collection(cfg);
  CHECK(serialize_collection(a.collection) != serialize_collection(c.collection));
}

TEST_CASE("generated corpus is internally consistent") {
  GeneratorConfig cfg;
  cfg.n_services = 40;
  cfg.ops_per_service = 2;
  cfg.n_concepts = 30;
  cfg.seed = 7;
  const GeneratedCorpus corpus = generate_collection(cfg);
  CHECK(corpus.collection.operations().size() == 80);
  OntologyRegistry onts;
  onts.add(corpus.ontology);
  CHECK_NOTHROW(corpus.collection.validate_against(onts));
  for (const Operation& op : corpus.collection.operations())
    CHECK(op.inputs.size() + op.outputs.size() > 0);
}

TEST_CASE("skew zero gives approximately uniform concept usage") {
  // Frequency count over ~10^4 draws; chi-square against uniform.
  GeneratorConfig cfg;
  cfg.n_services = 2500;
  cfg.ops_per_service = 1;
  cfg.n_concepts = 20;
  cfg.concept_reuse_skew = 0.0;
  cfg.seed = 3;
  const GeneratedCorpus corpus = generate_collection(cfg);
  std::map<std::string, std::size_t> counts;
  std::size_t total = 0;
  for (const Operation& op : corpus.collection.operations()) {
    for (const ConceptRef& c : op.inputs) ++counts[c.local_name], ++total;
    for (const ConceptRef& c : op.outputs) ++counts[c.local_name], ++total;
  }
  const double expected = static_cast<double>(total) / 20.0;
  double chi2 = 0.0;
  for (const auto& [name, n] : counts) {
    const double d = static_cast<double>(n) - expected;
    chi2 += d * d / expected;
  }
  // 19 dof: far below any sane rejection threshold for a sanity check.
  CHECK(chi2 < 60.0);
  CHECK(counts.size() == 20);
}

TEST_CASE("skewed reuse concentrates on low-index concepts") {
  GeneratorConfig cfg;
  cfg.n_services = 1000;
  cfg.ops_per_service = 1;
  cfg.n_concepts = 50;
  cfg.concept_reuse_skew = 1.2;
  cfg.seed = 9;
  const GeneratedCorpus corpus = generate_collection(cfg);
  std::size_t c0 = 0, c40 = 0;
  for (const Operation& op : corpus.collection.operations()) {
    for (const ConceptRef& c : op.inputs) {
      if (c.local_name == "c0000") ++c0;
      if (c.local_name == "c0040") ++c40;
    }
  }
  CHECK(c0 > 4 * std::max<std::size_t>(c40, 1));
}

TEST_CASE("generator parameter validation") {
  GeneratorConfig cfg;
  cfg.n_services = 1;
  cfg.n_concepts = 0;
  CHECK_THROWS_AS(generate_collection(cfg), ValidationError);
  cfg.n_services = 0;
  const GeneratedCorpus corpus = generate_collection(cfg);
  CHECK(corpus.collection.operations().empty());
}
