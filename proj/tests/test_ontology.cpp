#include <doctest.h>

#include "oracles.hpp"
#include "svcnet/ontology.hpp"
#include "svcnet/rng.hpp"

using namespace svcnet;

namespace {

OntologyRegistry book_registry() {
  OntologyRegistry onts;
  onts.add(load_ontology(oracles::read_fixture("books.json")));
  onts.add(load_ontology(oracles::read_fixture("vehicles.json")));
  return onts;
}

}  // namespace

TEST_CASE("concept ref parsing and identity") {
  const ConceptRef ref = ConceptRef::parse("http://x/onto#Country");
  CHECK(ref.ontology_id == "http://x/onto");
  CHECK(ref.local_name == "Country");
  CHECK(ref.str() == "http://x/onto#Country");
  CHECK(ConceptRef::parse("a#b") == ConceptRef{"a", "b"});
  CHECK(ConceptRef{"a", "B"} != ConceptRef{"a", "b"});  // case-sensitive

  CHECK_THROWS_AS(ConceptRef::parse("nohash"), ParseError);
  CHECK_THROWS_AS(ConceptRef::parse("#name"), ParseError);
  CHECK_THROWS_AS(ConceptRef::parse("ont#"), ParseError);
}

TEST_CASE("match degree relevance order") {
  CHECK(relevance_rank(MatchDegree::Exact) > relevance_rank(MatchDegree::Fitin));
  CHECK(relevance_rank(MatchDegree::Fitin) > relevance_rank(MatchDegree::Plugin));
  CHECK(relevance_rank(MatchDegree::Plugin) > relevance_rank(MatchDegree::Subsume));
  CHECK(relevance_rank(MatchDegree::Subsume) > relevance_rank(MatchDegree::Fail));
}

TEST_CASE("load_ontology closure on the book hierarchy") {
  const auto onts = book_registry();
  // AnatomyTextbook -> BiologyTextbook -> Textbook is transitive.
  CHECK(onts.is_subconcept({"books", "AnatomyTextbook"}, {"books", "Textbook"}));
  CHECK(onts.is_subconcept({"books", "Textbook"}, {"books", "Textbook"}));  // reflexive
  CHECK_FALSE(onts.is_subconcept({"books", "Price"}, {"vehicles", "Price"}));
}

TEST_CASE("load_ontology edge cases") {
  const Ontology single = load_ontology(R"({"id":"one","concepts":["c"],"subclass_of":[]})");
  CHECK(single.concept_count() == 1);
  CHECK(single.subsumed_by(0, 0));  // closure = {(c,c)}

  CHECK_THROWS_AS(
      load_ontology(R"({"id":"x","concepts":["a","b"],"subclass_of":[["a","b"],["b","a"]]})"),
      ValidationError);
  CHECK_THROWS_AS(load_ontology(R"({"id":"x","concepts":["a"],"subclass_of":[["a","ghost"]]})"),
                  ValidationError);
  CHECK_THROWS_AS(load_ontology("not json"), ParseError);
  CHECK_THROWS_AS(load_ontology(R"({"concepts":[]})"), ParseError);

  OntologyRegistry onts;
  onts.add(load_ontology(R"({"id":"dup","concepts":["c"]})"));
  CHECK_THROWS_AS(onts.add(load_ontology(R"({"id":"dup","concepts":["c"]})")), ValidationError);
}

TEST_CASE("match_degree on the four reference pairs") {
  const auto onts = book_registry();
  CHECK(onts.match_degree({"books", "BiologyTextbook"}, {"books", "BiologyTextbook"}) ==
        MatchDegree::Exact);
  CHECK(onts.match_degree({"books", "BiologyTextbook"}, {"books", "Textbook"}) ==
        MatchDegree::Plugin);
  CHECK(onts.match_degree({"books", "BiologyTextbook"}, {"books", "AnatomyTextbook"}) ==
        MatchDegree::Subsume);
  CHECK(onts.match_degree({"books", "Price"}, {"vehicles", "Price"}) == MatchDegree::Fail);

  CHECK_THROWS_AS(onts.match_degree({"books", "Ghost"}, {"books", "Price"}), ValidationError);
  CHECK_THROWS_AS(onts.match_degree({"ghost", "X"}, {"books", "Price"}), ValidationError);
}

TEST_CASE("satisfies semantics per level") {
  CHECK(satisfies(MatchDegree::Exact, MatchLevel::Exact));
  CHECK_FALSE(satisfies(MatchDegree::Plugin, MatchLevel::Exact));
  CHECK(satisfies(MatchDegree::Plugin, MatchLevel::Plugin));
  CHECK(satisfies(MatchDegree::Subsume, MatchLevel::Subsume));
  CHECK(satisfies(MatchDegree::Exact, MatchLevel::Fitin));
  CHECK(satisfies(MatchDegree::Plugin, MatchLevel::Fitin));
  CHECK_FALSE(satisfies(MatchDegree::Subsume, MatchLevel::Fitin));
  for (const MatchLevel level :
       {MatchLevel::Exact, MatchLevel::Plugin, MatchLevel::Subsume, MatchLevel::Fitin})
    CHECK_FALSE(satisfies(MatchDegree::Fail, level));
}

TEST_CASE("match degree properties on random DAG ontologies") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(derive_seed(42, "ontology-prop", seed));
    const std::size_t n = 2 + rng.index(49);
    const Ontology ont = oracles::random_dag_ontology("o", n, rng);
    OntologyRegistry onts;
    const auto names = ont.concept_names();
    const auto edges = ont.subclass_edges();
    onts.add(std::move(ont));

    // Closure equals the brute-force relational-join fixpoint.
    const auto closure = oracles::closure_bruteforce(names, edges);
    const Ontology* o = onts.find("o");
    for (std::uint32_t a = 0; a < names.size(); ++a)
      for (std::uint32_t b = 0; b < names.size(); ++b)
        CHECK(o->subsumed_by(a, b) == (closure.count({names[a], names[b]}) > 0));

    for (std::uint32_t a = 0; a < names.size(); ++a) {
      for (std::uint32_t b = 0; b < names.size(); ++b) {
        const ConceptRef ra{"o", names[a]}, rb{"o", names[b]};
        const MatchDegree fwd = onts.match_degree(ra, rb);
        const MatchDegree rev = onts.match_degree(rb, ra);
        // Exact iff identical.
        CHECK((fwd == MatchDegree::Exact) == (a == b));
        // Plugin/Subsume are mirror images; Fail is symmetric.
        CHECK((fwd == MatchDegree::Plugin) == (rev == MatchDegree::Subsume));
        CHECK((fwd == MatchDegree::Fail) == (rev == MatchDegree::Fail));
        // Antisymmetry of strict subsumption.
        if (a != b) CHECK_FALSE(onts.is_subconcept(ra, rb) && onts.is_subconcept(rb, ra));
      }
    }
  }
}
