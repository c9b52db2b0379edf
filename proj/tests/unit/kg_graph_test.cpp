#include <gtest/gtest.h>

#include <random>

#include "kgtriage/kg/graph.hpp"
#include "support/expect_error.hpp"
#include "support/oracles.hpp"
#include "support/random_graph.hpp"

namespace kgtriage::kg {
namespace {

using fixtures::Rng;

std::set<TripleKey> live_keys(const KnowledgeGraph& g) {
  std::set<TripleKey> out;
  for (const auto& [id, r] : g.relations()) {
    if (is_live(r.status)) out.insert(key_of(r));
  }
  return out;
}

// Linear scan of labels and aliases, independent of the alias index.
std::optional<std::string> scan_resolve(const KnowledgeGraph& g, const std::string& surface) {
  auto key = canonical_id(surface);
  for (const auto& [id, e] : g.entities()) {
    if (canonical_id(e.label) == key) return id;
  }
  for (const auto& [id, e] : g.entities()) {
    for (const auto& a : e.aliases) {
      if (canonical_id(a) == key) return id;
    }
  }
  return std::nullopt;
}

TEST(UpsertEntity, InsertsOnEmptyGraph) {
  KnowledgeGraph g;
  EXPECT_EQ(g.upsert_entity("Ozempic", Category::drug, Specialty::endocrinology), "ozempic");
  EXPECT_EQ(g.entities().size(), 1u);
  EXPECT_EQ(g.entity("ozempic").label, "Ozempic");
  EXPECT_EQ(g.version(), 1u);
}

TEST(UpsertEntity, IsIdempotent) {
  KnowledgeGraph g;
  auto a = g.upsert_entity("Ozempic", Category::drug, Specialty::endocrinology);
  auto v = g.version();
  auto b = g.upsert_entity("ozempic", Category::drug, Specialty::endocrinology);
  EXPECT_EQ(a, b);
  EXPECT_EQ(g.entities().size(), 1u);
  EXPECT_EQ(g.version(), v);
}

TEST(UpsertEntity, ResolvesThroughAlias) {
  KnowledgeGraph g;
  g.upsert_entity("Type 2 Diabetes", Category::disease, Specialty::endocrinology, {"T2D"});
  EXPECT_EQ(g.upsert_entity("T2D", Category::disease, Specialty::endocrinology), "type-2-diabetes");
  EXPECT_EQ(g.entities().size(), 1u);
  EXPECT_EQ(scan_resolve(g, "t2d"), std::optional<std::string>("type-2-diabetes"));
}

TEST(UpsertEntity, MergesNewAliasesAndBumpsVersion) {
  KnowledgeGraph g;
  g.upsert_entity("Atrial Fibrillation", Category::disease, Specialty::cardiology, {"AF"});
  auto v = g.version();
  g.upsert_entity("AF", Category::disease, Specialty::cardiology, {"afib"});
  EXPECT_GT(g.version(), v);
  EXPECT_EQ(g.resolve("AFib"), std::optional<std::string>("atrial-fibrillation"));
}

TEST(UpsertEntity, AliasesNeverContainTheLabel) {
  KnowledgeGraph g;
  g.upsert_entity("Gout", Category::disease, Specialty::rheumatology, {"gout", "GOUT", "podagra"});
  EXPECT_EQ(g.entity("gout").aliases, std::set<std::string>{"podagra"});
}

TEST(UpsertEntity, EmptyLabel) {
  KnowledgeGraph g;
  EXPECT_ERROR(g.upsert_entity("", Category::drug, Specialty::general), empty_label);
  EXPECT_ERROR(g.upsert_entity(" !? ", Category::drug, Specialty::general), empty_label);
  EXPECT_EQ(g.version(), 0u);
}

TEST(UpsertEntity, AliasResolutionMatchesLinearScan) {
  Rng rng(7);
  for (int round = 0; round < 50; ++round) {
    auto g = fixtures::random_graph(rng, {30, 0});
    for (int probe = 0; probe < 20; ++probe) {
      auto surface = fixtures::random_label(rng);
      EXPECT_EQ(g.resolve(surface), scan_resolve(g, surface)) << surface;
    }
    for (const auto& [id, e] : g.entities()) {
      for (const auto& a : e.aliases) EXPECT_EQ(g.resolve(a), std::optional<std::string>(id));
    }
  }
}

class RelationTest : public ::testing::Test {
 protected:
  void SetUp() override {
    g.upsert_entity("Ozempic", Category::drug, Specialty::endocrinology);
    g.upsert_entity("Cardiovascular Disease", Category::disease, Specialty::cardiology);
  }
  KnowledgeGraph g;
};

TEST_F(RelationTest, AddsEdge) {
  auto id = g.add_relation("ozempic", Predicate::Kind::reduces_risk_of, "cardiovascular-disease",
                           Provenance::lexicon_extractor, Status::extracted);
  EXPECT_EQ(g.relations().size(), 1u);
  EXPECT_EQ(g.relation(id).status, Status::extracted);
  EXPECT_EQ(g.relation(id).predicate.str(), "reduces-risk-of");
}

TEST_F(RelationTest, DeduplicatesLiveTriples) {
  auto a = g.add_relation("ozempic", Predicate::Kind::reduces_risk_of, "cardiovascular-disease",
                          Provenance::lexicon_extractor, Status::extracted);
  auto v = g.version();
  auto b = g.add_relation("ozempic", Predicate::Kind::reduces_risk_of, "cardiovascular-disease",
                          Provenance::augmenter, Status::pending_review);
  EXPECT_EQ(a, b);
  EXPECT_EQ(g.relations().size(), 1u);
  EXPECT_EQ(g.version(), v);
  EXPECT_EQ(g.relation(a).provenance, Provenance::lexicon_extractor);
}

TEST_F(RelationTest, RejectsSelfLoopAndDanglingEndpoints) {
  EXPECT_ERROR(g.add_relation("ozempic", Predicate::Kind::treats, "ozempic", Provenance::seed,
                              Status::extracted),
               self_loop);
  EXPECT_ERROR(g.add_relation("ozempic", Predicate::Kind::treats, "nothing", Provenance::seed,
                              Status::extracted),
               dangling_endpoint);
  EXPECT_ERROR(g.add_relation("nothing", Predicate::Kind::treats, "ozempic", Provenance::seed,
                              Status::extracted),
               dangling_endpoint);
  EXPECT_TRUE(g.relations().empty());
}

TEST_F(RelationTest, RejectedTripleCanBeReproposed) {
  auto a = g.add_relation("ozempic", Predicate::Kind::treats, "cardiovascular-disease",
                          Provenance::lexicon_extractor, Status::pending_review);
  g.set_status(a, Status::rejected);
  auto b = g.add_relation("ozempic", Predicate::Kind::treats, "cardiovascular-disease",
                          Provenance::lexicon_extractor, Status::extracted);
  EXPECT_NE(a, b);
  EXPECT_EQ(g.relations().size(), 2u);
  EXPECT_EQ(g.relation(a).status, Status::rejected);
  EXPECT_EQ(g.live_relation_count(), 1u);
  g.check_invariants();
}

TEST_F(RelationTest, StatusTransitions) {
  auto id = g.add_relation("ozempic", Predicate::Kind::treats, "cardiovascular-disease",
                           Provenance::seed, Status::extracted);
  EXPECT_ERROR(g.set_status(id, Status::approved), invalid_transition);
  g.set_status(id, Status::pending_review);
  auto v = g.version();
  g.set_status(id, Status::pending_review);
  EXPECT_EQ(g.version(), v);
  g.set_status(id, Status::approved);
  EXPECT_ERROR(g.set_status(id, Status::rejected), invalid_transition);
  EXPECT_ERROR(g.set_status("rel-999999", Status::approved), not_found);
}

TEST(KnowledgeGraph, VersionStrictlyIncreasesOnEveryMutation) {
  Rng rng(11);
  KnowledgeGraph g;
  auto v = g.version();
  for (int i = 0; i < 200; ++i) {
    auto before = g;
    auto label = fixtures::random_label(rng);
    g.upsert_entity(label, Category::symptom, Specialty::general, {fixtures::random_label(rng)});
    if (g.same_content(before)) {
      EXPECT_EQ(g.version(), v);
    } else {
      EXPECT_GT(g.version(), v);
    }
    v = g.version();
  }
}

TEST(KnowledgeGraph, RandomGraphsHoldInvariants) {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    auto g = fixtures::random_graph(rng, {20, 40});
    EXPECT_NO_THROW(g.check_invariants());
    auto keys = live_keys(g);
    EXPECT_EQ(keys.size(), g.live_relation_count());
    for (const auto& [id, r] : g.relations()) {
      EXPECT_TRUE(g.find_entity(r.subject));
      EXPECT_TRUE(g.find_entity(r.object));
      EXPECT_NE(r.subject, r.object);
    }
  }
}

TEST(KnowledgeGraph, OutgoingAndEntityIds) {
  KnowledgeGraph g;
  g.upsert_entity("Gout", Category::disease, Specialty::rheumatology);
  g.upsert_entity("Joint Pain", Category::symptom, Specialty::general);
  g.upsert_entity("Joint Redness", Category::symptom, Specialty::general);
  g.add_relation("gout", Predicate::Kind::has_symptom, "joint-redness", Provenance::seed, Status::extracted);
  g.add_relation("gout", Predicate::Kind::has_symptom, "joint-pain", Provenance::seed, Status::extracted);
  EXPECT_EQ(g.outgoing("gout").size(), 2u);
  EXPECT_TRUE(g.outgoing("joint-pain").empty());
  EXPECT_EQ(g.entity_ids(Category::symptom), (std::vector<std::string>{"joint-pain", "joint-redness"}));
  EXPECT_ERROR(g.entity("nope"), unknown_entity);
}

class SymptomsOfTest : public ::testing::Test {
 protected:
  void SetUp() override {
    g.upsert_entity("Gout", Category::disease, Specialty::rheumatology);
    for (const char* s : {"Joint Pain", "Joint Swelling", "Joint Redness", "Fever"}) {
      g.upsert_entity(s, Category::symptom, Specialty::general);
    }
  }
  KnowledgeGraph g;
};

TEST_F(SymptomsOfTest, NoEdges) {
  EXPECT_TRUE(symptoms_of(g, "gout", {Status::extracted, Status::approved}).empty());
}

TEST_F(SymptomsOfTest, FiltersRejected) {
  g.add_relation("gout", Predicate::Kind::has_symptom, "joint-pain", Provenance::seed, Status::extracted);
  g.add_relation("gout", Predicate::Kind::has_symptom, "joint-swelling", Provenance::seed, Status::extracted);
  auto r = g.add_relation("gout", Predicate::Kind::has_symptom, "fever", Provenance::seed,
                          Status::pending_review);
  g.set_status(r, Status::rejected);
  std::set<Status> live{Status::extracted, Status::approved};
  auto got = symptoms_of(g, "gout", live);
  auto expected = fixtures::scan_symptoms(g, "gout", live);
  EXPECT_EQ(got, (std::vector<std::string>{"joint-pain", "joint-swelling"}));
  EXPECT_EQ(std::set<std::string>(got.begin(), got.end()), expected);
}

TEST_F(SymptomsOfTest, ApprovedOnlyOverExtractedGraph) {
  g.add_relation("gout", Predicate::Kind::has_symptom, "joint-pain", Provenance::seed, Status::extracted);
  EXPECT_TRUE(symptoms_of(g, "gout", {Status::approved}).empty());
}

TEST_F(SymptomsOfTest, IgnoresOtherPredicatesAndUnknownDisease) {
  g.add_relation("gout", Predicate::Kind::causes, "joint-pain", Provenance::seed, Status::extracted);
  EXPECT_TRUE(symptoms_of(g, "gout", {Status::extracted}).empty());
  EXPECT_ERROR(symptoms_of(g, "lupus", {Status::extracted}), unknown_entity);
}

TEST_F(SymptomsOfTest, MatchesScanOnRandomGraphs) {
  Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    auto rg = fixtures::random_graph(rng, {15, 40});
    for (auto statuses : {std::set<Status>{Status::extracted, Status::approved},
                          std::set<Status>{Status::approved}, std::set<Status>{Status::rejected}}) {
      for (const auto& [id, e] : rg.entities()) {
        auto got = symptoms_of(rg, id, statuses);
        EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
        EXPECT_EQ(std::set<std::string>(got.begin(), got.end()), fixtures::scan_symptoms(rg, id, statuses));
      }
    }
  }
}

class ExpandTest : public ::testing::Test {
 protected:
  void SetUp() override {
    for (const char* s : {"A", "B", "C", "D"}) g.upsert_entity(s, Category::symptom, Specialty::general);
    g.add_relation("a", Predicate::Kind::causes, "b", Provenance::seed, Status::extracted);
    g.add_relation("b", Predicate::Kind::causes, "c", Provenance::seed, Status::extracted);
    g.add_relation("c", Predicate::Kind::causes, "d", Provenance::seed, Status::extracted);
  }
  static RelationTriple approved(std::string s, std::string o) {
    RelationTriple r;
    r.subject = std::move(s);
    r.predicate = Predicate::Kind::causes;
    r.object = std::move(o);
    r.provenance = Provenance::expert;
    r.status = Status::approved;
    return r;
  }
  KnowledgeGraph g;
};

TEST_F(ExpandTest, EmptySetOnlyBumpsVersion) {
  auto out = expand_graph(g, {});
  EXPECT_TRUE(out.same_content(g));
  EXPECT_GT(out.version(), g.version());
}

TEST_F(ExpandTest, UnionOverKeys) {
  ApprovedSet s{{}, {approved("a", "b"), approved("a", "d")}};
  auto out = expand_graph(g, s);
  auto expected = live_keys(g);
  for (const auto& r : s.relations) expected.insert(key_of(r));
  EXPECT_EQ(out.relations().size(), 4u);
  EXPECT_EQ(live_keys(out), expected);
  EXPECT_EQ(out.relation(*out.find_live(key_of(s.relations[0]))).status, Status::approved);
}

TEST_F(ExpandTest, Idempotent) {
  ApprovedSet s{{}, {approved("a", "b"), approved("d", "a")}};
  auto once = expand_graph(g, s);
  auto twice = expand_graph(once, s);
  EXPECT_TRUE(once.same_content(twice));
}

TEST_F(ExpandTest, BringsNewEntities) {
  Entity e{"ozempic", "Ozempic", Category::drug, Specialty::endocrinology, {}};
  ApprovedSet s{{e}, {approved("ozempic", "a")}};
  auto out = expand_graph(g, s);
  EXPECT_EQ(out.entity("ozempic").label, "Ozempic");
  EXPECT_EQ(out.entities().size(), 5u);
}

TEST_F(ExpandTest, RejectsUnapprovedAndDangling) {
  auto r = approved("a", "c");
  r.status = Status::pending_review;
  EXPECT_ERROR(expand_graph(g, {{}, {r}}), unapproved_input);
  EXPECT_ERROR(expand_graph(g, {{}, {approved("a", "zzz")}}), integrity_violation);
}

TEST(ExpandProperty, IdempotentAndMonotoneOnRandomInputs) {
  Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    auto g = fixtures::random_graph(rng, {12, 25});
    auto s = fixtures::random_approved_set(rng, g, 6);
    auto once = expand_graph(g, s);
    auto twice = expand_graph(once, s);
    EXPECT_TRUE(once.same_content(twice));
    EXPECT_GE(once.entities().size(), g.entities().size());
    EXPECT_GE(once.relations().size(), g.relations().size());
    auto before = live_keys(g);
    auto after = live_keys(once);
    EXPECT_TRUE(std::includes(after.begin(), after.end(), before.begin(), before.end()));
    for (const auto& r : s.relations) {
      auto live = once.find_live(key_of(r));
      ASSERT_TRUE(live);
      EXPECT_EQ(once.relation(*live).status, Status::approved);
    }
    once.check_invariants();
  }
}

}  // namespace
}  // namespace kgtriage::kg
