#include <gtest/gtest.h>

#include "kgtriage/engine/query.hpp"
#include "support/seed.hpp"

namespace kgtriage::engine {
namespace {

TEST(Query, NormalisesSymptomsFromText) {
  auto g = fixtures::seed_graph();
  auto lex = symptom_lexicon(g);
  auto q = make_query("q", "I have JOINT PAIN, morning stiffness and a rash on Mars", lex, g);
  EXPECT_EQ(q.symptom_ids, (std::set<std::string>{"joint-pain", "morning-stiffness"}));
  EXPECT_EQ(q.raw_text, "I have JOINT PAIN, morning stiffness and a rash on Mars");
}

TEST(Query, ResolvesAliasesAndIds) {
  auto g = fixtures::seed_graph();
  auto seed = fixtures::seed_lexicon();
  auto lex = symptom_lexicon(g, &seed);
  auto q = make_query("q", "breathlessness, tiredness and swollen joints; also shortness-of-breath", lex, g);
  EXPECT_TRUE(q.symptom_ids.contains("shortness-of-breath"));
  EXPECT_TRUE(q.symptom_ids.contains("fatigue"));
  EXPECT_TRUE(q.symptom_ids.contains("joint-swelling"));
  for (const auto& id : q.symptom_ids) EXPECT_EQ(g.entity(id).category, kg::Category::symptom);
}

TEST(Query, IgnoresNonSymptomMentions) {
  auto g = fixtures::seed_graph();
  auto seed = fixtures::seed_lexicon();
  auto lex = symptom_lexicon(g, &seed);
  auto q = make_query("q", "gout and methotrexate", lex, g);
  EXPECT_TRUE(q.symptom_ids.empty());
}

TEST(Query, ExtraLexiconSymptomsMustExistInGraph) {
  auto g = fixtures::seed_graph();
  ingest::Lexicon extra;
  extra.add("itchy scalp", {"Itchy scalp", kg::Category::symptom, kg::Specialty::general});
  auto lex = symptom_lexicon(g, &extra);
  EXPECT_TRUE(lex.find("itchy scalp"));
  EXPECT_TRUE(make_query("q", "itchy scalp", lex, g).symptom_ids.empty());
}

}  // namespace
}  // namespace kgtriage::engine
