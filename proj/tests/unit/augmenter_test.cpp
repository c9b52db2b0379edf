#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "kgtriage/ingest/augmenter.hpp"
#include "support/expect_error.hpp"
#include "support/stub_server.hpp"

namespace kgtriage::ingest {
namespace {

using fixtures::StubServer;

Chunk sample_chunk() {
  Chunk c;
  c.id = "doc#0";
  c.doc_id = "doc";
  c.text = "Ozempic aids weight management";
  c.end = c.text.size();
  return c;
}

constexpr const char* kTwoTriples = R"({
  "mentions": [{"surface":"Ozempic","label":"Ozempic","category":"drug","specialty":"endocrinology","begin":0,"end":7}],
  "triples": [
    {"subject":"Ozempic","predicate":"treats","object":"Obesity","confidence":0.8},
    {"subject":"Ozempic","predicate":"reduces-risk-of","object":"Cardiovascular Disease","confidence":0.6}
  ]})";

TEST(Augment, NoEndpointIsNoOp) {
  auto result = augment(sample_chunk(), nullptr);
  EXPECT_TRUE(result.candidate.mentions.empty());
  EXPECT_TRUE(result.candidate.triples.empty());
  EXPECT_EQ(result.dropped, 0u);
}

TEST(Augment, TwoWellFormedTriples) {
  StubServer stub(StubServer::json(kTwoTriples));
  HttpAugmenter aug(stub.url("/extract"));
  auto result = aug.augment(sample_chunk());
  ASSERT_EQ(result.candidate.triples.size(), 2u);
  for (const auto& t : result.candidate.triples) EXPECT_EQ(t.provenance, kg::Provenance::augmenter);
  EXPECT_EQ(result.candidate.triples[0].confidence, 0.8);
  EXPECT_EQ(result.candidate.mentions.size(), 1u);
  EXPECT_EQ(result.dropped, 0u);
  auto sent = nlohmann::json::parse(stub.last_body());
  EXPECT_EQ(sent["chunk_id"], "doc#0");
  EXPECT_EQ(sent["text"], sample_chunk().text);
}

TEST(Augment, DropsOutOfRangeConfidence) {
  auto result = parse_augmenter_response(sample_chunk(), R"({"triples":[
      {"subject":"A","predicate":"causes","object":"B","confidence":0.5},
      {"subject":"A","predicate":"causes","object":"C","confidence":1.7}]})");
  EXPECT_EQ(result.candidate.triples.size(), 1u);
  EXPECT_EQ(result.dropped, 1u);
}

TEST(Augment, DropsMalformedItemsOneByOne) {
  auto result = parse_augmenter_response(sample_chunk(), R"({
    "mentions":[
      {"surface":"x","label":"X","category":"drug","begin":0,"end":99},
      {"surface":"x","label":"X","category":"gadget","begin":0,"end":1},
      {"surface":"O","label":"Ozempic","category":"drug","begin":0,"end":1}],
    "triples":[
      {"subject":"A","predicate":"cures","object":"B","confidence":0.5},
      {"subject":"A","predicate":"causes","object":"a","confidence":0.5},
      {"subject":"A","predicate":"causes","confidence":0.5},
      {"subject":"A","predicate":"causes","object":"B","confidence":"high"},
      {"subject":"A","predicate":"other:binds","object":"B","confidence":0}]})");
  EXPECT_EQ(result.candidate.mentions.size(), 1u);
  EXPECT_EQ(result.candidate.triples.size(), 1u);
  EXPECT_EQ(result.candidate.triples[0].predicate.str(), "other:binds");
  EXPECT_EQ(result.dropped, 6u);
}

TEST(Augment, ProtocolErrors) {
  EXPECT_ERROR(parse_augmenter_response(sample_chunk(), "nope"), augmenter_protocol_error);
  EXPECT_ERROR(parse_augmenter_response(sample_chunk(), "[1,2]"), augmenter_protocol_error);
  EXPECT_ERROR(parse_augmenter_response(sample_chunk(), R"({"triples":{}})"), augmenter_protocol_error);
  StubServer stub(StubServer::json("{}", 500));
  HttpAugmenter aug(stub.url());
  EXPECT_ERROR(aug.augment(sample_chunk()), augmenter_protocol_error);
}

TEST(Augment, Unavailable) {
  HttpAugmenter aug(fixtures::kRefusedUrl, std::chrono::milliseconds(500));
  EXPECT_ERROR(aug.augment(sample_chunk()), augmenter_unavailable);
}

TEST(Augment, TimesOut) {
  StubServer slow([](const httplib::Request&, httplib::Response& res) {
    std::this_thread::sleep_for(std::chrono::milliseconds(600));
    res.set_content("{}", "application/json");
  });
  HttpAugmenter aug(slow.url(), std::chrono::milliseconds(100));
  EXPECT_ERROR(aug.augment(sample_chunk()), augmenter_unavailable);
}

TEST(Augment, RejectsNonHttpEndpoint) {
  EXPECT_ERROR(HttpAugmenter("ftp://example"), invalid_argument);
}

}  // namespace
}  // namespace kgtriage::ingest
