#include <gtest/gtest.h>

#include <atomic>
#include <thread>
#include <vector>

#include "kgtriage/kg/shared_graph.hpp"
#include "support/expect_error.hpp"

namespace kgtriage::kg {
namespace {

TEST(SharedGraph, SnapshotsAreImmutable) {
  SharedGraph shared;
  auto before = shared.snapshot();
  shared.write([](KnowledgeGraph& g) { g.upsert_entity("Fever", Category::symptom, Specialty::general); });
  EXPECT_TRUE(before->entities().empty());
  EXPECT_EQ(shared.snapshot()->entities().size(), 1u);
}

TEST(SharedGraph, WriteReturnsResult) {
  SharedGraph shared;
  auto id = shared.write([](KnowledgeGraph& g) {
    return g.upsert_entity("Fever", Category::symptom, Specialty::general);
  });
  EXPECT_EQ(id, "fever");
}

TEST(SharedGraph, FailedWriteIsNotPublished) {
  SharedGraph shared;
  shared.write([](KnowledgeGraph& g) { g.upsert_entity("Fever", Category::symptom, Specialty::general); });
  auto before = shared.snapshot();
  EXPECT_ERROR(shared.write([](KnowledgeGraph& g) {
    g.upsert_entity("Cough", Category::symptom, Specialty::general);
    g.add_relation("fever", Predicate::Kind::causes, "fever", Provenance::seed, Status::extracted);
  }),
               self_loop);
  EXPECT_EQ(shared.snapshot(), before);
}

TEST(SharedGraph, ConcurrentWritersSerialise) {
  SharedGraph shared;
  std::vector<std::thread> threads;
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([&shared, t] {
      for (int i = 0; i < 50; ++i) {
        shared.write([&](KnowledgeGraph& g) {
          g.upsert_entity("S " + std::to_string(t) + " " + std::to_string(i), Category::symptom,
                          Specialty::general);
        });
      }
    });
  }
  std::atomic<bool> stop{false};
  std::thread reader([&] {
    std::uint64_t last = 0;
    while (!stop) {
      auto snap = shared.snapshot();
      EXPECT_GE(snap->version(), last);
      EXPECT_EQ(snap->version(), snap->entities().size());
      last = snap->version();
    }
  });
  for (auto& th : threads) th.join();
  stop = true;
  reader.join();
  EXPECT_EQ(shared.snapshot()->entities().size(), 200u);
  EXPECT_EQ(shared.snapshot()->version(), 200u);
}

TEST(SharedGraph, ReplaceInstallsGraph) {
  SharedGraph shared;
  KnowledgeGraph g;
  g.upsert_entity("Gout", Category::disease, Specialty::rheumatology);
  shared.replace(g);
  EXPECT_EQ(*shared.snapshot(), g);
}

}  // namespace
}  // namespace kgtriage::kg
