#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "kgtriage/gateway/config.hpp"
#include "support/expect_error.hpp"
#include "support/seed.hpp"

namespace kgtriage::gateway {
namespace {

ServiceConfig parse(const std::string& text, const std::filesystem::path& base = {}) {
  std::istringstream in(text);
  return parse_config(in, base);
}

TEST(Config, Defaults) {
  auto c = parse("");
  EXPECT_DOUBLE_EQ(c.engine.tau, 0.7);
  EXPECT_EQ(c.max_clarifying_questions, 3u);
  EXPECT_EQ(c.consultant_weights.size(), 4u);
  EXPECT_FALSE(c.augmenter_endpoint);
}

TEST(Config, ParsesKeys) {
  auto c = parse(
      "# comment\n"
      "tau = 0.8\n"
      "top_k = 3\n"
      "specialist_rule = explicit-list\n"
      "specialist_ids = Gout, type 2 diabetes\n"
      "aggregation = uniform\n"
      "max_clarifying_questions = 1\n"
      "listen = 0.0.0.0:9090\n"
      "data_dir = store\n"
      "augmenter_endpoint = http://127.0.0.1:7000/augment\n"
      "augmenter_timeout_ms = 250\n"
      "lexicon = lex.tsv\n"
      "max_chunk_chars = 400\n"
      "weight.cardiology = 0.5\n"
      "weight.rheumatology = 0.5\n"
      "scorer.general = http://127.0.0.1:7001/score\n",
      "/etc/kg");
  EXPECT_DOUBLE_EQ(c.engine.tau, 0.8);
  EXPECT_EQ(c.engine.top_k, 3u);
  EXPECT_EQ(c.engine.specialist_rule, engine::SpecialistRule::explicit_list);
  EXPECT_EQ(c.engine.specialist_ids, (std::set<std::string>{"gout", "type-2-diabetes"}));
  EXPECT_EQ(c.engine.aggregation, engine::Aggregation::uniform);
  EXPECT_EQ(c.max_clarifying_questions, 1u);
  EXPECT_EQ(c.listen_host, "0.0.0.0");
  EXPECT_EQ(c.listen_port, 9090);
  EXPECT_EQ(c.data_dir, std::filesystem::path("/etc/kg/store"));
  EXPECT_EQ(c.augmenter_endpoint, std::optional<std::string>("http://127.0.0.1:7000/augment"));
  EXPECT_EQ(c.augmenter_timeout.count(), 250);
  EXPECT_EQ(c.lexicon_path, "/etc/kg/lex.tsv");
  EXPECT_EQ(c.max_chunk_chars, 400u);
  EXPECT_EQ(c.consultant_weights,
            (std::map<kg::Specialty, double>{{kg::Specialty::cardiology, 0.5},
                                             {kg::Specialty::rheumatology, 0.5}}));
  EXPECT_EQ(c.remote_scorers.at(kg::Specialty::general), "http://127.0.0.1:7001/score");
}

TEST(Config, Errors) {
  EXPECT_ERROR(parse("nonsense\n"), invalid_argument);
  EXPECT_ERROR(parse("colour = blue\n"), invalid_argument);
  EXPECT_ERROR(parse("tau = high\n"), invalid_argument);
  EXPECT_ERROR(parse("top_k = -1\n"), invalid_argument);
  EXPECT_ERROR(parse("listen = 8080\n"), invalid_argument);
  EXPECT_ERROR(parse("weight.general = 1\n"), invalid_argument);
  EXPECT_ERROR(parse("weight.oncology = 1\n"), invalid_argument);
  EXPECT_ERROR(parse("aggregation = median\n"), invalid_argument);
  EXPECT_ERROR(load_config_file("/no/such/kgtriage.conf"), invalid_argument);
}

TEST(Config, LoadFileResolvesAgainstItsDirectory) {
  fixtures::TempDir dir;
  {
    std::ofstream out(dir.path() / "kgtriage.conf");
    out << "data_dir = state\n";
  }
  auto c = load_config_file(dir.path() / "kgtriage.conf");
  EXPECT_EQ(c.data_dir, dir.path() / "state");
}

TEST(Config, EnvironmentOverridesDataDir) {
  ServiceConfig c;
  c.data_dir = "a";
  ::setenv("KGTRIAGE_DATA_DIR", "", 1);
  apply_environment(c);
  EXPECT_EQ(c.data_dir, std::filesystem::path("a"));
  ::setenv("KGTRIAGE_DATA_DIR", "/var/lib/kg", 1);
  apply_environment(c);
  EXPECT_EQ(c.data_dir, std::filesystem::path("/var/lib/kg"));
  ::unsetenv("KGTRIAGE_DATA_DIR");
}

TEST(Config, BuildRoster) {
  auto roster = build_roster(ServiceConfig{});
  ASSERT_EQ(roster.agents().size(), 5u);
  EXPECT_EQ(roster.gp().agent_id, "gp");
  std::vector<std::string> ids;
  for (const auto* c : roster.consultants()) {
    ids.push_back(c->agent_id);
    EXPECT_DOUBLE_EQ(c->weight, 0.25);
  }
  EXPECT_EQ(ids, (std::vector<std::string>{"cardiology", "neurology", "endocrinology", "rheumatology"}));

  ServiceConfig partial;
  partial.consultant_weights = {{kg::Specialty::neurology, 0.6}, {kg::Specialty::cardiology, 0.6}};
  EXPECT_ERROR(build_roster(partial), weight_sum_violation);
}

}  // namespace
}  // namespace kgtriage::gateway
