#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>

#include "kgtriage/engine/scorer.hpp"
#include "kgtriage/engine/types.hpp"
#include "kgtriage/kg/types.hpp"

namespace kgtriage::gateway {

struct ServiceConfig {
  engine::EngineConfig engine;
  std::map<kg::Specialty, double> consultant_weights{
      {kg::Specialty::cardiology, 0.25},
      {kg::Specialty::neurology, 0.25},
      {kg::Specialty::endocrinology, 0.25},
      {kg::Specialty::rheumatology, 0.25},
  };
  // Optional remote scorer per agent; general = the GP.
  std::map<kg::Specialty, std::string> remote_scorers;
  std::chrono::milliseconds scorer_timeout{10000};

  std::size_t max_clarifying_questions = 3;
  std::string listen_host = "127.0.0.1";
  int listen_port = 8080;
  std::filesystem::path data_dir = "data";
  std::optional<std::string> augmenter_endpoint;
  std::chrono::milliseconds augmenter_timeout{10000};
  std::string lexicon_path;
  std::string patterns_path;
  std::size_t max_chunk_chars = 1000;
};

// `key = value` lines, '#' comments. Recognised keys:
//   tau, top_k, specialist_rule, specialist_ids (comma list), aggregation,
//   max_clarifying_questions, listen (host:port), data_dir,
//   augmenter_endpoint, augmenter_timeout_ms, scorer_timeout_ms,
//   lexicon, patterns, max_chunk_chars,
//   weight.<specialty>, scorer.<specialty|general>
// Unknown keys and bad values throw InvalidArgument. Relative paths are
// resolved against `base_dir`.
ServiceConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = {});
ServiceConfig load_config_file(const std::filesystem::path& path);

// KGTRIAGE_DATA_DIR, when set and non-empty, replaces data_dir.
void apply_environment(ServiceConfig& config);

// GP plus one consultant per configured weight, kg-overlap scorers unless a
// remote scorer is configured for that agent. Validated.
engine::Roster build_roster(const ServiceConfig& config);

}  // namespace kgtriage::gateway
