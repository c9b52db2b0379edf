#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "kgtriage/gateway/config.hpp"

namespace kgtriage::cli {

// Exit codes.
constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kData = 3;

struct Common {
  std::string config_path;
  std::string data_dir;  // overrides config file and environment
};

// config file, then KGTRIAGE_DATA_DIR, then --data-dir.
gateway::ServiceConfig resolve_config(const Common& common);

struct IngestArgs {
  std::string corpus_dir;
  std::string lexicon;
  std::string patterns;
  std::optional<std::size_t> max_chunk_chars;
  std::string augmenter;
  bool enqueue_extracted = false;
};

struct ReviewArgs {
  std::string action;  // list | approve | reject | enqueue
  std::string item_id;
  std::string reviewer;
  std::optional<std::uint64_t> revision;
  std::string note;
  bool all = false;
  std::vector<std::string> relation_ids;
};

struct SessionArgs {
  std::string intake;
  std::vector<std::string> answers;  // symptom=yes|no
};

int run_ingest(const Common& common, const IngestArgs& args, std::ostream& out);
int run_diagnose(const Common& common, const std::vector<std::string>& symptoms,
                 const std::string& text, std::ostream& out);
int run_export(const Common& common, const std::string& output, std::ostream& out);
int run_review(const Common& common, const ReviewArgs& args, std::ostream& out);
int run_stats(const Common& common, std::ostream& out);
int run_session(const Common& common, const SessionArgs& args, std::ostream& out);
int run_serve(const Common& common, std::ostream& log);

}  // namespace kgtriage::cli
