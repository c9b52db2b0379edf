#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kgtriage/ingest/segment.hpp"
#include "kgtriage/kg/graph.hpp"

namespace kgtriage::gateway {

// On-disk layout of a data directory:
//   graph.json    latest graph export, replaced atomically
//   review.log    review events, NDJSON, append-only
//   sessions.log  session events, NDJSON, append-only (audit only)
//   chunks.log    text of ingested chunks, NDJSON, for reviewers
class DataStore {
 public:
  explicit DataStore(std::filesystem::path dir);  // creates the directory

  // nullopt when no graph has been saved yet.
  std::optional<kg::KnowledgeGraph> load_graph() const;

  // Write to a temporary file, then rename over graph.json.
  void save_graph(const kg::KnowledgeGraph& graph);

  void append_session_event(const nlohmann::ordered_json& event);

  void append_chunks(const std::vector<ingest::Chunk>& chunks);
  std::map<std::string, std::string> load_chunks() const;  // chunk id -> text

  const std::filesystem::path& dir() const noexcept { return dir_; }
  std::filesystem::path graph_path() const { return dir_ / "graph.json"; }
  std::filesystem::path review_log_path() const { return dir_ / "review.log"; }
  std::filesystem::path session_log_path() const { return dir_ / "sessions.log"; }
  std::filesystem::path chunk_log_path() const { return dir_ / "chunks.log"; }

 private:
  std::filesystem::path dir_;
  std::mutex session_mu_;
  std::mutex chunk_mu_;
};

}  // namespace kgtriage::gateway
