#include "kgtriage/gateway/store.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include "kgtriage/error.hpp"
#include "kgtriage/kg/snapshot.hpp"

namespace kgtriage::gateway {

DataStore::DataStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) throw Error(ErrorCode::io_error, "cannot create " + dir_.string() + ": " + ec.message());
}

std::optional<kg::KnowledgeGraph> DataStore::load_graph() const {
  std::ifstream in(graph_path(), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream text;
  text << in.rdbuf();
  return kg::load(text.str());
}

void DataStore::save_graph(const kg::KnowledgeGraph& graph) {
  auto tmp = dir_ / "graph.json.tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << kg::snapshot(graph);
    out.flush();
    if (!out) throw Error(ErrorCode::io_error, "cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, graph_path(), ec);
  if (ec) throw Error(ErrorCode::io_error, "cannot replace " + graph_path().string() + ": " + ec.message());
}

void DataStore::append_session_event(const nlohmann::ordered_json& event) {
  std::lock_guard lock(session_mu_);
  std::ofstream out(session_log_path(), std::ios::app | std::ios::binary);
  out << event.dump() << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + session_log_path().string());
}

}  // namespace kgtriage::gateway

namespace kgtriage::gateway {

void DataStore::append_chunks(const std::vector<ingest::Chunk>& chunks) {
  if (chunks.empty()) return;
  std::lock_guard lock(chunk_mu_);
  std::ofstream out(chunk_log_path(), std::ios::app | std::ios::binary);
  for (const auto& c : chunks) {
    out << nlohmann::ordered_json{{"chunk_id", c.id}, {"text", c.text}}.dump() << '\n';
  }
  out.flush();
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + chunk_log_path().string());
}

std::map<std::string, std::string> DataStore::load_chunks() const {
  std::map<std::string, std::string> out;
  std::ifstream in(chunk_log_path(), std::ios::binary);
  std::string line;
  while (std::getline(in, line)) {
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (!j.is_object()) continue;  // torn tail
    auto id = j.find("chunk_id");
    auto text = j.find("text");
    if (id == j.end() || text == j.end() || !id->is_string() || !text->is_string()) continue;
    out[id->get<std::string>()] = text->get<std::string>();
  }
  return out;
}

}  // namespace kgtriage::gateway
