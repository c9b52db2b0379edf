#include "kgtriage/gateway/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <memory>

#include "ingest/text_util.hpp"
#include "kgtriage/error.hpp"

namespace kgtriage::gateway {
namespace {

using ingest::split;
using ingest::trim;

[[noreturn]] void bad(std::size_t line, const std::string& why) {
  throw Error(ErrorCode::invalid_argument, "config line " + std::to_string(line) + ": " + why);
}

template <typename T>
T parse_number(std::string_view text, std::size_t line) {
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    bad(line, "'" + std::string(text) + "' is not a number");
  }
  return value;
}

double parse_double(std::string_view text, std::size_t line) {
  std::string s(text);
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) bad(line, "'" + s + "' is not a number");
  return v;
}

kg::Specialty parse_specialty_key(std::string_view text, std::size_t line) {
  try {
    return kg::parse_specialty(text);
  } catch (const Error&) {
    bad(line, "unknown specialty '" + std::string(text) + "'");
  }
}

std::string resolve_path(std::string_view value, const std::filesystem::path& base) {
  std::filesystem::path p{std::string(value)};
  if (p.is_relative() && !base.empty()) p = base / p;
  return p.string();
}

}  // namespace

ServiceConfig parse_config(std::istream& in, const std::filesystem::path& base_dir) {
  ServiceConfig cfg;
  bool weights_reset = false;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    auto eq = text.find('=');
    if (eq == std::string_view::npos) bad(line, "expected key = value");
    auto key = trim(text.substr(0, eq));
    auto value = trim(text.substr(eq + 1));

    if (key == "tau") {
      cfg.engine.tau = parse_double(value, line);
    } else if (key == "top_k") {
      cfg.engine.top_k = parse_number<std::size_t>(value, line);
    } else if (key == "specialist_rule") {
      cfg.engine.specialist_rule = engine::parse_specialist_rule(value);
    } else if (key == "specialist_ids") {
      cfg.engine.specialist_ids.clear();
      for (auto id : split(value, ',')) {
        if (!trim(id).empty()) cfg.engine.specialist_ids.insert(kg::canonical_id(trim(id)));
      }
    } else if (key == "aggregation") {
      cfg.engine.aggregation = engine::parse_aggregation(value);
    } else if (key == "max_clarifying_questions") {
      cfg.max_clarifying_questions = parse_number<std::size_t>(value, line);
    } else if (key == "listen") {
      auto colon = value.rfind(':');
      if (colon == std::string_view::npos) bad(line, "listen expects host:port");
      cfg.listen_host = std::string(value.substr(0, colon));
      cfg.listen_port = parse_number<int>(value.substr(colon + 1), line);
    } else if (key == "data_dir") {
      cfg.data_dir = resolve_path(value, base_dir);
    } else if (key == "augmenter_endpoint") {
      if (value.empty()) {
        cfg.augmenter_endpoint.reset();
      } else {
        cfg.augmenter_endpoint = std::string(value);
      }
    } else if (key == "augmenter_timeout_ms") {
      cfg.augmenter_timeout = std::chrono::milliseconds(parse_number<long>(value, line));
    } else if (key == "scorer_timeout_ms") {
      cfg.scorer_timeout = std::chrono::milliseconds(parse_number<long>(value, line));
    } else if (key == "lexicon") {
      cfg.lexicon_path = resolve_path(value, base_dir);
    } else if (key == "patterns") {
      cfg.patterns_path = resolve_path(value, base_dir);
    } else if (key == "max_chunk_chars") {
      cfg.max_chunk_chars = parse_number<std::size_t>(value, line);
    } else if (key.starts_with("weight.")) {
      if (!weights_reset) {
        cfg.consultant_weights.clear();
        weights_reset = true;
      }
      auto s = parse_specialty_key(key.substr(7), line);
      if (s == kg::Specialty::general) bad(line, "the gp carries no weight");
      cfg.consultant_weights[s] = parse_double(value, line);
    } else if (key.starts_with("scorer.")) {
      cfg.remote_scorers[parse_specialty_key(key.substr(7), line)] = std::string(value);
    } else {
      bad(line, "unknown key '" + std::string(key) + "'");
    }
  }
  cfg.engine.validate();
  return cfg;
}

ServiceConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::invalid_argument, "cannot open config " + path.string());
  return parse_config(in, path.parent_path());
}

void apply_environment(ServiceConfig& config) {
  if (const char* dir = std::getenv("KGTRIAGE_DATA_DIR"); dir != nullptr && *dir != '\0') {
    config.data_dir = dir;
  }
}

engine::Roster build_roster(const ServiceConfig& config) {
  auto local = std::make_shared<const engine::KgOverlapScorer>();
  auto scorer_for = [&](kg::Specialty s) -> std::shared_ptr<const engine::DiagnosticFunction> {
    auto it = config.remote_scorers.find(s);
    if (it == config.remote_scorers.end()) return local;
    return std::make_shared<const engine::RemoteScorer>(it->second, config.scorer_timeout);
  };
  std::vector<engine::AgentProfile> agents;
  agents.push_back({"gp", engine::Tier::gp, kg::Specialty::general, 0.0,
                    scorer_for(kg::Specialty::general)});
  for (auto s : kg::kConsultantSpecialties) {
    auto it = config.consultant_weights.find(s);
    if (it == config.consultant_weights.end()) continue;
    agents.push_back({std::string(kg::to_string(s)), engine::Tier::consultant, s, it->second,
                      scorer_for(s)});
  }
  engine::Roster roster(std::move(agents));
  roster.validate();
  return roster;
}

}  // namespace kgtriage::gateway
