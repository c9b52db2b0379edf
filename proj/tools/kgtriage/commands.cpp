#include "commands.hpp"

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "kgtriage/error.hpp"
#include "kgtriage/gateway/http_server.hpp"
#include "kgtriage/gateway/json_codec.hpp"
#include "kgtriage/gateway/service.hpp"

namespace kgtriage::cli {
namespace {

namespace fs = std::filesystem;
using gateway::Json;
using gateway::TriageService;

void print(std::ostream& out, const Json& body) { out << body.dump(2) << '\n'; }

std::vector<ingest::Document> read_corpus(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::invalid_argument, "corpus directory '" + dir.string() + "' not found");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<ingest::Document> docs;
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    docs.push_back({f.stem().string(), text.str(), f.string()});
  }
  return docs;
}

}  // namespace

gateway::ServiceConfig resolve_config(const Common& common) {
  auto config = common.config_path.empty() ? gateway::ServiceConfig{}
                                           : gateway::load_config_file(common.config_path);
  gateway::apply_environment(config);
  if (!common.data_dir.empty()) config.data_dir = common.data_dir;
  return config;
}

int run_ingest(const Common& common, const IngestArgs& args, std::ostream& out) {
  auto config = resolve_config(common);
  if (!args.lexicon.empty()) config.lexicon_path = args.lexicon;
  if (!args.patterns.empty()) config.patterns_path = args.patterns;
  if (args.max_chunk_chars) config.max_chunk_chars = *args.max_chunk_chars;
  if (!args.augmenter.empty()) config.augmenter_endpoint = args.augmenter;
  if (config.lexicon_path.empty()) {
    throw Error(ErrorCode::invalid_argument, "ingest needs --lexicon (or lexicon in the config)");
  }
  auto docs = read_corpus(args.corpus_dir);
  TriageService service(config);
  auto report = service.ingest(docs);
  auto body = gateway::to_json(report);
  if (args.enqueue_extracted) body["enqueued"] = service.enqueue_extracted("cli").size();
  body["graph_version"] = service.graph()->version();
  body["trace"] = Json::array();
  print(out, body);
  return report.errors.empty() ? kOk : kData;
}

int run_diagnose(const Common& common, const std::vector<std::string>& symptoms,
                 const std::string& text, std::ostream& out) {
  if (symptoms.empty() && text.empty()) {
    throw Error(ErrorCode::invalid_argument, "diagnose needs --symptoms or --text");
  }
  TriageService service(resolve_config(common));
  print(out, gateway::to_json(service.diagnose(symptoms, text)));
  return kOk;
}

int run_export(const Common& common, const std::string& output, std::ostream& out) {
  TriageService service(resolve_config(common));
  auto text = service.export_graph();
  if (output.empty()) {
    out << text;
    return kOk;
  }
  std::ofstream file(output, std::ios::binary | std::ios::trunc);
  file << text;
  if (!file) throw Error(ErrorCode::io_error, "cannot write " + output);
  return kOk;
}

int run_review(const Common& common, const ReviewArgs& args, std::ostream& out) {
  TriageService service(resolve_config(common));
  auto list = [](const std::vector<curation::ReviewItem>& items) {
    Json body = Json::array();
    for (const auto& i : items) body.push_back(gateway::to_json(i));
    return Json{{"items", std::move(body)}, {"trace", Json::array()}};
  };
  if (args.action == "list") {
    print(out, list(service.review_items(args.all)));
    return kOk;
  }
  if (args.action == "enqueue") {
    auto items = args.all ? service.enqueue_extracted("cli") : service.enqueue(args.relation_ids, "cli");
    print(out, list(items));
    return kOk;
  }
  auto verdict = curation::parse_verdict(args.action);
  std::optional<std::string> note;
  if (!args.note.empty()) note = args.note;
  auto item = service.verdict(args.item_id, verdict, args.reviewer, args.revision, note);
  print(out, Json{{"item", gateway::to_json(item)},
                  {"graph_version", service.graph()->version()},
                  {"trace", Json::array()}});
  return kOk;
}

int run_stats(const Common& common, std::ostream& out) {
  TriageService service(resolve_config(common));
  print(out, service.stats());
  return kOk;
}

int run_session(const Common& common, const SessionArgs& args, std::ostream& out) {
  TriageService service(resolve_config(common));
  auto session = service.start_session(args.intake);
  for (const auto& a : args.answers) {
    auto eq = a.find('=');
    auto value = eq == std::string::npos ? std::string() : a.substr(eq + 1);
    if (value != "yes" && value != "no") {
      throw Error(ErrorCode::invalid_argument, "--answer expects symptom=yes|no, got '" + a + "'");
    }
    session = service.answer(session.session_id, a.substr(0, eq), value == "yes");
  }
  print(out, gateway::to_json(session));
  return kOk;
}

int run_serve(const Common& common, std::ostream& log) {
  auto config = resolve_config(common);

  // Block the stop signals before any thread starts; one thread waits for them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  TriageService service(config);
  gateway::HttpServer server(service);
  int port = server.bind(config.listen_host, config.listen_port);
  if (port < 0) {
    throw Error(ErrorCode::io_error, "cannot listen on " + config.listen_host + ":" +
                                         std::to_string(config.listen_port));
  }
  log << "listening on " << config.listen_host << ':' << port << std::endl;

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  server.run();
  // run() also returns on its own errors; wake the waiter so it can exit.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  return kOk;
}

}  // namespace kgtriage::cli
