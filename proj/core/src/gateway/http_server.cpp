#include "kgtriage/gateway/http_server.hpp"

#include <algorithm>
#include <charconv>

#include <httplib.h>

#include "kgtriage/curation/review_queue.hpp"

namespace kgtriage::gateway {
namespace {

using nlohmann::json;

constexpr const char* kJson = "application/json";

void reply(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(2) + "\n", kJson);
}

void reply_error(httplib::Response& res, ErrorCode code, std::string_view message) {
  reply(res, http_status(code), error_json(code, message));
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  auto body = json::parse(req.body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) {
    throw Error(ErrorCode::invalid_argument, "request body must be a JSON object");
  }
  return body;
}

std::string required_string(const json& body, const char* key) {
  auto it = body.find(key);
  if (it == body.end() || !it->is_string()) {
    throw Error(ErrorCode::invalid_argument, std::string("missing string field '") + key + "'");
  }
  return it->get<std::string>();
}

std::vector<std::string> string_list(const json& body, const char* key) {
  std::vector<std::string> out;
  auto it = body.find(key);
  if (it == body.end()) return out;
  if (!it->is_array()) throw Error(ErrorCode::invalid_argument, std::string("'") + key + "' must be an array");
  for (const auto& v : *it) {
    if (!v.is_string()) throw Error(ErrorCode::invalid_argument, std::string("'") + key + "' must hold strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::size_t count_param(const httplib::Request& req, const char* key, std::size_t fallback) {
  if (!req.has_param(key)) return fallback;
  auto text = req.get_param_value(key);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::invalid_argument, std::string("'") + key + "' must be a non-negative integer");
  }
  return value;
}

Json with_trace(Json body, const Json& trace = Json::array()) {
  body["trace"] = trace;
  return body;
}

Json items_json(const std::vector<curation::ReviewItem>& items) {
  Json list = Json::array();
  for (const auto& i : items) list.push_back(to_json(i));
  return with_trace(Json{{"items", std::move(list)}});
}

// Runs a handler, turning exceptions into JSON error bodies.
template <typename Fn>
httplib::Server::Handler guarded(Fn fn) {
  return [fn](const httplib::Request& req, httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const Error& e) {
      reply_error(res, e.code(), e.what());
    } catch (const json::exception& e) {
      reply_error(res, ErrorCode::invalid_argument, e.what());
    } catch (const std::exception& e) {
      reply(res, 500, Json{{"error", "Internal"}, {"message", e.what()}, {"trace", Json::array()}});
    }
  };
}

}  // namespace

int http_status(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::not_found:
      return 404;
    case ErrorCode::wrong_state:
    case ErrorCode::revision_conflict:
    case ErrorCode::already_decided:
    case ErrorCode::unexpected_symptom:
    case ErrorCode::invalid_transition:
      return 409;
    case ErrorCode::graph_not_loaded:
      return 503;
    case ErrorCode::augmenter_unavailable:
    case ErrorCode::augmenter_protocol_error:
    case ErrorCode::scorer_unavailable:
      return 502;
    case ErrorCode::io_error:
    case ErrorCode::integrity_violation:
      return 500;
    default:
      return 400;
  }
}

struct HttpServer::Impl {
  TriageService& service;
  httplib::Server server;

  explicit Impl(TriageService& s) : service(s) { routes(); }

  void routes() {
    server.Post("/sessions", guarded([this](const auto& req, auto& res) {
      auto body = parse_body(req);
      auto text = body.contains("text") ? required_string(body, "text") : required_string(body, "intake");
      reply(res, 201, to_json(service.start_session(std::move(text))));
    }));
    server.Post(R"(/sessions/([^/]+)/answer)", guarded([this](const auto& req, auto& res) {
      auto body = parse_body(req);
      auto present = body.find("present");
      if (present == body.end() || !present->is_boolean()) {
        throw Error(ErrorCode::invalid_argument, "missing boolean field 'present'");
      }
      std::optional<std::string> key;
      if (body.contains("idempotency_key")) key = required_string(body, "idempotency_key");
      reply(res, 200, to_json(service.answer(req.matches[1], required_string(body, "symptom"),
                                             present->template get<bool>(), key)));
    }));
    server.Post(R"(/sessions/([^/]+)/close)", guarded([this](const auto& req, auto& res) {
      reply(res, 200, to_json(service.close_session(req.matches[1])));
    }));
    server.Get(R"(/sessions/([^/]+))", guarded([this](const auto& req, auto& res) {
      reply(res, 200, to_json(service.session(req.matches[1])));
    }));
    server.Post("/diagnose", guarded([this](const auto& req, auto& res) {
      auto body = parse_body(req);
      std::string text = body.contains("text") ? required_string(body, "text") : std::string();
      reply(res, 200, to_json(service.diagnose(string_list(body, "symptoms"), text)));
    }));
    server.Post("/ingest", guarded([this](const auto& req, auto& res) {
      auto body = parse_body(req);
      auto docs = body.find("documents");
      if (docs == body.end() || !docs->is_array()) {
        throw Error(ErrorCode::invalid_argument, "missing array field 'documents'");
      }
      std::vector<ingest::Document> parsed;
      for (const auto& d : *docs) {
        if (!d.is_object()) throw Error(ErrorCode::invalid_argument, "documents must be objects");
        parsed.push_back({required_string(d, "id"), required_string(d, "text"),
                          d.contains("source") ? required_string(d, "source") : std::string()});
      }
      reply(res, 200, with_trace(to_json(service.ingest(parsed))));
    }));
    server.Get("/graph/export", guarded([this](const auto&, auto& res) {
      res.status = 200;
      res.set_content(service.export_graph(), kJson);
    }));
    server.Get("/review/queue", guarded([this](const auto& req, auto& res) {
      bool all = req.has_param("all") && req.get_param_value("all") != "0";
      auto items = service.review_items(all);
      std::erase_if(items, [&](const curation::ReviewItem& item) {
        if (req.has_param("provenance") &&
            kg::to_string(item.proposed_by) != req.get_param_value("provenance")) {
          return true;
        }
        return req.has_param("predicate") &&
               item.triple.predicate.str() != req.get_param_value("predicate");
      });
      auto total = items.size();
      auto offset = std::min<std::size_t>(count_param(req, "offset", 0), total);
      auto limit = count_param(req, "limit", total);
      std::vector<curation::ReviewItem> page(items.begin() + offset,
                                             items.begin() + offset + std::min(limit, total - offset));
      auto body = items_json(page);
      body["total"] = total;
      body["offset"] = offset;
      reply(res, 200, body);
    }));
    server.Get(R"(/review/([^/]+))", guarded([this](const auto& req, auto& res) {
      auto detail = service.review_item(req.matches[1]);
      Json body{{"item", to_json(detail.item)}};
      if (detail.source_text) {
        body["source_text"] = *detail.source_text;
      } else {
        body["source_text"] = nullptr;
      }
      reply(res, 200, with_trace(std::move(body)));
    }));
    server.Post("/review/enqueue", guarded([this](const auto& req, auto& res) {
      auto body = parse_body(req);
      auto actor = body.contains("actor") ? required_string(body, "actor") : std::string("gateway");
      if (body.value("all_extracted", false)) {
        reply(res, 200, items_json(service.enqueue_extracted(actor)));
      } else {
        reply(res, 200, items_json(service.enqueue(string_list(body, "relation_ids"), actor)));
      }
    }));
    server.Post(R"(/review/([^/]+)/verdict)", guarded([this](const auto& req, auto& res) {
      auto body = parse_body(req);
      std::optional<std::uint64_t> revision;
      if (auto it = body.find("expected_revision"); it != body.end()) {
        if (!it->is_number_unsigned()) {
          throw Error(ErrorCode::invalid_argument, "'expected_revision' must be a non-negative integer");
        }
        revision = it->template get<std::uint64_t>();
      }
      std::optional<std::string> note;
      if (body.contains("note")) note = required_string(body, "note");
      auto item = service.verdict(req.matches[1], curation::parse_verdict(required_string(body, "verdict")),
                                  required_string(body, "reviewer"), revision, std::move(note));
      reply(res, 200, with_trace(Json{{"item", to_json(item)}}));
    }));
    server.Get("/healthz", guarded([this](const auto&, auto& res) {
      reply(res, 200, Json{{"status", "ok"},
                           {"graph_loaded", service.graph_loaded()},
                           {"graph_version", service.graph()->version()},
                           {"trace", Json::array()}});
    }));
    server.Get("/stats", guarded([this](const auto&, auto& res) { reply(res, 200, service.stats()); }));
  }
};

HttpServer::HttpServer(TriageService& service) : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::run() { return impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace kgtriage::gateway
