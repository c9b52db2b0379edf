#pragma once

#include <memory>
#include <string>

#include "kgtriage/error.hpp"
#include "kgtriage/gateway/service.hpp"

namespace kgtriage::gateway {

// HTTP status for an error code: 404 missing, 409 conflicts and wrong state,
// 503 no graph, 502 upstream failures, 500 internal, 400 everything else.
int http_status(ErrorCode code) noexcept;

// JSON over HTTP in front of a TriageService:
//   POST /sessions                     {"text"}
//   POST /sessions/{id}/answer         {"symptom", "present", "idempotency_key"?}
//   GET  /sessions/{id}
//   POST /sessions/{id}/close
//   POST /diagnose                     {"symptoms":[...], "text"?}
//   POST /ingest                       {"documents":[{"id","text","source"?}]}
//   GET  /graph/export
//   GET  /review/queue                 ?all=1&provenance=&predicate=&offset=&limit=
//   GET  /review/{item}                item plus its source chunk text
//   POST /review/enqueue               {"relation_ids":[...]} | {"all_extracted":true}
//   POST /review/{item}/verdict        {"verdict","reviewer","expected_revision"?,"note"?}
//   GET  /healthz
//   GET  /stats
class HttpServer {
 public:
  explicit HttpServer(TriageService& service);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds; port 0 picks a free port. Returns the bound port, or -1.
  int bind(const std::string& host, int port);
  // Serves until stop(). Call after bind().
  bool run();
  void stop();
  // Blocks until the server accepts connections.
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace kgtriage::gateway
