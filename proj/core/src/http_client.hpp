#pragma once

#include <chrono>
#include <string>
#include <utility>

// Minimal JSON-over-HTTP POST shared by the augmenter and remote scorer
// clients. Keeps cpp-httplib out of public headers.
namespace kgtriage::detail {

struct HttpTarget {
  std::string origin;  // "http://host:port"
  std::string path;    // "/..." (defaults to "/")
};

// Splits an http:// URL. Returns false for anything else.
bool split_url(const std::string& url, HttpTarget& out);

struct HttpReply {
  bool reached = false;  // false: connection/timeout failure
  int status = 0;
  std::string body;
  std::string error;  // transport error text when !reached
};

HttpReply post_json(const HttpTarget& target, const std::string& body,
                    std::chrono::milliseconds timeout);

}  // namespace kgtriage::detail
