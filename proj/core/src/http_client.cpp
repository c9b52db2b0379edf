#include "http_client.hpp"

#include <httplib.h>

namespace kgtriage::detail {

bool split_url(const std::string& url, HttpTarget& out) {
  constexpr std::string_view kScheme = "http://";
  if (url.rfind(kScheme, 0) != 0) return false;
  auto slash = url.find('/', kScheme.size());
  out.origin = url.substr(0, slash);
  out.path = slash == std::string::npos ? "/" : url.substr(slash);
  return out.origin.size() > kScheme.size();
}

HttpReply post_json(const HttpTarget& target, const std::string& body,
                    std::chrono::milliseconds timeout) {
  httplib::Client client(target.origin);
  auto secs = timeout.count() / 1000;
  auto usecs = (timeout.count() % 1000) * 1000;
  client.set_connection_timeout(secs, usecs);
  client.set_read_timeout(secs, usecs);
  client.set_write_timeout(secs, usecs);

  HttpReply reply;
  auto res = client.Post(target.path, body, "application/json");
  if (!res) {
    reply.error = httplib::to_string(res.error());
    return reply;
  }
  reply.reached = true;
  reply.status = res->status;
  reply.body = res->body;
  return reply;
}

}  // namespace kgtriage::detail
