#pragma once

#include <memory>
#include <mutex>
#include <type_traits>
#include <utility>

#include "kgtriage/kg/graph.hpp"

namespace kgtriage::kg {

// Many readers, one writer. Readers take an immutable snapshot; a writer
// mutates a private copy which is published only if the mutation returns
// normally and the invariants still hold.
class SharedGraph {
 public:
  explicit SharedGraph(KnowledgeGraph graph = {})
      : current_(std::make_shared<const KnowledgeGraph>(std::move(graph))) {}

  SharedGraph(const SharedGraph&) = delete;
  SharedGraph& operator=(const SharedGraph&) = delete;

  std::shared_ptr<const KnowledgeGraph> snapshot() const {
    std::lock_guard lock(publish_mu_);
    return current_;
  }

  template <typename Fn>
  auto write(Fn&& fn) {
    std::lock_guard writer(writer_mu_);
    auto draft = std::make_shared<KnowledgeGraph>(*snapshot());
    if constexpr (std::is_void_v<std::invoke_result_t<Fn, KnowledgeGraph&>>) {
      std::forward<Fn>(fn)(*draft);
      publish(std::move(draft));
    } else {
      auto result = std::forward<Fn>(fn)(*draft);
      publish(std::move(draft));
      return result;
    }
  }

  void replace(KnowledgeGraph graph) {
    std::lock_guard writer(writer_mu_);
    publish(std::make_shared<KnowledgeGraph>(std::move(graph)));
  }

 private:
  void publish(std::shared_ptr<KnowledgeGraph> draft) {
    draft->check_invariants();
    std::lock_guard lock(publish_mu_);
    current_ = std::move(draft);
  }

  mutable std::mutex publish_mu_;
  std::mutex writer_mu_;
  std::shared_ptr<const KnowledgeGraph> current_;
};

}  // namespace kgtriage::kg
