#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "kgtriage/curation/review_queue.hpp"
#include "kgtriage/engine/types.hpp"
#include "kgtriage/error.hpp"
#include "kgtriage/gateway/session.hpp"
#include "kgtriage/ingest/pipeline.hpp"

// Wire shapes shared by the HTTP gateway and the CLI. Keys are emitted in a
// fixed order so equal values serialise to equal bytes.
namespace kgtriage::gateway {

using Json = nlohmann::ordered_json;

Json to_json(const engine::ScoredDiagnosis& d);
Json to_json(const engine::TraceEntry& t);
Json to_json(const std::vector<engine::TraceEntry>& trace);
Json to_json(const engine::DiagnosticQuery& q);
Json to_json(const engine::ReferralDecision& d);
Json to_json(const engine::TransferEnvelope& e);
Json to_json(const engine::DiagnosisOutcome& o);
Json to_json(const Session& s);
Json to_json(const curation::ReviewItem& item);
Json to_json(const ingest::IngestReport& report);

// {"error": "<ErrorName>", "message": ..., "trace": []}
Json error_json(ErrorCode code, std::string_view message);

}  // namespace kgtriage::gateway
