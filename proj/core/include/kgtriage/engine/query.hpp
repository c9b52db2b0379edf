#pragma once

#include <string>
#include <string_view>

#include "kgtriage/engine/types.hpp"
#include "kgtriage/ingest/lexicon.hpp"
#include "kgtriage/kg/graph.hpp"

namespace kgtriage::engine {

// Lexicon of every symptom entity's label and aliases, extended with the
// symptom entries of `extra` whose surfaces are not already present.
ingest::Lexicon symptom_lexicon(const kg::KnowledgeGraph& graph,
                                const ingest::Lexicon* extra = nullptr);

// Builds q: symptom mentions in `raw_text` that resolve to symptom entities.
// Unresolvable mentions stay in raw_text only.
DiagnosticQuery make_query(std::string query_id, std::string raw_text,
                           const ingest::Lexicon& lexicon, const kg::KnowledgeGraph& graph);

}  // namespace kgtriage::engine
