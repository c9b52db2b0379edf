#include "kgtriage/gateway/session.hpp"

#include <cstdio>
#include <map>

#include "kgtriage/engine/diagnose.hpp"
#include "kgtriage/engine/query.hpp"
#include "kgtriage/error.hpp"

namespace kgtriage::gateway {
namespace {

constexpr std::pair<SessionState, std::string_view> kStateNames[] = {
    {SessionState::intake, "intake"},         {SessionState::clarifying, "clarifying"},
    {SessionState::decided, "decided"},       {SessionState::referred, "referred"},
    {SessionState::consulting, "consulting"}, {SessionState::final, "final"},
    {SessionState::closed, "closed"},
};

std::string label_of(const kg::KnowledgeGraph& graph, const std::string& id) {
  const auto* e = graph.find_entity(id);
  return e != nullptr ? e->label : id;
}

std::string describe(const kg::KnowledgeGraph& graph, const engine::ScoredDiagnosis& d) {
  char conf[32];
  std::snprintf(conf, sizeof conf, "%.2f", d.confidence);
  return label_of(graph, d.diagnosis_id) + " (confidence " + conf + ")";
}

void say(Session& s, Speaker who, std::string text, std::int64_t ts) {
  s.transcript.push_back({s.transcript.size() + 1, who, std::move(text), ts});
}

void log(Session& s, std::string from, std::string to, std::string action, std::string detail) {
  s.trace.push_back({s.trace.size() + 1, std::move(from), std::move(to), std::move(action),
                     std::move(detail)});
}

void move_to(Session& s, SessionState to) {
  if (!can_transition(s.state, to)) {
    throw Error(ErrorCode::wrong_state, "session " + s.session_id + " cannot go from " +
                                            std::string(to_string(s.state)) + " to " +
                                            std::string(to_string(to)));
  }
  log(s, "session", "session", "transition",
      std::string(to_string(s.state)) + "->" + std::string(to_string(to)));
  s.state = to;
}

void require(const Session& s, SessionState expected) {
  if (s.state != expected) {
    throw Error(ErrorCode::wrong_state, "session " + s.session_id + " is " +
                                            std::string(to_string(s.state)) + ", expected " +
                                            std::string(to_string(expected)));
  }
}

void rank(Session& s, const SessionContext& ctx) {
  s.gp_ranking = engine::score(ctx.roster.gp(), s.query, ctx.graph, ctx.engine);
}

void decide(Session& s, const SessionContext& ctx) {
  auto outcome = engine::diagnose(s.query, ctx.engine, ctx.roster, ctx.graph);
  s.pending_question.reset();
  if (outcome.kind == engine::OutcomeKind::gp_direct) {
    move_to(s, SessionState::decided);
    for (const auto& t : outcome.trace) log(s, t.from, t.to, t.action, t.detail);
    say(s, Speaker::gp, "Diagnosis: " + describe(ctx.graph, outcome.final), ctx.now_ms);
  } else {
    move_to(s, SessionState::referred);
    std::string targets;
    for (auto sp : outcome.decision.target_specialties) {
      if (!targets.empty()) targets += ", ";
      targets += kg::to_string(sp);
    }
    say(s, Speaker::system,
        "Referred to " + targets + " (" + std::string(engine::to_string(outcome.decision.reason)) + ")",
        ctx.now_ms);
    for (const auto& t : outcome.trace) log(s, t.from, t.to, t.action, t.detail);
    move_to(s, SessionState::consulting);
    for (const auto& r : outcome.consultant_results) {
      auto top = r.results.empty() ? std::string("no candidates") : describe(ctx.graph, r.results.front());
      say(s, Speaker::consultant, r.agent_id + ": " + top, ctx.now_ms);
    }
    move_to(s, SessionState::final);
    say(s, Speaker::consultant, "Final diagnosis: " + describe(ctx.graph, outcome.final), ctx.now_ms);
  }
  s.outcome = std::move(outcome);
}

// Asks or decides. Expects the ranking to be current.
void advance(Session& s, const SessionContext& ctx) {
  bool confident = !s.gp_ranking.empty() && s.gp_ranking.front().confidence >= ctx.engine.tau;
  if (confident || s.questions_asked >= ctx.max_questions) {
    decide(s, ctx);
    return;
  }
  if (s.state == SessionState::intake) move_to(s, SessionState::clarifying);
  next_question(s, ctx);
}

}  // namespace

std::string_view to_string(SessionState s) noexcept {
  for (const auto& [v, name] : kStateNames) {
    if (v == s) return name;
  }
  return "?";
}

std::string_view to_string(Speaker s) noexcept {
  switch (s) {
    case Speaker::patient: return "patient";
    case Speaker::gp: return "gp";
    case Speaker::consultant: return "consultant";
    case Speaker::system: return "system";
  }
  return "?";
}

SessionState parse_session_state(std::string_view text) {
  for (const auto& [v, name] : kStateNames) {
    if (name == text) return v;
  }
  throw Error(ErrorCode::schema_violation, "unknown session state '" + std::string(text) + "'");
}

bool can_transition(SessionState from, SessionState to) noexcept {
  using S = SessionState;
  switch (from) {
    case S::intake:
      return to == S::clarifying || to == S::decided || to == S::referred;
    case S::clarifying:
      return to == S::clarifying || to == S::decided || to == S::referred;
    case S::referred:
      return to == S::consulting;
    case S::consulting:
      return to == S::final;
    case S::decided:
    case S::final:
      return to == S::closed;
    case S::closed:
      return false;
  }
  return false;
}

std::optional<std::string> select_discriminator(const Session& session,
                                                const SessionContext& ctx) {
  if (session.gp_ranking.size() < 2) return std::nullopt;
  std::map<std::string, std::size_t> counts;
  for (const auto& cand : session.gp_ranking) {
    for (const auto& sym : kg::symptoms_of(ctx.graph, cand.diagnosis_id, ctx.engine.scoring_statuses)) {
      if (session.query.symptom_ids.contains(sym) || session.asked.contains(sym)) continue;
      ++counts[sym];
    }
  }
  std::optional<std::string> best;
  std::size_t best_count = 0;
  for (const auto& [sym, n] : counts) {  // ascending id, so ties keep the smaller
    if (n == session.gp_ranking.size()) continue;
    if (n > best_count) {
      best = sym;
      best_count = n;
    }
  }
  return best;
}

Session start_session(std::string session_id, std::string intake_text,
                      const SessionContext& ctx) {
  Session s;
  s.session_id = std::move(session_id);
  s.query = engine::make_query(s.session_id, std::move(intake_text), ctx.symptom_lexicon, ctx.graph);
  say(s, Speaker::patient, s.query.raw_text, ctx.now_ms);
  std::string found;
  for (const auto& id : s.query.symptom_ids) {
    if (!found.empty()) found += ',';
    found += id;
  }
  log(s, "patient", "gp", "intake", found);
  rank(s, ctx);
  advance(s, ctx);
  return s;
}

std::optional<std::string> next_question(Session& session, const SessionContext& ctx) {
  require(session, SessionState::clarifying);
  if (session.pending_question) return session.pending_question;
  std::optional<std::string> q;
  if (session.questions_asked < ctx.max_questions) q = select_discriminator(session, ctx);
  if (!q) {
    decide(session, ctx);
    return std::nullopt;
  }
  // Each question after the first is another clarifying round.
  if (session.questions_asked > 0) move_to(session, SessionState::clarifying);
  session.pending_question = *q;
  session.asked.insert(*q);
  ++session.questions_asked;
  log(session, "gp", "patient", "ask", *q);
  say(session, Speaker::gp, "Do you have " + label_of(ctx.graph, *q) + "?", ctx.now_ms);
  return q;
}

void answer(Session& session, std::string_view symptom_id, bool present,
            const SessionContext& ctx) {
  require(session, SessionState::clarifying);
  auto id = kg::canonical_id(symptom_id);
  if (!session.pending_question || *session.pending_question != id) {
    throw Error(ErrorCode::unexpected_symptom,
                "'" + std::string(symptom_id) + "' is not the pending question" +
                    (session.pending_question ? " (" + *session.pending_question + ")" : ""));
  }
  session.pending_question.reset();
  if (present) {
    session.query.symptom_ids.insert(id);
  } else {
    session.denied.insert(id);
  }
  log(session, "patient", "gp", "answer", id + (present ? "=yes" : "=no"));
  say(session, Speaker::patient, present ? "yes" : "no", ctx.now_ms);
  rank(session, ctx);
  advance(session, ctx);
}

void close(Session& session) {
  if (session.state != SessionState::decided && session.state != SessionState::final) {
    throw Error(ErrorCode::wrong_state,
                "session " + session.session_id + " is " +
                    std::string(to_string(session.state)) + " and cannot be closed");
  }
  move_to(session, SessionState::closed);
}

}  // namespace kgtriage::gateway
