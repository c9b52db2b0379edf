#include "criteria.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <random>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kgtriage/curation/review_queue.hpp"
#include "kgtriage/engine/aggregate.hpp"
#include "kgtriage/engine/diagnose.hpp"
#include "kgtriage/engine/referral.hpp"
#include "kgtriage/error.hpp"
#include "kgtriage/gateway/service.hpp"
#include "kgtriage/ingest/lexicon.hpp"
#include "kgtriage/ingest/segment.hpp"
#include "kgtriage/kg/snapshot.hpp"
#include "support/oracles.hpp"
#include "support/random_graph.hpp"
#include "support/seed.hpp"

namespace kgtriage::acceptance {
namespace {

using engine::ScoredDiagnosis;
using fixtures::Rng;

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

std::string referral_grid() {
  kg::KnowledgeGraph g;
  g.upsert_entity("influenza", kg::Category::disease, kg::Specialty::general);
  g.upsert_entity("gout", kg::Category::disease, kg::Specialty::rheumatology);
  const double tau = 0.7;
  int cases = 0;
  for (int i = 0; i <= 10; ++i) {
    const double c = i / 10.0;
    for (bool in : {false, true}) {
      for (auto rule : {engine::SpecialistRule::explicit_list, engine::SpecialistRule::specialty_not_general}) {
        engine::EngineConfig config;
        config.tau = tau;
        config.specialist_rule = rule;
        std::string id = "influenza";
        if (rule == engine::SpecialistRule::explicit_list) {
          if (in) config.specialist_ids = {"influenza"};
        } else if (in) {
          id = "gout";
        }
        const bool expected = c < tau || in;
        auto d = engine::decide_referral({{id, c}}, config, g);
        const auto want = c < tau ? engine::ReferralReason::below_threshold
                          : in    ? engine::ReferralReason::specialist_diagnosis
                                  : engine::ReferralReason::none;
        const bool reason_ok = d.reason == want;
        if (d.referral != expected || !reason_ok) {
          std::ostringstream out;
          out << "confidence " << c << (in ? " in" : " not in") << " X_s, rule "
              << engine::to_string(rule) << ": referral " << d.referral;
          return out.str();
        }
        ++cases;
      }
    }
  }
  return cases == 44 ? "" : "ran " + std::to_string(cases) + " cases";
}

std::vector<std::vector<ScoredDiagnosis>> random_results(Rng& rng, std::size_t agents) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::vector<ScoredDiagnosis>> results(agents);
  for (auto& list : results) {
    for (int k = 0; k < 8; ++k) {
      if (rng() % 2) list.push_back({"d" + std::to_string(k), unit(rng)});
    }
  }
  if (std::all_of(results.begin(), results.end(), [](const auto& l) { return l.empty(); })) {
    results[0].push_back({"d0", unit(rng)});
  }
  return results;
}

std::string aggregation() {
  Rng rng(1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const auto n = 1 + pick(rng, 5);
    std::vector<double> w(n);
    double sum = 0;
    for (auto& x : w) sum += (x = unit(rng) + 1e-3);
    for (auto& x : w) x /= sum;
    auto results = random_results(rng, n);
    auto oracle = fixtures::naive_weighted(results, w);
    auto r = engine::aggregate(results, w);
    if (r.combined.size() != oracle.size()) return "instance " + std::to_string(i) + ": candidate count";
    for (const auto& c : r.combined) {
      if (std::abs(c.confidence - oracle.at(c.diagnosis_id)) > 1e-12) {
        return "instance " + std::to_string(i) + ": " + c.diagnosis_id + " off by more than 1e-12";
      }
    }
    if (r.best.diagnosis_id != fixtures::naive_argmax(oracle)) return "instance " + std::to_string(i) + ": argmax";

    std::map<std::string, double> mean;
    for (const auto& list : results) {
      for (const auto& d : list) mean[d.diagnosis_id] += d.confidence;
    }
    for (auto& [id, v] : mean) v /= static_cast<double>(n);
    for (const auto& c : engine::aggregate_uniform(results).combined) {
      if (c.confidence != mean.at(c.diagnosis_id)) return "instance " + std::to_string(i) + ": uniform mean";
    }
  }
  for (int i = 0; i < 1000; ++i) {
    const auto n = 1 + pick(rng, 5);
    std::vector<double> w(n, 1.0 / static_cast<double>(n));
    double total = 0;
    for (double x : w) total += x;
    if (std::abs(total - 1.0) > 1e-9) continue;
    auto results = random_results(rng, n);
    const double s = std::uniform_real_distribution<double>(1e-3, 1.0)(rng);
    auto scaled = results;
    for (auto& list : scaled) {
      for (auto& d : list) d.confidence *= s;
    }
    if (engine::aggregate(results, w).best.diagnosis_id != engine::aggregate(scaled, w).best.diagnosis_id) {
      return "scaling instance " + std::to_string(i) + " changed the argmax";
    }
  }
  return "";
}

std::string diagnose_oracle() {
  const auto graph = fixtures::seed_graph();
  const std::vector<std::string> pool{"fever",      "cough",    "fatigue",   "shortness-of-breath",
                                      "chest-pain", "headache", "nausea",    "joint-pain",
                                      "increased-thirst", "tremor"};
  for (const auto& s : pool) {
    if (!graph.find_entity(s)) return "seed graph lacks symptom " + s;
  }
  engine::EngineConfig config;
  auto roster = engine::Roster::standard();
  std::size_t queries = 0;
  auto check = [&](std::set<std::string> symptoms) -> std::string {
    engine::DiagnosticQuery q;
    q.query_id = "q" + std::to_string(queries++);
    q.symptom_ids = symptoms;
    auto actual = engine::diagnose(q, config, roster, graph);
    auto diff = fixtures::compare_outcome(actual, fixtures::brute_force_diagnose(graph, symptoms, config));
    return diff.empty() ? "" : q.query_id + ": " + diff;
  };
  const auto n = pool.size();
  for (std::size_t a = 0; a < n; ++a) {
    if (auto e = check({pool[a]}); !e.empty()) return e;
    for (std::size_t b = a + 1; b < n; ++b) {
      if (auto e = check({pool[a], pool[b]}); !e.empty()) return e;
      for (std::size_t c = b + 1; c < n; ++c) {
        if (auto e = check({pool[a], pool[b], pool[c]}); !e.empty()) return e;
      }
    }
  }
  return queries == 175 ? "" : "ran " + std::to_string(queries) + " queries";
}

std::string extraction() {
  Rng rng(4);
  const std::vector<std::string> words{"a",    "ab",  "abc",  "b",  "ba",  "c",     "café", "x1",
                                       "zz",   "type", "2",   "pain", "of", "chest", "ß",    "o'neil"};
  ingest::Lexicon lex;
  for (int i = 0; lex.size() < 50; ++i) {
    std::string surface = words[pick(rng, words.size())];
    for (auto k = pick(rng, 4); k > 0; --k) surface += " " + words[pick(rng, words.size())];
    lex.add(surface, {"L" + std::to_string(i), kg::Category::symptom, kg::Specialty::general});
  }
  const std::vector<std::string> seps{" ", "  ", ", ", "-", ".", "\n", "", "\t", "; "};
  for (int round = 0; round < 1000; ++round) {
    std::string text;
    for (auto k = 10 + pick(rng, 60); k > 0; --k) {
      auto w = words[pick(rng, words.size())];
      if (pick(rng, 4) == 0) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
      text += w + seps[pick(rng, seps.size())];
    }
    std::vector<fixtures::SpanMatch> actual;
    for (const auto& m : lex.match(text)) actual.push_back({m.begin, m.end, m.label});
    if (actual != fixtures::brute_force_mentions(text, lex)) return "chunk " + std::to_string(round) + ": " + text;
  }
  return "";
}

std::string segmentation() {
  Rng rng(5);
  const std::vector<std::string> pieces{"word", " ",  "Sentence ends. ", "\n\n", "héllo", "x",
                                        "?! ",  "\n", "long-hyphenated-token", "\t", "€", "Done! "};
  for (int i = 0; i < 1000; ++i) {
    const auto length = pick(rng, 10001);
    std::string text;
    while (text.size() < length) {
      auto p = pieces[pick(rng, pieces.size())];
      if (text.size() + p.size() > length) p = std::string(length - text.size(), 'y');
      text += p;
    }
    const auto limit = 8 + pick(rng, 1993);
    ingest::Document doc{"d" + std::to_string(i), text, ""};
    if (text.empty()) {
      try {
        ingest::segment_document(doc, limit);
        return "empty document accepted";
      } catch (const Error& e) {
        if (e.code() != ErrorCode::empty_document) return "empty document: wrong error";
      }
      continue;
    }
    auto chunks = ingest::segment_document(doc, limit);
    std::string joined;
    std::size_t pos = 0;
    for (const auto& c : chunks) {
      joined += c.text;
      if (c.begin != pos || c.end != fixtures::naive_segment_cut(text, pos, limit)) {
        return "doc " + std::to_string(i) + ": boundary at " + std::to_string(pos);
      }
      if (c.text.size() > limit) return "doc " + std::to_string(i) + ": chunk over budget";
      pos = c.end;
    }
    if (joined != text) return "doc " + std::to_string(i) + " not lossless";
  }
  return "";
}

std::set<kg::TripleKey> live_keys(const kg::KnowledgeGraph& g) {
  std::set<kg::TripleKey> keys;
  for (const auto& [id, r] : g.relations()) {
    if (kg::is_live(r.status)) keys.insert(kg::key_of(r));
  }
  return keys;
}

std::string expansion_algebra() {
  Rng rng(6);
  for (int i = 0; i < 500; ++i) {
    auto g = fixtures::random_graph(rng, {4 + pick(rng, 16), pick(rng, 40)});
    auto set = fixtures::random_approved_set(rng, g, pick(rng, 10));
    auto once = kg::expand_graph(g, set);
    auto twice = kg::expand_graph(once, set);
    const auto tag = "pair " + std::to_string(i) + ": ";
    if (!once.same_content(twice)) return tag + "not idempotent";
    for (const auto& [id, e] : g.entities()) {
      const auto* after = once.find_entity(id);
      if (!after || !std::includes(after->aliases.begin(), after->aliases.end(), e.aliases.begin(), e.aliases.end())) {
        return tag + "lost entity " + id;
      }
    }
    auto before = live_keys(g);
    auto after = live_keys(once);
    if (!std::includes(after.begin(), after.end(), before.begin(), before.end())) return tag + "lost a triple";
    for (const auto& r : set.relations) {
      auto live = once.find_live(kg::key_of(r));
      if (!live || once.relation(*live).status != kg::Status::approved) return tag + "missing approved " + r.id;
    }
    once.check_invariants();
  }

  kg::KnowledgeGraph g;
  const std::vector<std::string> names{"a", "b", "c", "d", "e"};
  for (const auto& n : names) g.upsert_entity(n, kg::Category::symptom, kg::Specialty::general);
  for (int history = 0; history < 200; ++history) {
    curation::ReviewQueue queue([] { return std::int64_t{0}; });
    std::set<std::string> approved;
    std::vector<curation::KnowledgeDelta> deltas;
    int next = 0;
    for (auto steps = 10 + pick(rng, 60); steps > 0; --steps) {
      auto roll = pick(rng, 4);
      if (roll == 0) {
        kg::RelationTriple t;
        t.id = "r" + std::to_string(next++);
        t.subject = names[pick(rng, names.size())];
        t.predicate = kg::Predicate::Kind::has_symptom;
        t.object = names[pick(rng, names.size())];
        t.provenance = kg::Provenance::lexicon_extractor;
        queue.enqueue({t});
      } else if (roll < 3) {
        auto pending = queue.pending();
        if (pending.empty()) continue;
        const auto& item = pending[pick(rng, pending.size())];
        auto v = roll == 1 ? curation::Verdict::approve : curation::Verdict::reject;
        queue.review(item.item_id, v, "reviewer", item.revision);
        if (v == curation::Verdict::approve) approved.insert(item.triple.id);
      } else {
        deltas.push_back(queue.build_delta(g));
      }
    }
    deltas.push_back(queue.build_delta(g));
    std::multiset<std::string> seen;
    std::uint64_t cursor = 0;
    for (const auto& d : deltas) {
      if (d.from_seq != cursor) return "history " + std::to_string(history) + ": delta ranges not contiguous";
      cursor = d.to_seq;
      for (const auto& t : d.approved_triples) seen.insert(t.id);
    }
    if (seen != std::multiset<std::string>(approved.begin(), approved.end())) {
      return "history " + std::to_string(history) + ": deltas do not partition the approvals";
    }
  }
  return "";
}

std::string persistence() {
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    auto g = fixtures::random_graph(rng, {1 + pick(rng, 30), pick(rng, 60)});
    auto first = kg::snapshot(g);
    if (kg::snapshot(kg::load(first)) != first) return "graph " + std::to_string(i) + " not byte-stable";
  }

  fixtures::TempDir dir;
  gateway::ServiceConfig config;
  config.data_dir = dir.path();
  auto clock = [] { return std::int64_t{1000}; };
  std::string export_before;
  std::uint64_t version_before = 0;
  auto stale = dir.path() / "graph.stale";
  {
    gateway::TriageService svc(config, clock);
    svc.set_lexicon(fixtures::seed_lexicon());
    svc.set_patterns(fixtures::seed_patterns());
    svc.ingest(fixtures::seed_corpus());
    auto items = svc.enqueue_extracted();
    if (items.size() < 4) return "seed ingest queued too few triples";
    std::filesystem::copy_file(dir.path() / "graph.json", stale);
    svc.verdict(items[0].item_id, curation::Verdict::approve, "dr-a");
    svc.verdict(items[1].item_id, curation::Verdict::reject, "dr-b");
    svc.verdict(items[3].item_id, curation::Verdict::approve, "dr-a");
    export_before = svc.export_graph();
    version_before = svc.graph()->version();
  }
  {
    gateway::TriageService restarted(config, clock);
    if (restarted.graph()->version() != version_before) return "restart changed the graph version";
    if (restarted.export_graph() != export_before) return "restart changed the graph";
  }
  // Only the review log survives past the pre-review graph.
  std::filesystem::copy_file(stale, dir.path() / "graph.json", std::filesystem::copy_options::overwrite_existing);
  gateway::TriageService replayed(config, clock);
  if (replayed.graph()->version() != version_before) {
    return "replay reached version " + std::to_string(replayed.graph()->version()) + ", expected " +
           std::to_string(version_before);
  }
  if (replayed.export_graph() != export_before) return "replayed graph differs";
  return "";
}

std::string end_to_end() {
  if (fixtures::cli_path().empty()) return "CLI not built";
  fixtures::TempDir dir;
  const auto seed = fixtures::seed_dir();
  const auto cli = fixtures::cli_path() + " --data-dir '" + dir.path().string() + "'";
  auto ingest = fixtures::run_command(cli + " ingest '" + (seed / "corpus").string() + "' --lexicon '" +
                                      (seed / "lexicon.tsv").string() + "' --patterns '" +
                                      (seed / "patterns.tsv").string() + "' >/dev/null");
  if (ingest.exit_code != 0) return "ingest exited " + std::to_string(ingest.exit_code);
  auto run = fixtures::run_command(cli + " session --intake 'I have joint pain and morning stiffness'" +
                                   " --answer joint-swelling=yes");
  if (run.exit_code != 0) return "session exited " + std::to_string(run.exit_code);
  auto s = nlohmann::json::parse(run.out);

  const auto& trace = s["trace"];
  if (trace.empty() || trace[0]["action"] != "intake" || trace[0]["detail"] != "joint-pain,morning-stiffness") {
    return "intake did not resolve to the two symptoms";
  }
  std::vector<nlohmann::json> asks, refers, transfers, diagnoses;
  for (const auto& t : trace) {
    if (t["action"] == "ask") asks.push_back(t);
    if (t["action"] == "refer") refers.push_back(t);
    if (t["action"] == "transfer") transfers.push_back(t);
    if (t["action"] == "diagnose") diagnoses.push_back(t);
  }
  if (asks.size() != 1) return "expected one clarifying question, saw " + std::to_string(asks.size());
  if (refers.size() != 1 || refers[0]["detail"] != "specialist-diagnosis") return "no specialist-diagnosis referral";
  if (transfers.size() != 1 || transfers[0]["to"] != "rheumatology") return "transfer did not go to rheumatology";
  if (diagnoses.size() != 1 || diagnoses[0]["from"] != "rheumatology") return "final diagnosis not by the consultant";
  if (s["state"] != "final") return "session ended in state " + s["state"].get<std::string>();
  const auto& outcome = s["outcome"];
  if (outcome["kind"] != "consultant-single") return "outcome kind " + outcome["kind"].dump();
  if (outcome["final"]["confidence"] != 1.0) return "final confidence " + outcome["final"]["confidence"].dump();
  if (diagnoses[0]["detail"] != outcome["final"]["diagnosis_id"]) return "trace and outcome disagree";
  return "";
}

std::string capacity() {
  constexpr int kDiseases = 400;
  constexpr int kSymptoms = 240;
  const kg::Specialty specialties[] = {kg::Specialty::general, kg::Specialty::cardiology, kg::Specialty::neurology,
                                       kg::Specialty::endocrinology, kg::Specialty::rheumatology};
  auto disease_label = [](int i) { return "Condition " + std::to_string(1000 + i); };
  auto symptom_label = [](int i) { return "marker sign " + std::to_string(1000 + i); };
  ingest::Lexicon lex;
  for (int i = 0; i < kDiseases; ++i) {
    lex.add(disease_label(i), {disease_label(i), kg::Category::disease, specialties[i % 5]});
  }
  for (int i = 0; i < kSymptoms; ++i) {
    lex.add(symptom_label(i), {symptom_label(i), kg::Category::symptom, kg::Specialty::general});
  }
  Rng rng(9);
  std::vector<ingest::Document> docs;
  for (int i = 0; i < kDiseases; ++i) {
    std::string text;
    for (int k = 0; k < 4; ++k) {
      text += disease_label(i) + " presents with " + symptom_label(static_cast<int>(pick(rng, kSymptoms))) + " and " +
              symptom_label(static_cast<int>(pick(rng, kSymptoms))) + ". ";
    }
    text += "\n\nClinicians should review " + disease_label(i) + " regularly.";
    docs.push_back({"doc-" + std::to_string(i), text, "generated"});
  }

  gateway::TriageService svc(gateway::ServiceConfig{.data_dir = {}});
  svc.set_lexicon(std::move(lex));
  svc.set_patterns(fixtures::seed_patterns());
  auto report = svc.ingest(docs);
  if (!report.errors.empty()) return std::to_string(report.errors.size()) + " documents failed";
  auto g = svc.graph();
  g->check_invariants();
  auto diseases = g->entity_ids(kg::Category::disease);
  if (diseases.size() < 362) return "only " + std::to_string(diseases.size()) + " diseases";
  for (const auto& d : diseases) {
    if (kg::symptoms_of(*g, d, {kg::Status::extracted}).empty()) return d + " has no symptoms";
  }
  if (kg::snapshot(kg::load(kg::snapshot(*g))) != kg::snapshot(*g)) return "capacity graph not byte-stable";
  return "";
}

}  // namespace

std::vector<Criterion> all_criteria() {
  return {
      {"referral-grid", 0.1, referral_grid},
      {"aggregation-equivalence", 1.0, aggregation},
      {"diagnose-oracle", 1.0, diagnose_oracle},
      {"extraction-oracle", 5.0, extraction},
      {"segmentation-lossless", 2.0, segmentation},
      {"expansion-algebra", 0, expansion_algebra},
      {"persistence-round-trip", 0, persistence},
      {"end-to-end-cli", 0, end_to_end},
      {"capacity", 60.0, capacity},
  };
}

}  // namespace kgtriage::acceptance
