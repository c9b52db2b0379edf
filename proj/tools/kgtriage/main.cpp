// kgtriage: batch and service entry point.
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "kgtriage/error.hpp"

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  for (char c : text) {
    if (c == ',') {
      if (!item.empty()) out.push_back(item);
      item.clear();
    } else {
      item += c;
    }
  }
  if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace kgtriage::cli;

  CLI::App app{"Knowledge-graph backed diagnostic triage"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--config", common.config_path, "key = value configuration file");
  app.add_option("--data-dir", common.data_dir, "data directory (overrides config and environment)");

  IngestArgs ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "ingest a directory of .txt documents");
  ingest_cmd->add_option("corpus-dir", ingest.corpus_dir)->required();
  ingest_cmd->add_option("--lexicon", ingest.lexicon, "lexicon TSV");
  ingest_cmd->add_option("--patterns", ingest.patterns, "relation pattern TSV");
  ingest_cmd->add_option("--max-chunk-chars", ingest.max_chunk_chars);
  ingest_cmd->add_option("--augmenter", ingest.augmenter, "augmenter endpoint URL");
  ingest_cmd->add_flag("--enqueue-extracted", ingest.enqueue_extracted,
                       "queue every extracted triple for review");

  std::string symptoms;
  std::string text;
  auto* diagnose_cmd = app.add_subcommand("diagnose", "one-shot diagnosis");
  diagnose_cmd->add_option("--symptoms", symptoms, "comma separated symptom ids or labels");
  diagnose_cmd->add_option("--text", text, "free text scanned for symptoms");

  std::string output;
  auto* export_cmd = app.add_subcommand("export-graph", "print the graph export document");
  export_cmd->add_option("-o,--output", output, "write to a file instead of stdout");

  ReviewArgs review;
  auto* review_cmd = app.add_subcommand("review", "expert review queue");
  review_cmd->require_subcommand(1);
  auto* list_cmd = review_cmd->add_subcommand("list", "pending items");
  list_cmd->add_flag("--all", review.all, "include decided items");
  auto* enqueue_cmd = review_cmd->add_subcommand("enqueue", "queue triples for review");
  enqueue_cmd->add_option("relation-ids", review.relation_ids);
  enqueue_cmd->add_flag("--all-extracted", review.all, "every extracted triple");
  for (const char* name : {"approve", "reject"}) {
    auto* cmd = review_cmd->add_subcommand(name, std::string(name) + " an item");
    cmd->add_option("item", review.item_id)->required();
    cmd->add_option("--reviewer", review.reviewer)->required();
    cmd->add_option("--revision", review.revision, "expected revision (default: current)");
    cmd->add_option("--note", review.note);
  }

  auto* serve_cmd = app.add_subcommand("serve", "run the HTTP gateway");
  auto* stats_cmd = app.add_subcommand("stats", "graph, review and session counts");

  SessionArgs session;
  auto* session_cmd = app.add_subcommand("session", "scripted diagnostic dialogue");
  session_cmd->add_option("--intake", session.intake, "initial complaint")->required();
  session_cmd->add_option("--answer", session.answers, "symptom=yes|no, in order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*ingest_cmd) return run_ingest(common, ingest, std::cout);
    if (*diagnose_cmd) return run_diagnose(common, split_list(symptoms), text, std::cout);
    if (*export_cmd) return run_export(common, output, std::cout);
    if (*review_cmd) {
      for (auto* sub : review_cmd->get_subcommands()) review.action = sub->get_name();
      return run_review(common, review, std::cout);
    }
    if (*serve_cmd) return run_serve(common, std::cerr);
    if (*stats_cmd) return run_stats(common, std::cout);
    if (*session_cmd) return run_session(common, session, std::cout);
  } catch (const kgtriage::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == kgtriage::ErrorCode::invalid_argument ? kUsage : kData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}
