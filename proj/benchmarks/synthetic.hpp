#pragma once

#include <random>
#include <string>
#include <vector>

#include "kgtriage/ingest/lexicon.hpp"
#include "kgtriage/kg/graph.hpp"

namespace kgtriage::bench {

inline std::string disease_label(int i) { return "Condition " + std::to_string(1000 + i); }
inline std::string symptom_label(int i) { return "marker sign " + std::to_string(1000 + i); }

// Diseases spread over the five specialties, each with `per_disease` random
// symptoms, all approved.
inline kg::KnowledgeGraph synthetic_graph(int diseases, int symptoms, int per_disease) {
  const kg::Specialty specialties[] = {kg::Specialty::general, kg::Specialty::cardiology, kg::Specialty::neurology,
                                       kg::Specialty::endocrinology, kg::Specialty::rheumatology};
  kg::KnowledgeGraph g;
  std::vector<std::string> sym;
  for (int i = 0; i < symptoms; ++i) {
    sym.push_back(g.upsert_entity(symptom_label(i), kg::Category::symptom, kg::Specialty::general));
  }
  std::mt19937_64 rng(42);
  for (int i = 0; i < diseases; ++i) {
    auto d = g.upsert_entity(disease_label(i), kg::Category::disease, specialties[i % 5]);
    for (int k = 0; k < per_disease; ++k) {
      const auto& s = sym[rng() % sym.size()];
      if (g.find_live({d, "has-symptom", s})) continue;
      g.add_relation(d, kg::Predicate::Kind::has_symptom, s, kg::Provenance::seed, kg::Status::approved);
    }
  }
  return g;
}

inline ingest::Lexicon synthetic_lexicon(int diseases, int symptoms) {
  ingest::Lexicon lex;
  for (int i = 0; i < diseases; ++i) {
    lex.add(disease_label(i), {disease_label(i), kg::Category::disease, kg::Specialty::general});
  }
  for (int i = 0; i < symptoms; ++i) {
    lex.add(symptom_label(i), {symptom_label(i), kg::Category::symptom, kg::Specialty::general});
  }
  return lex;
}

inline std::string synthetic_text(int diseases, int symptoms, int sentences) {
  std::mt19937_64 rng(7);
  std::string text;
  for (int k = 0; k < sentences; ++k) {
    text += disease_label(static_cast<int>(rng() % diseases)) + " presents with " +
            symptom_label(static_cast<int>(rng() % symptoms)) + " and some other findings. ";
    if (k % 5 == 4) text += "\n\n";
  }
  return text;
}

}  // namespace kgtriage::bench
