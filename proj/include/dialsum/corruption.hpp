#pragma once

// Denoising-corruption planning for in-domain pretraining: word, span,
// pronoun, TF-IDF salience and entity masking, and their composition.

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "dialsum/corpus_io.hpp"
#include "dialsum/error.hpp"
#include "dialsum/text_core.hpp"

namespace dialsum {

enum class Objective { Word, Span, Pronoun, TfIdf, Entity };

inline std::string_view objective_name(Objective o) {
  switch (o) {
    case Objective::Word: return "word";
    case Objective::Span: return "span";
    case Objective::Pronoun: return "pronoun";
    case Objective::TfIdf: return "tfidf";
    case Objective::Entity: return "entity";
  }
  return "";
}

inline Objective parse_objective(std::string_view s) {
  const std::string lower = to_lower(trim(s));
  for (Objective o : {Objective::Word, Objective::Span, Objective::Pronoun, Objective::TfIdf, Objective::Entity}) {
    if (lower == objective_name(o)) return o;
  }
  throw validation_error("unknown objective \"" + std::string(s) + "\"");
}

struct CorruptionConfig {
  std::set<Objective> objectives{Objective::Word};
  double p_mask = 0.3;
  double lambda = 3.0;
  double p_mask_pronoun = 0.5;
  double tfidf_top_frac = 0.25;
  double p_mask_tfidf = 0.7;
  double p_mask_entity = 0.7;
  std::string mask_token = "<mask>";
  // Earlier objectives claim tokens first.
  std::vector<Objective> priority{Objective::Entity, Objective::Pronoun, Objective::TfIdf, Objective::Word,
                                  Objective::Span};

  bool has(Objective o) const { return objectives.count(o) > 0; }

  void validate() const {
    if (objectives.empty()) throw validation_error("no corruption objective selected");
    if (has(Objective::Word) && has(Objective::Span)) {
      throw validation_error("word and span objectives are mutually exclusive");
    }
    for (auto [name, p] : {std::pair{"p_mask", p_mask}, {"p_mask_pronoun", p_mask_pronoun},
                           {"tfidf_top_frac", tfidf_top_frac}, {"p_mask_tfidf", p_mask_tfidf},
                           {"p_mask_entity", p_mask_entity}}) {
      if (!(p >= 0.0 && p <= 1.0)) throw validation_error(std::string(name) + " must lie in [0, 1]");
    }
    if (!(lambda > 0.0)) throw validation_error("lambda must be positive");
    if (mask_token.empty()) throw validation_error("mask token must be non-empty");
    for (Objective o : objectives) {
      if (std::find(priority.begin(), priority.end(), o) == priority.end()) {
        throw validation_error("objective " + std::string(objective_name(o)) + " missing from priority order");
      }
    }
  }
};

inline bool is_pronoun(std::string_view word) {
  static const std::unordered_set<std::string> kPronouns = {
      "i",    "me",      "my",     "mine",   "myself", "you",     "your", "yours",  "yourself", "he",
      "him",  "his",     "himself", "she",   "her",    "hers",    "herself", "it",  "its",      "itself",
      "we",   "us",      "our",    "ours",   "ourselves", "they", "them", "their",  "theirs",   "themselves"};
  return kPronouns.count(to_lower(word)) > 0;
}

// Smallest integer >= x, tolerant of representation error (0.3 * 10).
inline size_t ceil_count(double x) { return static_cast<size_t>(std::ceil(x - 1e-9)); }

// ---------------------------------------------------------------------------
// TF-IDF

struct TfIdfModel {
  size_t doc_count = 0;
  std::map<std::string, size_t> df;

  // Smoothed idf: ln((1 + N) / (1 + df)) + 1.
  double idf(const std::string& term) const {
    auto it = df.find(term);
    const double d = it == df.end() ? 0.0 : static_cast<double>(it->second);
    return std::log((1.0 + static_cast<double>(doc_count)) / (1.0 + d)) + 1.0;
  }

  void add_document(std::string_view text) {
    std::set<std::string> terms;
    for (const Token& t : tokenize(text)) {
      if (t.is_word()) terms.insert(to_lower(t.text));
    }
    for (const std::string& term : terms) ++df[term];
    ++doc_count;
  }

  void merge(const TfIdfModel& other) {
    doc_count += other.doc_count;
    for (const auto& [term, n] : other.df) df[term] += n;
  }
};

inline TfIdfModel build_tfidf(const std::vector<Dialogue>& corpus) {
  if (corpus.empty()) throw validation_error("cannot build TF-IDF over an empty corpus");
  TfIdfModel model;
  for (const Dialogue& d : corpus) model.add_document(render(d));
  return model;
}

inline Json to_record(const TfIdfModel& m) {
  Json df = Json::object();
  for (const auto& [term, n] : m.df) df[term] = n;
  return Json{{"doc_count", m.doc_count}, {"df", std::move(df)}};
}

inline TfIdfModel parse_tfidf_model(const Json& j) {
  TfIdfModel m;
  const Json& n = detail::require(j, "doc_count");
  const Json& df = detail::require(j, "df");
  if (!n.is_number_unsigned() || !df.is_object()) throw validation_error("malformed TF-IDF model");
  m.doc_count = n.get<size_t>();
  for (const auto& [term, v] : df.items()) {
    if (!v.is_number_unsigned()) throw validation_error("malformed df entry for \"" + term + "\"");
    const size_t c = v.get<size_t>();
    if (c < 1 || c > m.doc_count) throw validation_error("df of \"" + term + "\" outside [1, doc_count]");
    m.df.emplace(term, c);
  }
  return m;
}

struct TermWeight {
  std::string term;
  double weight = 0.0;
};

// Distinct lowercased Word terms of the token list ranked by tf x idf,
// ties broken lexicographically.
inline std::vector<TermWeight> rank_terms(const std::vector<Token>& tokens, const TfIdfModel& model) {
  std::map<std::string, size_t> tf;
  for (const Token& t : tokens) {
    if (t.is_word()) ++tf[to_lower(t.text)];
  }
  std::vector<TermWeight> ranked;
  ranked.reserve(tf.size());
  for (const auto& [term, count] : tf) ranked.push_back({term, static_cast<double>(count) * model.idf(term)});
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const TermWeight& a, const TermWeight& b) { return a.weight > b.weight; });
  return ranked;
}

// ---------------------------------------------------------------------------
// Entities

struct EntityOptions {
  std::unordered_set<std::string> gazetteer;  // lowercased
  std::unordered_set<std::string> stopwords;  // lowercased
  bool include_headers = true;
};

namespace detail {

inline std::string strip_possessive(const std::string& w) {
  for (std::string_view suffix : {std::string_view("'s"), std::string_view("’s")}) {
    if (w.size() > suffix.size() && w.ends_with(suffix)) return w.substr(0, w.size() - suffix.size());
  }
  return w;
}

}  // namespace detail

// Entity ranges over tokenize(render(d)). Sentences start at each line and
// after . ! ?; the speaker header belongs to its line's first sentence.
inline std::vector<TokenRange> detect_entities(const Dialogue& d, const std::vector<Token>& tokens,
                                               const EntityOptions& opts) {
  const std::string text = render(d);
  std::unordered_set<std::string> speaker_forms;
  for (const Turn& t : d.turns) {
    speaker_forms.insert(to_lower(t.speaker));
    for (const Token& tok : tokenize(t.speaker)) {
      if (tok.is_word()) speaker_forms.insert(to_lower(tok.text));
    }
  }

  // Header = tokens inside "Speaker:" of each line.
  std::vector<bool> header(tokens.size(), false);
  {
    size_t line_start = 0;
    size_t tok = 0;
    for (const Turn& t : d.turns) {
      const size_t header_end = line_start + utf8::decode(t.speaker).size() + 1;
      const size_t line_end = header_end + 1 + utf8::decode(t.text).size();
      while (tok < tokens.size() && tokens[tok].end <= header_end) header[tok++] = true;
      while (tok < tokens.size() && tokens[tok].end <= line_end) ++tok;
      line_start = line_end + 1;
    }
  }

  std::vector<bool> candidate(tokens.size(), false);
  for (size_t i = 0; i < tokens.size(); ++i) {
    const Token& tok = tokens[i];
    if (!tok.is_word() || (header[i] && !opts.include_headers)) continue;
    const bool sentence_start =
        i == 0 || is_sentence_final(tokens[i - 1]) ||
        text.find('\n', tokens[i - 1].byte_end) < tok.byte_start;
    const std::string lower = to_lower(detail::strip_possessive(tok.text));
    const bool capitalized = starts_upper(tok.text);
    if (speaker_forms.count(lower) || (capitalized && opts.gazetteer.count(lower)) ||
        (capitalized && !sentence_start && !opts.stopwords.count(to_lower(tok.text)) &&
         !opts.stopwords.count(lower))) {
      candidate[i] = true;
    }
  }

  std::vector<TokenRange> ranges;
  for (size_t i = 0; i < tokens.size();) {
    if (!candidate[i]) {
      ++i;
      continue;
    }
    size_t j = i + 1;
    while (j < tokens.size() && candidate[j]) ++j;
    ranges.push_back({i, j});
    i = j;
  }
  return ranges;
}

inline std::vector<TokenRange> detect_entities(const Dialogue& d, const EntityOptions& opts) {
  return detect_entities(d, tokenize(render(d)), opts);
}

// ---------------------------------------------------------------------------
// Planning

struct MaskRange {
  TokenRange range;
  Objective origin = Objective::Word;
  friend bool operator==(const MaskRange&, const MaskRange&) = default;
};

struct MaskPlan {
  std::string dialogue_id;
  std::vector<MaskRange> ranges;  // sorted, disjoint, non-empty
};

// Per-objective counters, for rate diagnostics.
struct CorruptionTrace {
  std::vector<uint64_t> span_lengths;  // drawn, before truncation
  size_t word_tokens = 0;
  size_t word_masked = 0;
  size_t span_masked_words = 0;
  size_t pronoun_eligible = 0;
  size_t pronoun_masked = 0;
  size_t tfidf_eligible_types = 0;
  size_t tfidf_distinct_terms = 0;
  size_t tfidf_eligible_tokens = 0;
  size_t tfidf_masked = 0;
  size_t entity_eligible = 0;
  size_t entity_masked = 0;
};

struct PlanInputs {
  const TfIdfModel* tfidf = nullptr;
  const std::vector<TokenRange>* entities = nullptr;
  // Lowercased pronoun list; the built-in lexicon when null.
  const std::unordered_set<std::string>* pronouns = nullptr;
};

inline MaskPlan plan_corruption(std::string dialogue_id, const std::vector<Token>& tokens,
                                const CorruptionConfig& cfg, const PlanInputs& in, RngStream& rng,
                                CorruptionTrace* trace = nullptr) {
  cfg.validate();
  if (cfg.has(Objective::TfIdf) && !in.tfidf) throw validation_error("tfidf objective requires a TF-IDF model");
  if (cfg.has(Objective::Entity) && !in.entities) throw validation_error("entity objective requires entities");

  CorruptionTrace local;
  CorruptionTrace& tr = trace ? *trace : local;
  std::vector<bool> covered(tokens.size(), false);
  MaskPlan plan{std::move(dialogue_id), {}};
  auto claim = [&](TokenRange r, Objective o) {
    for (size_t i = r.begin; i < r.end; ++i) covered[i] = true;
    plan.ranges.push_back({r, o});
  };
  size_t word_count = 0;
  for (const Token& t : tokens) word_count += t.is_word();

  for (Objective obj : cfg.priority) {
    if (!cfg.has(obj)) continue;
    switch (obj) {
      case Objective::Entity:
        for (TokenRange r : *in.entities) {
          if (r.empty() || r.end > tokens.size()) throw validation_error("entity range out of token bounds");
          bool free = true;
          for (size_t i = r.begin; i < r.end; ++i) free = free && !covered[i];
          if (!free) continue;
          ++tr.entity_eligible;
          if (rng.bernoulli(cfg.p_mask_entity)) {
            claim(r, obj);
            ++tr.entity_masked;
          }
        }
        break;

      case Objective::Pronoun:
        for (size_t i = 0; i < tokens.size(); ++i) {
          if (covered[i] || !tokens[i].is_word()) continue;
          if (in.pronouns ? !in.pronouns->count(to_lower(tokens[i].text)) : !is_pronoun(tokens[i].text)) continue;
          ++tr.pronoun_eligible;
          if (rng.bernoulli(cfg.p_mask_pronoun)) {
            claim({i, i + 1}, obj);
            ++tr.pronoun_masked;
          }
        }
        break;

      case Objective::TfIdf: {
        const auto ranked = rank_terms(tokens, *in.tfidf);
        const size_t top = std::min(ranked.size(), ceil_count(cfg.tfidf_top_frac * static_cast<double>(ranked.size())));
        std::unordered_set<std::string> eligible;
        for (size_t k = 0; k < top; ++k) eligible.insert(ranked[k].term);
        tr.tfidf_distinct_terms += ranked.size();
        tr.tfidf_eligible_types += top;
        for (size_t i = 0; i < tokens.size(); ++i) {
          if (covered[i] || !tokens[i].is_word() || !eligible.count(to_lower(tokens[i].text))) continue;
          ++tr.tfidf_eligible_tokens;
          if (rng.bernoulli(cfg.p_mask_tfidf)) {
            claim({i, i + 1}, obj);
            ++tr.tfidf_masked;
          }
        }
        break;
      }

      case Objective::Word:
        for (size_t i = 0; i < tokens.size(); ++i) {
          if (covered[i] || !tokens[i].is_word()) continue;
          ++tr.word_tokens;
          if (rng.bernoulli(cfg.p_mask)) {
            claim({i, i + 1}, obj);
            ++tr.word_masked;
          }
        }
        break;

      case Objective::Span: {
        // Token budget: spans are drawn until ceil(p_mask * words) Word
        // tokens are masked; the last span is cut to the remaining budget.
        const size_t budget = ceil_count(cfg.p_mask * static_cast<double>(word_count));
        std::vector<size_t> free_words;
        for (size_t i = 0; i < tokens.size(); ++i) {
          if (!covered[i] && tokens[i].is_word()) free_words.push_back(i);
        }
        size_t masked = 0;
        while (masked < budget && !free_words.empty()) {
          const uint64_t drawn = std::max<uint64_t>(1, rng.poisson(cfg.lambda));
          tr.span_lengths.push_back(drawn);
          const size_t start = free_words[rng.choice(free_words.size())];
          const size_t want = std::min<size_t>(drawn, budget - masked);
          size_t end = start;
          size_t words = 0;
          while (end < tokens.size() && !covered[end] && words < want) {
            words += tokens[end].is_word();
            ++end;
          }
          claim({start, end}, obj);
          masked += words;
          std::erase_if(free_words, [&](size_t i) { return i >= start && i < end; });
        }
        tr.span_masked_words += masked;
        break;
      }
    }
  }

  std::sort(plan.ranges.begin(), plan.ranges.end(),
            [](const MaskRange& a, const MaskRange& b) { return a.range.begin < b.range.begin; });
  return plan;
}

// target = rendered dialogue; source = target with each planned range
// collapsed to one mask token.
inline Seq2SeqExample make_denoising_example(const Dialogue& d, const std::vector<Token>& tokens,
                                             const MaskPlan& plan, const CorruptionConfig& cfg) {
  Seq2SeqExample ex{d.id, {}, render(d), Task::Denoise};
  size_t pos = 0;
  for (const MaskRange& m : plan.ranges) {
    if (m.range.empty() || m.range.end > tokens.size()) throw validation_error("mask range out of token bounds");
    const size_t b = tokens[m.range.begin].byte_start;
    const size_t e = tokens[m.range.end - 1].byte_end;
    if (b < pos) throw validation_error("mask ranges overlap");
    ex.source.append(ex.target, pos, b - pos);
    ex.source += cfg.mask_token;
    pos = e;
  }
  ex.source.append(ex.target, pos, std::string::npos);
  return ex;
}

inline Seq2SeqExample make_denoising_example(const Dialogue& d, const MaskPlan& plan, const CorruptionConfig& cfg) {
  return make_denoising_example(d, tokenize(render(d)), plan, cfg);
}

}  // namespace dialsum
