#pragma once

// ROUGE-1/2/L, corpus aggregation with optional name restoration, and
// per-speaker-count bucketing.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dialsum/corpus_io.hpp"
#include "dialsum/error.hpp"
#include "dialsum/name_subst.hpp"
#include "dialsum/porter.hpp"
#include "dialsum/text_core.hpp"

namespace dialsum {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static RougeScore from(double p, double r) { return {p, r, p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0}; }
};

// Lowercase, then maximal letter/digit runs; optional Porter stemming.
inline std::vector<std::string> normalize(std::string_view text, bool stem = false) {
  const std::u32string u = utf8::decode(text);
  std::vector<std::string> out;
  std::u32string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    std::string tok = utf8::encode(cur);
    out.push_back(stem ? PorterStemmer::stem(tok) : std::move(tok));
    cur.clear();
  };
  for (char32_t cp : u) {
    if (is_word_char(cp)) {
      cur.push_back(to_lower(cp));
    } else {
      flush();
    }
  }
  flush();
  return out;
}

inline RougeScore rouge_n(const std::vector<std::string>& candidate, const std::vector<std::string>& reference,
                          int n) {
  if (n < 1) throw validation_error("ROUGE-N needs n >= 1");
  auto grams = [n](const std::vector<std::string>& toks) {
    std::map<std::vector<std::string>, size_t> counts;
    for (size_t i = 0; i + n <= toks.size(); ++i) {
      ++counts[std::vector<std::string>(toks.begin() + i, toks.begin() + i + n)];
    }
    return counts;
  };
  const auto cand = grams(candidate);
  const auto ref = grams(reference);
  size_t overlap = 0;
  for (const auto& [g, c] : cand) {
    if (auto it = ref.find(g); it != ref.end()) overlap += std::min(c, it->second);
  }
  const size_t cand_total = candidate.size() >= static_cast<size_t>(n) ? candidate.size() - n + 1 : 0;
  const size_t ref_total = reference.size() >= static_cast<size_t>(n) ? reference.size() - n + 1 : 0;
  const double p = cand_total ? static_cast<double>(overlap) / cand_total : 0.0;
  const double r = ref_total ? static_cast<double>(overlap) / ref_total : 0.0;
  return RougeScore::from(p, r);
}

inline size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (size_t i = 1; i <= a.size(); ++i) {
    for (size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

// Summary-level LCS over the full token sequences (no sentence union).
inline RougeScore rouge_l(const std::vector<std::string>& candidate, const std::vector<std::string>& reference) {
  if (candidate.empty() || reference.empty()) return {};
  const double l = static_cast<double>(lcs_length(candidate, reference));
  return RougeScore::from(l / candidate.size(), l / reference.size());
}

struct RougeTriple {
  RougeScore r1, r2, rl;
};

inline RougeTriple score_pair(std::string_view candidate, std::string_view reference, bool stem) {
  const auto c = normalize(candidate, stem);
  const auto r = normalize(reference, stem);
  return {rouge_n(c, r, 1), rouge_n(c, r, 2), rouge_l(c, r)};
}

struct ScoredPair {
  std::string id;
  RougeTriple scores;
};

struct CorpusMeans {
  double r1 = 0.0, r2 = 0.0, rl = 0.0;
  size_t count = 0;
};

struct EvalPair {
  std::string id;
  std::string candidate;
  std::string reference;
};

inline EvalPair parse_eval_pair(const Json& rec) {
  if (!rec.is_object()) throw validation_error("record is not an object");
  EvalPair p{detail::require_string(rec, "id"), detail::require_string(rec, "candidate"), ""};
  auto ref = detail::optional_string(rec, "reference");
  if (!ref) throw validation_error("reference missing for id \"" + p.id + "\"");
  p.reference = std::move(*ref);
  return p;
}

inline CorpusMeans corpus_means(const std::vector<ScoredPair>& scored) {
  CorpusMeans m;
  for (const ScoredPair& s : scored) {
    m.r1 += s.scores.r1.f1;
    m.r2 += s.scores.r2.f1;
    m.rl += s.scores.rl.f1;
  }
  m.count = scored.size();
  if (m.count) {
    m.r1 /= m.count;
    m.r2 /= m.count;
    m.rl /= m.count;
  }
  return m;
}

using SubstitutionIndex = std::unordered_map<std::string, SubstitutionMap>;

// Candidates whose id has a substitution map are restored before scoring.
inline std::vector<ScoredPair> evaluate_corpus(const std::vector<EvalPair>& pairs, const SubstitutionIndex* maps,
                                               bool stem) {
  std::vector<ScoredPair> out;
  out.reserve(pairs.size());
  std::unordered_map<std::string, size_t> seen;
  for (const EvalPair& p : pairs) {
    if (!seen.emplace(p.id, out.size()).second) throw validation_error("duplicate id \"" + p.id + "\"");
    std::string cand = p.candidate;
    if (maps) {
      if (auto it = maps->find(p.id); it != maps->end()) cand = restore_names(cand, it->second);
    }
    out.push_back({p.id, score_pair(cand, p.reference, stem)});
  }
  return out;
}

struct SpeakerBucket {
  size_t n_speakers = 0;
  size_t n_dialogues = 0;
  double mean_r1 = 0.0, mean_r2 = 0.0, mean_rl = 0.0;
};

// Groups scored dialogues by their distinct-speaker count (F1 means).
inline std::vector<SpeakerBucket> speaker_analysis(const std::unordered_map<std::string, size_t>& speakers_by_id,
                                                   const std::vector<ScoredPair>& scored) {
  std::map<size_t, SpeakerBucket> buckets;
  for (const ScoredPair& s : scored) {
    auto it = speakers_by_id.find(s.id);
    if (it == speakers_by_id.end()) throw validation_error("scored id \"" + s.id + "\" not found in the corpus");
    SpeakerBucket& b = buckets[it->second];
    b.n_speakers = it->second;
    ++b.n_dialogues;
    b.mean_r1 += s.scores.r1.f1;
    b.mean_r2 += s.scores.r2.f1;
    b.mean_rl += s.scores.rl.f1;
  }
  std::vector<SpeakerBucket> out;
  for (auto& [n, b] : buckets) {
    b.mean_r1 /= b.n_dialogues;
    b.mean_r2 /= b.n_dialogues;
    b.mean_rl /= b.n_dialogues;
    out.push_back(b);
  }
  return out;
}

inline std::vector<SpeakerBucket> speaker_analysis(const std::vector<Dialogue>& dialogues,
                                                   const std::vector<ScoredPair>& scored) {
  std::unordered_map<std::string, size_t> by_id;
  for (const Dialogue& d : dialogues) by_id[d.id] = speaker_count(d);
  return speaker_analysis(by_id, scored);
}

inline Json to_record(const ScoredPair& s) {
  auto triple = [](const RougeScore& r) { return Json{{"p", r.precision}, {"r", r.recall}, {"f1", r.f1}}; };
  return Json{{"id", s.id}, {"rouge1", triple(s.scores.r1)}, {"rouge2", triple(s.scores.r2)}, {"rougeL", triple(s.scores.rl)}};
}

inline ScoredPair parse_scored_pair(const Json& rec) {
  auto triple = [&](const char* key) {
    const Json& t = detail::require(rec, key);
    auto num = [&](const char* k) {
      const Json& v = detail::require(t, k);
      if (!v.is_number()) throw validation_error(std::string("score field \"") + k + "\" must be numeric");
      return v.get<double>();
    };
    return RougeScore{num("p"), num("r"), num("f1")};
  };
  return {detail::require_string(rec, "id"), {triple("rouge1"), triple("rouge2"), triple("rougeL")}};
}

}  // namespace dialsum
