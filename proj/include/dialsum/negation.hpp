#pragma once

// Negation cue/scope detection and scope marking with special tokens.

#include <algorithm>
#include <array>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dialsum/corpus_io.hpp"
#include "dialsum/error.hpp"
#include "dialsum/text_core.hpp"

namespace dialsum {

struct NegationAnnotation {
  TokenRange cue;
  TokenRange scope;
  friend bool operator==(const NegationAnnotation&, const NegationAnnotation&) = default;
};

inline constexpr std::string_view kDefaultNegOpen = "<NEG>";
inline constexpr std::string_view kDefaultNegClose = "<\\NEG>";
inline constexpr size_t kScopeCap = 20;

inline bool is_negation_cue(const Token& tok) {
  static constexpr std::array<std::string_view, 11> kCues = {
      "no", "not", "never", "none", "nobody", "nothing", "nowhere", "neither", "nor", "without", "cannot"};
  if (!tok.is_word()) return false;
  const std::string lower = to_lower(tok.text);
  if (std::find(kCues.begin(), kCues.end(), lower) != kCues.end()) return true;
  return lower.ends_with("n't") || lower.ends_with("n’t");
}

inline std::vector<TokenRange> detect_cues(const std::vector<Token>& tokens) {
  std::vector<TokenRange> cues;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (is_negation_cue(tokens[i])) cues.push_back({i, i + 1});
  }
  return cues;
}

// Tokens after the cue up to the sentence end, the next cue, or the cap.
inline TokenRange detect_scope(const std::vector<Token>& tokens, TokenRange cue) {
  size_t i = cue.end;
  while (i < tokens.size() && i - cue.end < kScopeCap) {
    if (is_sentence_final(tokens[i]) || is_negation_cue(tokens[i])) break;
    ++i;
  }
  return {cue.end, i};
}

inline std::vector<NegationAnnotation> detect_negations(const std::vector<Token>& tokens) {
  std::vector<NegationAnnotation> out;
  for (TokenRange cue : detect_cues(tokens)) out.push_back({cue, detect_scope(tokens, cue)});
  return out;
}

// Checks the annotation invariants against `tokens`: in-bounds ranges, cue
// before scope, scope inside one sentence, non-empty scopes disjoint.
inline void check_annotations(const std::vector<Token>& tokens, const std::vector<NegationAnnotation>& anns) {
  const auto sentences = split_sentences(tokens);
  auto sentence_of = [&](size_t idx) {
    for (size_t s = 0; s < sentences.size(); ++s) {
      if (idx >= sentences[s].begin && idx < sentences[s].end) return s;
    }
    return sentences.size();
  };
  std::vector<TokenRange> scopes;
  for (const NegationAnnotation& a : anns) {
    if (a.cue.begin > a.cue.end || a.scope.begin > a.scope.end || a.cue.end > tokens.size() ||
        a.scope.end > tokens.size()) {
      throw validation_error("negation annotation out of token bounds");
    }
    if (a.scope.empty()) continue;
    if (a.cue.end > a.scope.begin) throw validation_error("negation cue must precede its scope");
    if (sentence_of(a.scope.begin) != sentence_of(a.scope.end - 1)) {
      throw validation_error("negation scope crosses a sentence boundary");
    }
    scopes.push_back(a.scope);
  }
  std::sort(scopes.begin(), scopes.end(), [](auto a, auto b) { return a.begin < b.begin; });
  for (size_t i = 1; i < scopes.size(); ++i) {
    if (scopes[i].begin < scopes[i - 1].end) throw validation_error("overlapping negation scopes");
  }
}

// Inserts "<open> " before the first scope token and " <close>" after the
// last one. Rejects text that already contains either marker.
inline std::string mark_negation(std::string_view text, const std::vector<NegationAnnotation>& anns,
                                 std::string_view open_marker = kDefaultNegOpen,
                                 std::string_view close_marker = kDefaultNegClose) {
  if (open_marker.empty() || close_marker.empty()) throw validation_error("negation markers must be non-empty");
  if (text.find(open_marker) != std::string_view::npos || text.find(close_marker) != std::string_view::npos) {
    throw validation_error("text already contains negation markers");
  }
  const std::vector<Token> tokens = tokenize(text);
  check_annotations(tokens, anns);

  struct Insert {
    size_t byte;
    bool close;
  };
  std::vector<Insert> inserts;
  for (const NegationAnnotation& a : anns) {
    if (a.scope.empty()) continue;
    inserts.push_back({tokens[a.scope.begin].byte_start, false});
    inserts.push_back({tokens[a.scope.end - 1].byte_end, true});
  }
  // A close and an open at the same offset: close first.
  std::sort(inserts.begin(), inserts.end(), [](const Insert& a, const Insert& b) {
    return a.byte != b.byte ? a.byte < b.byte : a.close > b.close;
  });

  std::string out;
  out.reserve(text.size() + inserts.size() * (open_marker.size() + 1));
  size_t pos = 0;
  for (const Insert& ins : inserts) {
    out.append(text.substr(pos, ins.byte - pos));
    pos = ins.byte;
    if (ins.close) {
      out += ' ';
      out += close_marker;
    } else {
      out += open_marker;
      out += ' ';
    }
  }
  out.append(text.substr(pos));
  return out;
}

// Removes markers together with their delimiting space.
inline std::string strip_negation_markers(std::string_view text, std::string_view open_marker = kDefaultNegOpen,
                                          std::string_view close_marker = kDefaultNegClose) {
  const std::string open = std::string(open_marker) + " ";
  const std::string close = " " + std::string(close_marker);
  std::string out;
  size_t pos = 0;
  while (pos < text.size()) {
    if (text.compare(pos, open.size(), open) == 0) {
      pos += open.size();
    } else if (text.compare(pos, close.size(), close) == 0) {
      pos += close.size();
    } else {
      out += text[pos++];
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dialogue level

namespace detail {

// Token index range of each turn's text within tokenize(render(d)).
inline std::vector<TokenRange> turn_text_token_ranges(const Dialogue& d, const std::vector<Token>& tokens) {
  std::vector<TokenRange> ranges;
  size_t line_start = 0;
  size_t tok = 0;
  for (const Turn& t : d.turns) {
    const size_t text_begin = line_start + utf8::decode(t.speaker).size() + 2;
    const size_t text_end = text_begin + utf8::decode(t.text).size();
    while (tok < tokens.size() && tokens[tok].start < text_begin) ++tok;
    const size_t b = tok;
    while (tok < tokens.size() && tokens[tok].end <= text_end) ++tok;
    ranges.push_back({b, tok});
    line_start = text_end + 1;
  }
  return ranges;
}

}  // namespace detail

// Standoff: dialogue id -> annotations over tokenize(render(dialogue)).
using NegationStandoff = std::unordered_map<std::string, std::vector<NegationAnnotation>>;

inline TokenRange parse_token_range(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_unsigned() || !j[1].is_number_unsigned()) {
    throw validation_error("token range must be [start, end] with non-negative integers");
  }
  TokenRange r{j[0].get<size_t>(), j[1].get<size_t>()};
  if (r.begin > r.end) throw validation_error("token range start exceeds end");
  return r;
}

inline NegationStandoff load_negation_standoff(const std::string& path) {
  NegationStandoff out;
  RecordReader reader(path);
  Json rec;
  while (reader.next(rec)) {
    try {
      const std::string id = detail::require_string(rec, "id");
      const Json& anns = detail::require(rec, "annotations");
      if (!anns.is_array()) throw validation_error("field \"annotations\" must be an array");
      auto& list = out[id];
      for (const Json& a : anns) {
        list.push_back({parse_token_range(detail::require(a, "cue")), parse_token_range(detail::require(a, "scope"))});
      }
    } catch (const Error& e) {
      throw validation_error(reader.where() + ": " + e.what());
    }
  }
  return out;
}

// Marks every turn text. With `external` null the rule-based detector runs
// per turn; otherwise the given dialogue-level annotations are used.
inline Dialogue mark_dialogue_negation(const Dialogue& d, const std::vector<NegationAnnotation>* external,
                                       std::string_view open_marker = kDefaultNegOpen,
                                       std::string_view close_marker = kDefaultNegClose) {
  Dialogue out = d;
  if (!external) {
    for (Turn& t : out.turns) {
      t.text = mark_negation(t.text, detect_negations(tokenize(t.text)), open_marker, close_marker);
    }
    return out;
  }
  const std::vector<Token> tokens = tokenize(render(d));
  const auto ranges = detail::turn_text_token_ranges(d, tokens);
  std::vector<std::vector<NegationAnnotation>> per_turn(d.turns.size());
  for (const NegationAnnotation& a : *external) {
    const TokenRange hull{a.cue.begin, a.scope.empty() ? a.cue.end : a.scope.end};
    auto it = std::find_if(ranges.begin(), ranges.end(),
                           [&](TokenRange r) { return hull.begin >= r.begin && hull.end <= r.end; });
    if (it == ranges.end()) {
      throw validation_error("dialogue \"" + d.id + "\": negation annotation [" + std::to_string(hull.begin) + ", " +
                             std::to_string(hull.end) + ") is not inside a single turn text");
    }
    const size_t off = it->begin;
    const TokenRange cue{a.cue.begin - off, a.cue.end - off};
    const TokenRange scope = a.scope.empty() ? TokenRange{cue.end, cue.end}
                                             : TokenRange{a.scope.begin - off, a.scope.end - off};
    per_turn[it - ranges.begin()].push_back({cue, scope});
  }
  for (size_t k = 0; k < out.turns.size(); ++k) {
    try {
      out.turns[k].text = mark_negation(out.turns[k].text, per_turn[k], open_marker, close_marker);
    } catch (const Error& e) {
      throw validation_error("dialogue \"" + d.id + "\" turn " + std::to_string(k) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace dialsum
