#pragma once

// Reversible speaker-name substitution with same-gender common names.

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "dialsum/corpus_io.hpp"
#include "dialsum/error.hpp"
#include "dialsum/resources.hpp"
#include "dialsum/text_core.hpp"

namespace dialsum {

enum class Gender { Male, Female, Unknown };

inline std::string_view gender_name(Gender g) {
  switch (g) {
    case Gender::Male: return "male";
    case Gender::Female: return "female";
    case Gender::Unknown: return "unknown";
  }
  return "unknown";
}

inline Gender parse_gender(std::string_view s) {
  const std::string lower = to_lower(trim(s));
  if (lower == "male" || lower == "m") return Gender::Male;
  if (lower == "female" || lower == "f") return Gender::Female;
  if (lower == "unknown" || lower == "u" || lower == "andy") return Gender::Unknown;
  throw validation_error("unknown gender \"" + std::string(s) + "\"");
}

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Non-blank, trimmed lines; '#' starts a comment line.
inline std::vector<std::string> content_lines(std::string_view content) {
  std::vector<std::string> lines;
  std::istringstream in{std::string(content)};
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    lines.push_back(std::move(t));
  }
  return lines;
}

}  // namespace detail

class GenderLexicon {
 public:
  GenderLexicon() = default;

  // "name<TAB>gender" per line.
  static GenderLexicon parse(std::string_view content, const std::string& source = "<lexicon>") {
    GenderLexicon lex;
    size_t line_no = 0;
    std::istringstream in{std::string(content)};
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      const std::string t = trim(line);
      if (t.empty() || t[0] == '#') continue;
      const size_t tab = t.find('\t');
      if (tab == std::string::npos) {
        throw validation_error(source + ":" + std::to_string(line_no) + ": expected name<TAB>gender");
      }
      const std::string name = to_lower(trim(t.substr(0, tab)));
      Gender g;
      try {
        g = parse_gender(t.substr(tab + 1));
      } catch (const Error& e) {
        throw validation_error(source + ":" + std::to_string(line_no) + ": " + e.what());
      }
      if (name.empty()) throw validation_error(source + ":" + std::to_string(line_no) + ": empty name");
      lex.entries_[name] = g;
    }
    return lex;
  }

  static GenderLexicon load(const std::string& path) { return parse(detail::read_file(path), path); }

  static const GenderLexicon& bundled() {
    static const GenderLexicon lex = parse(resources::kGenderLexicon, "bundled lexicon");
    return lex;
  }

  void set(std::string_view name, Gender g) { entries_[to_lower(name)] = g; }

  Gender lookup(std::string_view name) const {
    auto it = entries_.find(to_lower(name));
    return it == entries_.end() ? Gender::Unknown : it->second;
  }

  size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, Gender> entries_;
};

// Lookup on the lowercased first whitespace-separated component.
inline Gender infer_gender(std::string_view name, const GenderLexicon& lexicon) {
  const std::string t = trim(name);
  const size_t sp = t.find_first_of(" \t");
  return lexicon.lookup(std::string_view(t).substr(0, sp));
}

struct NamePool {
  std::vector<std::string> male;
  std::vector<std::string> female;

  void validate() const {
    if (male.empty() || female.empty()) throw validation_error("name pools must both be non-empty");
    std::set<std::string> seen;
    for (const auto* list : {&male, &female}) {
      for (const std::string& n : *list) {
        const std::u32string u = utf8::decode(n);
        if (u.empty() || !std::all_of(u.begin(), u.end(), is_word_char) || !is_upper(u[0])) {
          throw validation_error("pool name \"" + n + "\" must be one capitalized word");
        }
        if (!seen.insert(n).second) throw validation_error("duplicate pool name \"" + n + "\"");
      }
    }
  }

  const std::vector<std::string>& for_gender(Gender g) const {
    return g == Gender::Female ? female : male;
  }

  static NamePool from_lists(std::string_view male_content, std::string_view female_content) {
    NamePool pool{detail::content_lines(male_content), detail::content_lines(female_content)};
    pool.validate();
    return pool;
  }

  static NamePool load(const std::string& male_path, const std::string& female_path) {
    return from_lists(detail::read_file(male_path), detail::read_file(female_path));
  }

  static const NamePool& bundled() {
    static const NamePool pool = from_lists(resources::kMaleNames, resources::kFemaleNames);
    return pool;
  }
};

// Pool entries must classify as their own pool's gender, otherwise gender
// preservation cannot hold.
inline void check_pool_against_lexicon(const NamePool& pool, const GenderLexicon& lexicon) {
  for (Gender g : {Gender::Male, Gender::Female}) {
    for (const std::string& n : pool.for_gender(g)) {
      if (lexicon.lookup(n) != g) {
        throw validation_error("pool name \"" + n + "\" is not " + std::string(gender_name(g)) +
                               " in the gender lexicon");
      }
    }
  }
}

struct NamePair {
  std::string original;
  std::string replacement;
  Gender gender = Gender::Unknown;
  friend bool operator==(const NamePair&, const NamePair&) = default;
};

struct SubstitutionMap {
  std::string dialogue_id;
  std::vector<NamePair> pairs;
  friend bool operator==(const SubstitutionMap&, const SubstitutionMap&) = default;
};

inline Json to_record(const SubstitutionMap& m) {
  Json pairs = Json::array();
  for (const NamePair& p : m.pairs) {
    pairs.push_back(Json{{"original", p.original}, {"replacement", p.replacement}, {"gender", gender_name(p.gender)}});
  }
  return Json{{"dialogue_id", m.dialogue_id}, {"pairs", std::move(pairs)}};
}

inline SubstitutionMap parse_substitution_map(const Json& rec) {
  if (!rec.is_object()) throw validation_error("substitution map is not an object");
  SubstitutionMap m;
  m.dialogue_id = detail::require_string(rec, "dialogue_id");
  const Json& pairs = detail::require(rec, "pairs");
  if (!pairs.is_array()) throw validation_error("field \"pairs\" must be an array");
  for (const Json& p : pairs) {
    m.pairs.push_back(NamePair{detail::require_string(p, "original"), detail::require_string(p, "replacement"),
                               parse_gender(detail::require_string(p, "gender"))});
  }
  return m;
}

// ---------------------------------------------------------------------------
// Whole-word matching

namespace detail {

inline bool possessive_at(const std::u32string& t, size_t j) {
  return j + 1 < t.size() && is_apostrophe(t[j]) && t[j + 1] == U's' &&
         (j + 2 == t.size() || !is_word_char(t[j + 2]));
}

// Same boundaries as tokenize(): a match may not start or end inside a Word
// token, except that a trailing possessive "'s" is allowed.
inline bool boundary_before(const std::u32string& t, size_t i) {
  if (i == 0) return true;
  if (is_word_char(t[i - 1])) return false;
  return !(is_apostrophe(t[i - 1]) && i >= 2 && is_word_char(t[i - 2]) && is_word_char(t[i]));
}

inline bool boundary_after(const std::u32string& t, size_t j) {
  if (j == t.size()) return true;
  if (is_word_char(t[j])) return false;
  if (is_apostrophe(t[j]) && j + 1 < t.size() && is_word_char(t[j + 1]) && j > 0 && is_word_char(t[j - 1])) {
    return possessive_at(t, j);
  }
  return true;
}

using Rewrites = std::vector<std::pair<std::u32string, std::u32string>>;

// Single left-to-right pass; at each position the first matching source in
// `rules` wins, so callers order rules longest-first.
inline std::string rewrite_words(std::string_view text, const Rewrites& rules) {
  const std::u32string t = utf8::decode(text);
  std::u32string out;
  out.reserve(t.size());
  size_t i = 0;
  while (i < t.size()) {
    bool replaced = false;
    if (boundary_before(t, i)) {
      for (const auto& [from, to] : rules) {
        if (from.empty() || t.compare(i, from.size(), from) != 0) continue;
        if (!boundary_after(t, i + from.size())) continue;
        out += to;
        i += from.size();
        replaced = true;
        break;
      }
    }
    if (!replaced) out.push_back(t[i++]);
  }
  return utf8::encode(out);
}

inline Rewrites longest_first(Rewrites rules) {
  std::stable_sort(rules.begin(), rules.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
    return a.first < b.first;
  });
  return rules;
}

// Every Word token of the text plus the stem of possessive tokens.
inline std::unordered_set<std::string> word_forms(std::string_view text) {
  std::unordered_set<std::string> forms;
  for (const Token& tok : tokenize(text)) {
    if (!tok.is_word()) continue;
    forms.insert(tok.text);
    for (std::string_view suffix : {std::string_view("'s"), std::string_view("’s")}) {
      if (tok.text.size() > suffix.size() && tok.text.ends_with(suffix)) {
        forms.insert(tok.text.substr(0, tok.text.size() - suffix.size()));
      }
    }
  }
  return forms;
}

}  // namespace detail

inline std::string restore_names(std::string_view text, const SubstitutionMap& map) {
  detail::Rewrites rules;
  for (const NamePair& p : map.pairs) rules.emplace_back(utf8::decode(p.replacement), utf8::decode(p.original));
  return detail::rewrite_words(text, detail::longest_first(std::move(rules)));
}

inline constexpr int kMaxRedraws = 64;

struct SubstitutionResult {
  Dialogue dialogue;
  SubstitutionMap map;
};

inline SubstitutionResult substitute_names(const Dialogue& d, const GenderLexicon& lexicon, const NamePool& pool,
                                           RngStream& rng) {
  const std::vector<std::string> originals = speakers(d);
  const std::string rendered = render(d);
  const auto taken_forms = detail::word_forms(rendered + "\n" + d.summary);

  std::vector<std::string> union_pool = pool.male;
  union_pool.insert(union_pool.end(), pool.female.begin(), pool.female.end());

  SubstitutionMap map{d.id, {}};
  std::set<std::string> used;
  for (const std::string& original : originals) {
    const Gender g = infer_gender(original, lexicon);
    const std::vector<std::string>& candidates = g == Gender::Unknown ? union_pool : pool.for_gender(g);
    std::string chosen;
    for (int draw = 0; draw <= kMaxRedraws; ++draw) {
      const std::string& c = candidates[rng.choice(candidates.size())];
      const bool collides = used.count(c) || taken_forms.count(c) ||
                            std::find(originals.begin(), originals.end(), c) != originals.end();
      if (!collides) {
        chosen = c;
        break;
      }
    }
    if (chosen.empty()) {
      throw validation_error("dialogue \"" + d.id + "\": name pool exhausted for speaker \"" + original + "\"");
    }
    used.insert(chosen);
    map.pairs.push_back(NamePair{original, chosen, g});
  }

  detail::Rewrites rules;
  for (const NamePair& p : map.pairs) rules.emplace_back(utf8::decode(p.original), utf8::decode(p.replacement));
  rules = detail::longest_first(std::move(rules));

  Dialogue out{d.id, {}, d.summary};
  out.turns.reserve(d.turns.size());
  for (const Turn& t : d.turns) {
    auto it = std::find_if(map.pairs.begin(), map.pairs.end(), [&](const NamePair& p) { return p.original == t.speaker; });
    out.turns.push_back(Turn{it->replacement, detail::rewrite_words(t.text, rules)});
  }

  if (restore_names(render(out), map) != rendered) {
    throw validation_error("dialogue \"" + d.id + "\": speaker names cannot be substituted reversibly");
  }
  return {std::move(out), std::move(map)};
}

}  // namespace dialsum
