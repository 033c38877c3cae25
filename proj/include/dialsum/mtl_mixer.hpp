#pragma once

// Auxiliary reasoning tasks (story endings, concept-to-scene generation,
// knowledge-base completion) as seq2seq records, and example-level mixing
// with summarization data.

#include <algorithm>
#include <array>
#include <fstream>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dialsum/corpus_io.hpp"
#include "dialsum/error.hpp"
#include "dialsum/text_core.hpp"

namespace dialsum {

inline constexpr std::string_view kConceptNetDelimiter = " | ";

namespace detail {

// Newlines (\r\n, \n, \r) become single spaces; surrounding whitespace trimmed.
inline std::string normalize_newlines(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '\r') {
      if (i + 1 < s.size() && s[i + 1] == '\n') ++i;
      out += ' ';
    } else if (s[i] == '\n') {
      out += ' ';
    } else {
      out += s[i];
    }
  }
  return trim(out);
}

}  // namespace detail

inline Seq2SeqExample format_roc(std::string id, const std::vector<std::string>& sentences) {
  if (sentences.size() != 5) {
    throw validation_error("story \"" + id + "\" has " + std::to_string(sentences.size()) + " sentences, expected 5");
  }
  std::array<std::string, 5> s;
  for (size_t i = 0; i < 5; ++i) {
    s[i] = detail::normalize_newlines(sentences[i]);
    if (s[i].empty()) throw validation_error("story \"" + id + "\" has an empty sentence " + std::to_string(i + 1));
  }
  return {std::move(id), s[0] + " " + s[1] + " " + s[2] + " " + s[3], s[4], Task::Roc};
}

inline Seq2SeqExample format_commongen(std::string id, const std::vector<std::string>& concepts,
                                      std::string_view scene) {
  if (concepts.empty()) throw validation_error("concept set \"" + id + "\" is empty");
  std::string source;
  for (size_t i = 0; i < concepts.size(); ++i) {
    if (concepts[i].empty()) throw validation_error("concept set \"" + id + "\" has an empty concept");
    if (i) source += ' ';
    source += concepts[i];
  }
  if (trim(scene).empty()) throw validation_error("concept set \"" + id + "\" has an empty scene");
  return {std::move(id), std::move(source), std::string(scene), Task::CommonGen};
}

inline Seq2SeqExample format_conceptnet(std::string id, std::string_view subject, std::string_view relation,
                                       std::string_view object) {
  if (subject.empty() || relation.empty() || object.empty()) {
    throw validation_error("triple \"" + id + "\" has an empty field");
  }
  if (subject.find(kConceptNetDelimiter) != std::string_view::npos ||
      relation.find(kConceptNetDelimiter) != std::string_view::npos) {
    throw validation_error("triple \"" + id + "\" contains the reserved delimiter \" | \"");
  }
  return {std::move(id), std::string(subject) + std::string(kConceptNetDelimiter) + std::string(relation),
          std::string(object), Task::ConceptNet};
}

inline Seq2SeqExample format_summarization(const Dialogue& d) {
  if (d.summary.empty()) throw validation_error("dialogue \"" + d.id + "\" has no summary");
  return {d.id, render(d), d.summary, Task::Summ};
}

// ---------------------------------------------------------------------------
// Component loading

// RFC 4180 rows: quoted fields may hold commas, newlines and "" escapes.
inline std::vector<std::vector<std::string>> parse_csv(std::string_view content) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false;
  bool any = false;
  for (size_t i = 0; i < content.size(); ++i) {
    const char c = content[i];
    any = true;
    if (quoted) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < content.size() && content[i + 1] == '\n') ++i;
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else {
      field += c;
    }
  }
  if (quoted) throw validation_error("unterminated quoted CSV field");
  if (any) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace detail {

inline std::string record_id(const Json& rec, std::string_view prefix, size_t line) {
  if (auto it = rec.find("id"); it != rec.end()) {
    if (it->is_string()) return it->get<std::string>();
    if (it->is_number_integer()) return std::to_string(it->get<long long>());
  }
  return std::string(prefix) + "-" + std::to_string(line);
}

inline std::vector<std::string> string_array(const Json& rec, const char* key) {
  const Json& arr = require(rec, key);
  if (!arr.is_array()) throw validation_error(std::string("field \"") + key + "\" must be an array");
  std::vector<std::string> out;
  for (const Json& v : arr) {
    if (!v.is_string()) throw validation_error(std::string("field \"") + key + "\" must hold strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

inline std::vector<Seq2SeqExample> load_roc_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  const auto rows = parse_csv(ss.str());
  std::vector<Seq2SeqExample> out;
  for (size_t r = 0; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() == 1 && trim(row[0]).empty()) continue;
    if (r == 0 && !row.empty() && to_lower(trim(row[0])) == "storyid") continue;
    if (row.size() != 7) {
      throw validation_error(path + ": row " + std::to_string(r + 1) + " has " + std::to_string(row.size()) +
                             " columns, expected 7 (id, title, 5 sentences)");
    }
    try {
      out.push_back(format_roc(row[0], std::vector<std::string>(row.begin() + 2, row.end())));
    } catch (const Error& e) {
      throw validation_error(path + ": row " + std::to_string(r + 1) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace detail

// ROC: {"id","sentences":[5]} or {"id","sentence1".."sentence5"}; .csv files
// use the 7-column story layout. CommonGen: {"id","concepts":[...],"scene"}
// ("target" accepted for "scene"). ConceptNet: {"id","subject","relation",
// "object"}. Summ: a dialogue corpus with summaries.
inline std::vector<Seq2SeqExample> load_component(Task task, const std::string& path) {
  if (task == Task::Denoise) throw validation_error("denoise records are not a mixable component");
  if (task == Task::Roc && path.ends_with(".csv")) return detail::load_roc_csv(path);
  std::vector<Seq2SeqExample> out;
  if (task == Task::Summ) {
    for_each_dialogue(path, [&](Dialogue&& d) {
      try {
        out.push_back(format_summarization(d));
      } catch (const Error& e) {
        throw validation_error(path + ": " + e.what());
      }
    });
    return out;
  }
  RecordReader reader(path);
  IdRegistry ids;
  Json rec;
  while (reader.next(rec)) {
    try {
      if (!rec.is_object()) throw validation_error("record is not an object");
      const std::string id = detail::record_id(rec, task_name(task), reader.line());
      switch (task) {
        case Task::Roc: {
          std::vector<std::string> sentences;
          if (rec.contains("sentences")) {
            sentences = detail::string_array(rec, "sentences");
          } else {
            for (int i = 1; i <= 5; ++i) {
              sentences.push_back(detail::require_string(rec, ("sentence" + std::to_string(i)).c_str()));
            }
          }
          out.push_back(format_roc(id, sentences));
          break;
        }
        case Task::CommonGen: {
          const char* scene_key = rec.contains("scene") ? "scene" : "target";
          out.push_back(format_commongen(id, detail::string_array(rec, "concepts"),
                                         detail::require_string(rec, scene_key)));
          break;
        }
        case Task::ConceptNet:
          out.push_back(format_conceptnet(id, detail::require_string(rec, "subject"),
                                          detail::require_string(rec, "relation"),
                                          detail::require_string(rec, "object")));
          break;
        default:
          break;
      }
      ids.add(id, reader.line(), path);
    } catch (const Error& e) {
      if (std::string_view(e.what()).starts_with(path)) throw;
      throw validation_error(reader.where() + ": " + e.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Mixing

enum class MixStrategy { Proportional, RoundRobin };

inline MixStrategy parse_mix_strategy(std::string_view s) {
  const std::string lower = to_lower(trim(s));
  if (lower == "proportional") return MixStrategy::Proportional;
  if (lower == "roundrobin" || lower == "round_robin" || lower == "round-robin") return MixStrategy::RoundRobin;
  throw validation_error("unknown mix strategy \"" + std::string(s) + "\"");
}

inline std::string_view mix_strategy_name(MixStrategy s) {
  return s == MixStrategy::Proportional ? "proportional" : "roundrobin";
}

struct MixComponent {
  Task task = Task::Summ;
  std::string path;
  std::optional<double> weight;  // defaults to the component size
};

struct MixSpec {
  std::vector<MixComponent> components;
  MixStrategy strategy = MixStrategy::Proportional;
  size_t epoch_size = 1;
  bool task_prefix = false;

  void validate() const {
    if (components.empty()) throw validation_error("mix needs at least one component");
    if (epoch_size < 1) throw validation_error("epoch_size must be at least 1");
    for (const MixComponent& c : components) {
      if (c.weight && !(*c.weight > 0.0)) throw validation_error("component weights must be positive");
    }
  }
};

struct MixedExample {
  Seq2SeqExample example;
  size_t component = 0;
  size_t item = 0;  // index within the component
  size_t pass = 0;  // how many times the component wrapped before this item
};

inline std::string task_prefix(Task t) {
  std::string name(task_name(t));
  for (char& c : name) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return "[" + name + "] ";
}

// Streams a mixed epoch. Each component is consumed through successive
// random permutations (Fisher-Yates on its own stream).
class Mixer {
 public:
  Mixer(std::vector<std::vector<Seq2SeqExample>> components, std::vector<double> weights, MixStrategy strategy,
        size_t epoch_size, uint64_t seed, bool task_prefix = false)
      : components_(std::move(components)),
        weights_(std::move(weights)),
        strategy_(strategy),
        epoch_size_(epoch_size),
        prefix_(task_prefix),
        select_rng_(derive_rng(seed, "mix")) {
    if (components_.empty()) throw validation_error("mix needs at least one component");
    if (weights_.size() != components_.size()) throw validation_error("one weight per component required");
    size_t total = 0;
    for (size_t i = 0; i < components_.size(); ++i) {
      total += components_[i].size();
      if (!(weights_[i] > 0.0) && !components_[i].empty()) throw validation_error("component weights must be positive");
      if (components_[i].empty()) weights_[i] = 0.0;
      for (const Seq2SeqExample& ex : components_[i]) check_example(ex);
      streams_.push_back(derive_rng(seed, "mix/" + std::to_string(i)));
      order_.emplace_back();
      cursor_.push_back(0);
      pass_.push_back(0);
      reshuffle(i);
    }
    if (total == 0) throw validation_error("mix components hold zero examples");
    weight_sum_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
  }

  bool done() const { return emitted_ >= epoch_size_; }

  MixedExample next() {
    if (done()) throw validation_error("mix epoch exhausted");
    const size_t c = strategy_ == MixStrategy::Proportional ? pick_weighted() : pick_round_robin();
    if (cursor_[c] == order_[c].size()) {
      ++pass_[c];
      reshuffle(c);
    }
    const size_t item = order_[c][cursor_[c]++];
    MixedExample out{components_[c][item], c, item, pass_[c]};
    if (prefix_) out.example.source = task_prefix(out.example.task) + out.example.source;
    ++emitted_;
    return out;
  }

 private:
  void reshuffle(size_t c) {
    auto& order = order_[c];
    order.resize(components_[c].size());
    std::iota(order.begin(), order.end(), size_t{0});
    for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[streams_[c].choice(i)]);
    cursor_[c] = 0;
  }

  size_t pick_weighted() {
    const double u = select_rng_.uniform01() * weight_sum_;
    double acc = 0.0;
    size_t last = 0;
    for (size_t i = 0; i < weights_.size(); ++i) {
      if (weights_[i] <= 0.0) continue;
      acc += weights_[i];
      last = i;
      if (u < acc) return i;
    }
    return last;
  }

  // Components whose current pass is used up are skipped while another
  // component still has unread items; once every pass is used up, all
  // components wrap together.
  size_t pick_round_robin() {
    const size_t n = components_.size();
    bool any_left = false;
    for (size_t i = 0; i < n; ++i) any_left = any_left || cursor_[i] < order_[i].size();
    if (!any_left) {
      for (size_t i = 0; i < n; ++i) {
        if (!components_[i].empty()) {
          ++pass_[i];
          reshuffle(i);
        }
      }
    }
    for (size_t step = 0; step < n; ++step) {
      const size_t c = (rr_next_ + step) % n;
      if (cursor_[c] < order_[c].size()) {
        rr_next_ = (c + 1) % n;
        return c;
      }
    }
    throw validation_error("mix components hold zero examples");
  }

  std::vector<std::vector<Seq2SeqExample>> components_;
  std::vector<double> weights_;
  MixStrategy strategy_;
  size_t epoch_size_;
  bool prefix_;
  RngStream select_rng_;
  std::vector<RngStream> streams_;
  std::vector<std::vector<size_t>> order_;
  std::vector<size_t> cursor_;
  std::vector<size_t> pass_;
  double weight_sum_ = 0.0;
  size_t rr_next_ = 0;
  size_t emitted_ = 0;
};

inline std::vector<double> resolve_weights(const MixSpec& spec, const std::vector<std::vector<Seq2SeqExample>>& data) {
  std::vector<double> w;
  for (size_t i = 0; i < spec.components.size(); ++i) {
    w.push_back(spec.components[i].weight.value_or(static_cast<double>(data[i].size())));
  }
  return w;
}

inline std::vector<MixedExample> mix(const std::vector<std::vector<Seq2SeqExample>>& data,
                                     const std::vector<double>& weights, MixStrategy strategy, size_t epoch_size,
                                     uint64_t seed, bool task_prefix = false) {
  Mixer mixer(data, weights, strategy, epoch_size, seed, task_prefix);
  std::vector<MixedExample> out;
  out.reserve(epoch_size);
  while (!mixer.done()) out.push_back(mixer.next());
  return out;
}

inline std::vector<MixedExample> mix(const MixSpec& spec, uint64_t seed) {
  spec.validate();
  std::vector<std::vector<Seq2SeqExample>> data;
  for (const MixComponent& c : spec.components) data.push_back(load_component(c.task, c.path));
  return mix(data, resolve_weights(spec, data), spec.strategy, spec.epoch_size, seed, spec.task_prefix);
}

}  // namespace dialsum
