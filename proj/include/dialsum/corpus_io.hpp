#pragma once

// Dialogue corpora and derived record streams as newline-delimited JSON.

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "dialsum/error.hpp"
#include "dialsum/text_core.hpp"
#include "json.hpp"

namespace dialsum {

using Json = nlohmann::ordered_json;

struct Turn {
  std::string speaker;
  std::string text;
  friend bool operator==(const Turn&, const Turn&) = default;
};

struct Dialogue {
  std::string id;
  std::vector<Turn> turns;
  std::string summary;
  friend bool operator==(const Dialogue&, const Dialogue&) = default;
};

enum class Task { Summ, Roc, CommonGen, ConceptNet, Denoise };

inline std::string_view task_name(Task t) {
  switch (t) {
    case Task::Summ: return "Summ";
    case Task::Roc: return "Roc";
    case Task::CommonGen: return "CommonGen";
    case Task::ConceptNet: return "ConceptNet";
    case Task::Denoise: return "Denoise";
  }
  return "";
}

inline Task parse_task(std::string_view s) {
  const std::string lower = to_lower(s);
  for (Task t : {Task::Summ, Task::Roc, Task::CommonGen, Task::ConceptNet, Task::Denoise}) {
    if (lower == to_lower(task_name(t))) return t;
  }
  throw validation_error("unknown task \"" + std::string(s) + "\"");
}

struct Seq2SeqExample {
  std::string id;
  std::string source;
  std::string target;
  Task task = Task::Summ;
  friend bool operator==(const Seq2SeqExample&, const Seq2SeqExample&) = default;
};

inline void check_example(const Seq2SeqExample& ex) {
  if (ex.source.empty()) throw validation_error("example \"" + ex.id + "\" has an empty source");
  if (ex.target.empty()) throw validation_error("example \"" + ex.id + "\" has an empty target");
}

// "Speaker: text" lines joined by newline.
inline std::string render(const Dialogue& d) {
  std::string out;
  for (size_t i = 0; i < d.turns.size(); ++i) {
    if (i) out += '\n';
    out += d.turns[i].speaker;
    out += ": ";
    out += d.turns[i].text;
  }
  return out;
}

inline size_t speaker_count(const Dialogue& d) {
  std::vector<std::string_view> seen;
  for (const Turn& t : d.turns) {
    if (std::find(seen.begin(), seen.end(), t.speaker) == seen.end()) seen.push_back(t.speaker);
  }
  return seen.size();
}

// Distinct speakers in order of first appearance.
inline std::vector<std::string> speakers(const Dialogue& d) {
  std::vector<std::string> out;
  for (const Turn& t : d.turns) {
    if (std::find(out.begin(), out.end(), t.speaker) == out.end()) out.push_back(t.speaker);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

inline const Json& require(const Json& rec, const char* key) {
  auto it = rec.find(key);
  if (it == rec.end()) throw validation_error(std::string("missing field \"") + key + "\"");
  return *it;
}

inline std::string require_string(const Json& rec, const char* key) {
  const Json& v = require(rec, key);
  if (!v.is_string()) throw validation_error(std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

inline std::optional<std::string> optional_string(const Json& rec, const char* key) {
  auto it = rec.find(key);
  if (it == rec.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw validation_error(std::string("field \"") + key + "\" must be a string");
  return it->get<std::string>();
}

inline void check_turn(const Turn& t) {
  if (t.speaker.empty()) throw validation_error("turn with empty speaker");
  if (t.speaker.find(':') != std::string::npos) {
    throw validation_error("speaker \"" + t.speaker + "\" contains ':'");
  }
}

}  // namespace detail

// Splits a flat "Speaker: text" dialogue string into turns. Lines without a
// colon continue the previous turn; blank lines are dropped.
inline std::vector<Turn> parse_turns(std::string_view dialogue) {
  std::vector<Turn> turns;
  size_t line_no = 0;
  size_t pos = 0;
  while (pos <= dialogue.size()) {
    size_t nl = dialogue.find('\n', pos);
    if (nl == std::string_view::npos) nl = dialogue.size();
    std::string_view line = dialogue.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    pos = nl + 1;

    const std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    const size_t colon = line.find(':');
    if (colon == std::string_view::npos) {
      if (turns.empty()) {
        throw validation_error("dialogue line " + std::to_string(line_no) +
                               " has no speaker separator ':'");
      }
      Turn& prev = turns.back();
      if (!prev.text.empty()) prev.text += '\n';
      prev.text += trimmed;
      continue;
    }
    Turn t{trim(line.substr(0, colon)), trim(line.substr(colon + 1))};
    if (t.speaker.empty()) {
      throw validation_error("dialogue line " + std::to_string(line_no) + " has an empty speaker");
    }
    turns.push_back(std::move(t));
  }
  return turns;
}

// Accepts SAMSum-style {"id","dialogue","summary"} or canonical
// {"id","turns":[{"speaker","text"}],"summary"}.
inline Dialogue parse_dialogue(const Json& rec) {
  if (!rec.is_object()) throw validation_error("record is not an object");
  Dialogue d;
  if (!rec.contains("id")) throw validation_error("missing id");
  const Json& id = rec["id"];
  if (id.is_string()) {
    d.id = id.get<std::string>();
  } else if (id.is_number_integer()) {
    d.id = std::to_string(id.get<long long>());
  } else {
    throw validation_error("field \"id\" must be a string");
  }
  if (d.id.empty()) throw validation_error("missing id");

  if (auto it = rec.find("turns"); it != rec.end()) {
    if (!it->is_array()) throw validation_error("field \"turns\" must be an array");
    for (const Json& jt : *it) {
      if (!jt.is_object()) throw validation_error("turn is not an object");
      Turn t{detail::require_string(jt, "speaker"), detail::require_string(jt, "text")};
      detail::check_turn(t);
      d.turns.push_back(std::move(t));
    }
  } else {
    const std::string text = detail::require_string(rec, "dialogue");
    if (trim(text).empty()) throw validation_error("empty dialogue");
    d.turns = parse_turns(text);
  }
  if (d.turns.empty()) throw validation_error("empty dialogue");
  d.summary = detail::optional_string(rec, "summary").value_or("");
  return d;
}

inline Json to_record(const Dialogue& d) {
  Json turns = Json::array();
  for (const Turn& t : d.turns) turns.push_back(Json{{"speaker", t.speaker}, {"text", t.text}});
  return Json{{"id", d.id}, {"turns", std::move(turns)}, {"summary", d.summary}};
}

inline Json to_record(const Seq2SeqExample& ex) {
  return Json{{"id", ex.id}, {"source", ex.source}, {"target", ex.target}, {"task", task_name(ex.task)}};
}

inline Json to_record(const Json& j) { return j; }

inline std::string dump_record(const Json& j) { return j.dump(-1, ' ', false, Json::error_handler_t::strict); }

// ---------------------------------------------------------------------------
// Streaming record I/O

// Reads newline-delimited JSON objects one at a time. Blank lines are
// skipped; line numbers are 1-based physical lines.
class RecordReader {
 public:
  explicit RecordReader(const std::string& path) : path_(path), in_(path, std::ios::binary) {
    if (!in_) throw io_error("cannot open " + path);
  }

  // Returns false at end of input.
  bool next(Json& out) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (trim_ascii_empty(line)) continue;
      try {
        out = Json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw validation_error(where() + ": malformed record: " + e.what());
      }
      return true;
    }
    if (in_.bad()) throw io_error("read failure on " + path_);
    return false;
  }

  size_t line() const { return line_; }
  const std::string& path() const { return path_; }
  std::string where() const { return path_ + ":" + std::to_string(line_); }

 private:
  static bool trim_ascii_empty(const std::string& s) {
    return s.find_first_not_of(" \t\r\n") == std::string::npos;
  }

  std::string path_;
  std::ifstream in_;
  size_t line_ = 0;
};

// Tracks id uniqueness with the line each id first appeared on.
class IdRegistry {
 public:
  void add(const std::string& id, size_t line, const std::string& path) {
    auto [it, inserted] = first_line_.emplace(id, line);
    if (!inserted) {
      throw validation_error(path + ": duplicate id \"" + id + "\" on lines " +
                             std::to_string(it->second) + " and " + std::to_string(line));
    }
  }

 private:
  std::unordered_map<std::string, size_t> first_line_;
};

// Streams dialogues through `fn` in file order, validating ids.
inline size_t for_each_dialogue(const std::string& path, const std::function<void(Dialogue&&)>& fn) {
  RecordReader reader(path);
  IdRegistry ids;
  Json rec;
  size_t count = 0;
  while (reader.next(rec)) {
    Dialogue d;
    try {
      d = parse_dialogue(rec);
    } catch (const Error& e) {
      throw validation_error(reader.where() + ": " + e.what());
    }
    ids.add(d.id, reader.line(), path);
    fn(std::move(d));
    ++count;
  }
  return count;
}

inline std::vector<Dialogue> load_corpus(const std::string& path) {
  std::vector<Dialogue> out;
  for_each_dialogue(path, [&](Dialogue&& d) { out.push_back(std::move(d)); });
  return out;
}

class RecordWriter {
 public:
  explicit RecordWriter(const std::string& path) : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw io_error("cannot open " + path + " for writing");
  }

  void write(const Json& j) {
    out_ << dump_record(j) << '\n';
    if (!out_) throw io_error("write failure on " + path_);
    ++count_;
  }

  size_t count() const { return count_; }

  void close() {
    out_.close();
    if (out_.fail()) throw io_error("write failure on " + path_);
  }

 private:
  std::string path_;
  std::ofstream out_;
  size_t count_ = 0;
};

template <class Record>
size_t emit_records(const std::string& path, const std::vector<Record>& records) {
  RecordWriter w(path);
  for (const Record& r : records) w.write(to_record(r));
  w.close();
  return w.count();
}

}  // namespace dialsum
