#pragma once

// Pipeline configuration file (YAML). Unknown keys are rejected; relative
// resource paths resolve against the config file's directory.

#include <yaml-cpp/yaml.h>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dialsum/corruption.hpp"
#include "dialsum/error.hpp"
#include "dialsum/mtl_mixer.hpp"

namespace dialsum::cli {

struct ResourcePaths {
  std::optional<std::string> male_names;
  std::optional<std::string> female_names;
  std::optional<std::string> gender_lexicon;
  std::optional<std::string> gazetteer;
  std::optional<std::string> entity_stopwords;
  std::optional<std::string> pronouns;
};

struct PipelineConfig {
  uint64_t global_seed = 42;
  ResourcePaths resources;
  std::string neg_open = "<NEG>";
  std::string neg_close = "<\\NEG>";
  CorruptionConfig corrupt;
  bool exclude_headers = false;
  MixSpec mix;
  bool mix_present = false;
  bool stem = false;
};

namespace detail {

inline void reject_unknown(const YAML::Node& node, const std::string& where, std::set<std::string> allowed) {
  if (!node.IsMap()) throw validation_error("config: " + where + " must be a mapping");
  for (const auto& kv : node) {
    const std::string key = kv.first.as<std::string>();
    if (!allowed.count(key)) throw validation_error("config: unknown key \"" + key + "\" in " + where);
  }
}

inline std::string resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative()) path = base / path;
  if (!std::filesystem::exists(path)) throw io_error("config: referenced path does not exist: " + path.string());
  return path.string();
}

template <class T>
void read(const YAML::Node& node, const char* key, T& out) {
  if (node[key]) out = node[key].as<T>();
}

inline void read_prob(const YAML::Node& node, const char* key, double& out) {
  if (node[key]) out = node[key].as<double>();
}

}  // namespace detail

inline PipelineConfig load_config(const std::string& path) {
  if (!std::filesystem::exists(path)) throw io_error("config file not found: " + path);
  YAML::Node root;
  try {
    root = YAML::LoadFile(path);
  } catch (const YAML::Exception& e) {
    throw validation_error(path + ": " + e.what());
  }
  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  PipelineConfig cfg;
  try {
    if (root.IsNull()) return cfg;
    detail::reject_unknown(root, "top level", {"seed", "resources", "negation", "corrupt", "mix", "rouge"});
    detail::read(root, "seed", cfg.global_seed);

    if (const YAML::Node r = root["resources"]) {
      detail::reject_unknown(r, "resources",
                             {"male_names", "female_names", "gender_lexicon", "gazetteer", "entity_stopwords", "pronouns"});
      auto path_of = [&](const char* key, std::optional<std::string>& out) {
        if (r[key]) out = detail::resolve(base, r[key].as<std::string>());
      };
      path_of("male_names", cfg.resources.male_names);
      path_of("female_names", cfg.resources.female_names);
      path_of("gender_lexicon", cfg.resources.gender_lexicon);
      path_of("gazetteer", cfg.resources.gazetteer);
      path_of("entity_stopwords", cfg.resources.entity_stopwords);
      path_of("pronouns", cfg.resources.pronouns);
    }

    if (const YAML::Node n = root["negation"]) {
      detail::reject_unknown(n, "negation", {"open", "close"});
      detail::read(n, "open", cfg.neg_open);
      detail::read(n, "close", cfg.neg_close);
    }

    if (const YAML::Node c = root["corrupt"]) {
      detail::reject_unknown(c, "corrupt",
                             {"objectives", "p_mask", "lambda", "p_mask_pronoun", "tfidf_top_frac", "p_mask_tfidf",
                              "p_mask_entity", "mask_token", "priority", "exclude_headers"});
      if (c["objectives"]) {
        cfg.corrupt.objectives.clear();
        for (const auto& o : c["objectives"]) cfg.corrupt.objectives.insert(parse_objective(o.as<std::string>()));
      }
      if (c["priority"]) {
        cfg.corrupt.priority.clear();
        for (const auto& o : c["priority"]) cfg.corrupt.priority.push_back(parse_objective(o.as<std::string>()));
      }
      detail::read_prob(c, "p_mask", cfg.corrupt.p_mask);
      detail::read_prob(c, "lambda", cfg.corrupt.lambda);
      detail::read_prob(c, "p_mask_pronoun", cfg.corrupt.p_mask_pronoun);
      detail::read_prob(c, "tfidf_top_frac", cfg.corrupt.tfidf_top_frac);
      detail::read_prob(c, "p_mask_tfidf", cfg.corrupt.p_mask_tfidf);
      detail::read_prob(c, "p_mask_entity", cfg.corrupt.p_mask_entity);
      detail::read(c, "mask_token", cfg.corrupt.mask_token);
      detail::read(c, "exclude_headers", cfg.exclude_headers);
    }

    if (const YAML::Node m = root["mix"]) {
      detail::reject_unknown(m, "mix", {"strategy", "epoch_size", "task_prefix", "components"});
      cfg.mix_present = true;
      if (m["strategy"]) cfg.mix.strategy = parse_mix_strategy(m["strategy"].as<std::string>());
      detail::read(m, "epoch_size", cfg.mix.epoch_size);
      detail::read(m, "task_prefix", cfg.mix.task_prefix);
      if (m["components"]) {
        for (const auto& comp : m["components"]) {
          detail::reject_unknown(comp, "mix component", {"task", "path", "weight"});
          MixComponent mc;
          mc.task = parse_task(comp["task"].as<std::string>());
          mc.path = detail::resolve(base, comp["path"].as<std::string>());
          if (comp["weight"]) mc.weight = comp["weight"].as<double>();
          cfg.mix.components.push_back(std::move(mc));
        }
      }
    }

    if (const YAML::Node r = root["rouge"]) {
      detail::reject_unknown(r, "rouge", {"stem"});
      detail::read(r, "stem", cfg.stem);
    }
  } catch (const YAML::Exception& e) {
    throw validation_error(path + ": " + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Io) throw;
    throw validation_error(path + ": " + e.what());
  }
  return cfg;
}

}  // namespace dialsum::cli
