#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace dialsum::cli {

struct Context {
  PipelineConfig config;
  size_t jobs = 1;
};

struct ValidateOptions {
  std::string in;
  std::optional<std::string> out;
};

struct StatsOptions {
  std::string in;
  std::optional<std::string> out;
};

struct SubNamesOptions {
  std::string in;
  std::string out;
  std::string maps_out;
};

struct RestoreNamesOptions {
  std::string in;
  std::string maps;
  std::string out;
  std::string field = "candidate";
};

struct MarkNegOptions {
  std::string in;
  std::string out;
  std::optional<std::string> annotations;
};

struct BuildTfidfOptions {
  std::string in;
  std::string out;
};

struct CorruptOptions {
  std::string in;
  std::string out;
  std::optional<std::string> tfidf_model;
  std::optional<std::string> entities;
};

struct MixOptions {
  std::string out;
};

struct RougeOptions {
  std::string in;
  std::string out;
  std::optional<std::string> maps;
};

struct SpeakerAnalysisOptions {
  std::string corpus;
  std::string scores;
  std::string out;
};

int run_validate(const Context& ctx, const ValidateOptions& opt);
int run_stats(const Context& ctx, const StatsOptions& opt);
int run_sub_names(const Context& ctx, const SubNamesOptions& opt);
int run_restore_names(const Context& ctx, const RestoreNamesOptions& opt);
int run_mark_neg(const Context& ctx, const MarkNegOptions& opt);
int run_build_tfidf(const Context& ctx, const BuildTfidfOptions& opt);
int run_corrupt(const Context& ctx, const CorruptOptions& opt);
int run_mix(const Context& ctx, const MixOptions& opt);
int run_rouge(const Context& ctx, const RougeOptions& opt);
int run_speaker_analysis(const Context& ctx, const SpeakerAnalysisOptions& opt);

}  // namespace dialsum::cli
