#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "commands.hpp"
#include "manifest.hpp"
#include "dialsum/error.hpp"

namespace {

using namespace dialsum;
using namespace dialsum::cli;

struct Overrides {
  std::optional<uint64_t> seed;
  std::optional<std::string> neg_open, neg_close;
  std::vector<std::string> objectives;
  std::vector<std::string> priority;
  std::optional<double> p_mask, lambda, p_mask_pronoun, tfidf_top_frac, p_mask_tfidf, p_mask_entity;
  std::optional<std::string> mask_token;
  bool exclude_headers = false;
  std::optional<std::string> male_names, female_names, lexicon, gazetteer, stopwords, pronouns;
  std::vector<std::string> components;
  std::optional<std::string> strategy;
  std::optional<size_t> epoch_size;
  bool task_prefix = false;
  bool stem = false;
};

std::vector<std::string> split_commas(const std::vector<std::string>& values) {
  std::vector<std::string> out;
  for (const std::string& v : values) {
    size_t pos = 0;
    while (pos <= v.size()) {
      const size_t comma = std::min(v.find(',', pos), v.size());
      if (comma > pos) out.push_back(v.substr(pos, comma - pos));
      pos = comma + 1;
    }
  }
  return out;
}

std::string existing(const std::string& p) {
  if (!std::filesystem::exists(p)) throw io_error("file not found: " + p);
  return p;
}

// task:path[:weight]
MixComponent parse_component(const std::string& spec) {
  const size_t colon = spec.find(':');
  if (colon == std::string::npos) throw validation_error("--component expects task:path[:weight], got \"" + spec + "\"");
  MixComponent c;
  c.task = parse_task(spec.substr(0, colon));
  std::string rest = spec.substr(colon + 1);
  const size_t last = rest.rfind(':');
  if (last != std::string::npos) {
    const std::string tail = rest.substr(last + 1);
    try {
      size_t used = 0;
      const double w = std::stod(tail, &used);
      if (used == tail.size()) {
        c.weight = w;
        rest.resize(last);
      }
    } catch (const std::exception&) {
    }
  }
  c.path = existing(rest);
  return c;
}

void apply(PipelineConfig& cfg, const Overrides& o) {
  if (o.seed) cfg.global_seed = *o.seed;
  if (o.neg_open) cfg.neg_open = *o.neg_open;
  if (o.neg_close) cfg.neg_close = *o.neg_close;
  if (!o.objectives.empty()) {
    cfg.corrupt.objectives.clear();
    for (const std::string& s : split_commas(o.objectives)) cfg.corrupt.objectives.insert(parse_objective(s));
  }
  if (!o.priority.empty()) {
    cfg.corrupt.priority.clear();
    for (const std::string& s : split_commas(o.priority)) cfg.corrupt.priority.push_back(parse_objective(s));
  }
  if (o.p_mask) cfg.corrupt.p_mask = *o.p_mask;
  if (o.lambda) cfg.corrupt.lambda = *o.lambda;
  if (o.p_mask_pronoun) cfg.corrupt.p_mask_pronoun = *o.p_mask_pronoun;
  if (o.tfidf_top_frac) cfg.corrupt.tfidf_top_frac = *o.tfidf_top_frac;
  if (o.p_mask_tfidf) cfg.corrupt.p_mask_tfidf = *o.p_mask_tfidf;
  if (o.p_mask_entity) cfg.corrupt.p_mask_entity = *o.p_mask_entity;
  if (o.mask_token) cfg.corrupt.mask_token = *o.mask_token;
  if (o.exclude_headers) cfg.exclude_headers = true;
  if (o.male_names) cfg.resources.male_names = existing(*o.male_names);
  if (o.female_names) cfg.resources.female_names = existing(*o.female_names);
  if (o.lexicon) cfg.resources.gender_lexicon = existing(*o.lexicon);
  if (o.gazetteer) cfg.resources.gazetteer = existing(*o.gazetteer);
  if (o.stopwords) cfg.resources.entity_stopwords = existing(*o.stopwords);
  if (o.pronouns) cfg.resources.pronouns = existing(*o.pronouns);
  if (!o.components.empty()) {
    cfg.mix.components.clear();
    for (const std::string& c : o.components) cfg.mix.components.push_back(parse_component(c));
  }
  if (o.strategy) cfg.mix.strategy = parse_mix_strategy(*o.strategy);
  if (o.epoch_size) cfg.mix.epoch_size = *o.epoch_size;
  if (o.task_prefix) cfg.mix.task_prefix = true;
  if (o.stem) cfg.stem = true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dialogue summarization data toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  std::optional<std::string> config_path;
  size_t jobs = 1;
  Overrides ov;
  app.add_option("--config", config_path, "YAML pipeline config");
  app.add_option("--seed", ov.seed, "Global seed (default 42)");
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  ValidateOptions validate;
  auto* c_validate = app.add_subcommand("validate", "Check a dialogue corpus and print its record count");
  c_validate->add_option("--in", validate.in)->required();
  c_validate->add_option("--out", validate.out, "Optional JSON summary");

  StatsOptions stats;
  auto* c_stats = app.add_subcommand("stats", "Corpus statistics including mean speakers per dialogue");
  c_stats->add_option("--in", stats.in)->required();
  c_stats->add_option("--out", stats.out);

  SubNamesOptions sub;
  auto* c_sub = app.add_subcommand("sub-names", "Replace speaker names with same-gender names from the pools");
  c_sub->add_option("--in", sub.in)->required();
  c_sub->add_option("--out", sub.out)->required();
  c_sub->add_option("--maps-out", sub.maps_out, "Substitution maps output")->required();
  c_sub->add_option("--male-names", ov.male_names);
  c_sub->add_option("--female-names", ov.female_names);
  c_sub->add_option("--lexicon", ov.lexicon, "Gender lexicon (name<TAB>gender)");

  RestoreNamesOptions restore;
  auto* c_restore = app.add_subcommand("restore-names", "Map substituted names back to the originals");
  c_restore->add_option("--in", restore.in)->required();
  c_restore->add_option("--maps", restore.maps)->required();
  c_restore->add_option("--out", restore.out)->required();
  c_restore->add_option("--field", restore.field, "Record field to rewrite")->capture_default_str();

  MarkNegOptions neg;
  auto* c_neg = app.add_subcommand("mark-neg", "Insert negation scope markers");
  c_neg->add_option("--in", neg.in)->required();
  c_neg->add_option("--out", neg.out)->required();
  c_neg->add_option("--annotations", neg.annotations, "Standoff cue/scope annotations");
  c_neg->add_option("--neg-open", ov.neg_open);
  c_neg->add_option("--neg-close", ov.neg_close);

  BuildTfidfOptions tfidf;
  auto* c_tfidf = app.add_subcommand("build-tfidf", "Fit document frequencies over a corpus");
  c_tfidf->add_option("--in", tfidf.in)->required();
  c_tfidf->add_option("--out", tfidf.out)->required();

  CorruptOptions corrupt;
  auto* c_corrupt = app.add_subcommand("corrupt", "Build denoising examples");
  c_corrupt->add_option("--in", corrupt.in)->required();
  c_corrupt->add_option("--out", corrupt.out)->required();
  c_corrupt->add_option("--objective,--objectives", ov.objectives, "word, span, pronoun, tfidf, entity");
  c_corrupt->add_option("--priority", ov.priority);
  c_corrupt->add_option("--p-mask,--p_mask", ov.p_mask);
  c_corrupt->add_option("--lambda", ov.lambda);
  c_corrupt->add_option("--p-mask-pronoun,--p_mask_pronoun", ov.p_mask_pronoun);
  c_corrupt->add_option("--tfidf-top-frac,--tfidf_top_frac", ov.tfidf_top_frac);
  c_corrupt->add_option("--p-mask-tfidf,--p_mask_tfidf", ov.p_mask_tfidf);
  c_corrupt->add_option("--p-mask-entity,--p_mask_entity", ov.p_mask_entity);
  c_corrupt->add_option("--mask-token,--mask_token", ov.mask_token);
  c_corrupt->add_flag("--exclude-headers", ov.exclude_headers, "Entity objective skips speaker headers");
  c_corrupt->add_option("--tfidf-model", corrupt.tfidf_model, "Model from build-tfidf");
  c_corrupt->add_option("--gazetteer", ov.gazetteer);
  c_corrupt->add_option("--entities", corrupt.entities, "Standoff entity annotations");
  c_corrupt->add_option("--entity-stopwords", ov.stopwords);
  c_corrupt->add_option("--pronouns", ov.pronouns);
  c_corrupt->add_option("--male-names", ov.male_names);
  c_corrupt->add_option("--female-names", ov.female_names);

  MixOptions mixopt;
  auto* c_mix = app.add_subcommand("mix", "Mix task components into one training epoch");
  c_mix->add_option("--out", mixopt.out)->required();
  c_mix->add_option("--component", ov.components, "task:path[:weight], repeatable");
  c_mix->add_option("--strategy", ov.strategy, "proportional or round-robin");
  c_mix->add_option("--epoch-size", ov.epoch_size);
  c_mix->add_flag("--task-prefix", ov.task_prefix);

  RougeOptions rouge;
  auto* c_rouge = app.add_subcommand("rouge", "Score candidate/reference pairs");
  c_rouge->add_option("--in", rouge.in)->required();
  c_rouge->add_option("--out", rouge.out)->required();
  c_rouge->add_option("--maps", rouge.maps, "Restore substituted names before scoring");
  c_rouge->add_flag("--stem", ov.stem, "Porter stemming");

  SpeakerAnalysisOptions spk;
  auto* c_spk = app.add_subcommand("speaker-analysis", "Mean ROUGE by number of speakers");
  c_spk->add_option("--corpus", spk.corpus)->required();
  c_spk->add_option("--scores", spk.scores)->required();
  c_spk->add_option("--out", spk.out)->required();

  for (CLI::App* sub_app : app.get_subcommands({})) sub_app->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    Context ctx;
    if (config_path) ctx.config = load_config(*config_path);
    apply(ctx.config, ov);
    ctx.jobs = jobs;

    if (c_validate->parsed()) return run_validate(ctx, validate);
    if (c_stats->parsed()) return run_stats(ctx, stats);
    if (c_sub->parsed()) return run_sub_names(ctx, sub);
    if (c_restore->parsed()) return run_restore_names(ctx, restore);
    if (c_neg->parsed()) return run_mark_neg(ctx, neg);
    if (c_tfidf->parsed()) return run_build_tfidf(ctx, tfidf);
    if (c_corrupt->parsed()) return run_corrupt(ctx, corrupt);
    if (c_mix->parsed()) return run_mix(ctx, mixopt);
    if (c_rouge->parsed()) return run_rouge(ctx, rouge);
    if (c_spk->parsed()) return run_speaker_analysis(ctx, spk);
  } catch (const Error& e) {
    std::cerr << "dialsum: " << e.what() << "\n";
    return e.kind() == ErrorKind::Io ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "dialsum: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
