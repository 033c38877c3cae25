#include "commands.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "dialsum/dialsum.hpp"
#include "manifest.hpp"
#include "parallel.hpp"

namespace dialsum::cli {
namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::unordered_set<std::string> lowercase_lines(std::string_view content) {
  std::unordered_set<std::string> out;
  for (const std::string& line : dialsum::detail::content_lines(content)) out.insert(to_lower(line));
  return out;
}

NamePool load_pool(const PipelineConfig& cfg) {
  const std::string male = cfg.resources.male_names ? read_text(*cfg.resources.male_names)
                                                    : std::string(resources::kMaleNames);
  const std::string female = cfg.resources.female_names ? read_text(*cfg.resources.female_names)
                                                        : std::string(resources::kFemaleNames);
  return NamePool::from_lists(male, female);
}

GenderLexicon load_lexicon(const PipelineConfig& cfg) {
  return cfg.resources.gender_lexicon ? GenderLexicon::load(*cfg.resources.gender_lexicon) : GenderLexicon::bundled();
}

Json resources_json(const PipelineConfig& cfg) {
  auto file_or_bundled = [](const std::optional<std::string>& p) -> Json {
    if (!p) return "bundled";
    return Json{{"file", std::filesystem::path(*p).filename().string()}, {"sha256", sha256_file(*p)}};
  };
  return Json{{"male_names", file_or_bundled(cfg.resources.male_names)},
              {"female_names", file_or_bundled(cfg.resources.female_names)},
              {"gender_lexicon", file_or_bundled(cfg.resources.gender_lexicon)},
              {"gazetteer", file_or_bundled(cfg.resources.gazetteer)},
              {"entity_stopwords", file_or_bundled(cfg.resources.entity_stopwords)},
              {"pronouns", file_or_bundled(cfg.resources.pronouns)}};
}

Json corrupt_json(const PipelineConfig& cfg) {
  const CorruptionConfig& c = cfg.corrupt;
  Json objectives = Json::array();
  for (Objective o : c.objectives) objectives.push_back(objective_name(o));
  Json priority = Json::array();
  for (Objective o : c.priority) priority.push_back(objective_name(o));
  return Json{{"objectives", objectives},     {"p_mask", c.p_mask},
              {"lambda", c.lambda},           {"p_mask_pronoun", c.p_mask_pronoun},
              {"tfidf_top_frac", c.tfidf_top_frac}, {"p_mask_tfidf", c.p_mask_tfidf},
              {"p_mask_entity", c.p_mask_entity}, {"mask_token", c.mask_token},
              {"priority", priority},         {"exclude_headers", cfg.exclude_headers}};
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string format_double_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <class Fn>
void for_each_record(const std::string& path, Fn&& fn) {
  RecordReader reader(path);
  Json rec;
  while (reader.next(rec)) {
    try {
      fn(rec, reader);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::Io) throw;
      const std::string what = e.what();
      if (what.starts_with(path)) throw;
      throw validation_error(reader.where() + ": " + what);
    }
  }
}

std::unordered_map<std::string, SubstitutionMap> load_maps(const std::string& path) {
  std::unordered_map<std::string, SubstitutionMap> maps;
  IdRegistry ids;
  for_each_record(path, [&](const Json& rec, const RecordReader& r) {
    SubstitutionMap m = parse_substitution_map(rec);
    ids.add(m.dialogue_id, r.line(), path);
    maps.emplace(m.dialogue_id, std::move(m));
  });
  return maps;
}

// Fail before any output file is created.
void check_inputs(std::initializer_list<const std::optional<std::string>> paths) {
  for (const auto& p : paths) {
    if (p && !std::ifstream(*p, std::ios::binary)) throw io_error("cannot open " + *p);
  }
}

}  // namespace

int run_validate(const Context& ctx, const ValidateOptions& opt) {
  size_t turns = 0;
  const size_t n = for_each_dialogue(opt.in, [&](Dialogue&& d) { turns += d.turns.size(); });
  std::cout << "valid: " << n << " records\n";
  if (opt.out) {
    RecordWriter w(*opt.out);
    w.write(Json{{"records", n}, {"turns", turns}});
    w.close();
    Manifest{"validate", ctx.config.global_seed, Json::object(), {opt.in}, {*opt.out}, n}.write_beside(*opt.out);
  }
  return 0;
}

int run_stats(const Context& ctx, const StatsOptions& opt) {
  size_t dialogues = 0, turns = 0, speaker_total = 0;
  std::map<size_t, size_t> histogram;
  for_each_dialogue(opt.in, [&](Dialogue&& d) {
    ++dialogues;
    turns += d.turns.size();
    const size_t s = speaker_count(d);
    speaker_total += s;
    ++histogram[s];
  });
  const double mean = dialogues ? static_cast<double>(speaker_total) / dialogues : 0.0;
  std::cout << "dialogues: " << dialogues << "\n"
            << "turns: " << turns << "\n"
            << "mean_speakers: " << format_double(mean) << "\n";
  for (const auto& [k, c] : histogram) std::cout << "speakers=" << k << ": " << c << "\n";
  if (opt.out) {
    Json hist = Json::object();
    for (const auto& [k, c] : histogram) hist[std::to_string(k)] = c;
    RecordWriter w(*opt.out);
    w.write(Json{{"dialogues", dialogues}, {"turns", turns}, {"mean_speakers", mean}, {"speaker_histogram", hist}});
    w.close();
    Manifest{"stats", ctx.config.global_seed, Json::object(), {opt.in}, {*opt.out}, dialogues}.write_beside(*opt.out);
  }
  return 0;
}

int run_sub_names(const Context& ctx, const SubNamesOptions& opt) {
  check_inputs({opt.in});
  const NamePool pool = load_pool(ctx.config);
  const GenderLexicon lexicon = load_lexicon(ctx.config);
  check_pool_against_lexicon(pool, lexicon);
  const uint64_t seed = ctx.config.global_seed;

  RecordWriter out(opt.out);
  RecordWriter maps(opt.maps_out);
  OrderedMap<Dialogue, SubstitutionResult> pipeline(
      ctx.jobs,
      [&](const Dialogue& d) {
        RngStream rng = derive_rng(seed, d.id);
        return substitute_names(d, lexicon, pool, rng);
      },
      [&](SubstitutionResult&& r) {
        out.write(to_record(r.dialogue));
        maps.write(to_record(r.map));
      });
  for_each_dialogue(opt.in, [&](Dialogue&& d) { pipeline.push(std::move(d)); });
  pipeline.flush();
  out.close();
  maps.close();

  Manifest m{"sub-names", seed, Json{{"resources", resources_json(ctx.config)}}, {opt.in}, {opt.out, opt.maps_out},
             out.count()};
  m.write_beside(opt.out);
  m.write_beside(opt.maps_out);
  std::cout << "substituted: " << out.count() << " dialogues\n";
  return 0;
}

int run_restore_names(const Context& ctx, const RestoreNamesOptions& opt) {
  check_inputs({opt.in, opt.maps});
  const auto maps = load_maps(opt.maps);
  RecordWriter out(opt.out);
  IdRegistry ids;
  const char* field = opt.field.c_str();
  for_each_record(opt.in, [&](const Json& rec, const RecordReader& r) {
    if (!rec.is_object()) throw validation_error("record is not an object");
    const std::string id = dialsum::detail::require_string(rec, "id");
    ids.add(id, r.line(), opt.in);
    Json copy = rec;
    if (auto it = maps.find(id); it != maps.end()) {
      copy[field] = restore_names(dialsum::detail::require_string(rec, field), it->second);
    }
    out.write(copy);
  });
  out.close();
  Manifest{"restore-names", ctx.config.global_seed, Json{{"field", opt.field}}, {opt.in, opt.maps}, {opt.out},
           out.count()}
      .write_beside(opt.out);
  std::cout << "restored: " << out.count() << " records\n";
  return 0;
}

int run_mark_neg(const Context& ctx, const MarkNegOptions& opt) {
  check_inputs({opt.in, opt.annotations});
  std::optional<NegationStandoff> standoff;
  if (opt.annotations) standoff = load_negation_standoff(*opt.annotations);
  const std::string open = ctx.config.neg_open;
  const std::string close = ctx.config.neg_close;
  static const std::vector<NegationAnnotation> kNone;

  RecordWriter out(opt.out);
  OrderedMap<Dialogue, Dialogue> pipeline(
      ctx.jobs,
      [&](const Dialogue& d) {
        const std::vector<NegationAnnotation>* external = nullptr;
        if (standoff) {
          auto it = standoff->find(d.id);
          external = it == standoff->end() ? &kNone : &it->second;
        }
        return mark_dialogue_negation(d, external, open, close);
      },
      [&](Dialogue&& d) { out.write(to_record(d)); });
  for_each_dialogue(opt.in, [&](Dialogue&& d) { pipeline.push(std::move(d)); });
  pipeline.flush();
  out.close();

  std::vector<std::string> inputs{opt.in};
  if (opt.annotations) inputs.push_back(*opt.annotations);
  Manifest{"mark-neg", ctx.config.global_seed,
           Json{{"open", open}, {"close", close}, {"detector", opt.annotations ? "standoff" : "rules"}}, inputs,
           {opt.out}, out.count()}
      .write_beside(opt.out);
  std::cout << "marked: " << out.count() << " dialogues\n";
  return 0;
}

int run_build_tfidf(const Context& ctx, const BuildTfidfOptions& opt) {
  check_inputs({opt.in});
  TfIdfModel model;
  for_each_dialogue(opt.in, [&](Dialogue&& d) { model.add_document(render(d)); });
  if (model.doc_count == 0) throw validation_error("cannot build TF-IDF over an empty corpus");
  RecordWriter out(opt.out);
  out.write(to_record(model));
  out.close();
  Manifest{"build-tfidf", ctx.config.global_seed, Json::object(), {opt.in}, {opt.out}, model.doc_count}.write_beside(
      opt.out);
  std::cout << "tfidf: " << model.doc_count << " documents, " << model.df.size() << " terms\n";
  return 0;
}

int run_corrupt(const Context& ctx, const CorruptOptions& opt) {
  check_inputs({opt.in, opt.tfidf_model, opt.entities});
  const PipelineConfig& cfg = ctx.config;
  const CorruptionConfig& cc = cfg.corrupt;
  cc.validate();
  const bool need_tfidf = cc.has(Objective::TfIdf);
  const bool need_entities = cc.has(Objective::Entity);
  std::vector<std::string> inputs{opt.in};

  TfIdfModel model;
  bool model_loaded = false;
  if (need_tfidf && opt.tfidf_model) {
    RecordReader reader(*opt.tfidf_model);
    Json rec;
    if (!reader.next(rec)) throw validation_error(*opt.tfidf_model + ": empty TF-IDF model file");
    try {
      model = parse_tfidf_model(rec);
    } catch (const Error& e) {
      throw validation_error(reader.where() + ": " + e.what());
    }
    model_loaded = true;
    inputs.push_back(*opt.tfidf_model);
  }

  std::optional<std::unordered_map<std::string, std::vector<TokenRange>>> external_entities;
  EntityOptions entity_opts;
  entity_opts.include_headers = !cfg.exclude_headers;
  if (need_entities) {
    entity_opts.stopwords = lowercase_lines(cfg.resources.entity_stopwords ? read_text(*cfg.resources.entity_stopwords)
                                                                           : std::string(resources::kEntityStopwords));
    if (opt.entities) {
      external_entities.emplace();
      for_each_record(*opt.entities, [&](const Json& rec, const RecordReader&) {
        auto& list = (*external_entities)[dialsum::detail::require_string(rec, "id")];
        const Json& anns = dialsum::detail::require(rec, "annotations");
        if (!anns.is_array()) throw validation_error("field \"annotations\" must be an array");
        for (const Json& a : anns) {
          const char* key = a.contains("span") ? "span" : "scope";
          list.push_back(parse_token_range(dialsum::detail::require(a, key)));
        }
      });
      inputs.push_back(*opt.entities);
    } else if (cfg.resources.gazetteer) {
      entity_opts.gazetteer = lowercase_lines(read_text(*cfg.resources.gazetteer));
    } else {
      const NamePool pool = load_pool(cfg);
      for (const auto* list : {&pool.male, &pool.female}) {
        for (const std::string& n : *list) entity_opts.gazetteer.insert(to_lower(n));
      }
    }
  }

  const bool collect_speakers = need_entities && !opt.entities && !cfg.resources.gazetteer;
  if ((need_tfidf && !model_loaded) || collect_speakers) {
    for_each_dialogue(opt.in, [&](Dialogue&& d) {
      if (need_tfidf && !model_loaded) model.add_document(render(d));
      if (collect_speakers) {
        for (const Turn& t : d.turns) entity_opts.gazetteer.insert(to_lower(t.speaker));
      }
    });
    if (need_tfidf && !model_loaded && model.doc_count == 0) {
      throw validation_error("cannot build TF-IDF over an empty corpus");
    }
  }

  std::optional<std::unordered_set<std::string>> pronouns;
  if (cfg.resources.pronouns) pronouns = lowercase_lines(read_text(*cfg.resources.pronouns));

  Json objectives = Json::array();
  for (Objective o : cc.priority) {
    if (cc.has(o)) objectives.push_back(objective_name(o));
  }

  const uint64_t seed = cfg.global_seed;
  RecordWriter out(opt.out);
  OrderedMap<Dialogue, Json> pipeline(
      ctx.jobs,
      [&](const Dialogue& d) {
        const std::vector<Token> tokens = tokenize(render(d));
        std::vector<TokenRange> entities;
        if (need_entities) {
          if (external_entities) {
            auto it = external_entities->find(d.id);
            if (it != external_entities->end()) entities = it->second;
          } else {
            entities = detect_entities(d, tokens, entity_opts);
          }
        }
        PlanInputs in;
        in.tfidf = need_tfidf ? &model : nullptr;
        in.entities = need_entities ? &entities : nullptr;
        in.pronouns = pronouns ? &*pronouns : nullptr;
        RngStream rng = derive_rng(seed, d.id);
        const MaskPlan plan = plan_corruption(d.id, tokens, cc, in, rng);
        Json rec = to_record(make_denoising_example(d, tokens, plan, cc));
        rec["objectives"] = objectives;
        return rec;
      },
      [&](Json&& rec) { out.write(rec); });
  for_each_dialogue(opt.in, [&](Dialogue&& d) { pipeline.push(std::move(d)); });
  pipeline.flush();
  out.close();

  Manifest{"corrupt", seed, Json{{"corrupt", corrupt_json(cfg)}, {"resources", resources_json(cfg)}}, inputs,
           {opt.out}, out.count()}
      .write_beside(opt.out);
  std::cout << "corrupted: " << out.count() << " dialogues\n";
  return 0;
}

int run_mix(const Context& ctx, const MixOptions& opt) {
  const MixSpec& spec = ctx.config.mix;
  spec.validate();
  std::vector<std::vector<Seq2SeqExample>> data;
  std::vector<std::string> inputs;
  Json components = Json::array();
  for (const MixComponent& c : spec.components) {
    data.push_back(load_component(c.task, c.path));
    inputs.push_back(c.path);
  }
  const std::vector<double> weights = resolve_weights(spec, data);
  for (size_t i = 0; i < spec.components.size(); ++i) {
    components.push_back(Json{{"task", task_name(spec.components[i].task)},
                              {"file", std::filesystem::path(spec.components[i].path).filename().string()},
                              {"weight", weights[i]},
                              {"size", data[i].size()}});
  }

  Mixer mixer(std::move(data), weights, spec.strategy, spec.epoch_size, ctx.config.global_seed, spec.task_prefix);
  RecordWriter out(opt.out);
  std::vector<size_t> per_component(spec.components.size(), 0);
  while (!mixer.done()) {
    MixedExample m = mixer.next();
    ++per_component[m.component];
    out.write(to_record(m.example));
  }
  out.close();
  Manifest{"mix", ctx.config.global_seed,
           Json{{"strategy", mix_strategy_name(spec.strategy)},
                {"epoch_size", spec.epoch_size},
                {"task_prefix", spec.task_prefix},
                {"components", components}},
           inputs, {opt.out}, out.count()}
      .write_beside(opt.out);
  for (size_t i = 0; i < per_component.size(); ++i) {
    std::cout << task_name(spec.components[i].task) << ": " << per_component[i] << "\n";
  }
  return 0;
}

int run_rouge(const Context& ctx, const RougeOptions& opt) {
  check_inputs({opt.in, opt.maps});
  std::optional<SubstitutionIndex> maps;
  std::vector<std::string> inputs{opt.in};
  if (opt.maps) {
    maps = load_maps(*opt.maps);
    inputs.push_back(*opt.maps);
  }
  const bool stem = ctx.config.stem;

  RecordWriter out(opt.out);
  IdRegistry ids;
  double sum1 = 0, sum2 = 0, suml = 0;
  size_t n = 0;
  OrderedMap<EvalPair, ScoredPair> pipeline(
      ctx.jobs,
      [&](const EvalPair& p) {
        std::string cand = p.candidate;
        if (maps) {
          if (auto it = maps->find(p.id); it != maps->end()) cand = restore_names(cand, it->second);
        }
        return ScoredPair{p.id, score_pair(cand, p.reference, stem)};
      },
      [&](ScoredPair&& s) {
        sum1 += s.scores.r1.f1;
        sum2 += s.scores.r2.f1;
        suml += s.scores.rl.f1;
        ++n;
        out.write(to_record(s));
      });
  for_each_record(opt.in, [&](const Json& rec, const RecordReader& r) {
    EvalPair p = parse_eval_pair(rec);
    ids.add(p.id, r.line(), opt.in);
    pipeline.push(std::move(p));
  });
  pipeline.flush();
  out.close();

  Manifest{"rouge", ctx.config.global_seed, Json{{"stem", stem}, {"restore_names", opt.maps.has_value()}}, inputs,
           {opt.out}, n}
      .write_beside(opt.out);
  const double d = n ? static_cast<double>(n) : 1.0;
  std::cout << "pairs: " << n << "\n"
            << "rouge1_f1: " << format_double(sum1 / d) << "\n"
            << "rouge2_f1: " << format_double(sum2 / d) << "\n"
            << "rougeL_f1: " << format_double(suml / d) << "\n";
  return 0;
}

int run_speaker_analysis(const Context& ctx, const SpeakerAnalysisOptions& opt) {
  check_inputs({opt.corpus, opt.scores});
  std::unordered_map<std::string, size_t> speakers_by_id;
  for_each_dialogue(opt.corpus, [&](Dialogue&& d) { speakers_by_id[d.id] = speaker_count(d); });
  std::vector<ScoredPair> scored;
  IdRegistry ids;
  for_each_record(opt.scores, [&](const Json& rec, const RecordReader& r) {
    scored.push_back(parse_scored_pair(rec));
    ids.add(scored.back().id, r.line(), opt.scores);
  });
  const auto buckets = speaker_analysis(speakers_by_id, scored);

  std::ofstream out(opt.out, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open " + opt.out + " for writing");
  out << "n_speakers,n_dialogues,r1,r2,rl\n";
  for (const SpeakerBucket& b : buckets) {
    out << b.n_speakers << ',' << b.n_dialogues << ',' << format_double_full(b.mean_r1) << ','
        << format_double_full(b.mean_r2) << ',' << format_double_full(b.mean_rl) << '\n';
  }
  out.close();
  if (out.fail()) throw io_error("write failure on " + opt.out);
  Manifest{"speaker-analysis", ctx.config.global_seed, Json{{"metric", "f1"}}, {opt.corpus, opt.scores}, {opt.out},
           buckets.size()}
      .write_beside(opt.out);
  for (const SpeakerBucket& b : buckets) {
    std::cout << b.n_speakers << " speakers: " << b.n_dialogues << " dialogues, R1 " << format_double(b.mean_r1)
              << " R2 " << format_double(b.mean_r2) << " RL " << format_double(b.mean_rl) << "\n";
  }
  return 0;
}

}  // namespace dialsum::cli
