#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>

#include "dialsum/corpus_io.hpp"
#include "test_util.hpp"

using namespace dialsum;
using test_util::read_file;
using test_util::TempDir;
using test_util::write_file;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(DIALSUM_CLI) + " " + args + " 2>&1";
  RunResult r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string corpus_text() {
  return R"({"id":"1","dialogue":"Keith: Meg, pls buy some milk and cereals, I see now we've run out of them\nMeg: ok, I don't know what to do","summary":"Keith asks Meg to buy milk."})"
         "\n"
         R"({"id":"2","dialogue":"Orion: I miss him :(\nAnna: He is not coming back.\nTom: never say never","summary":"Orion misses him."})"
         "\n";
}

}  // namespace

TEST(Cli, ValidateCountsRecords) {
  TempDir dir("cli");
  write_file(dir / "c.jsonl", corpus_text());
  const auto r = run("validate --in " + (dir / "c.jsonl"));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("2 records"), std::string::npos) << r.out;
}

TEST(Cli, ExitCodes) {
  TempDir dir("cli");
  EXPECT_EQ(run("validate --in " + (dir / "missing.jsonl")).code, 2);
  write_file(dir / "bad.jsonl", "{\"id\":\"1\",\"dialogue\":\"A: x\"}\n{\"id\":\"1\",\"dialogue\":\"A: y\"}\n");
  const auto dup = run("validate --in " + (dir / "bad.jsonl"));
  EXPECT_EQ(dup.code, 1);
  EXPECT_NE(dup.out.find("lines 1 and 2"), std::string::npos) << dup.out;
  EXPECT_EQ(run("no-such-subcommand").code, 1);
  EXPECT_EQ(run("corrupt --in " + (dir / "bad.jsonl")).code, 1);
  write_file(dir / "c.jsonl", corpus_text());
  EXPECT_EQ(run("corrupt --in " + (dir / "c.jsonl") + " --out " + (dir / "o.jsonl") + " --objective word,span").code, 1);
  EXPECT_EQ(run("corrupt --in " + (dir / "c.jsonl") + " --out " + (dir / "o.jsonl") + " --p-mask 2").code, 1);
  EXPECT_EQ(run("validate --in " + (dir / "c.jsonl") + " --config " + (dir / "nope.yaml")).code, 2);
}

TEST(Cli, ConfigRejectsUnknownKeysAndMissingPaths) {
  TempDir dir("cli");
  write_file(dir / "c.jsonl", corpus_text());
  write_file(dir / "a.yaml", "seed: 1\ncorupt:\n  p_mask: 0.2\n");
  const auto r = run("--config " + (dir / "a.yaml") + " validate --in " + (dir / "c.jsonl"));
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("corupt"), std::string::npos) << r.out;
  write_file(dir / "b.yaml", "resources:\n  gazetteer: nowhere.txt\n");
  EXPECT_EQ(run("--config " + (dir / "b.yaml") + " validate --in " + (dir / "c.jsonl")).code, 2);
}

TEST(Cli, StatsMeanSpeakers) {
  TempDir dir("cli");
  write_file(dir / "c.jsonl", corpus_text());
  const auto r = run("stats --in " + (dir / "c.jsonl"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("mean_speakers: 2.500000"), std::string::npos) << r.out;
}

TEST(Cli, CorruptSpanTwiceIsByteIdentical) {
  TempDir dir("cli");
  write_file(dir / "c.jsonl", corpus_text());
  const std::string base = "corrupt --objective span --in " + (dir / "c.jsonl") + " --out ";
  ASSERT_EQ(run(base + (dir / "a.jsonl")).code, 0);
  ASSERT_EQ(run(base + (dir / "b.jsonl")).code, 0);
  EXPECT_EQ(read_file(dir / "a.jsonl"), read_file(dir / "b.jsonl"));
  // Manifests name outputs by file name, so compare after aligning names.
  std::string ma = read_file(dir / "a.jsonl.manifest.json");
  std::string mb = read_file(dir / "b.jsonl.manifest.json");
  ASSERT_FALSE(ma.empty());
  mb.replace(mb.find("\"b.jsonl\""), 9, "\"a.jsonl\"");
  EXPECT_EQ(ma, mb);

  const Json manifest = Json::parse(ma);
  EXPECT_EQ(manifest["seed"], 42);
  EXPECT_EQ(manifest["subcommand"], "corrupt");
  EXPECT_EQ(manifest["inputs"][0]["sha256"].get<std::string>().size(), 64u);
  EXPECT_TRUE(manifest.contains("config_sha256"));
  EXPECT_TRUE(manifest.contains("version"));

  RecordReader reader(dir / "a.jsonl");
  Json rec;
  ASSERT_TRUE(reader.next(rec));
  EXPECT_EQ(rec["task"], "Denoise");
  EXPECT_EQ(rec["objectives"], Json::array({"span"}));
  EXPECT_NE(rec["source"].get<std::string>().find("<mask>"), std::string::npos);
}

TEST(Cli, FlagsOverrideConfig) {
  TempDir dir("cli");
  write_file(dir / "c.jsonl", corpus_text());
  write_file(dir / "cfg.yaml", "seed: 7\ncorrupt:\n  objectives: [word]\n  p_mask: 0.0\n  mask_token: \"[M]\"\n");
  const std::string cfg = "--config " + (dir / "cfg.yaml");
  ASSERT_EQ(run(cfg + " corrupt --in " + (dir / "c.jsonl") + " --out " + (dir / "a.jsonl")).code, 0);
  RecordReader ra(dir / "a.jsonl");
  Json rec;
  ASSERT_TRUE(ra.next(rec));
  EXPECT_EQ(rec["source"], rec["target"]);
  EXPECT_EQ(Json::parse(read_file(dir / "a.jsonl.manifest.json"))["seed"], 7);

  ASSERT_EQ(run(cfg + " corrupt --p-mask 1 --seed 9 --in " + (dir / "c.jsonl") + " --out " + (dir / "b.jsonl")).code,
            0);
  RecordReader rb(dir / "b.jsonl");
  ASSERT_TRUE(rb.next(rec));
  EXPECT_EQ(rec["source"].get<std::string>().find("Keith"), std::string::npos);
  EXPECT_NE(rec["source"].get<std::string>().find("[M]"), std::string::npos);
  EXPECT_EQ(Json::parse(read_file(dir / "b.jsonl.manifest.json"))["seed"], 9);
}

TEST(Cli, SubstituteRestoreAndScore) {
  TempDir dir("cli");
  write_file(dir / "c.jsonl", corpus_text());
  const std::string before = read_file(dir / "c.jsonl");
  ASSERT_EQ(run("sub-names --in " + (dir / "c.jsonl") + " --out " + (dir / "s.jsonl") + " --maps-out " +
                (dir / "m.jsonl"))
                .code,
            0);
  EXPECT_EQ(read_file(dir / "c.jsonl"), before);
  const auto subbed = load_corpus(dir / "s.jsonl");
  ASSERT_EQ(subbed.size(), 2u);
  EXPECT_NE(subbed[0].turns[0].speaker, "Keith");
  EXPECT_EQ(subbed[0].summary, "Keith asks Meg to buy milk.");

  // A "generated" summary written with the substituted names.
  RecordReader maps(dir / "m.jsonl");
  Json m;
  ASSERT_TRUE(maps.next(m));
  const std::string keith = m["pairs"][0]["replacement"];
  const std::string meg = m["pairs"][1]["replacement"];
  write_file(dir / "p.jsonl", dump_record(Json{{"id", "1"},
                                               {"candidate", keith + " asks " + meg + " to buy milk."},
                                               {"reference", "Keith asks Meg to buy milk."}}) +
                                  "\n");
  auto r = run("rouge --in " + (dir / "p.jsonl") + " --out " + (dir / "r.jsonl") + " --maps " + (dir / "m.jsonl"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("rouge1_f1: 1.000000"), std::string::npos) << r.out;

  ASSERT_EQ(run("restore-names --in " + (dir / "p.jsonl") + " --maps " + (dir / "m.jsonl") + " --out " +
                (dir / "restored.jsonl"))
                .code,
            0);
  RecordReader rr(dir / "restored.jsonl");
  Json rec;
  ASSERT_TRUE(rr.next(rec));
  EXPECT_EQ(rec["candidate"], "Keith asks Meg to buy milk.");

  r = run("speaker-analysis --corpus " + (dir / "c.jsonl") + " --scores " + (dir / "r.jsonl") + " --out " +
          (dir / "b.csv"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(read_file(dir / "b.csv"), "n_speakers,n_dialogues,r1,r2,rl\n2,1,1,1,1\n");
}

TEST(Cli, MarkNegWithCustomMarkers) {
  TempDir dir("cli");
  write_file(dir / "c.jsonl", corpus_text());
  ASSERT_EQ(run("mark-neg --neg-open [ --neg-close ] --in " + (dir / "c.jsonl") + " --out " + (dir / "n.jsonl")).code,
            0);
  const auto d = load_corpus(dir / "n.jsonl");
  EXPECT_EQ(d[0].turns[1].text, "ok, I don't [ know what to do ]");
  EXPECT_EQ(d[1].turns[1].text, "He is not [ coming back ].");
}

TEST(Cli, MarkNegStandoff) {
  TempDir dir("cli");
  write_file(dir / "c.jsonl", corpus_text());
  write_file(dir / "a.jsonl", R"({"id":"2","annotations":[{"cue":[11,12],"scope":[12,13]}]})" "\n");
  ASSERT_EQ(run("mark-neg --annotations " + (dir / "a.jsonl") + " --in " + (dir / "c.jsonl") + " --out " +
                (dir / "n.jsonl"))
                .code,
            0);
  const auto d = load_corpus(dir / "n.jsonl");
  EXPECT_EQ(d[0].turns[1].text, "ok, I don't know what to do");
  EXPECT_EQ(d[1].turns[1].text, "He is not <NEG> coming <\\NEG> back.");
}

TEST(Cli, BuildTfidfAndCorrupt) {
  TempDir dir("cli");
  write_file(dir / "c.jsonl", corpus_text());
  ASSERT_EQ(run("build-tfidf --in " + (dir / "c.jsonl") + " --out " + (dir / "t.json")).code, 0);
  const Json model = Json::parse(read_file(dir / "t.json"));
  EXPECT_EQ(model["doc_count"], 2);
  const std::string common = " --in " + (dir / "c.jsonl") + " --objective tfidf,pronoun,entity";
  ASSERT_EQ(run("corrupt --tfidf-model " + (dir / "t.json") + common + " --out " + (dir / "a.jsonl")).code, 0);
  ASSERT_EQ(run("corrupt" + common + " --out " + (dir / "b.jsonl")).code, 0);
  EXPECT_EQ(read_file(dir / "a.jsonl"), read_file(dir / "b.jsonl"));
}

TEST(Cli, MixFromConfig) {
  TempDir dir("cli");
  write_file(dir / "c.jsonl", corpus_text());
  write_file(dir / "cn.jsonl", R"({"subject":"cat","relation":"IsA","object":"pet"})" "\n"
                               R"({"subject":"dog","relation":"IsA","object":"pet"})" "\n");
  write_file(dir / "mix.yaml",
             "mix:\n  strategy: roundrobin\n  epoch_size: 4\n  components:\n"
             "    - {task: summ, path: c.jsonl}\n    - {task: conceptnet, path: cn.jsonl}\n");
  const auto r = run("--config " + (dir / "mix.yaml") + " mix --out " + (dir / "o.jsonl"));
  ASSERT_EQ(r.code, 0) << r.out;
  RecordReader reader(dir / "o.jsonl");
  Json rec;
  std::vector<std::string> tasks;
  while (reader.next(rec)) tasks.push_back(rec["task"]);
  EXPECT_EQ(tasks, (std::vector<std::string>{"Summ", "ConceptNet", "Summ", "ConceptNet"}));

  ASSERT_EQ(run("mix --out " + (dir / "p.jsonl") + " --epoch-size 3 --task-prefix --component conceptnet:" +
                (dir / "cn.jsonl") + ":2")
                .code,
            0);
  RecordReader pr(dir / "p.jsonl");
  ASSERT_TRUE(pr.next(rec));
  EXPECT_TRUE(rec["source"].get<std::string>().starts_with("[CONCEPTNET] "));
}
