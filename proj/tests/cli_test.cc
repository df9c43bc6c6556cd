// Copyright 2026 The cogdist Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cogdist/audit_server.h"
#include "cogdist/audit_session.h"
#include "cogdist/corpus.h"
#include "json.hpp"
#include "test_util.h"

namespace cogdist {
namespace {

using nlohmann::json;

const std::string kData = COGDIST_TEST_DATA;
const std::string kColmap = std::string(COGDIST_SOURCE_DIR) + "/config/dataset1.colmap";

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun cli(const std::string& args, const std::string& stdin_file = "/dev/null",
        const std::string& env = "") {
  const std::string cmd =
      env + " " + COGDIST_CLI + " " + args + " < " + stdin_file + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string dir_file(const std::string& name, const std::string& content) {
  static testing::TempDir dir("cli_inputs");
  const auto path = dir.path() / name;
  std::ofstream(path) << content;
  return path.string();
}

std::string data_args() { return "-d " + kData + "/mini.csv -c " + kColmap; }

TEST(Cli, TrainWritesTenDictionariesAndMetadata) {
  testing::TempDir dir("cli_train");
  const CliRun r = cli("train " + data_args() + " --nm 2 --sm FCR --it 0 -o " + dir.path().string());
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["texts"], 12);
  std::size_t tsv = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir.path())) {
    tsv += e.path().extension() == ".tsv";
  }
  EXPECT_EQ(tsv, 10u);
  const std::string meta = read_file(dir.path() / "model.meta");
  EXPECT_NE(meta.find("NM=2"), std::string::npos);
  EXPECT_NE(meta.find("SM=FCR"), std::string::npos);
  EXPECT_NE(meta.find("IT=0"), std::string::npos);
}

TEST(Cli, TrainIsDeterministic) {
  testing::TempDir a("cli_det_a");
  testing::TempDir b("cli_det_b");
  ASSERT_EQ(cli("train " + data_args() + " -o " + a.path().string()).code, 0);
  ASSERT_EQ(cli("train " + data_args() + " -o " + b.path().string()).code, 0);
  for (const auto& e : std::filesystem::directory_iterator(a.path())) {
    EXPECT_EQ(read_file(e.path()), read_file(b.path() / e.path().filename()));
  }
}

TEST(Cli, UsageErrorsExitTwo) {
  testing::TempDir dir("cli_usage");
  EXPECT_EQ(cli("train " + data_args() + " --sm XX -o " + dir.path().string()).code, 2);
  EXPECT_EQ(cli("train " + data_args() + " --nm 9 -o " + dir.path().string()).code, 2);
  EXPECT_EQ(cli("").code, 2);
  EXPECT_EQ(cli("bogus").code, 2);
  EXPECT_EQ(cli("recognize -m " + kData + "/fixture_model --backend gpu").code, 2);
  EXPECT_EQ(cli("recognize -m " + kData + "/fixture_model --dt 150").code, 2);
  EXPECT_EQ(cli("recognize").code, 2);  // no model directory anywhere
}

TEST(Cli, RuntimeErrorsExitOne) {
  testing::TempDir dir("cli_rt");
  const auto empty = dir.path() / "empty.csv";
  std::ofstream(empty) << "Patient Question,Dominant Distortion\n";
  EXPECT_EQ(cli("train -d " + empty.string() + " -c " + kColmap + " -o " +
                (dir.path() / "m").string())
                .code,
            1);
  EXPECT_EQ(cli("recognize -m " + (dir.path() / "missing").string()).code, 1);
}

TEST(Cli, RecognizeFixtureJson) {
  const std::string in = dir_file("one.txt", "not a bad thing\n");
  const CliRun r = cli("recognize --json -m " + kData + "/fixture_model", in);
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  ASSERT_EQ(j["matches"].size(), 1u);
  EXPECT_EQ(j["matches"][0]["distortion"], "d1");
  EXPECT_EQ(j["matches"][0]["char_start"], 0);
  EXPECT_EQ(j["matches"][0]["char_end"], 15);
}

TEST(Cli, EmptyStdinNoOutput) {
  const CliRun r = cli("recognize --json -m " + kData + "/fixture_model");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "");
}

TEST(Cli, ModelDirFromEnvironment) {
  const std::string in = dir_file("env.txt", "bad\n");
  const CliRun r = cli("recognize", in, "COGDIST_MODEL_DIR=" + kData + "/fixture_model");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 3), "d2\t");
}

TEST(Cli, BackendsProduceIdenticalJson) {
  const std::string in = kData + "/fixture_texts.txt";
  for (const std::string flags : {"", " --unweighted", " --no-ls --dt 10", " --whole-text"}) {
    const CliRun k = cli("recognize --json --backend kernel -m " + kData + "/fixture_model" + flags, in);
    const CliRun n = cli("recognize --json --backend naive -m " + kData + "/fixture_model" + flags, in);
    ASSERT_EQ(k.code, 0);
    EXPECT_EQ(lines(k.out).size(), 4u);
    EXPECT_EQ(k.out, n.out) << flags;
  }
}

TEST(Cli, DocumentModeIsOneResult) {
  const CliRun r = cli("recognize --json --document -m " + kData + "/fixture_model",
                    kData + "/fixture_texts.txt");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out).size(), 1u);
}

TEST(Cli, ApiAndCliBodiesAreByteIdentical) {
  AuditSession session;
  session.load(load_model(kData + "/fixture_model"));
  AuditServer server(session, {});
  std::ifstream in(kData + "/fixture_texts.txt");
  std::vector<std::string> texts;
  for (std::string l; std::getline(in, l);) texts.push_back(l);
  const CliRun r = cli("recognize --json -m " + kData + "/fixture_model",
                    kData + "/fixture_texts.txt");
  const auto out = lines(r.out);
  ASSERT_EQ(out.size(), texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    const HttpResponse api = server.handle("POST", "/recognize", {}, json{{"text", texts[i]}}.dump());
    EXPECT_EQ(api.body, out[i]) << texts[i];
  }
}

TEST(Cli, HighlightFormats) {
  const std::string in = dir_file("hl.txt", "not a bad thing\nnothing here\n");
  const CliRun html = cli("highlight --format html -m " + kData + "/fixture_model", in);
  ASSERT_EQ(html.code, 0);
  EXPECT_EQ(lines(html.out)[0], "<mark data-distortion=\"d1\">not a bad thing</mark>");
  EXPECT_EQ(lines(html.out)[1], "nothing here");
  const CliRun ansi = cli("highlight -m " + kData + "/fixture_model", in);
  EXPECT_NE(ansi.out.find("\x1b[1;31mnot a bad thing\x1b[0m"), std::string::npos);
  const CliRun js = cli("highlight --json -m " + kData + "/fixture_model", in);
  EXPECT_EQ(json::parse(lines(js.out)[0])[0]["distortion"], "d1");
  EXPECT_EQ(cli("highlight --format pdf -m " + kData + "/fixture_model", in).code, 2);
}

TEST(Cli, GridRestrictedRowCount) {
  testing::TempDir dir("cli_grid");
  const auto csv = dir.path() / "g.csv";
  const auto js = dir.path() / "g.json";
  const CliRun r = cli("grid " + data_args() + " --nm 2 --sm FCR --csv " + csv.string() +
                    " --json " + js.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(lines(read_file(csv)).size(), 1u + 1 * 1 * 10 * 9 * 2);
  EXPECT_EQ(json::parse(read_file(js))["cells"], 180);
  EXPECT_EQ(cli("grid " + data_args() + " --dt 95").code, 2);
}

TEST(Cli, EvaluateStatsDiff) {
  testing::TempDir dir("cli_misc");
  const auto rep = dir.path() / "r.json";
  const CliRun e = cli("evaluate " + data_args() + " --json-out " + rep.string());
  ASSERT_EQ(e.code, 0);
  EXPECT_NE(e.out.find("macro-F1 mean"), std::string::npos);
  EXPECT_EQ(json::parse(read_file(rep))["run_f1"].size(), 3u);

  const CliRun s = cli("stats " + data_args());
  ASSERT_EQ(s.code, 0);
  EXPECT_EQ(json::parse(s.out)["texts"], 12);
  EXPECT_EQ(json::parse(s.out)["no_distortion"], 2);

  const auto a = dir.path() / "a";
  const auto b = dir.path() / "b";
  ASSERT_EQ(cli("train " + data_args() + " --it 0 -o " + a.string()).code, 0);
  ASSERT_EQ(cli("train " + data_args() + " --it 50 -o " + b.string()).code, 0);
  const CliRun same = cli("diff " + a.string() + " " + a.string());
  EXPECT_EQ(json::parse(same.out)["changes"], 0);
  const CliRun d = cli("diff " + a.string() + " " + b.string());
  ASSERT_EQ(d.code, 0);
  EXPECT_GT(json::parse(d.out)["changes"].get<int>(), 0);
}

}  // namespace
}  // namespace cogdist
