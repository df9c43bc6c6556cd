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

// cogdist: train, apply and audit N-gram cognitive distortion dictionaries.

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "cogdist/audit_server.h"
#include "cogdist/audit_session.h"
#include "cogdist/corpus.h"
#include "cogdist/evaluation.h"
#include "cogdist/highlight.h"
#include "cogdist/learning.h"
#include "cogdist/model.h"
#include "cogdist/recognizer.h"
#include "cogdist/report.h"
#include "cogdist/result_json.h"
#include "cogdist/textprep.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace cogdist {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DataArgs {
  std::string data;
  std::string colmap;
};

struct LearnArgs {
  int nm = 2;
  std::string sm = "FCR";
  int it = 0;
  bool global_norm = false;
  bool cross_sentence = false;
};

struct RecArgs {
  int dt = 50;
  bool unweighted = false;
  bool no_ls = false;
  bool whole_text = false;
  std::string backend = "kernel";
};

void add_data_options(CLI::App* cmd, DataArgs& a) {
  cmd->add_option("-d,--data", a.data, "Dataset file (CSV or TSV)")->required();
  cmd->add_option("-c,--colmap", a.colmap, "Column map file")->required();
}

void add_learn_options(CLI::App* cmd, LearnArgs& a) {
  cmd->add_option("--nm", a.nm, "Maximum N-gram order (1..5)");
  cmd->add_option("--sm", a.sm, "Selection metric: F UF FN UFN TFIDF FCR CFR MR NLMI");
  cmd->add_option("--it", a.it, "Inclusion threshold percent (0..99)");
  cmd->add_flag("--global-norm", a.global_norm, "Normalize by the global maximum");
  cmd->add_flag("--cross-sentence", a.cross_sentence, "Let N-grams span sentence boundaries");
}

void add_rec_options(CLI::App* cmd, RecArgs& a) {
  cmd->add_option("--dt", a.dt, "Detection threshold percent (0..100)");
  cmd->add_flag("--unweighted", a.unweighted, "Count matches as 1 instead of n*weight");
  cmd->add_flag("--no-ls", a.no_ls, "Disable log scaling");
  cmd->add_flag("--whole-text", a.whole_text, "Let matches cross sentence boundaries");
  cmd->add_option("--backend", a.backend, "Matching backend: naive or kernel");
}

LearningConfig learning_config(const LearnArgs& a) {
  LearningConfig cfg;
  const auto metric = parse_metric(a.sm);
  if (!metric) throw UsageError("unknown selection metric '" + a.sm + "'");
  cfg.metric = *metric;
  cfg.max_order = a.nm;
  cfg.inclusion_threshold = a.it;
  cfg.normalization = a.global_norm ? Normalization::kGlobal : Normalization::kPerDistortion;
  cfg.cross_sentence_ngrams = a.cross_sentence;
  try {
    cfg.validate();
  } catch (const LearningError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

RecognitionConfig recognition_config(const RecArgs& a) {
  RecognitionConfig cfg;
  cfg.detection_threshold = a.dt;
  cfg.weighted = !a.unweighted;
  cfg.log_scaling = !a.no_ls;
  cfg.sentence_mode = a.whole_text ? SentenceMode::kWholeText : SentenceMode::kBlocked;
  try {
    cfg.validate();
  } catch (const RecognitionError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

Backend backend_of(const std::string& name) {
  const auto b = parse_backend(name);
  if (!b) throw UsageError("unknown backend '" + name + "'");
  return *b;
}

std::vector<LabeledText> load_corpus(const DataArgs& a) {
  auto corpus = load_dataset(a.data, load_column_map(a.colmap));
  if (corpus.empty()) throw CorpusError(a.data + ": dataset has no texts");
  return corpus;
}

std::string resolve_model_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("COGDIST_MODEL_DIR"); env && *env) return env;
  throw UsageError("no model directory: pass --model or set COGDIST_MODEL_DIR");
}

// Input texts: one per non-empty line, or the whole stream as one document.
std::vector<std::string> read_inputs(const std::string& path, bool document) {
  std::string all;
  if (path.empty() || path == "-") {
    all.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    all = read_file(path);
  }
  std::vector<std::string> texts;
  if (document) {
    if (!all.empty()) texts.push_back(std::move(all));
    return texts;
  }
  std::istringstream in(all);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) texts.push_back(std::move(line));
  }
  return texts;
}

std::string format_tsv(const RecognitionResult& r) {
  std::string detected;
  std::string scores;
  for (std::size_t j = 0; j < r.labels.size(); ++j) {
    if (r.decisions[j]) detected += (detected.empty() ? "" : ",") + r.labels[j];
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", r.scores[j]);
    scores += (j ? "\t" : "") + r.labels[j] + "=" + buf;
  }
  return (detected.empty() ? std::string("-") : detected) + "\t" + scores;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

json stats_summary(const CorpusStats& stats, const Model& model) {
  json per_label = json::object();
  for (std::size_t i = 0; i < kNumDistortions; ++i) {
    const Distortion d = distortion_at(i);
    const auto idx = model.find(label_name(d));
    per_label[std::string(label_name(d))] = {
        {"texts", stats.texts_with(d)},
        {"ngrams", stats.total_for(d)},
        {"entries", idx ? model.dictionaries()[*idx].entries.size() : 0}};
  }
  return {{"texts", stats.num_texts()},
          {"distinct_ngrams", stats.num_ngrams()},
          {"distortions_present", stats.num_distortions()},
          {"entries", model.entry_count()},
          {"labels", std::move(per_label)}};
}

// --- subcommands ---

int cmd_train(const DataArgs& data, const LearnArgs& learn, const std::string& out) {
  const LearningConfig cfg = learning_config(learn);
  const auto corpus = load_corpus(data);
  const CorpusStats stats = collect_stats(corpus, cfg.max_order, cfg.cross_sentence_ngrams);
  const Model model = build_model(stats, cfg);
  save_model(model, out);
  json summary = stats_summary(stats, model);
  summary["model_dir"] = out;
  std::cout << summary.dump(2) << "\n";
  for (const auto& label : empty_dictionaries(model)) {
    std::cerr << "warning: dictionary '" << label << "' is empty\n";
  }
  return kExitOk;
}

int cmd_recognize(const std::string& model_flag, const std::string& input, const RecArgs& rec,
                  bool as_json, bool document) {
  const RecognitionConfig cfg = recognition_config(rec);
  const Backend backend = backend_of(rec.backend);
  const Model model = load_model(resolve_model_dir(model_flag));
  const auto engine = make_recognizer(model, backend);
  for (const auto& text : read_inputs(input, document)) {
    const RecognitionResult r = engine->recognize(tokenize(text), cfg);
    std::cout << (as_json ? serialize_result(r) : format_tsv(r)) << "\n";
  }
  return kExitOk;
}

int cmd_highlight(const std::string& model_flag, const std::string& input, const RecArgs& rec,
                  const std::string& format, bool all, bool as_json, bool document) {
  const RecognitionConfig cfg = recognition_config(rec);
  if (format != "ansi" && format != "html") throw UsageError("format must be ansi or html");
  const Model model = load_model(resolve_model_dir(model_flag));
  const auto engine = make_recognizer(model, backend_of(rec.backend));
  for (const auto& text : read_inputs(input, document)) {
    const TokenizedText tt = tokenize(text);
    const auto hl = highlight(engine->recognize(tt, cfg), tt, all);
    if (as_json) {
      std::cout << highlights_to_json(hl).dump() << "\n";
    } else if (format == "html") {
      std::cout << render_html(tt, hl) << "\n";
    } else {
      std::cout << render_ansi(tt, hl) << "\n";
    }
  }
  return kExitOk;
}

int cmd_evaluate(const DataArgs& data, const LearnArgs& learn, const RecArgs& rec,
                 const std::string& json_out) {
  const LearningConfig lcfg = learning_config(learn);
  const RecognitionConfig rcfg = recognition_config(rec);
  const auto corpus = load_corpus(data);
  const EvalReport report = run_protocol(corpus, lcfg, rcfg, backend_of(rec.backend));
  std::cout << format_report(report);
  if (!json_out.empty()) write_file(json_out, report_to_json(report).dump(2) + "\n");
  return kExitOk;
}

struct GridArgs {
  std::vector<int> nm;
  std::vector<std::string> sm;
  std::vector<int> it;
  std::vector<int> dt;
  std::string mode = "both";
  std::string csv;
  std::string json_out;
  unsigned threads = 0;
};

int cmd_grid(const DataArgs& data, const GridArgs& g, const RecArgs& rec) {
  GridAxes axes = GridAxes::full();
  if (!g.nm.empty()) axes.orders = g.nm;
  if (!g.sm.empty()) {
    axes.metrics.clear();
    for (const auto& name : g.sm) {
      const auto m = parse_metric(name);
      if (!m) throw UsageError("unknown selection metric '" + name + "'");
      axes.metrics.push_back(*m);
    }
  }
  if (!g.it.empty()) axes.inclusion = g.it;
  if (!g.dt.empty()) axes.detection = g.dt;
  if (g.mode == "weighted") {
    axes.weighted = {true};
  } else if (g.mode == "unweighted") {
    axes.weighted = {false};
  } else if (g.mode != "both") {
    throw UsageError("mode must be weighted, unweighted or both");
  }
  try {
    axes.validate();
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  GridOptions opts;
  opts.backend = backend_of(rec.backend);
  opts.threads = g.threads;
  opts.log_scaling = !rec.no_ls;
  opts.sentence_mode = rec.whole_text ? SentenceMode::kWholeText : SentenceMode::kBlocked;

  const auto corpus = load_corpus(data);
  const auto cells = grid_search(corpus, axes, opts);
  if (!g.csv.empty()) write_file(g.csv, format_grid_csv(to_rows(cells)));
  const json summary = summarize_grid(cells);
  if (!g.json_out.empty()) write_file(g.json_out, summary.dump(2) + "\n");
  std::cout << summary.dump(2) << "\n";
  return kExitOk;
}

volatile std::sig_atomic_t g_stop = 0;

int cmd_serve(const std::string& model_flag, const std::string& host, int port,
              const std::string& origin, const std::string& backend) {
  AuditSession session(backend_of(backend));
  const std::string dir = resolve_model_dir(model_flag);
  session.load(load_model(dir), dir);
  AuditServer server(session, {host, port, origin});
  const int bound = server.bind();
  if (bound < 0) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  std::cout << "listening on http://" << host << ":" << bound << std::endl;

  std::signal(SIGINT, [](int) { g_stop = 1; });
  std::signal(SIGTERM, [](int) { g_stop = 1; });
  std::jthread watcher([&server](std::stop_token st) {
    while (!g_stop && !st.stop_requested()) {
      std::this_thread::sleep_for(std::chrono::milliseconds(100));
    }
    server.stop();
  });
  server.serve();
  return kExitOk;
}

int cmd_stats(const DataArgs& data, int nm) {
  if (nm < 1 || nm > kMaxLearningOrder) throw UsageError("NM must be in 1..5");
  const auto corpus = load_corpus(data);
  const CorpusStats stats = collect_stats(corpus, nm, false);
  std::size_t tokens = 0;
  std::size_t unlabeled = 0;
  for (const auto& t : corpus) {
    tokens += tokenize(t.text).length();
    if (t.labels.empty()) ++unlabeled;
  }
  json per_label = json::object();
  for (std::size_t i = 0; i < kNumDistortions; ++i) {
    const Distortion d = distortion_at(i);
    per_label[std::string(label_name(d))] = {{"texts", stats.texts_with(d)},
                                             {"ngrams", stats.total_for(d)}};
  }
  std::cout << json{{"texts", corpus.size()},
                    {"no_distortion", unlabeled},
                    {"tokens", tokens},
                    {"max_order", nm},
                    {"distinct_ngrams", stats.num_ngrams()},
                    {"labels", std::move(per_label)}}
                   .dump(2)
            << "\n";
  return kExitOk;
}

int cmd_diff(const std::string& a, const std::string& b) {
  std::cout << diff_to_json(diff_models(load_model(a), load_model(b))).dump(2) << "\n";
  return kExitOk;
}

int run(int argc, char** argv) {
  CLI::App app{"N-gram cognitive distortion recognizer"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "cogdist 1.0.0");

  DataArgs data;
  LearnArgs learn;
  RecArgs rec;
  std::string model_dir;
  std::string out_dir;
  std::string input;
  std::string format = "ansi";
  std::string json_out;
  bool as_json = false;
  bool document = false;
  bool all = false;

  auto* train = app.add_subcommand("train", "Learn dictionaries from a labeled dataset");
  add_data_options(train, data);
  add_learn_options(train, learn);
  train->add_option("-o,--out", out_dir, "Model output directory")->required();

  auto* recognize = app.add_subcommand("recognize", "Score texts against a model");
  recognize->add_option("-m,--model", model_dir, "Model directory (default $COGDIST_MODEL_DIR)");
  recognize->add_option("-i,--input", input, "Input file (default stdin)");
  recognize->add_flag("--json", as_json, "One JSON result per text");
  recognize->add_flag("--document", document, "Treat the whole input as one text");
  add_rec_options(recognize, rec);

  auto* hl = app.add_subcommand("highlight", "Render matched spans");
  hl->add_option("-m,--model", model_dir, "Model directory (default $COGDIST_MODEL_DIR)");
  hl->add_option("-i,--input", input, "Input file (default stdin)");
  hl->add_option("--format", format, "ansi or html");
  hl->add_flag("--all", all, "Include undetected distortions");
  hl->add_flag("--json", as_json, "Emit highlight spans as JSON");
  hl->add_flag("--document", document, "Treat the whole input as one text");
  add_rec_options(hl, rec);

  auto* evaluate = app.add_subcommand("evaluate", "Three-run evaluation of one setting");
  add_data_options(evaluate, data);
  add_learn_options(evaluate, learn);
  add_rec_options(evaluate, rec);
  evaluate->add_option("--json-out", json_out, "Write the report as JSON");

  GridArgs grid_args;
  auto* grid = app.add_subcommand("grid", "Hyper-parameter grid search");
  add_data_options(grid, data);
  grid->add_option("--nm", grid_args.nm, "Orders to try")->delimiter(',');
  grid->add_option("--sm", grid_args.sm, "Metrics to try")->delimiter(',');
  grid->add_option("--it", grid_args.it, "Inclusion thresholds to try")->delimiter(',');
  grid->add_option("--dt", grid_args.dt, "Detection thresholds to try")->delimiter(',');
  grid->add_option("--mode", grid_args.mode, "weighted, unweighted or both");
  grid->add_option("--csv", grid_args.csv, "Write the full table as CSV");
  grid->add_option("--json", grid_args.json_out, "Write the summary as JSON");
  grid->add_option("--threads", grid_args.threads, "Worker threads (0 = all cores)");
  grid->add_option("--backend", rec.backend, "Matching backend: naive or kernel");
  grid->add_flag("--no-ls", rec.no_ls, "Disable log scaling");
  grid->add_flag("--whole-text", rec.whole_text, "Let matches cross sentence boundaries");

  std::string host = "127.0.0.1";
  int port = 8765;
  std::string origin = "http://localhost:5173";
  std::string backend = "kernel";
  auto* serve = app.add_subcommand("serve", "Run the local audit API");
  serve->add_option("-m,--model", model_dir, "Model directory (default $COGDIST_MODEL_DIR)");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port (0 = any free port)");
  serve->add_option("--cors-origin", origin, "Allowed browser origin");
  serve->add_option("--backend", backend, "Matching backend: naive or kernel");

  int stats_nm = 2;
  auto* stats = app.add_subcommand("stats", "Corpus statistics");
  add_data_options(stats, data);
  stats->add_option("--nm", stats_nm, "Maximum N-gram order");

  std::string diff_a;
  std::string diff_b;
  auto* diff = app.add_subcommand("diff", "Compare two model directories");
  diff->add_option("before", diff_a)->required();
  diff->add_option("after", diff_b)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train) return cmd_train(data, learn, out_dir);
    if (*recognize) return cmd_recognize(model_dir, input, rec, as_json, document);
    if (*hl) return cmd_highlight(model_dir, input, rec, format, all, as_json, document);
    if (*evaluate) return cmd_evaluate(data, learn, rec, json_out);
    if (*grid) return cmd_grid(data, grid_args, rec);
    if (*serve) return cmd_serve(model_dir, host, port, origin, backend);
    if (*stats) return cmd_stats(data, stats_nm);
    if (*diff) return cmd_diff(diff_a, diff_b);
  } catch (const UsageError& e) {
    std::cerr << "cogdist: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "cogdist: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace
}  // namespace cogdist

int main(int argc, char** argv) { return cogdist::run(argc, argv); }
