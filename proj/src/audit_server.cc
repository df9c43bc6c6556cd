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

#include "cogdist/audit_server.h"

#include <algorithm>
#include <charconv>

#include "cogdist/result_json.h"
#include "cogdist/textprep.h"
#include "httplib.h"
#include "json.hpp"

namespace cogdist {
namespace {

using nlohmann::json;

HttpResponse error(int status, std::string_view message) {
  return {status, json{{"error", message}}.dump()};
}

HttpResponse ok(const json& body) { return {200, body.dump()}; }

std::optional<std::size_t> parse_size(const std::map<std::string, std::string>& query,
                                      const std::string& key, std::size_t fallback,
                                      bool& bad) {
  const auto it = query.find(key);
  if (it == query.end()) return fallback;
  std::size_t v = 0;
  const auto& s = it->second;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
    bad = true;
    return std::nullopt;
  }
  return v;
}

// The N-gram of a PATCH body: a string (tokenized like text) or an array of
// tokens.
NGram parse_ngram(const json& value) {
  std::vector<std::string> toks;
  if (value.is_string()) {
    for (const Token& t : tokenize_flat(value.get<std::string>()).tokens) toks.push_back(t.text);
  } else if (value.is_array()) {
    for (const auto& t : value) {
      if (!t.is_string()) throw ModelError("ngram tokens must be strings");
      toks.push_back(t.get<std::string>());
    }
  } else {
    throw std::invalid_argument("ngram must be a string or an array of strings");
  }
  return NGram::from_tokens(std::span<const std::string>(toks));
}

}  // namespace

AuditServer::AuditServer(AuditSession& session, ServerOptions options)
    : session_(session), options_(std::move(options)), server_(std::make_unique<httplib::Server>()) {
  auto adapt = [this](const char* method) {
    return [this, method](const httplib::Request& req, httplib::Response& res) {
      std::map<std::string, std::string> query(req.params.begin(), req.params.end());
      const HttpResponse r = handle(method, req.path, query, req.body);
      res.status = r.status;
      res.set_content(r.body, "application/json");
    };
  };
  server_->Post("/recognize", adapt("POST"));
  server_->Get("/model", adapt("GET"));
  server_->Patch("/model/entries", adapt("PATCH"));
  server_->Post("/model/undo", adapt("POST"));
  server_->Post("/model/save", adapt("POST"));
  server_->Get("/model/diff", adapt("GET"));
  server_->Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });
  server_->set_post_routing_handler([this](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", options_.cors_origin);
    res.set_header("Access-Control-Allow-Methods", "GET, POST, PATCH, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type");
  });
}

AuditServer::~AuditServer() { stop(); }

HttpResponse AuditServer::handle(std::string_view method, std::string_view path,
                                 const std::map<std::string, std::string>& query,
                                 std::string_view body) {
  try {
    if (method == "POST" && path == "/recognize") return recognize(body);
    if (method == "GET" && path == "/model") return get_model(query);
    if (method == "PATCH" && path == "/model/entries") return patch_entry(body);
    if (method == "POST" && path == "/model/undo") return undo();
    if (method == "POST" && path == "/model/save") return save(body);
    if (method == "GET" && path == "/model/diff") return diff();
    return error(404, "no such route");
  } catch (const NoModelError& e) {
    return error(409, e.what());
  } catch (const UnknownLabelError& e) {
    return error(404, e.what());
  } catch (const ModelError& e) {
    return error(422, e.what());
  } catch (const json::exception& e) {
    return error(400, e.what());
  } catch (const std::invalid_argument& e) {
    return error(400, e.what());
  } catch (const std::exception& e) {
    return error(500, e.what());
  }
}

HttpResponse AuditServer::recognize(std::string_view body) {
  const json req = json::parse(body);
  if (!req.is_object() || !req.contains("text") || !req["text"].is_string()) {
    return error(400, "body must be an object with a string 'text'");
  }
  RecognitionConfig cfg;
  if (req.contains("DT")) {
    if (!req["DT"].is_number_integer()) return error(400, "DT must be an integer");
    cfg.detection_threshold = req["DT"].get<int>();
    if (cfg.detection_threshold < 0 || cfg.detection_threshold > 100) {
      return error(400, "DT must be in 0..100");
    }
  }
  if (req.contains("weighted")) {
    if (!req["weighted"].is_boolean()) return error(400, "weighted must be a boolean");
    cfg.weighted = req["weighted"].get<bool>();
  }
  if (req.contains("LS")) {
    if (!req["LS"].is_boolean()) return error(400, "LS must be a boolean");
    cfg.log_scaling = req["LS"].get<bool>();
  }
  const RecognitionResult r = session_.recognize(req["text"].get<std::string>(), cfg);
  return {200, serialize_result(r)};
}

HttpResponse AuditServer::get_model(const std::map<std::string, std::string>& query) {
  const auto snap = session_.snapshot();
  const Model& model = snap->model;
  bool bad = false;
  const auto offset = parse_size(query, "offset", 0, bad);
  const auto limit = parse_size(query, "limit", 100, bad);
  if (bad) return error(400, "offset and limit must be non-negative integers");
  const std::size_t page = std::min<std::size_t>(*limit, 1000);

  std::vector<std::size_t> dicts;
  if (const auto it = query.find("distortion"); it != query.end()) {
    const auto idx = model.find(it->second);
    if (!idx) return error(404, "unknown distortion '" + it->second + "'");
    dicts.push_back(*idx);
  } else {
    for (std::size_t j = 0; j < model.dictionaries().size(); ++j) dicts.push_back(j);
    std::sort(dicts.begin(), dicts.end(), [&](std::size_t a, std::size_t b) {
      return model.dictionaries()[a].label < model.dictionaries()[b].label;
    });
  }
  std::string needle;
  if (const auto it = query.find("q"); it != query.end()) needle = it->second;

  struct Row {
    const std::string* label;
    const NGram* ngram;
    double weight;
  };
  std::vector<Row> rows;
  for (std::size_t j : dicts) {
    const auto& d = model.dictionaries()[j];
    const std::size_t first = rows.size();
    for (const auto& [g, w] : d.entries) {
      if (needle.empty() || g.key().find(needle) != std::string::npos) {
        rows.push_back({&d.label, &g, w});
      }
    }
    std::sort(rows.begin() + static_cast<std::ptrdiff_t>(first), rows.end(),
              [](const Row& a, const Row& b) {
                return a.weight != b.weight ? a.weight > b.weight
                                            : a.ngram->key() < b.ngram->key();
              });
  }

  json entries = json::array();
  for (std::size_t i = *offset; i < rows.size() && i < *offset + page; ++i) {
    entries.push_back({{"distortion", *rows[i].label},
                       {"ngram", rows[i].ngram->key()},
                       {"weight", rows[i].weight}});
  }
  return ok({{"labels", model.labels()},
             {"max_order", model.max_order()},
             {"selection_metric", model.metadata().selection_metric},
             {"total", rows.size()},
             {"offset", *offset},
             {"limit", page},
             {"entries", std::move(entries)},
             {"undo_depth", session_.undo_depth()}});
}

HttpResponse AuditServer::patch_entry(std::string_view body) {
  const json req = json::parse(body);
  if (!req.is_object() || !req.contains("distortion") || !req["distortion"].is_string() ||
      !req.contains("ngram") || !req.contains("weight")) {
    return error(400, "body must have 'distortion', 'ngram' and 'weight' (number or null)");
  }
  std::optional<double> weight;
  if (req["weight"].is_number()) {
    weight = req["weight"].get<double>();
  } else if (!req["weight"].is_null()) {
    return error(400, "weight must be a number or null");
  }
  session_.snapshot();  // 409 before any N-gram validation
  const NGram ngram = parse_ngram(req["ngram"]);
  const EditOutcome outcome = session_.apply(req["distortion"].get<std::string>(), ngram, weight);
  json prev = outcome.previous ? json(*outcome.previous) : json(nullptr);
  return ok({{"changed", outcome.changed},
             {"previous", prev},
             {"ngram", ngram.key()},
             {"undo_depth", session_.undo_depth()}});
}

HttpResponse AuditServer::undo() {
  session_.snapshot();
  const bool undone = session_.undo();
  return ok({{"undone", undone}, {"undo_depth", session_.undo_depth()}});
}

HttpResponse AuditServer::save(std::string_view body) {
  std::filesystem::path dir;
  if (!body.empty()) {
    const json req = json::parse(body);
    if (req.contains("dir")) {
      if (!req["dir"].is_string()) return error(400, "dir must be a string");
      dir = req["dir"].get<std::string>();
    }
  }
  session_.snapshot();
  try {
    const auto saved = session_.save(dir);
    return ok({{"saved", saved.string()}});
  } catch (const ModelError& e) {
    return error(400, e.what());
  }
}

HttpResponse AuditServer::diff() { return ok(diff_to_json(session_.diff())); }

int AuditServer::bind() {
  if (options_.port == 0) return server_->bind_to_any_port(options_.host);
  if (!server_->bind_to_port(options_.host, options_.port)) return -1;
  return options_.port;
}

void AuditServer::serve() { server_->listen_after_bind(); }

void AuditServer::stop() {
  if (server_) server_->stop();
}

}  // namespace cogdist
