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

#include "cogdist/audit_session.h"

#include "cogdist/textprep.h"

namespace cogdist {

void AuditSession::publish(Model model) {
  auto snap = std::make_shared<Snapshot>();
  snap->engine = make_recognizer(model, backend_);
  snap->model = std::move(model);
  std::lock_guard lock(snapshot_mutex_);
  snapshot_ = std::move(snap);
}

void AuditSession::load(Model model, std::filesystem::path source) {
  std::lock_guard lock(write_mutex_);
  baseline_ = std::make_shared<const Model>(model);
  source_ = std::move(source);
  log_.clear();
  publish(std::move(model));
}

bool AuditSession::has_model() const {
  std::lock_guard lock(snapshot_mutex_);
  return snapshot_ != nullptr;
}

std::shared_ptr<const AuditSession::Snapshot> AuditSession::snapshot() const {
  std::lock_guard lock(snapshot_mutex_);
  if (!snapshot_) throw NoModelError();
  return snapshot_;
}

RecognitionResult AuditSession::recognize(std::string_view text,
                                          const RecognitionConfig& cfg) const {
  const auto snap = snapshot();
  return snap->engine->recognize(tokenize(text), cfg);
}

EditOutcome AuditSession::apply(std::string_view label, const NGram& ngram,
                                std::optional<double> weight) {
  std::lock_guard lock(write_mutex_);
  const auto snap = snapshot();
  EditOutcome outcome = edit_entry(snap->model, label, ngram, weight);
  if (outcome.changed) {
    log_.push_back({std::string(label), ngram, outcome.previous, weight});
    if (log_.size() > kMaxUndoDepth) log_.pop_front();
    publish(outcome.model);
  }
  return outcome;
}

bool AuditSession::undo() {
  std::lock_guard lock(write_mutex_);
  if (log_.empty()) return false;
  const Edit last = log_.back();
  const auto snap = snapshot();
  EditOutcome reverted = edit_entry(snap->model, last.label, last.ngram, last.before);
  log_.pop_back();
  publish(std::move(reverted.model));
  return true;
}

std::size_t AuditSession::undo_depth() const {
  std::lock_guard lock(write_mutex_);
  return log_.size();
}

ModelDiff AuditSession::diff() const {
  const auto snap = snapshot();
  std::shared_ptr<const Model> base;
  {
    std::lock_guard lock(write_mutex_);
    base = baseline_;
  }
  return diff_models(*base, snap->model);
}

Model AuditSession::baseline() const {
  std::lock_guard lock(write_mutex_);
  if (!baseline_) throw NoModelError();
  return *baseline_;
}

Model AuditSession::working() const { return snapshot()->model; }

std::filesystem::path AuditSession::save(const std::filesystem::path& dir) const {
  const auto snap = snapshot();
  std::filesystem::path target = dir;
  if (target.empty()) {
    std::lock_guard lock(write_mutex_);
    target = source_;
  }
  if (target.empty()) throw ModelError("no target directory for save");
  save_model(snap->model, target);
  return target;
}

}  // namespace cogdist
