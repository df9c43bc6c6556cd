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

#ifndef COGDIST_AUDIT_SESSION_H_
#define COGDIST_AUDIT_SESSION_H_

#include <cstddef>
#include <deque>
#include <filesystem>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cogdist/model.h"
#include "cogdist/recognizer.h"

namespace cogdist {

class NoModelError : public std::runtime_error {
 public:
  NoModelError() : std::runtime_error("no model loaded") {}
};

inline constexpr std::size_t kMaxUndoDepth = 1000;

// One expert's working copy of a model: edits go through edit_entry, are
// logged for undo, and are visible to the next recognition call.
//
// Edits are serialized; recognition runs against an immutable snapshot taken
// when the call starts, so it never observes a half-applied edit.
class AuditSession {
 public:
  struct Snapshot {
    Model model;
    std::unique_ptr<const Recognizer> engine;
  };

  struct Edit {
    std::string label;
    NGram ngram;
    std::optional<double> before;
    std::optional<double> after;
  };

  explicit AuditSession(Backend backend = Backend::kKernel) : backend_(backend) {}

  // Replaces baseline and working model and clears the undo log.
  void load(Model model, std::filesystem::path source = {});

  bool has_model() const;
  std::shared_ptr<const Snapshot> snapshot() const;  // throws NoModelError

  RecognitionResult recognize(std::string_view text, const RecognitionConfig& cfg) const;

  // Applies one edit atomically. A failed edit leaves the working model as it
  // was. No-op edits are not logged.
  EditOutcome apply(std::string_view label, const NGram& ngram, std::optional<double> weight);

  // Reverts the most recent logged edit; false when the log is empty.
  bool undo();
  std::size_t undo_depth() const;

  ModelDiff diff() const;  // working model against the loaded baseline
  Model baseline() const;
  Model working() const;

  // Saves the working model to `dir`, or to the directory it was loaded from.
  std::filesystem::path save(const std::filesystem::path& dir = {}) const;

 private:
  void publish(Model model);  // caller holds write_mutex_

  Backend backend_;
  mutable std::mutex write_mutex_;     // serializes edits
  mutable std::mutex snapshot_mutex_;  // guards snapshot_ swaps
  std::shared_ptr<const Snapshot> snapshot_;
  std::shared_ptr<const Model> baseline_;
  std::filesystem::path source_;
  std::deque<Edit> log_;
};

}  // namespace cogdist

#endif  // COGDIST_AUDIT_SESSION_H_
