// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "foldplan/garment.hpp"
#include "foldplan/pipeline.hpp"
#include "foldplan/plan.hpp"

namespace foldplan {

enum class OracleMode { AutoTolerance, AlwaysAccept, Scripted };

/// Stands in for the operator deciding whether a proposed action is the one
/// they demonstrated.
struct AcceptanceOracle {
  OracleMode mode = OracleMode::AutoTolerance;
  /// Auto mode: pick and place must each lie within tolerance * bbox diagonal
  /// of the reference action.
  double tolerance = 0.05;
  /// Scripted mode: one decision per proposal, in evaluation order. Proposals
  /// past the end of the script are rejected.
  std::vector<bool> script;

  void validate() const;
};

struct Fraction {
  int accepted = 0;
  int total = 0;

  std::string str() const { return std::to_string(accepted) + "/" + std::to_string(total); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

struct ReportRow {
  std::string class_label;
  int plan_length = 0;
  std::string item_name;
  Fraction representation;
  Fraction proposal;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct EvaluationReport {
  std::vector<ReportRow> rows;  // sorted by class, plan length, item
};

enum class ReportFormat { Csv, Markdown };

namespace evaluation {

using PlanSet = std::map<std::string, FoldingPlan>;

/// Replays each item's class plan `repetitions` times. Repetition r uses
/// capture r % captures. A skeleton whose adjacency differs from the plan's
/// counts as a representation error and scores no proposals for that
/// repetition. Throws MissingPlanForClass before doing any work.
EvaluationReport run_evaluation(const std::vector<GarmentItem>& items, const PlanSet& plans,
                                const AcceptanceOracle& oracle, int repetitions,
                                const ExtractConfig& config = {});

std::string render_report(const EvaluationReport& report, ReportFormat format);

/// `<dir>/<class>/<item>.png` with optional `<item>.truth.json`. A directory
/// `<dir>/<class>/<item>/` instead holds one PNG per capture. Underscores and
/// dashes in class directory names read as spaces.
std::vector<GarmentItem> load_items(const std::filesystem::path& dir, const MaskConfig& mask);

/// Every `*.json` plan in `dir`, keyed by class label.
PlanSet load_plans(const std::filesystem::path& dir);

/// Truth document: {"steps":[{"pick_xy":[x,y],"place_xy":[x,y],"mid_height":h}]}
/// or {"landmarks":[[x,y],...]}.
void read_truth(const std::string& document, Capture& capture);

}  // namespace evaluation
}  // namespace foldplan
