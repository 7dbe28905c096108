// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "foldplan/evaluation.hpp"
#include "foldplan/image_io.hpp"
#include "foldplan/synth.hpp"
#include "oracles.hpp"

using namespace foldplan;

namespace {

evaluation::PlanSet default_plans() {
  evaluation::PlanSet plans;
  for (GarmentClass c : kGarmentClasses) plans[std::string(synth::class_label(c))] = synth::default_plan(c);
  return plans;
}

GarmentItem item(GarmentClass c, const std::string& name, double jitter, std::uint64_t seed, int captures,
                 double scale = 1.0) {
  SynthParams p;
  p.garment = c;
  p.jitter = jitter;
  p.seed = seed;
  p.scale = scale;
  p.item_name = name;
  return synth::synth_item(p, captures);
}

std::vector<GarmentItem> synthetic_set(double jitter, std::uint64_t seed) {
  std::vector<GarmentItem> items;
  for (GarmentClass c : kGarmentClasses)
    for (int i = 0; i < 3; ++i)
      items.push_back(item(c, "item" + std::to_string(i), jitter, seed + 10 * std::uint64_t(i), 3, 0.8 + 0.2 * i));
  return items;
}

AcceptanceOracle always() {
  AcceptanceOracle o;
  o.mode = OracleMode::AlwaysAccept;
  return o;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("foldplan_eval_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Report, TableRowRendering) {
  EvaluationReport r;
  r.rows.push_back({"short sleeve top", 2, "purple", {3, 3}, {6, 6}});
  const std::string md = evaluation::render_report(r, ReportFormat::Markdown);
  EXPECT_NE(md.find("\n| short sleeve top | 2 | purple | 3/3 | 6/6 |\n"), std::string::npos) << md;
  EXPECT_NE(md.find("Representation Accuracy"), std::string::npos);
  EXPECT_NE(md.find("Proposal Accuracy"), std::string::npos);
  const std::string csv = evaluation::render_report(r, ReportFormat::Csv);
  EXPECT_EQ(csv,
            "class,plan_length,item,representation_accuracy,proposal_accuracy\n"
            "short sleeve top,2,purple,3/3,6/6\n");
}

TEST(Report, EmptyReport) {
  const std::string csv = evaluation::render_report({}, ReportFormat::Csv);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1);
  EXPECT_EQ(csv.rfind("class,", 0), 0u);
  const EvaluationReport r = evaluation::run_evaluation({}, default_plans(), always(), 3);
  EXPECT_TRUE(r.rows.empty());
}

TEST(Report, GroupsRowsByClassAndPlanLength) {
  EvaluationReport r;
  r.rows.push_back({"short sleeve top", 2, "green", {3, 3}, {6, 6}});
  r.rows.push_back({"short sleeve top", 2, "purple", {3, 3}, {6, 6}});
  r.rows.push_back({"trousers", 2, "pois", {3, 3}, {6, 6}});
  const std::string md = evaluation::render_report(r, ReportFormat::Markdown);
  EXPECT_NE(md.find("| short sleeve top | 2 | green |"), std::string::npos);
  EXPECT_NE(md.find("|  |  | purple |"), std::string::npos);
  EXPECT_NE(md.find("| trousers | 2 | pois |"), std::string::npos);
}

TEST(RunEvaluation, UnjitteredAlwaysAcceptIsFull) {
  std::vector<GarmentItem> items;
  for (GarmentClass c : kGarmentClasses)
    for (int i = 0; i < 3; ++i) items.push_back(item(c, "item" + std::to_string(i), 0, std::uint64_t(i), 1));
  const evaluation::PlanSet plans = default_plans();
  // Every skeleton shares its plan's adjacency, checked directly.
  for (const auto& it : items)
    EXPECT_EQ(graph::adjacency_matrix(extract(it.captures[0].mask).graph),
              plans.at(it.class_label).reference_adjacency);
  const EvaluationReport r = evaluation::run_evaluation(items, plans, always(), 3);
  ASSERT_EQ(r.rows.size(), 9u);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.representation, (Fraction{3, 3})) << row.item_name;
    const int n = int(plans.at(row.class_label).size());
    EXPECT_EQ(row.proposal, (Fraction{3 * n, 3 * n})) << row.item_name;
  }
}

TEST(RunEvaluation, RejectedRepresentationScoresNoProposals) {
  // One of three layouts is not a shirt at all, like the white shirt's failed capture.
  GarmentItem white = item(GarmentClass::ShortSleeveTop, "white", 0, 0, 3);
  white.captures[1].mask = item(GarmentClass::Trousers, "x", 0, 0, 1).captures[0].mask;
  const EvaluationReport r = evaluation::run_evaluation({white}, default_plans(), always(), 3);
  ASSERT_EQ(r.rows.size(), 1u);
  const int n = int(synth::default_plan(GarmentClass::ShortSleeveTop).size());
  EXPECT_EQ(r.rows[0].representation, (Fraction{2, 3}));
  EXPECT_EQ(r.rows[0].proposal, (Fraction{2 * n, 3 * n}));
}

TEST(RunEvaluation, ScriptedOracleFollowsScript) {
  const GarmentItem green = item(GarmentClass::ShortSleeveTop, "green", 0, 0, 1);
  const int n = int(synth::default_plan(GarmentClass::ShortSleeveTop).size());
  AcceptanceOracle o;
  o.mode = OracleMode::Scripted;
  o.script.assign(std::size_t(3 * n), true);
  o.script[1] = false;
  EvaluationReport r = evaluation::run_evaluation({green}, default_plans(), o, 3);
  EXPECT_EQ(r.rows[0].proposal, (Fraction{3 * n - 1, 3 * n}));
  o.script.resize(std::size_t(n));  // later proposals run off the script
  r = evaluation::run_evaluation({green}, default_plans(), o, 3);
  EXPECT_EQ(r.rows[0].proposal, (Fraction{n - 1, 3 * n}));
}

TEST(RunEvaluation, MissingPlanForClass) {
  evaluation::PlanSet plans = default_plans();
  plans.erase("trousers");
  const std::vector<GarmentItem> items = {item(GarmentClass::ShortSleeveTop, "a", 0, 0, 1),
                                          item(GarmentClass::Trousers, "b", 0, 0, 1)};
  try {
    evaluation::run_evaluation(items, plans, always(), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingPlanForClass);
  }
  EXPECT_THROW(evaluation::run_evaluation(items, default_plans(), always(), 0), Error);
}

TEST(RunEvaluation, EmptyMaskIsARepresentationError) {
  GarmentItem blank = item(GarmentClass::Trousers, "blank", 0, 0, 1);
  blank.captures[0].mask = BinaryMask(50, 50);
  const EvaluationReport r = evaluation::run_evaluation({blank}, default_plans(), always(), 2);
  EXPECT_EQ(r.rows[0].representation, (Fraction{0, 2}));
  EXPECT_EQ(r.rows[0].proposal.accepted, 0);
}

TEST(EvaluationProperties, ConservationAndBranchFidelity) {
  const evaluation::PlanSet plans = default_plans();
  for (double jitter : {0.0, 4.0, 12.0}) {
    AcceptanceOracle o;
    const EvaluationReport r = evaluation::run_evaluation(synthetic_set(jitter, 7), plans, o, 3);
    ASSERT_EQ(r.rows.size(), 9u);
    for (const auto& row : r.rows) {
      const int n = int(plans.at(row.class_label).size());
      EXPECT_EQ(row.plan_length, n);
      EXPECT_EQ(row.representation.total, 3);
      EXPECT_EQ(row.proposal.total, 3 * n);
      EXPECT_LE(row.representation.accepted, row.representation.total);
      EXPECT_LE(row.proposal.accepted, n * row.representation.accepted);
    }
  }
}

TEST(EvaluationProperties, LooserToleranceNeverHurts) {
  const std::vector<GarmentItem> items = synthetic_set(6, 21);
  const evaluation::PlanSet plans = default_plans();
  std::vector<EvaluationReport> reports;
  for (double tol : {0.0, 0.005, 0.01, 0.02, 0.05, 0.1, 1.0}) {
    AcceptanceOracle o;
    o.tolerance = tol;
    reports.push_back(evaluation::run_evaluation(items, plans, o, 3));
  }
  for (std::size_t k = 1; k < reports.size(); ++k)
    for (std::size_t i = 0; i < reports[k].rows.size(); ++i) {
      EXPECT_EQ(reports[k].rows[i].representation, reports[k - 1].rows[i].representation);
      EXPECT_GE(reports[k].rows[i].proposal.accepted, reports[k - 1].rows[i].proposal.accepted);
    }
  // A whole-garment tolerance accepts every proposal that was made.
  for (const auto& row : reports.back().rows)
    EXPECT_EQ(row.proposal.accepted, row.plan_length * row.representation.accepted);
}

TEST(EvaluationProperties, Deterministic) {
  const evaluation::PlanSet plans = default_plans();
  const std::string a = evaluation::render_report(evaluation::run_evaluation(synthetic_set(3, 5), plans, {}, 3), ReportFormat::Csv);
  const std::string b = evaluation::render_report(evaluation::run_evaluation(synthetic_set(3, 5), plans, {}, 3), ReportFormat::Csv);
  EXPECT_EQ(a, b);
}

TEST(LoadItems, DirectoryLayout) {
  const auto dir = scratch("items");
  const auto plans_dir = std::filesystem::path(oracle::fixtures()) / "plans";
  std::filesystem::create_directories(dir / "short_sleeve_top");
  std::filesystem::create_directories(dir / "trousers" / "pois");
  const GarmentItem shirt = item(GarmentClass::ShortSleeveTop, "purple", 2, 4, 1);
  io::write_png(dir / "short_sleeve_top" / "purple.png", synth::render(shirt.captures[0].mask, {200, 120, 230}));
  nlohmann::json truth;
  for (Pixel p : *shirt.captures[0].landmarks) truth["landmarks"].push_back({p.x, p.y});
  io::write_file(dir / "short_sleeve_top" / "purple.truth.json", truth.dump());
  const GarmentItem pois = item(GarmentClass::Trousers, "pois", 2, 8, 2);
  for (int i = 0; i < 2; ++i)
    io::write_png(dir / "trousers" / "pois" / ("capture" + std::to_string(i) + ".png"),
                  synth::render(pois.captures[std::size_t(i)].mask, {230, 230, 230}));
  std::filesystem::create_directories(dir / "trousers" / "white");
  io::write_png(dir / "trousers" / "white" / "capture0.png", RgbImage(40, 30));

  const std::vector<GarmentItem> items = evaluation::load_items(dir, {});
  EXPECT_EQ(items[0].class_label, "short sleeve top");
  EXPECT_EQ(items[0].item_name, "purple");
  ASSERT_EQ(items[0].captures.size(), 1u);
  EXPECT_EQ(items[0].captures[0].mask, shirt.captures[0].mask);
  ASSERT_TRUE(items[0].captures[0].landmarks.has_value());
  EXPECT_EQ(*items[0].captures[0].landmarks, *shirt.captures[0].landmarks);
  ASSERT_EQ(items.size(), 3u);
  EXPECT_EQ(items[1].class_label, "trousers");
  EXPECT_EQ(items[1].captures.size(), 2u);
  EXPECT_FALSE(items[1].captures[0].landmarks.has_value());
  EXPECT_EQ(items[2].item_name, "white");
  EXPECT_FALSE(items[2].captures[0].mask.any());

  const evaluation::PlanSet plans = evaluation::load_plans(plans_dir);
  EXPECT_EQ(plans.size(), 3u);
  EXPECT_TRUE(plans.count("short sleeve top"));
  EXPECT_EQ(plans.at("trousers"), synth::default_plan(GarmentClass::Trousers));
  const EvaluationReport r = evaluation::run_evaluation(items, plans, {}, 3);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_EQ(r.rows[0].representation, (Fraction{3, 3}));
  const int n = r.rows[0].plan_length;
  EXPECT_EQ(r.rows[0].proposal, (Fraction{3 * n, 3 * n}));
  // No truth for the trousers: proposals are taken as they come.
  EXPECT_EQ(r.rows[1].representation, (Fraction{3, 3}));
  EXPECT_EQ(r.rows[2].representation, (Fraction{0, 3}));
  std::filesystem::remove_all(dir);
}

TEST(LoadItems, TruthDocuments) {
  Capture c;
  evaluation::read_truth(R"({"steps":[{"pick_xy":[1,2],"place_xy":[3,4],"mid_height":5}]})", c);
  ASSERT_TRUE(c.truth.has_value());
  EXPECT_EQ((*c.truth)[0].pick_xy, (Pixel{1, 2}));
  EXPECT_EQ((*c.truth)[0].place_xy, (Pixel{3, 4}));
  Capture d;
  evaluation::read_truth(R"({"landmarks":[[1,2],[3,4]]})", d);
  ASSERT_TRUE(d.landmarks.has_value());
  EXPECT_EQ(d.landmarks->size(), 2u);
  Capture e;
  EXPECT_THROW(evaluation::read_truth("{", e), Error);
}
