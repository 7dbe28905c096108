// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

// Exercises the library through its C header only.

#include <arpa/inet.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include <gtest/gtest.h>

#include "foldplan/foldplan.h"

namespace {

const std::string kFixtures = FOLDPLAN_FIXTURES;

std::string take(char* s) {
  std::string out = s ? s : "";
  fp_string_free(s);
  return out;
}

fp_mask* rectangle(int w, int h, int x0, int y0, int x1, int y1) {
  std::vector<uint8_t> bits(std::size_t(w * h), 0);
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x) bits[std::size_t(y * w + x)] = 1;
  fp_mask* m = nullptr;
  EXPECT_EQ(fp_mask_from_bits(w, h, bits.data(), &m), FP_OK);
  return m;
}

std::string http_get(int port, const std::string& path) {
  const int fd = socket(AF_INET, SOCK_STREAM, 0);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(uint16_t(port));
  inet_pton(AF_INET, "127.0.0.1", &addr.sin_addr);
  if (connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) != 0) {
    close(fd);
    return "";
  }
  const std::string req = "GET " + path + " HTTP/1.1\r\nHost: localhost\r\nConnection: close\r\n\r\n";
  (void)!write(fd, req.data(), req.size());
  std::string out;
  char buf[4096];
  for (ssize_t n; (n = read(fd, buf, sizeof buf)) > 0;) out.append(buf, std::size_t(n));
  close(fd);
  return out;
}

}  // namespace

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STRNE(fp_version(), "");
  EXPECT_STREQ(fp_status_name(FP_OK), "OK");
  EXPECT_STREQ(fp_status_name(FP_ERR_EMPTY_MASK), "EmptyMask");
}

TEST(CApi, MaskBasics) {
  fp_mask* m = rectangle(20, 10, 2, 3, 12, 8);
  EXPECT_EQ(fp_mask_width(m), 20);
  EXPECT_EQ(fp_mask_height(m), 10);
  EXPECT_EQ(fp_mask_area(m), 50u);
  int v = -1;
  EXPECT_EQ(fp_mask_get(m, 2, 3, &v), FP_OK);
  EXPECT_EQ(v, 1);
  EXPECT_EQ(fp_mask_get(m, 20, 0, &v), FP_ERR_INVALID_ARGUMENT);
  EXPECT_NE(std::string(fp_last_error_message()), "");
  fp_mask* up = nullptr;
  ASSERT_EQ(fp_mask_upscale(m, 3, &up), FP_OK);
  EXPECT_EQ(fp_mask_area(up), 450u);
  fp_mask_free(up);
  EXPECT_EQ(fp_mask_from_bits(0, 4, nullptr, &up), FP_ERR_INVALID_ARGUMENT);
  fp_mask_free(m);
  fp_mask_free(nullptr);
}

TEST(CApi, PngInputs) {
  fp_mask_config cfg;
  fp_mask_config_default(&cfg);
  fp_mask* m = nullptr;
  ASSERT_EQ(fp_mask_from_png_file((kFixtures + "/garments/trousers.png").c_str(), &cfg, &m), FP_OK);
  EXPECT_GT(fp_mask_area(m), 1000u);
  fp_mask_free(m);
  EXPECT_EQ(fp_mask_from_png_file((kFixtures + "/garments/not_an_image.png").c_str(), &cfg, &m),
            FP_ERR_MALFORMED_IMAGE);
  EXPECT_EQ(fp_mask_from_png_file((kFixtures + "/garments/blank.png").c_str(), &cfg, &m), FP_ERR_EMPTY_MASK);
  EXPECT_EQ(fp_mask_from_png_file((kFixtures + "/garments/missing.png").c_str(), &cfg, &m), FP_ERR_IO);
  const uint8_t junk[] = {1, 2, 3};
  EXPECT_EQ(fp_mask_from_png_memory(junk, sizeof junk, &cfg, &m), FP_ERR_MALFORMED_IMAGE);
}

TEST(CApi, ExtractAndEditGraph) {
  fp_mask* m = nullptr;
  ASSERT_EQ(fp_synth_mask("short sleeve top", 1.0, 0, 0, 1, &m), FP_OK);
  fp_extract_config cfg;
  fp_extract_config_default(&cfg);
  fp_graph* g = nullptr;
  fp_mask* skel = nullptr;
  ASSERT_EQ(fp_extract(m, &cfg, &g, &skel), FP_OK);
  EXPECT_EQ(fp_graph_node_count(g), 4u);
  EXPECT_EQ(fp_graph_edge_count(g), 3u);
  EXPECT_LT(fp_mask_area(skel), fp_mask_area(m));
  EXPECT_EQ(take([&] {
              char* s = nullptr;
              fp_graph_adjacency_json(g, &s);
              return s;
            }()),
            "[[0,0,1,0],[0,0,1,0],[1,1,0,1],[0,0,1,0]]");

  int x, y, kind, degree;
  ASSERT_EQ(fp_graph_node(g, 2, &x, &y, &kind, &degree), FP_OK);
  EXPECT_EQ(kind, FP_NODE_JUNCTION);
  EXPECT_EQ(degree, 3);
  EXPECT_EQ(fp_graph_node(g, 9, &x, &y, &kind, &degree), FP_ERR_UNKNOWN_NODE);

  fp_graph* moved = nullptr;
  EXPECT_EQ(fp_graph_move_node(g, 2, 0, 0, m, &moved), FP_ERR_OFF_GARMENT);
  ASSERT_EQ(fp_graph_move_node(g, 2, x, y + 1, m, &moved), FP_OK);
  int mx, my;
  fp_graph_node(moved, 2, &mx, &my, &kind, &degree);
  EXPECT_EQ(my, y + 1);

  char* json = nullptr;
  ASSERT_EQ(fp_graph_to_json(moved, &json), FP_OK);
  fp_graph* back = nullptr;
  ASSERT_EQ(fp_graph_from_json(json, &back), FP_OK);
  fp_string_free(json);
  EXPECT_EQ(fp_graph_node_count(back), 4u);
  EXPECT_EQ(fp_graph_from_json("{]", &back), FP_ERR_MALFORMED_DOCUMENT);

  fp_mask* empty = nullptr;
  fp_mask_create(10, 10, &empty);
  fp_graph* none = nullptr;
  EXPECT_EQ(fp_extract(empty, &cfg, &none, nullptr), FP_ERR_EMPTY_MASK);
  fp_mask_free(empty);
  for (fp_graph* p : {g, moved, back}) fp_graph_free(p);
  fp_mask_free(skel);
  fp_mask_free(m);
}

TEST(CApi, PlansProposeReplicate) {
  fp_plan* plan = nullptr;
  ASSERT_EQ(fp_plan_load_file((kFixtures + "/plans/short_sleeve_top.json").c_str(), &plan), FP_OK);
  EXPECT_EQ(take([&] {
              char* s = nullptr;
              fp_plan_class_label(plan, &s);
              return s;
            }()),
            "short sleeve top");
  fp_mask* m = nullptr;
  fp_synth_mask("short sleeve top", 1.0, 2, 0, 3, &m);
  fp_graph* g = nullptr;
  ASSERT_EQ(fp_extract(m, nullptr, &g, nullptr), FP_OK);

  fp_resolved_action a{};
  ASSERT_EQ(fp_propose(plan, 0, g, &a), FP_OK);
  EXPECT_GT(a.mid_height, 0);
  EXPECT_EQ(a.source_step, 0);
  EXPECT_EQ(fp_propose(plan, int(fp_plan_length(plan)), g, &a), FP_ERR_STEP_OUT_OF_RANGE);

  char* steps = nullptr;
  ASSERT_EQ(fp_replicate(plan, g, &steps), FP_OK);
  EXPECT_NE(take(steps).find("trajectory"), std::string::npos);

  fp_mask* trousers = nullptr;
  fp_synth_mask("trousers", 1.0, 0, 0, 0, &trousers);
  fp_graph* tg = nullptr;
  fp_extract(trousers, nullptr, &tg, nullptr);
  char* mismatch = nullptr;
  EXPECT_EQ(fp_replicate(plan, tg, &mismatch), FP_ERR_REPRESENTATION_MISMATCH);
  const std::string detail = take(mismatch);
  EXPECT_NE(detail.find("\"expected\""), std::string::npos);
  EXPECT_NE(detail.find("\"actual\""), std::string::npos);

  // Building a plan by hand and saving it round-trips.
  fp_plan* own = nullptr;
  ASSERT_EQ(fp_plan_create("mine", g, &own), FP_OK);
  char* text = nullptr;
  EXPECT_EQ(fp_plan_save(own, &text), FP_ERR_INVALID_ARGUMENT);  // no actions yet
  const double h = 25;
  EXPECT_EQ(fp_plan_add_action(own, 1, 1, nullptr), FP_ERR_SAME_NODE);
  const double bad = -1;
  EXPECT_EQ(fp_plan_add_action(own, 0, 1, &bad), FP_ERR_NON_POSITIVE_HEIGHT);
  ASSERT_EQ(fp_plan_add_action(own, 0, 1, &h), FP_OK);
  ASSERT_EQ(fp_plan_add_action(own, 3, 2, nullptr), FP_OK);
  ASSERT_EQ(fp_plan_save(own, &text), FP_OK);
  fp_plan* reloaded = nullptr;
  ASSERT_EQ(fp_plan_load(text, &reloaded), FP_OK);
  fp_string_free(text);
  EXPECT_EQ(fp_plan_length(reloaded), 2u);
  EXPECT_EQ(fp_plan_load("{\"version\": 2}", &reloaded), FP_ERR_SCHEMA_VERSION_UNSUPPORTED);
  EXPECT_EQ(fp_plan_load("{\"version\": ", &reloaded), FP_ERR_MALFORMED_DOCUMENT);

  for (fp_plan* p : {plan, own, reloaded}) fp_plan_free(p);
  for (fp_graph* p : {g, tg}) fp_graph_free(p);
  fp_mask_free(m);
  fp_mask_free(trousers);
}

TEST(CApi, FoldSimulation) {
  fp_mask* m = rectangle(100, 50, 0, 0, 100, 50);
  const fp_resolved_action half{90, 25, 9, 25, 20, 0};
  fp_mask* folded = nullptr;
  fp_fold_stats stats{};
  ASSERT_EQ(fp_apply_fold(m, &half, &folded, &stats), FP_OK);
  EXPECT_EQ(stats.area, 2500u);
  EXPECT_EQ(fp_mask_area(folded), 2500u);
  EXPECT_EQ(stats.clipped, 50u);  // the x=99 column reflects to x=-1
  const fp_resolved_action same{5, 5, 5, 5, 1, 0};
  fp_mask* none = nullptr;
  EXPECT_EQ(fp_apply_fold(m, &same, &none, nullptr), FP_ERR_DEGENERATE_FOLD);

  fp_plan* plan = nullptr;
  ASSERT_EQ(fp_plan_default("trousers", nullptr, &plan), FP_OK);
  fp_mask* t = nullptr;
  fp_synth_mask("trousers", 1.0, 0, 0, 0, &t);
  fp_simulation* sim = nullptr;
  ASSERT_EQ(fp_simulate_plan(t, plan, nullptr, &sim), FP_OK);
  ASSERT_EQ(fp_simulation_steps(sim), fp_plan_length(plan));
  size_t prev = fp_mask_area(t);
  for (size_t k = 0; k < fp_simulation_steps(sim); ++k) {
    const size_t a = fp_mask_area(fp_simulation_mask(sim, k));
    EXPECT_LE(a, prev);
    prev = a;
  }
  EXPECT_EQ(fp_simulation_mask(sim, 99), nullptr);
  char* json = nullptr;
  ASSERT_EQ(fp_simulation_to_json(sim, &json), FP_OK);
  EXPECT_NE(take(json).find("fold_line"), std::string::npos);
  fp_simulation_free(sim);
  fp_plan_free(plan);
  for (fp_mask* p : {m, folded, t}) fp_mask_free(p);
}

TEST(CApi, EvaluationAndDataset) {
  fp_eval_config cfg;
  fp_eval_config_default(&cfg);
  cfg.oracle_mode = FP_ORACLE_ALWAYS_ACCEPT;
  char* report = nullptr;
  ASSERT_EQ(fp_evaluate_synthetic(0, 1, &cfg, FP_REPORT_MARKDOWN, &report), FP_OK);
  const std::string md = take(report);
  EXPECT_NE(md.find("| Class |"), std::string::npos);
  EXPECT_NE(md.find("trousers"), std::string::npos);

  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "foldplan_capi_dataset";
  std::filesystem::remove_all(dir);
  ASSERT_EQ(fp_synth_dataset(dir.c_str(), 1, 2, 2), FP_OK);
  cfg.oracle_mode = FP_ORACLE_AUTO;
  cfg.repetitions = 2;
  ASSERT_EQ(fp_evaluate_dirs((dir / "items").c_str(), (dir / "plans").c_str(), &cfg, FP_REPORT_CSV, &report),
            FP_OK);
  const std::string csv = take(report);
  EXPECT_EQ(csv.rfind("class,plan_length,item,", 0), 0u);

  const uint8_t script[] = {1, 0};
  cfg.oracle_mode = FP_ORACLE_SCRIPTED;
  cfg.script = script;
  cfg.script_length = 2;
  EXPECT_EQ(fp_evaluate_dirs((dir / "items").c_str(), (dir / "plans").c_str(), &cfg, FP_REPORT_CSV, &report),
            FP_OK);
  fp_string_free(report);
  cfg.tolerance = -1;
  cfg.oracle_mode = FP_ORACLE_AUTO;
  EXPECT_EQ(fp_evaluate_dirs((dir / "items").c_str(), (dir / "plans").c_str(), &cfg, FP_REPORT_CSV, &report),
            FP_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(fp_evaluate_dirs("/nonexistent", (dir / "plans").c_str(), nullptr, FP_REPORT_CSV, &report), FP_ERR_IO);
  std::filesystem::remove_all(dir);
}

TEST(CApi, Classification) {
  char* lib = nullptr;
  ASSERT_EQ(fp_library_synthetic(6, 2, 11, nullptr, &lib), FP_OK);
  const std::string jsonl = take(lib);
  double acc = 0;
  ASSERT_EQ(fp_library_accuracy(jsonl.c_str(), 3, &acc), FP_OK);
  EXPECT_GE(acc, 0.8);

  fp_mask* m = nullptr;
  fp_synth_mask("long sleeve top", 1.1, 2, 0.1, 500, &m);
  fp_graph* g = nullptr;
  fp_extract(m, nullptr, &g, nullptr);
  char* result = nullptr;
  ASSERT_EQ(fp_classify(jsonl.c_str(), g, 3, &result), FP_OK);
  EXPECT_NE(take(result).find("\"label\":\"long sleeve top\""), std::string::npos);
  EXPECT_EQ(fp_classify("", g, 3, &result), FP_ERR_EMPTY_LIBRARY);
  EXPECT_EQ(fp_classify(jsonl.c_str(), g, 0, &result), FP_ERR_INVALID_ARGUMENT);
  char* d = nullptr;
  ASSERT_EQ(fp_descriptor_json(g, &d), FP_OK);
  EXPECT_NE(take(d).find("degree_histogram"), std::string::npos);
  fp_graph_free(g);
  fp_mask_free(m);
}

TEST(CApi, ServiceLifecycle) {
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "foldplan_capi_plans";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  std::filesystem::copy_file(kFixtures + "/plans/trousers.json", dir / "trousers.json");
  fp_service* svc = nullptr;
  ASSERT_EQ(fp_service_create(dir.c_str(), nullptr, &svc), FP_OK);
  int port = 0;
  ASSERT_EQ(fp_service_bind(svc, "127.0.0.1", 0, &port), FP_OK);
  ASSERT_GT(port, 0);
  std::thread loop([&] { fp_service_run(svc); });
  const std::string plans = http_get(port, "/plans");
  EXPECT_NE(plans.find("200"), std::string::npos);
  EXPECT_NE(plans.find("\"class_label\":\"trousers\""), std::string::npos);
  EXPECT_NE(http_get(port, "/sessions/x").find("404"), std::string::npos);
  fp_service_stop(svc);
  loop.join();
  fp_service_free(svc);
  std::filesystem::remove_all(dir);
}
