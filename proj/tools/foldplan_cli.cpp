// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

// foldplan command line. Talks to the library only through the C API.

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "foldplan/foldplan.h"

namespace fs = std::filesystem;

namespace {

// Exit codes.
constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitEmptyMask = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitMissingPlan = 4;
constexpr int kExitOther = 5;

struct Failure {
  fp_status status;
};

int exit_code(fp_status s) {
  switch (s) {
    case FP_OK: return kExitOk;
    case FP_ERR_IO:
    case FP_ERR_MALFORMED_IMAGE:
    case FP_ERR_MALFORMED_DOCUMENT:
    case FP_ERR_SCHEMA_VERSION_UNSUPPORTED:
      return kExitIo;
    case FP_ERR_EMPTY_MASK: return kExitEmptyMask;
    case FP_ERR_REPRESENTATION_MISMATCH: return kExitMismatch;
    case FP_ERR_MISSING_PLAN_FOR_CLASS: return kExitMissingPlan;
    default: return kExitOther;
  }
}

void check(fp_status s, const std::string& context) {
  if (s == FP_OK) return;
  std::cerr << "foldplan: " << context << ": " << fp_status_name(s) << ": " << fp_last_error_message() << "\n";
  throw Failure{s};
}

void fail_io(const std::string& message) {
  std::cerr << "foldplan: " << message << "\n";
  throw Failure{FP_ERR_IO};
}

// Owning wrappers for C handles.
template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() {
    if (p) Free(p);
  }
  T** out() { return &p; }
  T* get() const { return p; }
};
using Mask = Handle<fp_mask, fp_mask_free>;
using Graph = Handle<fp_graph, fp_graph_free>;
using Plan = Handle<fp_plan, fp_plan_free>;
using Simulation = Handle<fp_simulation, fp_simulation_free>;
using ServiceHandle = Handle<fp_service, fp_service_free>;

struct Text {
  char* p = nullptr;
  Text() = default;
  Text(const Text&) = delete;
  Text& operator=(const Text&) = delete;
  ~Text() { fp_string_free(p); }
  char** out() { return &p; }
  std::string str() const { return p ? p : ""; }
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) fail_io("cannot write " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_io("cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) fail_io("cannot create directory " + dir.string());
}

void require_file(const std::string& path) {
  if (!fs::is_regular_file(path)) fail_io("no such file: " + path);
}

struct Common {
  int threshold = -1;
  double prune = -1;
  std::uint64_t seed = 0;
  std::string mode = "luminance";

  void add(CLI::App* app) {
    app->add_option("--threshold", threshold, "Foreground threshold (0-255 luminance, or RGB distance)");
    app->add_option("--mode", mode, "Threshold mode")->check(CLI::IsMember({"luminance", "chroma"}));
    app->add_option("--prune", prune, "Spur pruning length in working pixels");
    app->add_option("--seed", seed, "Random seed");
  }

  fp_extract_config config() const {
    fp_extract_config c;
    fp_extract_config_default(&c);
    if (threshold >= 0) c.mask.threshold = threshold;
    if (mode == "chroma") c.mask.threshold_mode = FP_THRESHOLD_CHROMA;
    if (prune >= 0) c.prune_length = prune;
    return c;
  }
};

void load_mask(const std::string& path, const fp_extract_config& cfg, Mask& mask) {
  require_file(path);
  check(fp_mask_from_png_file(path.c_str(), &cfg.mask, mask.out()), path);
}

int run_extract(const Common& common, const std::string& image, const std::string& out_dir) {
  const auto cfg = common.config();
  Mask mask;
  load_mask(image, cfg, mask);
  Graph graph;
  Mask skeleton;
  check(fp_extract(mask.get(), &cfg, graph.out(), skeleton.out()), image);
  ensure_dir(out_dir);
  const std::string stem = fs::path(image).stem().string();
  Text json;
  check(fp_graph_to_json(graph.get(), json.out()), "graph");
  const fs::path graph_path = fs::path(out_dir) / (stem + ".graph.json");
  const fs::path skel_path = fs::path(out_dir) / (stem + ".skel.png");
  write_text(graph_path, json.str() + "\n");
  check(fp_mask_write_png(skeleton.get(), skel_path.string().c_str()), skel_path.string());
  std::cout << graph_path.string() << "\n" << skel_path.string() << "\n";
  return kExitOk;
}

void load_plan(const std::string& path, Plan& plan) {
  require_file(path);
  check(fp_plan_load_file(path.c_str(), plan.out()), path);
}

int run_replicate(const Common& common, const std::string& plan_path, const std::string& image,
                  const std::string& out) {
  const auto cfg = common.config();
  Plan plan;
  load_plan(plan_path, plan);
  Mask mask;
  load_mask(image, cfg, mask);
  Graph graph;
  check(fp_extract(mask.get(), &cfg, graph.out(), nullptr), image);
  Text json;
  const fp_status s = fp_replicate(plan.get(), graph.get(), json.out());
  if (s == FP_ERR_REPRESENTATION_MISMATCH) {
    std::cerr << "foldplan: representation mismatch: " << fp_last_error_message() << "\n" << json.str() << "\n";
    return kExitMismatch;
  }
  check(s, "replicate");
  if (out.empty())
    std::cout << json.str() << "\n";
  else
    write_text(out, json.str() + "\n");
  return kExitOk;
}

int run_simulate(const Common& common, const std::string& plan_path, const std::string& image,
                 const std::string& out_dir) {
  const auto cfg = common.config();
  Plan plan;
  load_plan(plan_path, plan);
  Mask mask;
  load_mask(image, cfg, mask);
  Simulation sim;
  check(fp_simulate_plan(mask.get(), plan.get(), &cfg, sim.out()), "simulate");
  ensure_dir(out_dir);
  const std::string stem = fs::path(image).stem().string();
  for (size_t k = 0; k < fp_simulation_steps(sim.get()); ++k) {
    const fs::path p = fs::path(out_dir) / (stem + ".fold" + std::to_string(k) + ".png");
    check(fp_mask_write_png(fp_simulation_mask(sim.get(), k), p.string().c_str()), p.string());
    std::cout << p.string() << "\n";
  }
  Text json;
  check(fp_simulation_to_json(sim.get(), json.out()), "simulate");
  const fs::path summary = fs::path(out_dir) / (stem + ".simulation.json");
  write_text(summary, json.str() + "\n");
  std::cout << summary.string() << "\n";
  return kExitOk;
}

struct EvaluateArgs {
  std::string items, plans, format = "markdown", oracle = "auto", script;
  int reps = 3;
  double tolerance = 0.05;
  bool synthetic = false;
  double jitter = 3.0;
};

int run_evaluate(const Common& common, const EvaluateArgs& a) {
  fp_eval_config c;
  fp_eval_config_default(&c);
  c.extract = common.config();
  c.repetitions = a.reps;
  c.tolerance = a.tolerance;
  c.oracle_mode = a.oracle == "always" ? FP_ORACLE_ALWAYS_ACCEPT : a.oracle == "scripted" ? FP_ORACLE_SCRIPTED : FP_ORACLE_AUTO;
  std::vector<uint8_t> script;
  for (char ch : a.script)
    if (ch == '0' || ch == '1') script.push_back(ch == '1');
  c.script = script.data();
  c.script_length = script.size();
  const int format = a.format == "csv" ? FP_REPORT_CSV : FP_REPORT_MARKDOWN;
  Text report;
  if (a.synthetic) {
    check(fp_evaluate_synthetic(a.jitter, common.seed, &c, format, report.out()), "evaluate");
  } else {
    if (a.items.empty() || a.plans.empty()) {
      std::cerr << "foldplan: evaluate needs --items and --plans, or --synthetic\n";
      return kExitOther;
    }
    if (!fs::is_directory(a.items)) fail_io("no such directory: " + a.items);
    if (!fs::is_directory(a.plans)) fail_io("no such directory: " + a.plans);
    check(fp_evaluate_dirs(a.items.c_str(), a.plans.c_str(), &c, format, report.out()), "evaluate");
  }
  std::cout << report.str();
  return kExitOk;
}

struct ClassifyArgs {
  std::string library, input;
  int k = 5;
  int build = 0;
  double jitter = 3.0;
  bool loo = false;
};

int run_classify(const Common& common, const ClassifyArgs& a) {
  const auto cfg = common.config();
  if (a.build > 0) {
    Text lib;
    check(fp_library_synthetic(a.build, a.jitter, common.seed, &cfg, lib.out()), "library");
    write_text(a.library, lib.str());
    std::cout << a.library << "\n";
  }
  if (a.loo) {
    double acc = 0;
    check(fp_library_accuracy(read_text(a.library).c_str(), a.k, &acc), "leave-one-out");
    std::cout << "leave-one-out accuracy " << acc << "\n";
  }
  if (!a.input.empty()) {
    Mask mask;
    load_mask(a.input, cfg, mask);
    Graph graph;
    check(fp_extract(mask.get(), &cfg, graph.out(), nullptr), a.input);
    Text result;
    check(fp_classify(read_text(a.library).c_str(), graph.get(), a.k, result.out()), "classify");
    std::cout << result.str() << "\n";
  } else if (a.build == 0 && !a.loo) {
    std::cerr << "foldplan: classify needs --input, --build or --loo\n";
    return kExitOther;
  }
  return kExitOk;
}

fp_service* g_service = nullptr;

extern "C" void on_signal(int) {
  if (g_service) fp_service_stop(g_service);
}

int run_serve(const Common& common, const std::string& listen, const std::string& plans) {
  const auto cfg = common.config();
  std::string host = "127.0.0.1";
  std::string port_text = listen;
  if (auto colon = listen.rfind(':'); colon != std::string::npos) {
    host = listen.substr(0, colon);
    port_text = listen.substr(colon + 1);
  }
  int port = 0;
  try {
    port = std::stoi(port_text);
  } catch (const std::exception&) {
    std::cerr << "foldplan: bad --listen address '" << listen << "'\n";
    return kExitOther;
  }
  ServiceHandle service;
  check(fp_service_create(plans.empty() ? nullptr : plans.c_str(), &cfg, service.out()), "serve");
  int bound = 0;
  check(fp_service_bind(service.get(), host.c_str(), port, &bound), "serve");
  std::cout << "listening on " << host << ":" << bound << std::endl;
  g_service = service.get();
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  const fp_status s = fp_service_run(service.get());
  g_service = nullptr;
  check(s, "serve");
  return kExitOk;
}

struct SynthArgs {
  std::string garment = "short sleeve top", out, dataset;
  double scale = 1.0, jitter = 0.0, variation = 0.0;
  int captures = 3;
};

int run_synth(const Common& common, const SynthArgs& a) {
  if (!a.dataset.empty()) {
    check(fp_synth_dataset(a.dataset.c_str(), a.jitter, common.seed, a.captures), "synth");
    std::cout << a.dataset << "\n";
    return kExitOk;
  }
  if (a.out.empty()) {
    std::cerr << "foldplan: synth needs --out or --dataset\n";
    return kExitOther;
  }
  Mask mask;
  check(fp_synth_mask(a.garment.c_str(), a.scale, a.jitter, a.variation, common.seed, mask.out()), "synth");
  check(fp_mask_write_png(mask.get(), a.out.c_str()), a.out);
  std::cout << a.out << "\n";
  return kExitOk;
}

struct PlanArgs {
  std::string label, image, out;
  std::vector<std::string> actions;
  bool use_default = false;
};

int run_plan(const Common& common, const PlanArgs& a) {
  const auto cfg = common.config();
  Plan plan;
  if (a.use_default) {
    check(fp_plan_default(a.label.c_str(), &cfg, plan.out()), "plan");
  } else {
    if (a.image.empty()) {
      std::cerr << "foldplan: plan needs --image or --default\n";
      return kExitOther;
    }
    Mask mask;
    load_mask(a.image, cfg, mask);
    Graph graph;
    check(fp_extract(mask.get(), &cfg, graph.out(), nullptr), a.image);
    check(fp_plan_create(a.label.c_str(), graph.get(), plan.out()), "plan");
    for (const auto& spec : a.actions) {
      int pick = 0, place = 0;
      double height = 0;
      const int n = std::sscanf(spec.c_str(), "%d:%d:%lf", &pick, &place, &height);
      if (n < 2) {
        std::cerr << "foldplan: action must be pick:place[:height], got '" << spec << "'\n";
        return kExitOther;
      }
      check(fp_plan_add_action(plan.get(), pick, place, n == 3 ? &height : nullptr), "action " + spec);
    }
  }
  Text doc;
  check(fp_plan_save(plan.get(), doc.out()), "plan");
  if (a.out.empty())
    std::cout << doc.str() << "\n";
  else
    write_text(a.out, doc.str() + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Skeleton-based garment folding plans"};
  app.require_subcommand(1);
  Common common;

  std::string image, out, plan_path;
  auto* extract = app.add_subcommand("extract", "Extract the skeleton graph of a garment image");
  extract->add_option("image", image, "Garment PNG")->required();
  extract->add_option("--out", out, "Output directory")->default_val(".");
  common.add(extract);

  std::string rep_out;
  auto* replicate = app.add_subcommand("replicate", "Replicate a folding plan on a garment");
  replicate->add_option("--plan", plan_path, "Plan JSON")->required();
  replicate->add_option("image", image, "Garment PNG")->required();
  replicate->add_option("--out", rep_out, "Output JSON file (default: standard output)");
  common.add(replicate);

  auto* simulate = app.add_subcommand("simulate", "Execute a folding plan on a garment silhouette");
  simulate->add_option("--plan", plan_path, "Plan JSON")->required();
  simulate->add_option("image", image, "Garment PNG")->required();
  simulate->add_option("--out", out, "Output directory")->default_val(".");
  common.add(simulate);

  EvaluateArgs ev;
  auto* evaluate = app.add_subcommand("evaluate", "Replay plans over a garment set and report accuracies");
  evaluate->add_option("--items", ev.items, "Item directory: <class>/<item>.png");
  evaluate->add_option("--plans", ev.plans, "Plan directory");
  evaluate->add_option("--reps", ev.reps, "Repetitions per item")->check(CLI::PositiveNumber);
  evaluate->add_option("--tolerance", ev.tolerance, "Auto-oracle tolerance, fraction of bbox diagonal")
      ->check(CLI::NonNegativeNumber);
  evaluate->add_option("--format", ev.format, "Report format")->check(CLI::IsMember({"markdown", "csv"}));
  evaluate->add_option("--oracle", ev.oracle, "Acceptance oracle")->check(CLI::IsMember({"auto", "always", "scripted"}));
  evaluate->add_option("--script", ev.script, "Scripted decisions, e.g. 1101");
  evaluate->add_flag("--synthetic", ev.synthetic, "Use the built-in synthetic object set");
  evaluate->add_option("--jitter", ev.jitter, "Synthetic layout jitter in pixels")->check(CLI::NonNegativeNumber);
  common.add(evaluate);

  ClassifyArgs cl;
  auto* classify = app.add_subcommand("classify", "Classify a garment by skeleton descriptor k-NN");
  classify->add_option("--library", cl.library, "Descriptor library (JSON lines)")->required();
  classify->add_option("--input", cl.input, "Garment PNG");
  classify->add_option("--k", cl.k, "Neighbours")->check(CLI::PositiveNumber);
  classify->add_option("--build", cl.build, "Write a synthetic library with this many items per class");
  classify->add_option("--jitter", cl.jitter, "Synthetic jitter for --build")->check(CLI::NonNegativeNumber);
  classify->add_flag("--loo", cl.loo, "Print the library's leave-one-out accuracy");
  common.add(classify);

  std::string listen = "127.0.0.1:8080", plans_dir;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--listen", listen, "host:port");
  serve->add_option("--plans", plans_dir, "Plan directory");
  common.add(serve);

  SynthArgs sy;
  auto* synth = app.add_subcommand("synth", "Generate synthetic garment silhouettes");
  synth->add_option("--class", sy.garment, "Garment class");
  synth->add_option("--scale", sy.scale, "Scale (1 = 400 px)")->check(CLI::PositiveNumber);
  synth->add_option("--jitter", sy.jitter, "Vertex jitter in pixels")->check(CLI::NonNegativeNumber);
  synth->add_option("--variation", sy.variation, "Relative limb variation");
  synth->add_option("--out", sy.out, "Output PNG");
  synth->add_option("--dataset", sy.dataset, "Write the demo object set and plans to this directory");
  synth->add_option("--captures", sy.captures, "Layouts per item for --dataset")->check(CLI::PositiveNumber);
  common.add(synth);

  PlanArgs pl;
  auto* plan = app.add_subcommand("plan", "Define a folding plan on a reference garment");
  plan->add_option("--class", pl.label, "Class label")->required();
  plan->add_option("--image", pl.image, "Reference garment PNG");
  plan->add_option("--action", pl.actions, "pick:place[:height], repeatable");
  plan->add_flag("--default", pl.use_default, "Use the built-in plan for a synthetic class");
  plan->add_option("--out", pl.out, "Output plan JSON (default: standard output)");
  common.add(plan);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and friends exit 0; usage errors share the catch-all code
    return app.exit(e) == 0 ? kExitOk : kExitOther;
  }

  try {
    if (*extract) return run_extract(common, image, out);
    if (*replicate) return run_replicate(common, plan_path, image, rep_out);
    if (*simulate) return run_simulate(common, plan_path, image, out);
    if (*evaluate) return run_evaluate(common, ev);
    if (*classify) return run_classify(common, cl);
    if (*serve) return run_serve(common, listen, plans_dir);
    if (*synth) return run_synth(common, sy);
    if (*plan) return run_plan(common, pl);
  } catch (const Failure& f) {
    return exit_code(f.status);
  }
  return kExitOther;
}
