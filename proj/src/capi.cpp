// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#include "foldplan/foldplan.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <memory>
#include <string>

#include "foldplan/classify.hpp"
#include "foldplan/evaluation.hpp"
#include "foldplan/foldsim.hpp"
#include "foldplan/http_server.hpp"
#include "foldplan/image_io.hpp"
#include "foldplan/pipeline.hpp"
#include "foldplan/plan.hpp"
#include "foldplan/service.hpp"
#include "foldplan/synth.hpp"

using namespace foldplan;
namespace fs = std::filesystem;

struct fp_mask {
  BinaryMask value;
};
struct fp_graph {
  SkeletonGraph value;
};
struct fp_plan {
  FoldingPlan value;
};
struct fp_simulation {
  std::vector<FoldResult> steps;
  std::vector<fp_mask> masks;
};
struct fp_service {
  explicit fp_service(ServiceConfig cfg) : service(std::move(cfg)), server(service) {}
  Service service;
  HttpServer server;
};

namespace {

thread_local std::string g_last_error;

fp_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return FP_ERR_INVALID_ARGUMENT;
    case ErrorCode::Io: return FP_ERR_IO;
    case ErrorCode::MalformedImage: return FP_ERR_MALFORMED_IMAGE;
    case ErrorCode::EmptyMask: return FP_ERR_EMPTY_MASK;
    case ErrorCode::EmptySkeleton: return FP_ERR_EMPTY_SKELETON;
    case ErrorCode::UnknownNode: return FP_ERR_UNKNOWN_NODE;
    case ErrorCode::OffGarment: return FP_ERR_OFF_GARMENT;
    case ErrorCode::SameNode: return FP_ERR_SAME_NODE;
    case ErrorCode::NonPositiveHeight: return FP_ERR_NON_POSITIVE_HEIGHT;
    case ErrorCode::RepresentationMismatch: return FP_ERR_REPRESENTATION_MISMATCH;
    case ErrorCode::StepOutOfRange: return FP_ERR_STEP_OUT_OF_RANGE;
    case ErrorCode::NoPendingAction: return FP_ERR_NO_PENDING_ACTION;
    case ErrorCode::NoActivePlan: return FP_ERR_NO_ACTIVE_PLAN;
    case ErrorCode::MalformedDocument: return FP_ERR_MALFORMED_DOCUMENT;
    case ErrorCode::SchemaVersionUnsupported: return FP_ERR_SCHEMA_VERSION_UNSUPPORTED;
    case ErrorCode::DegenerateFold: return FP_ERR_DEGENERATE_FOLD;
    case ErrorCode::MissingPlanForClass: return FP_ERR_MISSING_PLAN_FOR_CLASS;
    case ErrorCode::EmptyLibrary: return FP_ERR_EMPTY_LIBRARY;
  }
  return FP_ERR_INTERNAL;
}

template <class F>
fp_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return FP_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return FP_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FP_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

MaskConfig to_cpp(const fp_mask_config* c) {
  MaskConfig m;
  if (!c) return m;
  m.threshold_mode = c->threshold_mode == FP_THRESHOLD_CHROMA ? ThresholdMode::ChromaDistance
                                                               : ThresholdMode::Luminance;
  m.threshold = c->threshold;
  m.keep_largest_component = c->keep_largest_component != 0;
  m.fill_holes_below = c->fill_holes_below;
  return m;
}

ExtractConfig to_cpp(const fp_extract_config* c) {
  ExtractConfig e;
  if (!c) return e;
  e.mask = to_cpp(&c->mask);
  e.working_size = c->working_size;
  e.prune_length = c->prune_length;
  e.row_band = c->row_band;
  return e;
}

AcceptanceOracle oracle_of(const fp_eval_config& c) {
  AcceptanceOracle o;
  o.mode = c.oracle_mode == FP_ORACLE_ALWAYS_ACCEPT ? OracleMode::AlwaysAccept
           : c.oracle_mode == FP_ORACLE_SCRIPTED    ? OracleMode::Scripted
                                                    : OracleMode::AutoTolerance;
  o.tolerance = c.tolerance;
  for (std::size_t i = 0; i < c.script_length; ++i) o.script.push_back(c.script[i] != 0);
  return o;
}

ReportFormat format_of(int f) { return f == FP_REPORT_MARKDOWN ? ReportFormat::Markdown : ReportFormat::Csv; }

ResolvedAction to_cpp(const fp_resolved_action& a) {
  return {{a.pick_x, a.pick_y}, {a.place_x, a.place_y}, a.mid_height, a.source_step};
}

std::string dir_name(std::string_view label) {
  std::string s(label);
  for (char& c : s)
    if (c == ' ') c = '_';
  return s;
}

}  // namespace

extern "C" {

const char* fp_version(void) { return "0.1.0"; }

const char* fp_last_error_message(void) { return g_last_error.c_str(); }

const char* fp_status_name(fp_status status) {
  switch (status) {
    case FP_OK: return "OK";
    case FP_ERR_INTERNAL: return "Internal";
    default: break;
  }
  for (int c = int(ErrorCode::InvalidArgument); c <= int(ErrorCode::EmptyLibrary); ++c)
    if (status_of(ErrorCode(c)) == status) return to_string(ErrorCode(c)).data();
  return "Unknown";
}

void fp_string_free(char* s) { std::free(s); }

void fp_mask_config_default(fp_mask_config* out) {
  if (!out) return;
  const MaskConfig m;
  out->threshold_mode = FP_THRESHOLD_LUMINANCE;
  out->threshold = m.threshold;
  out->keep_largest_component = m.keep_largest_component ? 1 : 0;
  out->fill_holes_below = m.fill_holes_below;
}

void fp_extract_config_default(fp_extract_config* out) {
  if (!out) return;
  const ExtractConfig e;
  fp_mask_config_default(&out->mask);
  out->working_size = e.working_size;
  out->prune_length = e.prune_length;
  out->row_band = e.row_band;
}

void fp_eval_config_default(fp_eval_config* out) {
  if (!out) return;
  fp_extract_config_default(&out->extract);
  out->oracle_mode = FP_ORACLE_AUTO;
  out->tolerance = AcceptanceOracle{}.tolerance;
  out->repetitions = 3;
  out->script = nullptr;
  out->script_length = 0;
}

fp_status fp_mask_create(int width, int height, fp_mask** out) {
  return guarded([&] {
    require(out, "out is null");
    require(width > 0 && height > 0, "mask dimensions must be positive");
    *out = new fp_mask{BinaryMask(width, height)};
  });
}

fp_status fp_mask_from_bits(int width, int height, const uint8_t* bits, fp_mask** out) {
  return guarded([&] {
    require(out && bits, "null argument");
    require(width > 0 && height > 0, "mask dimensions must be positive");
    BinaryMask m(width, height);
    for (int y = 0; y < height; ++y)
      for (int x = 0; x < width; ++x) m.set(x, y, bits[std::size_t(y) * std::size_t(width) + std::size_t(x)] != 0);
    *out = new fp_mask{std::move(m)};
  });
}

fp_status fp_mask_from_png_file(const char* path, const fp_mask_config* config, fp_mask** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new fp_mask{raster::mask_background(io::read_png(path), to_cpp(config))};
  });
}

fp_status fp_mask_from_png_memory(const uint8_t* data, size_t size, const fp_mask_config* config, fp_mask** out) {
  return guarded([&] {
    require(data && out, "null argument");
    *out = new fp_mask{raster::mask_background(io::decode_png({data, size}), to_cpp(config))};
  });
}

void fp_mask_free(fp_mask* mask) { delete mask; }
int fp_mask_width(const fp_mask* mask) { return mask ? mask->value.width() : 0; }
int fp_mask_height(const fp_mask* mask) { return mask ? mask->value.height() : 0; }
size_t fp_mask_area(const fp_mask* mask) { return mask ? mask->value.count() : 0; }

fp_status fp_mask_get(const fp_mask* mask, int x, int y, int* out) {
  return guarded([&] {
    require(mask && out, "null argument");
    require(mask->value.contains(x, y), "pixel outside the mask");
    *out = mask->value.get(x, y) ? 1 : 0;
  });
}

fp_status fp_mask_set(fp_mask* mask, int x, int y, int value) {
  return guarded([&] {
    require(mask, "null argument");
    require(mask->value.contains(x, y), "pixel outside the mask");
    mask->value.set(x, y, value != 0);
  });
}

fp_status fp_mask_equal(const fp_mask* a, const fp_mask* b, int* out) {
  return guarded([&] {
    require(a && b && out, "null argument");
    *out = a->value == b->value ? 1 : 0;
  });
}

fp_status fp_mask_upscale(const fp_mask* mask, int factor, fp_mask** out) {
  return guarded([&] {
    require(mask && out, "null argument");
    *out = new fp_mask{raster::upscale(mask->value, factor)};
  });
}

fp_status fp_mask_write_png(const fp_mask* mask, const char* path) {
  return guarded([&] {
    require(mask && path, "null argument");
    io::write_png(path, mask->value);
  });
}

fp_status fp_extract(const fp_mask* mask, const fp_extract_config* config, fp_graph** graph, fp_mask** skeleton) {
  return guarded([&] {
    require(mask && graph, "null argument");
    Representation rep = extract(mask->value, to_cpp(config));
    auto g = std::make_unique<fp_graph>(fp_graph{std::move(rep.graph)});
    if (skeleton) *skeleton = new fp_mask{std::move(rep.skeleton)};
    *graph = g.release();
  });
}

void fp_graph_free(fp_graph* graph) { delete graph; }
size_t fp_graph_node_count(const fp_graph* graph) { return graph ? graph->value.nodes.size() : 0; }
size_t fp_graph_edge_count(const fp_graph* graph) { return graph ? graph->value.edges.size() : 0; }

fp_status fp_graph_node(const fp_graph* graph, int id, int* x, int* y, int* kind, int* degree) {
  return guarded([&] {
    require(graph, "null argument");
    const SkeletonNode& n = graph->value.node(id);
    if (x) *x = n.x;
    if (y) *y = n.y;
    if (kind) *kind = n.kind == NodeKind::Junction ? FP_NODE_JUNCTION : FP_NODE_ENDPOINT;
    if (degree) *degree = graph->value.degree(id);
  });
}

fp_status fp_graph_move_node(const fp_graph* graph, int id, int x, int y, const fp_mask* mask, fp_graph** out) {
  return guarded([&] {
    require(graph && mask && out, "null argument");
    *out = new fp_graph{graph::move_node(graph->value, id, x, y, mask->value)};
  });
}

fp_status fp_graph_to_json(const fp_graph* graph, char** out) {
  return guarded([&] {
    require(graph && out, "null argument");
    *out = dup_string(graph::to_json(graph->value).dump());
  });
}

fp_status fp_graph_from_json(const char* json, fp_graph** out) {
  return guarded([&] {
    require(json && out, "null argument");
    auto j = nlohmann::json::parse(json, nullptr, false);
    if (j.is_discarded()) throw Error(ErrorCode::MalformedDocument, "graph document is not valid JSON");
    *out = new fp_graph{graph::graph_from_json(j)};
  });
}

fp_status fp_graph_adjacency_json(const fp_graph* graph, char** out) {
  return guarded([&] {
    require(graph && out, "null argument");
    *out = dup_string(plan::to_json(graph::adjacency_matrix(graph->value)).dump());
  });
}

fp_status fp_plan_create(const char* class_label, const fp_graph* reference, fp_plan** out) {
  return guarded([&] {
    require(class_label && reference && out, "null argument");
    require(*class_label, "class label is empty");
    *out = new fp_plan{plan::make_plan(class_label, reference->value)};
  });
}

fp_status fp_plan_add_action(fp_plan* p, int pick, int place, const double* mid_height) {
  return guarded([&] {
    require(p, "null argument");
    std::optional<double> h;
    if (mid_height) h = *mid_height;
    p->value = plan::add_action(p->value, plan::define_action(p->value.reference_graph, pick, place, h));
  });
}

fp_status fp_plan_load(const char* json, fp_plan** out) {
  return guarded([&] {
    require(json && out, "null argument");
    *out = new fp_plan{plan::load_plan(json)};
  });
}

fp_status fp_plan_load_file(const char* path, fp_plan** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new fp_plan{plan::load_plan(io::read_text(path))};
  });
}

fp_status fp_plan_save(const fp_plan* p, char** out) {
  return guarded([&] {
    require(p && out, "null argument");
    *out = dup_string(plan::save_plan(p->value));
  });
}

void fp_plan_free(fp_plan* p) { delete p; }
size_t fp_plan_length(const fp_plan* p) { return p ? p->value.size() : 0; }

fp_status fp_plan_class_label(const fp_plan* p, char** out) {
  return guarded([&] {
    require(p && out, "null argument");
    *out = dup_string(p->value.class_label);
  });
}

fp_status fp_plan_default(const char* class_label, const fp_extract_config* config, fp_plan** out) {
  return guarded([&] {
    require(class_label && out, "null argument");
    *out = new fp_plan{synth::default_plan(synth::parse_class(class_label), to_cpp(config))};
  });
}

fp_status fp_propose(const fp_plan* p, int step, const fp_graph* target, fp_resolved_action* out) {
  return guarded([&] {
    require(p && target && out, "null argument");
    const ResolvedAction a = plan::propose_action(p->value, step, target->value);
    *out = {a.pick_xy.x, a.pick_xy.y, a.place_xy.x, a.place_xy.y, a.mid_height, a.source_step};
  });
}

fp_status fp_replicate(const fp_plan* p, const fp_graph* target, char** out) {
  return guarded([&] {
    require(p && target, "null argument");
    try {
      nlohmann::json steps = nlohmann::json::array();
      for (std::size_t i = 0; i < p->value.size(); ++i) {
        const ResolvedAction a = plan::propose_action(p->value, int(i), target->value);
        nlohmann::json j = plan::to_json(a);
        j["trajectory"] = plan::to_json(plan::make_trajectory(a));
        steps.push_back(std::move(j));
      }
      if (out)
        *out = dup_string(nlohmann::json{{"class_label", p->value.class_label}, {"actions", steps}}.dump(2));
    } catch (const RepresentationMismatchError& e) {
      if (out)
        *out = dup_string(
            nlohmann::json{{"expected", plan::to_json(e.expected())}, {"actual", plan::to_json(e.actual())}}.dump());
      throw;
    }
  });
}

fp_status fp_apply_fold(const fp_mask* mask, const fp_resolved_action* action, fp_mask** out, fp_fold_stats* stats) {
  return guarded([&] {
    require(mask && action && out, "null argument");
    FoldResult r = foldsim::apply_fold(mask->value, to_cpp(*action));
    if (stats) *stats = {r.mask.count(), r.moved_area, r.overlap_area, r.clipped};
    *out = new fp_mask{std::move(r.mask)};
  });
}

fp_status fp_simulate_plan(const fp_mask* mask, const fp_plan* p, const fp_extract_config* config,
                           fp_simulation** out) {
  return guarded([&] {
    require(mask && p && out, "null argument");
    auto sim = std::make_unique<fp_simulation>();
    sim->steps = foldsim::simulate_plan(mask->value, p->value, to_cpp(config));
    for (const auto& r : sim->steps) sim->masks.push_back({r.mask});
    *out = sim.release();
  });
}

void fp_simulation_free(fp_simulation* sim) { delete sim; }
size_t fp_simulation_steps(const fp_simulation* sim) { return sim ? sim->steps.size() : 0; }

const fp_mask* fp_simulation_mask(const fp_simulation* sim, size_t step) {
  if (!sim || step >= sim->masks.size()) return nullptr;
  return &sim->masks[step];
}

fp_status fp_simulation_to_json(const fp_simulation* sim, char** out) {
  return guarded([&] {
    require(sim && out, "null argument");
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& r : sim->steps) steps.push_back(foldsim::to_json(r));
    *out = dup_string(nlohmann::json{{"steps", steps}}.dump(2));
  });
}

fp_status fp_evaluate_dirs(const char* items_dir, const char* plans_dir, const fp_eval_config* config, int format,
                           char** report) {
  return guarded([&] {
    require(items_dir && plans_dir && report, "null argument");
    fp_eval_config c;
    fp_eval_config_default(&c);
    if (config) c = *config;
    const ExtractConfig ecfg = to_cpp(&c.extract);
    const auto items = evaluation::load_items(items_dir, ecfg.mask);
    const auto plans = evaluation::load_plans(plans_dir);
    const auto r = evaluation::run_evaluation(items, plans, oracle_of(c), c.repetitions, ecfg);
    *report = dup_string(evaluation::render_report(r, format_of(format)));
  });
}

fp_status fp_evaluate_synthetic(double jitter, uint64_t seed, const fp_eval_config* config, int format,
                                char** report) {
  return guarded([&] {
    require(report, "null argument");
    fp_eval_config c;
    fp_eval_config_default(&c);
    if (config) c = *config;
    const ExtractConfig ecfg = to_cpp(&c.extract);
    std::vector<GarmentItem> items;
    for (auto& d : synth::demo_items(jitter, seed, c.repetitions)) items.push_back(std::move(d.item));
    evaluation::PlanSet plans;
    for (GarmentClass g : kGarmentClasses) {
      FoldingPlan p = synth::default_plan(g, ecfg);
      plans.emplace(p.class_label, std::move(p));
    }
    const auto r = evaluation::run_evaluation(items, plans, oracle_of(c), c.repetitions, ecfg);
    *report = dup_string(evaluation::render_report(r, format_of(format)));
  });
}

fp_status fp_synth_mask(const char* class_label, double scale, double jitter, double variation, uint64_t seed,
                        fp_mask** out) {
  return guarded([&] {
    require(class_label && out, "null argument");
    SynthParams p;
    p.garment = synth::parse_class(class_label);
    p.scale = scale;
    p.jitter = jitter;
    p.variation = variation;
    p.seed = seed;
    *out = new fp_mask{std::move(synth::synth_garment(p).captures.front().mask)};
  });
}

fp_status fp_synth_dataset(const char* dir, double jitter, uint64_t seed, int captures) {
  return guarded([&] {
    require(dir, "null argument");
    const fs::path root(dir);
    for (const auto& d : synth::demo_items(jitter, seed, captures)) {
      const fs::path item_dir = root / "items" / dir_name(d.item.class_label) / d.item.item_name;
      fs::create_directories(item_dir);
      for (std::size_t k = 0; k < d.item.captures.size(); ++k) {
        const Capture& c = d.item.captures[k];
        io::write_png(item_dir / (std::to_string(k) + ".png"), synth::render(c.mask, d.colour));
        nlohmann::json marks = nlohmann::json::array();
        for (Pixel p : *c.landmarks) marks.push_back({p.x, p.y});
        io::write_file(item_dir / (std::to_string(k) + ".truth.json"),
                       nlohmann::json{{"landmarks", marks}}.dump() + "\n");
      }
    }
    fs::create_directories(root / "plans");
    for (GarmentClass g : kGarmentClasses) {
      const FoldingPlan p = synth::default_plan(g);
      io::write_file(root / "plans" / (dir_name(p.class_label) + ".json"), plan::save_plan(p) + "\n");
    }
  });
}

fp_status fp_descriptor_json(const fp_graph* graph, char** out) {
  return guarded([&] {
    require(graph && out, "null argument");
    *out = dup_string(classify::to_json(classify::descriptor(graph->value)).dump());
  });
}

fp_status fp_classify(const char* library_jsonl, const fp_graph* graph, int k, char** result) {
  return guarded([&] {
    require(library_jsonl && graph && result, "null argument");
    const auto lib = classify::load_library(library_jsonl);
    const KnnResult r = classify::knn_classify(classify::descriptor(graph->value), lib, k);
    *result = dup_string(nlohmann::json{{"label", r.label}, {"votes", r.votes}}.dump());
  });
}

fp_status fp_library_synthetic(int per_class, double jitter, uint64_t seed, const fp_extract_config* config,
                               char** jsonl) {
  return guarded([&] {
    require(jsonl, "null argument");
    require(per_class >= 1, "per_class must be >= 1");
    const ExtractConfig ecfg = to_cpp(config);
    DescriptorLibrary lib;
    for (GarmentClass g : kGarmentClasses)
      for (int i = 0; i < per_class; ++i) {
        SynthParams p;
        p.garment = g;
        p.jitter = jitter;
        p.variation = 0.1;
        p.seed = seed + std::uint64_t(i) + 100000 * std::uint64_t(g);
        const GarmentItem item = synth::synth_garment(p);
        const SkeletonGraph graph = extract(item.captures.front().mask, ecfg).graph;
        lib.push_back({classify::descriptor(graph, ecfg.working_size), item.class_label});
      }
    *jsonl = dup_string(classify::save_library(lib));
  });
}

fp_status fp_library_accuracy(const char* library_jsonl, int k, double* accuracy) {
  return guarded([&] {
    require(library_jsonl && accuracy, "null argument");
    *accuracy = classify::leave_one_out_accuracy(classify::load_library(library_jsonl), k);
  });
}

fp_status fp_service_create(const char* plan_dir, const fp_extract_config* config, fp_service** out) {
  return guarded([&] {
    require(out, "null argument");
    ServiceConfig cfg;
    if (plan_dir) cfg.plan_dir = plan_dir;
    cfg.extract = to_cpp(config);
    *out = new fp_service(std::move(cfg));
  });
}

fp_status fp_service_bind(fp_service* service, const char* host, int port, int* bound_port) {
  return guarded([&] {
    require(service && host, "null argument");
    const int p = service->server.bind(host, port);
    if (p < 0) throw Error(ErrorCode::Io, std::string("cannot listen on ") + host + ":" + std::to_string(port));
    if (bound_port) *bound_port = p;
  });
}

fp_status fp_service_run(fp_service* service) {
  return guarded([&] {
    require(service, "null argument");
    if (!service->server.run()) throw Error(ErrorCode::Io, "server loop failed");
  });
}

void fp_service_stop(fp_service* service) {
  if (service) service->server.stop();
}

void fp_service_free(fp_service* service) { delete service; }

}  // extern "C"
