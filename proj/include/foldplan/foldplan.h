/* Copyright 2026 The foldplan Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to libfoldplan: garment silhouettes, skeleton graphs, folding
 * plans, fold simulation, evaluation, classification and the HTTP service.
 *
 * Objects are opaque handles released with their *_free function. Functions
 * return FP_OK or an error status; fp_last_error_message() then describes
 * the failure for the calling thread. Strings returned through char** are
 * NUL-terminated, owned by the caller and released with fp_string_free().
 */
#ifndef FOLDPLAN_FOLDPLAN_H_
#define FOLDPLAN_FOLDPLAN_H_

#include <stddef.h>
#include <stdint.h>

#if defined(FOLDPLAN_BUILDING_LIBRARY)
#define FP_API __attribute__((visibility("default")))
#else
#define FP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fp_status {
  FP_OK = 0,
  FP_ERR_INVALID_ARGUMENT = 1,
  FP_ERR_IO = 2,
  FP_ERR_MALFORMED_IMAGE = 3,
  FP_ERR_EMPTY_MASK = 4,
  FP_ERR_EMPTY_SKELETON = 5,
  FP_ERR_UNKNOWN_NODE = 6,
  FP_ERR_OFF_GARMENT = 7,
  FP_ERR_SAME_NODE = 8,
  FP_ERR_NON_POSITIVE_HEIGHT = 9,
  FP_ERR_REPRESENTATION_MISMATCH = 10,
  FP_ERR_STEP_OUT_OF_RANGE = 11,
  FP_ERR_NO_PENDING_ACTION = 12,
  FP_ERR_NO_ACTIVE_PLAN = 13,
  FP_ERR_MALFORMED_DOCUMENT = 14,
  FP_ERR_SCHEMA_VERSION_UNSUPPORTED = 15,
  FP_ERR_DEGENERATE_FOLD = 16,
  FP_ERR_MISSING_PLAN_FOR_CLASS = 17,
  FP_ERR_EMPTY_LIBRARY = 18,
  FP_ERR_INTERNAL = 99
} fp_status;

typedef struct fp_mask fp_mask;
typedef struct fp_graph fp_graph;
typedef struct fp_plan fp_plan;
typedef struct fp_simulation fp_simulation;
typedef struct fp_service fp_service;

enum { FP_THRESHOLD_LUMINANCE = 0, FP_THRESHOLD_CHROMA = 1 };
enum { FP_NODE_ENDPOINT = 0, FP_NODE_JUNCTION = 1 };
enum { FP_ORACLE_AUTO = 0, FP_ORACLE_ALWAYS_ACCEPT = 1, FP_ORACLE_SCRIPTED = 2 };
enum { FP_REPORT_CSV = 0, FP_REPORT_MARKDOWN = 1 };

typedef struct fp_mask_config {
  int threshold_mode; /* FP_THRESHOLD_* */
  int threshold;
  int keep_largest_component;
  int fill_holes_below;
} fp_mask_config;

typedef struct fp_extract_config {
  fp_mask_config mask;
  int working_size;
  double prune_length;
  double row_band;
} fp_extract_config;

typedef struct fp_resolved_action {
  int pick_x, pick_y;
  int place_x, place_y;
  double mid_height;
  int source_step;
} fp_resolved_action;

typedef struct fp_fold_stats {
  size_t area;
  size_t moved_area;
  size_t overlap_area;
  size_t clipped;
} fp_fold_stats;

typedef struct fp_eval_config {
  fp_extract_config extract;
  int oracle_mode; /* FP_ORACLE_* */
  double tolerance; /* fraction of the garment bbox diagonal */
  int repetitions;
  const uint8_t* script; /* scripted decisions, nonzero = accept */
  size_t script_length;
} fp_eval_config;

FP_API const char* fp_version(void);
FP_API const char* fp_last_error_message(void);
FP_API const char* fp_status_name(fp_status status);
FP_API void fp_string_free(char* s);

FP_API void fp_mask_config_default(fp_mask_config* out);
FP_API void fp_extract_config_default(fp_extract_config* out);
FP_API void fp_eval_config_default(fp_eval_config* out);

/* Masks */
FP_API fp_status fp_mask_create(int width, int height, fp_mask** out);
/* One byte per pixel, row-major, nonzero = garment. */
FP_API fp_status fp_mask_from_bits(int width, int height, const uint8_t* bits, fp_mask** out);
FP_API fp_status fp_mask_from_png_file(const char* path, const fp_mask_config* config, fp_mask** out);
FP_API fp_status fp_mask_from_png_memory(const uint8_t* data, size_t size, const fp_mask_config* config,
                                         fp_mask** out);
FP_API void fp_mask_free(fp_mask* mask);
FP_API int fp_mask_width(const fp_mask* mask);
FP_API int fp_mask_height(const fp_mask* mask);
FP_API size_t fp_mask_area(const fp_mask* mask);
FP_API fp_status fp_mask_get(const fp_mask* mask, int x, int y, int* out);
FP_API fp_status fp_mask_set(fp_mask* mask, int x, int y, int value);
FP_API fp_status fp_mask_equal(const fp_mask* a, const fp_mask* b, int* out);
FP_API fp_status fp_mask_upscale(const fp_mask* mask, int factor, fp_mask** out);
FP_API fp_status fp_mask_write_png(const fp_mask* mask, const char* path);

/* Skeleton graphs. `skeleton` may be NULL. */
FP_API fp_status fp_extract(const fp_mask* mask, const fp_extract_config* config, fp_graph** graph,
                            fp_mask** skeleton);
FP_API void fp_graph_free(fp_graph* graph);
FP_API size_t fp_graph_node_count(const fp_graph* graph);
FP_API size_t fp_graph_edge_count(const fp_graph* graph);
FP_API fp_status fp_graph_node(const fp_graph* graph, int id, int* x, int* y, int* kind, int* degree);
FP_API fp_status fp_graph_move_node(const fp_graph* graph, int id, int x, int y, const fp_mask* mask,
                                    fp_graph** out);
FP_API fp_status fp_graph_to_json(const fp_graph* graph, char** out);
FP_API fp_status fp_graph_from_json(const char* json, fp_graph** out);
FP_API fp_status fp_graph_adjacency_json(const fp_graph* graph, char** out);

/* Folding plans. mid_height NULL selects half the pick-place distance. */
FP_API fp_status fp_plan_create(const char* class_label, const fp_graph* reference, fp_plan** out);
FP_API fp_status fp_plan_add_action(fp_plan* plan, int pick, int place, const double* mid_height);
FP_API fp_status fp_plan_load(const char* json, fp_plan** out);
FP_API fp_status fp_plan_load_file(const char* path, fp_plan** out);
FP_API fp_status fp_plan_save(const fp_plan* plan, char** out);
FP_API void fp_plan_free(fp_plan* plan);
FP_API size_t fp_plan_length(const fp_plan* plan);
FP_API fp_status fp_plan_class_label(const fp_plan* plan, char** out);
FP_API fp_status fp_plan_default(const char* class_label, const fp_extract_config* config, fp_plan** out);

FP_API fp_status fp_propose(const fp_plan* plan, int step, const fp_graph* target, fp_resolved_action* out);
/* All steps with trajectories as JSON. On FP_ERR_REPRESENTATION_MISMATCH,
 * *out (if out is not NULL) receives {"expected":[[...]],"actual":[[...]]}. */
FP_API fp_status fp_replicate(const fp_plan* plan, const fp_graph* target, char** out);

/* Fold simulation */
FP_API fp_status fp_apply_fold(const fp_mask* mask, const fp_resolved_action* action, fp_mask** out,
                               fp_fold_stats* stats);
FP_API fp_status fp_simulate_plan(const fp_mask* mask, const fp_plan* plan, const fp_extract_config* config,
                                  fp_simulation** out);
FP_API void fp_simulation_free(fp_simulation* sim);
FP_API size_t fp_simulation_steps(const fp_simulation* sim);
/* Borrowed; valid until the simulation is freed. */
FP_API const fp_mask* fp_simulation_mask(const fp_simulation* sim, size_t step);
FP_API fp_status fp_simulation_to_json(const fp_simulation* sim, char** out);

/* Evaluation */
FP_API fp_status fp_evaluate_dirs(const char* items_dir, const char* plans_dir, const fp_eval_config* config,
                                  int format, char** report);
/* Evaluates the built-in demo object set against the default plans. */
FP_API fp_status fp_evaluate_synthetic(double jitter, uint64_t seed, const fp_eval_config* config, int format,
                                       char** report);

/* Synthetic garments */
FP_API fp_status fp_synth_mask(const char* class_label, double scale, double jitter, double variation,
                               uint64_t seed, fp_mask** out);
/* Writes the demo object set as <dir>/items/<class>/<item>/<k>.png with
 * landmark truth files, and the default plans as <dir>/plans/<class>.json. */
FP_API fp_status fp_synth_dataset(const char* dir, double jitter, uint64_t seed, int captures);

/* Classification */
FP_API fp_status fp_descriptor_json(const fp_graph* graph, char** out);
/* result: {"label":..., "votes":{label: count}} */
FP_API fp_status fp_classify(const char* library_jsonl, const fp_graph* graph, int k, char** result);
FP_API fp_status fp_library_synthetic(int per_class, double jitter, uint64_t seed,
                                      const fp_extract_config* config, char** jsonl);
FP_API fp_status fp_library_accuracy(const char* library_jsonl, int k, double* accuracy);

/* HTTP service */
FP_API fp_status fp_service_create(const char* plan_dir, const fp_extract_config* config, fp_service** out);
/* Binds host:port (port 0 picks one) and reports the bound port. */
FP_API fp_status fp_service_bind(fp_service* service, const char* host, int port, int* bound_port);
/* Serves until fp_service_stop(). */
FP_API fp_status fp_service_run(fp_service* service);
FP_API void fp_service_stop(fp_service* service);
FP_API void fp_service_free(fp_service* service);

#ifdef __cplusplus
}
#endif

#endif /* FOLDPLAN_FOLDPLAN_H_ */
