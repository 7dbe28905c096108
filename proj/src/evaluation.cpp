// Copyright 2026 The foldplan Authors
// SPDX-License-Identifier: Apache-2.0

#include "foldplan/evaluation.hpp"

#include <algorithm>
#include <sstream>

#include "foldplan/image_io.hpp"
#include "foldplan/synth.hpp"

namespace fs = std::filesystem;

namespace foldplan {

void AcceptanceOracle::validate() const {
  if (!(tolerance >= 0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be >= 0");
}

namespace evaluation {
namespace {

class Judge {
 public:
  explicit Judge(const AcceptanceOracle& o) : oracle_(o) {}

  bool accept(const ResolvedAction& proposed, const ResolvedAction* truth, const BBox& bbox) {
    switch (oracle_.mode) {
      case OracleMode::AlwaysAccept:
        return true;
      case OracleMode::Scripted:
        return next_ < oracle_.script.size() && oracle_.script[next_++];
      case OracleMode::AutoTolerance:
        break;
    }
    if (!truth) return true;
    const double limit = oracle_.tolerance * bbox.diagonal();
    return distance(proposed.pick_xy, truth->pick_xy) <= limit &&
           distance(proposed.place_xy, truth->place_xy) <= limit;
  }

  // A proposal that could not be made still consumes a scripted decision.
  void skip() {
    if (oracle_.mode == OracleMode::Scripted) ++next_;
  }

 private:
  const AcceptanceOracle& oracle_;
  std::size_t next_ = 0;
};

std::optional<std::vector<ResolvedAction>> truth_for(const Capture& c, const FoldingPlan& plan,
                                                     const BBox& bbox) {
  if (c.truth) return c.truth;
  if (c.landmarks) {
    try {
      return synth::truth_from_landmarks(plan, *c.landmarks, bbox);
    } catch (const Error&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string class_from_dir(std::string name) {
  std::replace(name.begin(), name.end(), '_', ' ');
  std::replace(name.begin(), name.end(), '-', ' ');
  return name;
}

std::vector<fs::path> sorted_entries(const fs::path& dir) {
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

Capture load_capture(const fs::path& png, const MaskConfig& mask) {
  Capture c;
  const RgbImage image = io::read_png(png.string());
  try {
    c.mask = raster::mask_background(image, mask);
  } catch (const Error& e) {
    // An empty capture is scored as a representation error, not a load failure.
    if (e.code() != ErrorCode::EmptyMask) throw;
    c.mask = BinaryMask(image.width, image.height);
  }
  fs::path truth = png;
  truth.replace_extension(".truth.json");
  if (fs::exists(truth)) read_truth(io::read_text(truth.string()), c);
  return c;
}

}  // namespace

EvaluationReport run_evaluation(const std::vector<GarmentItem>& items, const PlanSet& plans,
                                const AcceptanceOracle& oracle, int repetitions,
                                const ExtractConfig& config) {
  oracle.validate();
  if (repetitions < 1) throw Error(ErrorCode::InvalidArgument, "repetitions must be >= 1");
  for (const auto& item : items) {
    if (item.class_label.empty()) throw Error(ErrorCode::InvalidArgument, "item without class label");
    if (!plans.count(item.class_label))
      throw Error(ErrorCode::MissingPlanForClass, "no plan for class '" + item.class_label + "'");
    if (item.captures.empty())
      throw Error(ErrorCode::InvalidArgument, "item '" + item.item_name + "' has no captures");
  }

  std::vector<const GarmentItem*> order;
  for (const auto& item : items) order.push_back(&item);
  std::stable_sort(order.begin(), order.end(), [&](const GarmentItem* a, const GarmentItem* b) {
    const int la = int(plans.at(a->class_label).size()), lb = int(plans.at(b->class_label).size());
    return std::tie(a->class_label, la, a->item_name) < std::tie(b->class_label, lb, b->item_name);
  });

  Judge judge(oracle);
  EvaluationReport report;
  for (const GarmentItem* item : order) {
    const FoldingPlan& plan = plans.at(item->class_label);
    const int steps = int(plan.size());
    ReportRow row{item->class_label, steps, item->item_name, {0, repetitions}, {0, repetitions * steps}};
    for (int r = 0; r < repetitions; ++r) {
      const Capture& capture = item->captures[std::size_t(r) % item->captures.size()];
      SkeletonGraph g;
      try {
        g = extract(capture.mask, config).graph;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::EmptyMask) throw;
        continue;  // nothing on the table counts as a representation error
      }
      if (graph::adjacency_matrix(g) != plan.reference_adjacency) continue;
      ++row.representation.accepted;
      const auto truth = truth_for(capture, plan, g.bbox);
      for (int s = 0; s < steps; ++s) {
        ResolvedAction proposed;
        try {
          proposed = plan::propose_action(plan, s, g);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::DegenerateFold) throw;
          judge.skip();
          continue;
        }
        const ResolvedAction* t =
            truth && std::size_t(s) < truth->size() ? &(*truth)[std::size_t(s)] : nullptr;
        if (judge.accept(proposed, t, g.bbox)) ++row.proposal.accepted;
      }
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

std::string render_report(const EvaluationReport& report, ReportFormat format) {
  std::ostringstream out;
  if (format == ReportFormat::Csv) {
    out << "class,plan_length,item,representation_accuracy,proposal_accuracy\n";
    for (const auto& r : report.rows)
      out << csv_field(r.class_label) << ',' << r.plan_length << ',' << csv_field(r.item_name) << ','
          << r.representation.str() << ',' << r.proposal.str() << '\n';
    return out.str();
  }
  out << "| Class | \\|folding plan\\| | Item | Representation Accuracy | Proposal Accuracy |\n";
  out << "|---|---|---|---|---|\n";
  const ReportRow* prev = nullptr;
  for (const auto& r : report.rows) {
    const bool first = !prev || prev->class_label != r.class_label || prev->plan_length != r.plan_length;
    out << "| " << (first ? r.class_label : "") << " | " << (first ? std::to_string(r.plan_length) : "")
        << " | " << r.item_name << " | " << r.representation.str() << " | " << r.proposal.str()
        << " |\n";
    prev = &r;
  }
  return out.str();
}

void read_truth(const std::string& document, Capture& capture) {
  const auto doc = nlohmann::json::parse(document, nullptr, false);
  if (doc.is_discarded() || !doc.is_object())
    throw Error(ErrorCode::MalformedDocument, "truth document is not a JSON object");
  try {
    if (doc.contains("steps")) {
      std::vector<ResolvedAction> steps;
      for (const auto& s : doc.at("steps")) {
        steps.push_back(plan::resolved_from_json(s));
        steps.back().source_step = int(steps.size()) - 1;
      }
      capture.truth = std::move(steps);
    }
    if (doc.contains("landmarks")) {
      std::vector<Pixel> marks;
      for (const auto& p : doc.at("landmarks")) marks.push_back({p.at(0).get<int>(), p.at(1).get<int>()});
      capture.landmarks = std::move(marks);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedDocument, std::string("truth document: ") + e.what());
  }
}

std::vector<GarmentItem> load_items(const fs::path& dir, const MaskConfig& mask) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::Io, "not a directory: " + dir.string());
  std::vector<GarmentItem> items;
  for (const auto& class_dir : sorted_entries(dir)) {
    if (!fs::is_directory(class_dir)) continue;
    const std::string label = class_from_dir(class_dir.filename().string());
    for (const auto& entry : sorted_entries(class_dir)) {
      GarmentItem item;
      item.class_label = label;
      if (fs::is_directory(entry)) {
        item.item_name = entry.filename().string();
        for (const auto& png : sorted_entries(entry))
          if (png.extension() == ".png") item.captures.push_back(load_capture(png, mask));
      } else if (entry.extension() == ".png") {
        item.item_name = entry.stem().string();
        item.captures.push_back(load_capture(entry, mask));
      }
      if (!item.captures.empty()) items.push_back(std::move(item));
    }
  }
  return items;
}

PlanSet load_plans(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw Error(ErrorCode::Io, "not a directory: " + dir.string());
  PlanSet plans;
  for (const auto& p : sorted_entries(dir)) {
    if (p.extension() != ".json") continue;
    FoldingPlan plan = plan::load_plan(io::read_text(p.string()));
    std::string label = plan.class_label;
    if (!plans.emplace(label, std::move(plan)).second)
      throw Error(ErrorCode::MalformedDocument, "two plans for class '" + label + "'");
  }
  return plans;
}

}  // namespace evaluation
}  // namespace foldplan
