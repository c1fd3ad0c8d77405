#pragma once

// Command implementations behind the CLI tool. Kept header-only and free
// of flag-parsing concerns so tests can drive them in-process. Every
// report is UTF-8 CSV with a header row, written atomically.

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hooprank/assessment.hpp"
#include "hooprank/dataset_io.hpp"
#include "hooprank/errors.hpp"
#include "hooprank/model_io.hpp"
#include "hooprank/simulator.hpp"

namespace hooprank::cli {

// --------------------------------------------------------------------------
// Config file: JSON with the same keys as the flags; flags win.
// --------------------------------------------------------------------------

inline nlohmann::json load_config_file(const std::filesystem::path& path) {
  try {
    nlohmann::json j = nlohmann::json::parse(read_file(path));
    if (!j.is_object()) throw ValidationError("config file must hold a JSON object");
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("invalid config file " + path.string() + ": " + e.what());
  }
}

template <typename T>
void maybe_get(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

inline void apply_geometry_config(const nlohmann::json& j, CourtGeometry& g) {
  if (!j.contains("geometry")) return;
  const nlohmann::json& gj = j.at("geometry");
  maybe_get(gj, "court_length", g.court_length);
  maybe_get(gj, "court_width", g.court_width);
  maybe_get(gj, "three_point_radius", g.three_point_radius);
  if (gj.contains("baskets")) {
    const auto& baskets = gj.at("baskets");
    if (baskets.size() != 2) throw ValidationError("geometry.baskets must hold 2 points");
    for (std::size_t i = 0; i < 2; ++i) {
      g.baskets[i].x = baskets.at(i).at(0).get<double>();
      g.baskets[i].y = baskets.at(i).at(1).get<double>();
    }
  }
}

inline void apply_pipeline_config(const nlohmann::json& j, PipelineConfig& cfg) {
  maybe_get(j, "segment_length", cfg.segment_length);
  maybe_get(j, "stride", cfg.stride);
  maybe_get(j, "variance_floor", cfg.variance_floor);
  maybe_get(j, "min_samples", cfg.min_samples);
  if (j.contains("relevance"))
    cfg.relevance = relevance_rule_from_name(j.at("relevance").get<std::string>());
  apply_geometry_config(j, cfg.geometry);
}

inline void apply_train_config(const nlohmann::json& j, TrainConfig& cfg) {
  maybe_get(j, "learning_rate", cfg.learning_rate);
  maybe_get(j, "iterations", cfg.iterations);
  maybe_get(j, "seed", cfg.seed);
  if (j.contains("weight_init"))
    cfg.weight_init = weight_init_from_name(j.at("weight_init").get<std::string>());
}

inline void apply_generate_config(const nlohmann::json& j, GenerateConfig& cfg) {
  maybe_get(j, "seed", cfg.sim.seed);
  maybe_get(j, "duration_minutes", cfg.sim.duration_minutes);
  maybe_get(j, "frame_rate", cfg.sim.frame_rate);
  maybe_get(j, "players", cfg.n_players);
  maybe_get(j, "pairs", cfg.n_pairs);
  maybe_get(j, "noise_level", cfg.noise_level);
  apply_geometry_config(j, cfg.sim.geometry);
  if (j.contains("criterion")) cfg.criterion = criterion_from_json(j.at("criterion"));
}

// --------------------------------------------------------------------------
// simulate
// --------------------------------------------------------------------------

struct SimulateOptions {
  GenerateConfig gen{};
  std::filesystem::path out_dir;
};

inline void run_simulate(const SimulateOptions& opt, std::ostream& log = std::cout) {
  if (opt.out_dir.empty()) throw ValidationError("simulate requires --out");
  validate_generate_config(opt.gen);
  const Dataset dataset = generate_dataset(opt.gen);
  write_dataset(dataset, opt.out_dir);
  log << "wrote " << dataset.train_players.size() << "+" << dataset.test_players.size()
      << " players, " << dataset.train_pairs.size() << "/" << dataset.test_pairs.size()
      << " train/test pairs to " << opt.out_dir.string() << "\n";
}

// --------------------------------------------------------------------------
// train
// --------------------------------------------------------------------------

struct TrainOptions {
  std::filesystem::path data_dir;   // split dir holding pairs.csv + streams/
  std::filesystem::path model_out;
  PipelineConfig pipeline{};
  TrainConfig train{};
};

inline void run_train(const TrainOptions& opt, std::ostream& log = std::cout) {
  if (opt.data_dir.empty()) throw ValidationError("train requires --data");
  if (opt.model_out.empty()) throw ValidationError("train requires --out");
  validate_pipeline_config(opt.pipeline);
  validate_train_config(opt.train);

  const auto pairs = load_pair_manifest(opt.data_dir / "pairs.csv");
  const MixtureBank bank = fit_bank(pairs, opt.pipeline);
  const TrainResult result = train(pairs, bank, opt.pipeline, opt.train);
  save_model(opt.model_out, result.model);

  log << "iteration,loss\n";
  for (std::size_t i = 0; i < result.loss_trajectory.size(); ++i)
    log << i << "," << format_double(result.loss_trajectory[i]) << "\n";
  log << "final hinge loss: " << format_double(result.loss_trajectory.back()) << "\n";
  log << "active mixtures: " << bank.active_count() << "\n";
  log << "wrote model to " << opt.model_out.string() << "\n";
}

// --------------------------------------------------------------------------
// score
// --------------------------------------------------------------------------

struct ScoreOptions {
  std::filesystem::path model_path;
  std::filesystem::path stream_path;
  std::filesystem::path report_out;
};

inline void run_score(const ScoreOptions& opt, std::ostream& log = std::cout) {
  if (opt.model_path.empty()) throw ValidationError("score requires --model");
  if (opt.stream_path.empty()) throw ValidationError("score requires --stream");
  const AssessmentModel model = load_model(opt.model_path);
  const EventStream stream = load_stream_file(opt.stream_path);
  const ScoreBreakdown breakdown = score(stream, model);

  std::string csv = "start_frame,relevance,contribution,weighted_term\n";
  for (const SegmentTerm& term : breakdown.per_segment) {
    csv += std::to_string(term.start_frame) + "," + format_double(term.relevance) +
           "," + format_double(term.contribution) + "," +
           format_double(term.weighted_term) + "\n";
  }
  if (!opt.report_out.empty()) write_file_atomic(opt.report_out, csv);
  log << "total: " << format_double(breakdown.total) << "\n";
}

// --------------------------------------------------------------------------
// evaluate
// --------------------------------------------------------------------------

struct EvaluateOptions {
  std::filesystem::path model_path;
  std::filesystem::path data_dir;  // split dir with pairs.csv
  std::filesystem::path report_out;
  std::optional<std::string> ablation;    // Table-2-style variant name
  std::filesystem::path train_data_dir;   // needed by retraining ablations
  TrainConfig train{};
};

inline std::string verdict_csv(std::span<const PairExample> pairs,
                               const EvaluationResult& result) {
  std::string csv = "stream_a,stream_b,label,score_a,score_b,predicted,correct\n";
  for (const PairVerdict& v : result.verdicts) {
    const PairExample& p = pairs[v.pair_index];
    csv += p.stream_a->player_id + "," + p.stream_b->player_id + "," +
           std::to_string(v.label) + "," + format_double(v.score_a) + "," +
           format_double(v.score_b) + "," + std::to_string(v.predicted) + "," +
           (v.correct ? "1" : "0") + "\n";
  }
  return csv;
}

inline void run_evaluate(const EvaluateOptions& opt, std::ostream& log = std::cout) {
  if (opt.model_path.empty()) throw ValidationError("evaluate requires --model");
  if (opt.data_dir.empty()) throw ValidationError("evaluate requires --data");
  const AssessmentModel model = load_model(opt.model_path);
  const auto pairs = load_pair_manifest(opt.data_dir / "pairs.csv");

  EvaluationResult result;
  if (opt.ablation) {
    const AblationSpec spec = AblationSpec::parse(*opt.ablation);
    PipelineConfig cfg;
    cfg.segment_length = model.segment_length;
    cfg.stride = model.stride;
    cfg.relevance = model.relevance;
    cfg.geometry = model.geometry;
    cfg.variance_floor = model.bank.variance_floor;
    cfg.min_samples = model.bank.min_samples;
    std::vector<PairExample> train_pairs;
    if (spec.kind != AblationKind::kUnitWeights) {
      if (opt.train_data_dir.empty())
        throw ValidationError("ablation '" + spec.name() + "' requires --train-data");
      train_pairs = load_pair_manifest(opt.train_data_dir / "pairs.csv");
    }
    result = run_ablation(spec, train_pairs, pairs, model.bank, cfg, opt.train);
    log << "ablation: " << spec.name() << "\n";
  } else {
    result = evaluate(pairs, model);
  }

  if (!opt.report_out.empty()) write_file_atomic(opt.report_out, verdict_csv(pairs, result));
  std::size_t correct = 0;
  for (const PairVerdict& v : result.verdicts) correct += v.correct ? 1 : 0;
  log << "pairwise accuracy: " << format_double(result.accuracy) << " (" << correct
      << "/" << result.verdicts.size() << ")\n";
}

// --------------------------------------------------------------------------
// ablate
// --------------------------------------------------------------------------

struct AblateOptions {
  std::filesystem::path train_data_dir;
  std::filesystem::path test_data_dir;
  std::filesystem::path report_out;
  std::vector<std::string> variants = {"full", "no_gm", "unit_weights"};
  PipelineConfig pipeline{};
  TrainConfig train{};
};

inline void run_ablate(const AblateOptions& opt, std::ostream& log = std::cout) {
  if (opt.train_data_dir.empty()) throw ValidationError("ablate requires --train-data");
  if (opt.test_data_dir.empty()) throw ValidationError("ablate requires --test-data");
  if (opt.variants.empty()) throw ValidationError("ablate requires at least one variant");
  validate_pipeline_config(opt.pipeline);
  validate_train_config(opt.train);
  // parse all names up front so a typo fails before any training starts
  std::vector<std::optional<AblationSpec>> specs;
  for (const std::string& name : opt.variants)
    specs.push_back(name == "full" ? std::nullopt
                                   : std::optional<AblationSpec>(AblationSpec::parse(name)));

  const auto train_pairs = load_pair_manifest(opt.train_data_dir / "pairs.csv");
  const auto test_pairs = load_pair_manifest(opt.test_data_dir / "pairs.csv");
  const MixtureBank bank = fit_bank(train_pairs, opt.pipeline);

  std::string csv = "variant,accuracy\n";
  for (std::size_t i = 0; i < specs.size(); ++i) {
    double accuracy = 0.0;
    if (!specs[i]) {
      const TrainResult full = train(train_pairs, bank, opt.pipeline, opt.train);
      accuracy = evaluate(test_pairs, full.model).accuracy;
    } else {
      accuracy = run_ablation(*specs[i], train_pairs, test_pairs, bank, opt.pipeline,
                              opt.train).accuracy;
    }
    csv += opt.variants[i] + "," + format_double(accuracy) + "\n";
    log << opt.variants[i] << ": " << format_double(accuracy) << "\n";
  }
  if (!opt.report_out.empty()) write_file_atomic(opt.report_out, csv);
}

// --------------------------------------------------------------------------
// inspect
// --------------------------------------------------------------------------

struct InspectOptions {
  std::filesystem::path model_path;
  int top = 4;
  std::filesystem::path report_out;
};

inline void run_inspect(const InspectOptions& opt, std::ostream& log = std::cout) {
  if (opt.model_path.empty()) throw ValidationError("inspect requires --model");
  const AssessmentModel model = load_model(opt.model_path);
  const auto top = top_mixtures(model, opt.top);

  std::string csv =
      "rank,mixture_index,weight,y1_h1,y1_h2,y2_h1,y2_h2,y3_h1,y3_h2,y4_h1,y4_h2\n";
  for (std::size_t i = 0; i < top.size(); ++i) {
    csv += std::to_string(i + 1) + "," + std::to_string(top[i].index) + "," +
           format_double(top[i].weight);
    for (int k = 0; k < kPooledDim; ++k)
      csv += "," + std::to_string(int(top[i].signature.bits[static_cast<std::size_t>(k)]));
    csv += "\n";
  }
  if (!opt.report_out.empty()) write_file_atomic(opt.report_out, csv);
  log << csv;
}

}  // namespace hooprank::cli
