// hooprank command-line tool: simulate / train / score / evaluate /
// ablate / inspect. Exit codes: 0 success, 1 validation error, 2 runtime
// error. See README.md for the file formats.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hooprank/cli.hpp"

namespace {

using hooprank::ValidationError;
namespace cli = hooprank::cli;

// --config values act as flag defaults; explicit flags win.
nlohmann::json load_config_from_argv(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) return cli::load_config_file(argv[i + 1]);
    if (arg.rfind("--config=", 0) == 0) return cli::load_config_file(arg.substr(9));
  }
  return nlohmann::json::object();
}

void add_config_flag(CLI::App* cmd, std::string& config_path) {
  cmd->add_option("--config", config_path, "JSON config file (flags override it)");
}

void add_pipeline_flags(CLI::App* cmd, hooprank::PipelineConfig& cfg,
                        std::string& relevance_name) {
  cmd->add_option("--segment-length", cfg.segment_length,
                  "Segment length T_s in frames (even, >= 2)");
  cmd->add_option("--stride", cfg.stride, "Segment stride in frames");
  cmd->add_option("--variance-floor", cfg.variance_floor, "Mixture variance floor");
  cmd->add_option("--min-samples", cfg.min_samples,
                  "Samples needed to activate a mixture");
  cmd->add_option("--relevance", relevance_name, "Segment relevance rule: max|mean");
  cmd->add_option("--court-length", cfg.geometry.court_length, "Court length, meters");
  cmd->add_option("--court-width", cfg.geometry.court_width, "Court width, meters");
  cmd->add_option("--three-point-radius", cfg.geometry.three_point_radius,
                  "3-point arc radius, meters");
}

void add_train_flags(CLI::App* cmd, hooprank::TrainConfig& cfg, std::string& init_name) {
  cmd->add_option("--learning-rate", cfg.learning_rate, "Gradient descent step size");
  cmd->add_option("--iterations", cfg.iterations, "Gradient descent iterations");
  cmd->add_option("--seed", cfg.seed, "Training seed (weight init)");
  cmd->add_option("--weight-init", init_name, "Weight init: zeros|small_uniform");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Skill assessment from per-frame atomic-event probability streams"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (flags override it)")
      ->expected(1);

  nlohmann::json config;
  try {
    config = load_config_from_argv(argc, argv);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  // simulate
  cli::SimulateOptions sim_opt;
  cli::apply_generate_config(config, sim_opt.gen);
  if (config.contains("out")) sim_opt.out_dir = config.at("out").get<std::string>();
  auto* sim = app.add_subcommand("simulate", "Generate a synthetic labeled dataset");
  add_config_flag(sim, config_path);
  sim->add_option("--out", sim_opt.out_dir, "Output dataset directory (must not exist)");
  sim->add_option("--seed", sim_opt.gen.sim.seed, "Dataset seed");
  sim->add_option("--players", sim_opt.gen.n_players, "Number of players (>= 4)");
  sim->add_option("--pairs", sim_opt.gen.n_pairs, "Labeled pairs per split");
  sim->add_option("--duration", sim_opt.gen.sim.duration_minutes, "Minutes per player");
  sim->add_option("--frame-rate", sim_opt.gen.sim.frame_rate, "Samples per second");
  sim->add_option("--noise", sim_opt.gen.noise_level, "Detector noise std");

  // train
  cli::TrainOptions train_opt;
  std::string train_relevance, train_init;
  cli::apply_pipeline_config(config, train_opt.pipeline);
  cli::apply_train_config(config, train_opt.train);
  auto* train = app.add_subcommand("train", "Fit mixtures and learn scoring weights");
  add_config_flag(train, config_path);
  train->add_option("--data", train_opt.data_dir, "Training split dir (pairs.csv + streams/)");
  train->add_option("--out", train_opt.model_out, "Model file to write");
  add_pipeline_flags(train, train_opt.pipeline, train_relevance);
  add_train_flags(train, train_opt.train, train_init);

  // score
  cli::ScoreOptions score_opt;
  auto* score = app.add_subcommand("score", "Per-segment contribution table for one stream");
  add_config_flag(score, config_path);
  score->add_option("--model", score_opt.model_path, "Model file");
  score->add_option("--stream", score_opt.stream_path, "Stream CSV file");
  score->add_option("--out", score_opt.report_out, "Report CSV to write");

  // evaluate
  cli::EvaluateOptions eval_opt;
  std::string eval_ablation, eval_init;
  cli::apply_train_config(config, eval_opt.train);
  auto* evaluate = app.add_subcommand("evaluate", "Pairwise accuracy on a labeled split");
  add_config_flag(evaluate, config_path);
  evaluate->add_option("--model", eval_opt.model_path, "Model file");
  evaluate->add_option("--data", eval_opt.data_dir, "Split dir with pairs.csv");
  evaluate->add_option("--out", eval_opt.report_out, "Verdict CSV to write");
  evaluate->add_option("--ablation", eval_ablation,
                       "Variant: no_gm|no_p1..no_p4|unit_weights|single_gm_topK");
  evaluate->add_option("--train-data", eval_opt.train_data_dir,
                       "Training split dir (retraining ablations)");
  add_train_flags(evaluate, eval_opt.train, eval_init);

  // ablate
  cli::AblateOptions ablate_opt;
  std::string ablate_relevance, ablate_init, variants_csv;
  cli::apply_pipeline_config(config, ablate_opt.pipeline);
  cli::apply_train_config(config, ablate_opt.train);
  auto* ablate = app.add_subcommand("ablate", "Accuracy table over model variants");
  add_config_flag(ablate, config_path);
  ablate->add_option("--train-data", ablate_opt.train_data_dir, "Training split dir");
  ablate->add_option("--test-data", ablate_opt.test_data_dir, "Evaluation split dir");
  ablate->add_option("--variants", variants_csv,
                     "Comma-separated variants (full,no_gm,no_p1..4,unit_weights,single_gm_topK)");
  ablate->add_option("--out", ablate_opt.report_out, "Report CSV to write");
  add_pipeline_flags(ablate, ablate_opt.pipeline, ablate_relevance);
  add_train_flags(ablate, ablate_opt.train, ablate_init);

  // inspect
  cli::InspectOptions inspect_opt;
  if (config.contains("top")) inspect_opt.top = config.at("top").get<int>();
  auto* inspect = app.add_subcommand("inspect", "Top-|w| mixtures with signature bits");
  add_config_flag(inspect, config_path);
  inspect->add_option("--model", inspect_opt.model_path, "Model file");
  inspect->add_option("--top", inspect_opt.top, "How many mixtures to list");
  inspect->add_option("--out", inspect_opt.report_out, "Report CSV to write");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (!train_relevance.empty())
      train_opt.pipeline.relevance = hooprank::relevance_rule_from_name(train_relevance);
    if (!ablate_relevance.empty())
      ablate_opt.pipeline.relevance = hooprank::relevance_rule_from_name(ablate_relevance);
    if (!train_init.empty())
      train_opt.train.weight_init = hooprank::weight_init_from_name(train_init);
    if (!eval_init.empty())
      eval_opt.train.weight_init = hooprank::weight_init_from_name(eval_init);
    if (!ablate_init.empty())
      ablate_opt.train.weight_init = hooprank::weight_init_from_name(ablate_init);
    if (!eval_ablation.empty()) eval_opt.ablation = eval_ablation;
    if (!variants_csv.empty()) {
      ablate_opt.variants.clear();
      std::size_t pos = 0;
      while (pos <= variants_csv.size()) {
        const std::size_t comma = variants_csv.find(',', pos);
        const std::string name = variants_csv.substr(
            pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (!name.empty()) ablate_opt.variants.push_back(name);
        if (comma == std::string::npos) break;
        pos = comma + 1;
      }
    }

    if (sim->parsed()) cli::run_simulate(sim_opt);
    else if (train->parsed()) cli::run_train(train_opt);
    else if (score->parsed()) cli::run_score(score_opt);
    else if (evaluate->parsed()) cli::run_evaluate(eval_opt);
    else if (ablate->parsed()) cli::run_ablate(ablate_opt);
    else if (inspect->parsed()) cli::run_inspect(inspect_opt);
    return 0;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
