#include "hooprank/cli.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "helpers.hpp"

using namespace hooprank;
namespace cli = hooprank::cli;
using test_helpers::TempDir;

namespace {

cli::SimulateOptions tiny_simulate(const std::filesystem::path& out, std::uint64_t seed) {
  cli::SimulateOptions opt;
  opt.gen.sim.seed = seed;
  opt.gen.sim.duration_minutes = 1.5;
  opt.gen.n_players = 8;
  opt.gen.n_pairs = 6;
  opt.gen.criterion.tie_margin = 0.05;
  opt.out_dir = out;
  return opt;
}

std::map<std::string, std::string> read_tree(const std::filesystem::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    files[std::filesystem::relative(entry.path(), root).string()] =
        read_file(entry.path());
  }
  return files;
}

int run_binary(const std::string& args, const std::filesystem::path& capture) {
  const std::string cmd = std::string(HOOPRANK_CLI_BINARY) + " " + args + " >" +
                          capture.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, EndToEndPipeline) {
  TempDir dir("cli_e2e");
  const auto data = dir.path / "data";
  std::ostringstream sim_log;
  cli::run_simulate(tiny_simulate(data, 71), sim_log);
  EXPECT_NE(sim_log.str().find("wrote 4+4 players"), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(data / "train" / "pairs.csv"));
  EXPECT_TRUE(std::filesystem::exists(data / "metadata.json"));

  cli::TrainOptions train_opt;
  train_opt.data_dir = data / "train";
  train_opt.model_out = dir.path / "model.json";
  std::ostringstream train_log;
  cli::run_train(train_opt, train_log);
  EXPECT_TRUE(std::filesystem::exists(train_opt.model_out));
  EXPECT_NE(train_log.str().find("final hinge loss:"), std::string::npos);
  EXPECT_NE(train_log.str().find("iteration,loss"), std::string::npos);

  cli::EvaluateOptions eval_opt;
  eval_opt.model_path = train_opt.model_out;
  eval_opt.data_dir = data / "test";
  eval_opt.report_out = dir.path / "verdicts.csv";
  std::ostringstream eval_log;
  cli::run_evaluate(eval_opt, eval_log);
  EXPECT_NE(eval_log.str().find("pairwise accuracy:"), std::string::npos);
  const std::string verdicts = read_file(eval_opt.report_out);
  EXPECT_NE(verdicts.find("stream_a,stream_b,label,score_a,score_b,predicted,correct"),
            std::string::npos);
  // header + one row per pair
  EXPECT_EQ(std::count(verdicts.begin(), verdicts.end(), '\n'), 7);

  cli::ScoreOptions score_opt;
  score_opt.model_path = train_opt.model_out;
  score_opt.stream_path = data / "test" / "streams" / "p04.csv";
  score_opt.report_out = dir.path / "segments.csv";
  std::ostringstream score_log;
  cli::run_score(score_opt, score_log);
  EXPECT_NE(score_log.str().find("total:"), std::string::npos);
  const std::string segments = read_file(score_opt.report_out);
  EXPECT_NE(segments.find("start_frame,relevance,contribution,weighted_term"),
            std::string::npos);

  cli::InspectOptions inspect_opt;
  inspect_opt.model_path = train_opt.model_out;
  inspect_opt.top = 4;
  inspect_opt.report_out = dir.path / "top.csv";
  std::ostringstream inspect_log;
  cli::run_inspect(inspect_opt, inspect_log);
  const std::string top = read_file(inspect_opt.report_out);
  EXPECT_NE(top.find("rank,mixture_index,weight,y1_h1,y1_h2,y2_h1,y2_h2,y3_h1,y3_h2,"
                     "y4_h1,y4_h2"),
            std::string::npos);
  EXPECT_EQ(std::count(top.begin(), top.end(), '\n'), 5);

  cli::AblateOptions ablate_opt;
  ablate_opt.train_data_dir = data / "train";
  ablate_opt.test_data_dir = data / "test";
  ablate_opt.variants = {"full", "unit_weights"};
  ablate_opt.report_out = dir.path / "ablations.csv";
  std::ostringstream ablate_log;
  cli::run_ablate(ablate_opt, ablate_log);
  const std::string ablations = read_file(ablate_opt.report_out);
  EXPECT_NE(ablations.find("variant,accuracy"), std::string::npos);
  EXPECT_NE(ablations.find("unit_weights,0"), std::string::npos);
}

TEST(Cli, SimulateIsByteIdenticalForTheSameSeed) {
  TempDir dir("cli_idem");
  cli::run_simulate(tiny_simulate(dir.path / "a", 72), std::cout);
  cli::run_simulate(tiny_simulate(dir.path / "b", 72), std::cout);
  cli::run_simulate(tiny_simulate(dir.path / "c", 73), std::cout);
  EXPECT_EQ(read_tree(dir.path / "a"), read_tree(dir.path / "b"));
  EXPECT_NE(read_tree(dir.path / "a"), read_tree(dir.path / "c"));
}

TEST(Cli, TrainIsByteIdenticalForTheSameInputs) {
  TempDir dir("cli_train_idem");
  cli::run_simulate(tiny_simulate(dir.path / "data", 74), std::cout);
  cli::TrainOptions opt;
  opt.data_dir = dir.path / "data" / "train";
  for (const char* name : {"m1.json", "m2.json"}) {
    opt.model_out = dir.path / name;
    std::ostringstream log;
    cli::run_train(opt, log);
  }
  EXPECT_EQ(read_file(dir.path / "m1.json"), read_file(dir.path / "m2.json"));
}

TEST(Cli, ValidationFailures) {
  TempDir dir("cli_validation");
  cli::SimulateOptions too_few = tiny_simulate(dir.path / "x", 75);
  too_few.gen.n_players = 3;
  try {
    cli::run_simulate(too_few, std::cout);
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_STREQ(e.what(), "need at least 4 players");
  }
  EXPECT_FALSE(std::filesystem::exists(dir.path / "x"));

  // refusing to clobber an existing output directory
  cli::run_simulate(tiny_simulate(dir.path / "once", 76), std::cout);
  EXPECT_THROW(cli::run_simulate(tiny_simulate(dir.path / "once", 76), std::cout),
               ValidationError);

  cli::TrainOptions bad_train;
  bad_train.data_dir = dir.path / "missing";
  bad_train.model_out = dir.path / "model.json";
  bad_train.train.iterations = 0;
  EXPECT_THROW(cli::run_train(bad_train, std::cout), ValidationError);
}

TEST(Cli, EvaluateWithAblation) {
  TempDir dir("cli_ablation");
  const auto data = dir.path / "data";
  cli::run_simulate(tiny_simulate(data, 77), std::cout);
  cli::TrainOptions train_opt;
  train_opt.data_dir = data / "train";
  train_opt.model_out = dir.path / "model.json";
  std::ostringstream train_log;
  cli::run_train(train_opt, train_log);

  cli::EvaluateOptions eval_opt;
  eval_opt.model_path = train_opt.model_out;
  eval_opt.data_dir = data / "test";
  eval_opt.ablation = "unit_weights";
  std::ostringstream log;
  cli::run_evaluate(eval_opt, log);
  EXPECT_NE(log.str().find("ablation: unit_weights"), std::string::npos);
  EXPECT_NE(log.str().find("pairwise accuracy: 0 "), std::string::npos);

  eval_opt.ablation = "no_gm";  // needs --train-data
  EXPECT_THROW(cli::run_evaluate(eval_opt, log), ValidationError);
  eval_opt.train_data_dir = data / "train";
  std::ostringstream log2;
  cli::run_evaluate(eval_opt, log2);
  EXPECT_NE(log2.str().find("ablation: no_gm"), std::string::npos);
}

TEST(Cli, ConfigFileDefaults) {
  TempDir dir("cli_config");
  const auto config_path = dir.path / "config.json";
  write_file_atomic(config_path,
                    R"({"segment_length": 12, "stride": 2, "relevance": "mean",
                        "seed": 9, "players": 8,
                        "geometry": {"three_point_radius": 7.24},
                        "criterion": {"made_3pt": 4.0, "tie_margin": 0.3}})");
  const nlohmann::json config = cli::load_config_file(config_path);

  PipelineConfig pipeline;
  cli::apply_pipeline_config(config, pipeline);
  EXPECT_EQ(pipeline.segment_length, 12);
  EXPECT_EQ(pipeline.stride, 2);
  EXPECT_EQ(pipeline.relevance, RelevanceRule::kMean);
  EXPECT_DOUBLE_EQ(pipeline.geometry.three_point_radius, 7.24);
  EXPECT_DOUBLE_EQ(pipeline.geometry.court_length, 28.0);  // untouched default

  GenerateConfig gen;
  cli::apply_generate_config(config, gen);
  EXPECT_EQ(gen.sim.seed, 9u);
  EXPECT_EQ(gen.n_players, 8);
  EXPECT_DOUBLE_EQ(gen.criterion.made_3pt, 4.0);
  EXPECT_DOUBLE_EQ(gen.criterion.tie_margin, 0.3);

  write_file_atomic(dir.path / "bad.json", "[1,2]");
  EXPECT_THROW(cli::load_config_file(dir.path / "bad.json"), ValidationError);
}

TEST(Cli, ScoreErrorPathsAndSingleSegment) {
  TempDir dir("cli_score_edge");
  save_model(dir.path / "model.json", test_helpers::make_zone_model(5.0, 7.0));

  // exactly one window: the total equals that row's contribution
  write_file_atomic(dir.path / "one.csv",
                    serialize_stream(test_helpers::make_window_stream({0.5}, {false})));
  cli::ScoreOptions opt;
  opt.model_path = dir.path / "model.json";
  opt.stream_path = dir.path / "one.csv";
  opt.report_out = dir.path / "one_report.csv";
  std::ostringstream log;
  cli::run_score(opt, log);
  EXPECT_NE(log.str().find("total: 5"), std::string::npos);
  const std::string report = read_file(opt.report_out);
  EXPECT_EQ(std::count(report.begin(), report.end(), '\n'), 2);  // header + 1 row

  // zero relevance -> runtime error, no report written
  write_file_atomic(dir.path / "dead.csv",
                    serialize_stream(test_helpers::make_window_stream({0.0}, {false})));
  opt.stream_path = dir.path / "dead.csv";
  opt.report_out = dir.path / "dead_report.csv";
  try {
    cli::run_score(opt, log);
    FAIL() << "expected ProcessingError";
  } catch (const ProcessingError& e) {
    EXPECT_NE(std::string(e.what()).find("no relevant segments"), std::string::npos);
  }
  EXPECT_FALSE(std::filesystem::exists(opt.report_out));

  // inspect: k beyond the active-mixture count is rejected
  cli::InspectOptions inspect_opt;
  inspect_opt.model_path = dir.path / "model.json";
  inspect_opt.top = 1000;
  EXPECT_THROW(cli::run_inspect(inspect_opt, log), ValidationError);
}

TEST(Cli, BinaryExitCodes) {
  TempDir dir("cli_binary");
  const auto out = dir.path / "out.txt";

  EXPECT_EQ(run_binary("--help", out), 0);
  EXPECT_EQ(run_binary("simulate --players 3 --out " + (dir.path / "d").string(), out), 1);
  {
    std::ifstream in(out);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    EXPECT_NE(text.find("need at least 4 players"), std::string::npos);
  }

  // runtime failure: model file does not exist -> exit 2
  EXPECT_EQ(run_binary("inspect --model " + (dir.path / "nope.json").string(), out), 2);

  // unknown flag -> validation exit 1
  EXPECT_EQ(run_binary("simulate --bogus", out), 1);

  // full happy path through the real binary; --config supplies defaults
  write_file_atomic(dir.path / "config.json",
                    R"({"players": 8, "pairs": 4, "duration_minutes": 1.0})");
  const auto data = dir.path / "data";
  EXPECT_EQ(run_binary("simulate --config " + (dir.path / "config.json").string() +
                           " --seed 78 --out " + data.string(),
                       out),
            0);
  EXPECT_EQ(run_binary("train --data " + (data / "train").string() + " --out " +
                           (dir.path / "model.json").string(),
                       out),
            0);
  EXPECT_EQ(run_binary("evaluate --model " + (dir.path / "model.json").string() +
                           " --data " + (data / "test").string(),
                       out),
            0);
}
