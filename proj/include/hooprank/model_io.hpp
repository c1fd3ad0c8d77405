#pragma once

// JSON (de)serialization of AssessmentModel, including the mixture bank.
// Numbers round-trip bit-exactly (shortest round-trip encoding).

#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "hooprank/assessment.hpp"
#include "hooprank/errors.hpp"
#include "hooprank/features.hpp"

namespace hooprank {

inline constexpr int kModelFileVersion = 1;

inline nlohmann::json geometry_to_json(const CourtGeometry& g) {
  return {{"court_length", g.court_length},
          {"court_width", g.court_width},
          {"three_point_radius", g.three_point_radius},
          {"baskets", {{g.baskets[0].x, g.baskets[0].y}, {g.baskets[1].x, g.baskets[1].y}}}};
}

inline CourtGeometry geometry_from_json(const nlohmann::json& j) {
  CourtGeometry g;
  g.court_length = j.at("court_length").get<double>();
  g.court_width = j.at("court_width").get<double>();
  g.three_point_radius = j.at("three_point_radius").get<double>();
  const auto& baskets = j.at("baskets");
  if (baskets.size() != 2) throw ProcessingError("model file: expected 2 baskets");
  for (std::size_t i = 0; i < 2; ++i) {
    g.baskets[i].x = baskets.at(i).at(0).get<double>();
    g.baskets[i].y = baskets.at(i).at(1).get<double>();
  }
  validate_geometry(g);
  return g;
}

inline nlohmann::json bank_to_json(const MixtureBank& bank) {
  nlohmann::json components = nlohmann::json::array();
  for (const GaussianComponent& c : bank.components) {
    components.push_back({{"mean", c.mean},
                          {"variance", c.variance},
                          {"sample_count", c.sample_count},
                          {"active", c.active}});
  }
  return {{"variance_floor", bank.variance_floor},
          {"min_samples", bank.min_samples},
          {"components", std::move(components)}};
}

inline MixtureBank bank_from_json(const nlohmann::json& j) {
  MixtureBank bank;
  bank.variance_floor = j.at("variance_floor").get<double>();
  bank.min_samples = j.at("min_samples").get<int>();
  const auto& components = j.at("components");
  if (components.size() != kNumMixtures)
    throw ProcessingError("model file: expected 256 mixture components");
  for (std::size_t n = 0; n < kNumMixtures; ++n) {
    const auto& cj = components.at(n);
    GaussianComponent& c = bank.components[n];
    const auto mean = cj.at("mean").get<std::vector<double>>();
    const auto variance = cj.at("variance").get<std::vector<double>>();
    if (mean.size() != kPooledDim || variance.size() != kPooledDim)
      throw ProcessingError("model file: component arrays must have 8 entries");
    std::copy(mean.begin(), mean.end(), c.mean.begin());
    std::copy(variance.begin(), variance.end(), c.variance.begin());
    c.sample_count = cj.at("sample_count").get<std::int64_t>();
    c.active = cj.at("active").get<bool>();
  }
  return bank;
}

inline nlohmann::json model_to_json(const AssessmentModel& model) {
  return {{"version", kModelFileVersion},
          {"weights", model.weights},
          {"segment_length", model.segment_length},
          {"stride", model.stride},
          {"relevance", relevance_rule_name(model.relevance)},
          {"geometry", geometry_to_json(model.geometry)},
          {"bank", bank_to_json(model.bank)}};
}

inline AssessmentModel model_from_json(const nlohmann::json& j) {
  if (j.at("version").get<int>() != kModelFileVersion)
    throw ProcessingError("unsupported model file version");
  AssessmentModel model;
  const auto weights = j.at("weights").get<std::vector<double>>();
  if (weights.size() != kNumMixtures)
    throw ProcessingError("model file: expected 256 weights");
  std::copy(weights.begin(), weights.end(), model.weights.begin());
  model.segment_length = j.at("segment_length").get<int>();
  model.stride = j.at("stride").get<int>();
  model.relevance = relevance_rule_from_name(j.at("relevance").get<std::string>());
  model.geometry = geometry_from_json(j.at("geometry"));
  model.bank = bank_from_json(j.at("bank"));
  validate_segmentation(model.segment_length, model.stride);
  return model;
}

/// Whole-file write via temp + rename; no partial output on failure.
inline void write_file_atomic(const std::filesystem::path& path,
                              const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ProcessingError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw ProcessingError("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ProcessingError("cannot read " + path.string());
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  return content;
}

inline void save_model(const std::filesystem::path& path, const AssessmentModel& model) {
  write_file_atomic(path, model_to_json(model).dump() + "\n");
}

inline AssessmentModel load_model(const std::filesystem::path& path) {
  try {
    return model_from_json(nlohmann::json::parse(read_file(path)));
  } catch (const nlohmann::json::exception& e) {
    throw ProcessingError("invalid model file " + path.string() + ": " + e.what());
  }
}

}  // namespace hooprank
