#pragma once

// Dataset trees on disk: stream files, pair manifests, metadata. Layout:
//
//   <dir>/metadata.json
//   <dir>/train/pairs.csv        stream_file_a,stream_file_b,label
//   <dir>/train/streams/<id>.csv
//   <dir>/test/...
//
// Manifest paths are relative to the manifest's directory.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "hooprank/errors.hpp"
#include "hooprank/event_stream.hpp"
#include "hooprank/model_io.hpp"
#include "hooprank/simulator.hpp"

namespace hooprank {

inline EventStream load_stream_file(const std::filesystem::path& path) {
  try {
    EventStream stream = parse_stream(read_file(path));
    stream.player_id = path.stem().string();
    return stream;
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

inline constexpr std::string_view kPairManifestHeader = "stream_file_a,stream_file_b,label";

/// Loads a pair manifest, reading each referenced stream once.
inline std::vector<PairExample> load_pair_manifest(const std::filesystem::path& manifest) {
  const std::filesystem::path base = manifest.parent_path();
  const std::string text = read_file(manifest);

  std::map<std::string, std::shared_ptr<const EventStream>> streams;
  auto stream_of = [&](const std::string& rel) {
    auto it = streams.find(rel);
    if (it == streams.end())
      it = streams.emplace(rel, std::make_shared<EventStream>(load_stream_file(base / rel))).first;
    return it->second;
  };

  std::vector<PairExample> pairs;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = (nl == std::string::npos)
                                ? std::string_view(text).substr(pos)
                                : std::string_view(text).substr(pos, nl - pos);
    pos = (nl == std::string::npos) ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line_no == 1 && line == kPairManifestHeader) continue;

    const auto fields = detail::split_fields(line);
    if (fields.size() != 3)
      throw ParseError(manifest.string() + ": malformed pair", line_no);
    int label = -1;
    if (!detail::parse_number(fields[2], label) || (label != 0 && label != 1))
      throw ParseError(manifest.string() + ": label must be 0 or 1", line_no);
    pairs.push_back({stream_of(std::string(fields[0])), stream_of(std::string(fields[1])), label});
  }
  if (pairs.empty())
    throw ProcessingError("empty pair manifest " + manifest.string());
  return pairs;
}

inline nlohmann::json criterion_to_json(const ExpertCriterion& c) {
  return {{"made_2pt", c.made_2pt},     {"made_3pt", c.made_3pt},
          {"miss_2pt", c.miss_2pt},     {"miss_3pt", c.miss_3pt},
          {"possession", c.possession}, {"tie_margin", c.tie_margin}};
}

inline ExpertCriterion criterion_from_json(const nlohmann::json& j) {
  ExpertCriterion c;
  c.made_2pt = j.value("made_2pt", c.made_2pt);
  c.made_3pt = j.value("made_3pt", c.made_3pt);
  c.miss_2pt = j.value("miss_2pt", c.miss_2pt);
  c.miss_3pt = j.value("miss_3pt", c.miss_3pt);
  c.possession = j.value("possession", c.possession);
  c.tie_margin = j.value("tie_margin", c.tie_margin);
  validate_criterion(c);
  return c;
}

namespace detail {

inline nlohmann::json dataset_metadata(const Dataset& dataset) {
  auto players_json = [](const std::vector<DatasetPlayer>& players) {
    nlohmann::json arr = nlohmann::json::array();
    for (const DatasetPlayer& p : players) {
      arr.push_back({{"id", p.id},
                     {"shoot_rate", p.profile.shoot_rate},
                     {"make_prob_2pt", p.profile.make_prob_2pt},
                     {"make_prob_3pt", p.profile.make_prob_3pt},
                     {"three_pt_tendency", p.profile.three_pt_tendency},
                     {"possession_rate", p.profile.possession_rate},
                     {"noise_level", p.profile.noise_level}});
    }
    return arr;
  };
  const GenerateConfig& cfg = dataset.config;
  return {{"seed", cfg.sim.seed},
          {"duration_minutes", cfg.sim.duration_minutes},
          {"frame_rate", cfg.sim.frame_rate},
          {"n_players", cfg.n_players},
          {"n_pairs_per_split", cfg.n_pairs},
          {"noise_level", cfg.noise_level},
          {"geometry", geometry_to_json(cfg.sim.geometry)},
          // statistics fed to the criterion: per-minute made/miss rates
          // for 2pt/3pt attempts plus possession share in [0,1]
          {"criterion", criterion_to_json(cfg.criterion)},
          {"criterion_statistics",
           "per-minute made_2pt/made_3pt/miss_2pt/miss_3pt rates and possession share"},
          {"train_players", players_json(dataset.train_players)},
          {"test_players", players_json(dataset.test_players)}};
}

inline void write_split(const std::filesystem::path& split_dir,
                        const std::vector<DatasetPlayer>& players,
                        const std::vector<PairExample>& pairs) {
  namespace fs = std::filesystem;
  fs::create_directories(split_dir / "streams");
  for (const DatasetPlayer& p : players) {
    std::ofstream out(split_dir / "streams" / (p.id + ".csv"), std::ios::binary);
    const std::string text = serialize_stream(*p.stream);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw ProcessingError("write failed under " + split_dir.string());
  }
  std::string manifest(kPairManifestHeader);
  manifest.push_back('\n');
  for (const PairExample& p : pairs) {
    manifest += "streams/" + p.stream_a->player_id + ".csv,streams/" +
                p.stream_b->player_id + ".csv," + std::to_string(p.label) + "\n";
  }
  std::ofstream out(split_dir / "pairs.csv", std::ios::binary);
  out.write(manifest.data(), static_cast<std::streamsize>(manifest.size()));
  if (!out) throw ProcessingError("write failed under " + split_dir.string());
}

}  // namespace detail

/// Writes the dataset tree; builds into a temp sibling and renames, so a
/// failure leaves no partial output. The target must not exist yet.
inline void write_dataset(const Dataset& dataset, const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  if (fs::exists(out_dir))
    throw ValidationError("output directory already exists: " + out_dir.string());
  const fs::path tmp = out_dir.string() + ".tmp";
  fs::remove_all(tmp);
  try {
    fs::create_directories(tmp);
    detail::write_split(tmp / "train", dataset.train_players, dataset.train_pairs);
    detail::write_split(tmp / "test", dataset.test_players, dataset.test_pairs);
    std::ofstream meta(tmp / "metadata.json", std::ios::binary);
    const std::string text = detail::dataset_metadata(dataset).dump(2) + "\n";
    meta.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!meta) throw ProcessingError("write failed under " + tmp.string());
    meta.close();
    fs::rename(tmp, out_dir);
  } catch (...) {
    fs::remove_all(tmp);
    throw;
  }
}

}  // namespace hooprank
