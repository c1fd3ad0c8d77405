#pragma once

// Shared builders for the test binaries.

#include <unistd.h>

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "hooprank/assessment.hpp"
#include "hooprank/event_stream.hpp"
#include "hooprank/features.hpp"
#include "hooprank/numeric.hpp"

namespace test_helpers {

using namespace hooprank;

// Signature index whose only set bits are the two zone bits (event 4).
inline constexpr int kZoneOneIndex = (1 << 6) | (1 << 7);  // 192

// Positions with a known zone under the default geometry.
inline constexpr double kTwoPtX = 2.0;    // ~0.4 m from basket 0
inline constexpr double kThreePtX = 14.0; // court center, ~12.4 m from both
inline constexpr double kPosY = 7.5;

/// Bank with exactly two active components that differ only in the floored
/// zone dimensions, so any zone-constant segment encodes to an exact
/// one-hot: the mismatched component's density underflows to zero.
inline MixtureBank make_zone_bank() {
  MixtureBank bank;
  bank.variance_floor = 1e-6;
  bank.min_samples = 2;
  for (int index : {0, kZoneOneIndex}) {
    GaussianComponent& c = bank.components[static_cast<std::size_t>(index)];
    c.active = true;
    c.sample_count = 2;
    for (int d = 0; d < kPooledDim; ++d) {
      const bool zone_dim = d >= 6;
      c.mean[static_cast<std::size_t>(d)] = (zone_dim && index == kZoneOneIndex) ? 1.0 : 0.0;
      c.variance[static_cast<std::size_t>(d)] = zone_dim ? 1e-6 : 1.0;
    }
  }
  return bank;
}

/// Stream of n zone-constant windows of length 10 (stride 10). Window i
/// has relevance[i] as the max p_shoot and sits in the 3pt zone iff
/// zone_one[i].
inline EventStream make_window_stream(const std::vector<double>& relevance,
                                      const std::vector<bool>& zone_one) {
  EventStream stream;
  stream.player_id = "constructed";
  for (std::size_t w = 0; w < relevance.size(); ++w) {
    for (int i = 0; i < 10; ++i) {
      FrameRecord rec;
      rec.frame_index = static_cast<std::int64_t>(w) * 10 + i;
      rec.p_shoot = (i == 0) ? relevance[w] : 0.0;
      rec.pos_x = zone_one[w] ? kThreePtX : kTwoPtX;
      rec.pos_y = kPosY;
      stream.records.push_back(rec);
    }
  }
  return stream;
}

/// Model over make_zone_bank() scoring zone-0 windows as w0 and zone-1
/// windows as w1 (stride 10, exact one-hot encodings).
inline AssessmentModel make_zone_model(double w0, double w1) {
  AssessmentModel model;
  model.bank = make_zone_bank();
  model.weights[0] = w0;
  model.weights[kZoneOneIndex] = w1;
  model.segment_length = 10;
  model.stride = 10;
  return model;
}

inline Segment make_segment(const std::vector<double>& p_shoot,
                            const std::vector<double>& p_possess,
                            const std::vector<double>& p_made,
                            const std::vector<std::uint8_t>& zone_flags) {
  Segment seg;
  for (std::size_t i = 0; i < p_shoot.size(); ++i) {
    FrameRecord rec;
    rec.frame_index = static_cast<std::int64_t>(i);
    rec.p_shoot = p_shoot[i];
    rec.p_possess = p_possess[i];
    rec.p_made = p_made[i];
    seg.frames.push_back(rec);
  }
  seg.zone_flags = zone_flags;
  return seg;
}

/// Random valid stream; positions span both zones, probabilities uniform.
inline EventStream random_stream(std::mt19937_64& engine, int frames,
                                 bool with_truth = false) {
  std::uniform_real_distribution<double> prob(0.0, 1.0);
  std::uniform_real_distribution<double> px(0.0, 28.0);
  std::uniform_real_distribution<double> py(0.0, 15.0);
  std::bernoulli_distribution bit(0.5);
  EventStream stream;
  stream.player_id = "random";
  if (with_truth) stream.ground_truth.emplace();
  for (int i = 0; i < frames; ++i) {
    FrameRecord rec;
    rec.frame_index = i;
    rec.p_shoot = prob(engine);
    rec.p_possess = prob(engine);
    rec.p_made = prob(engine);
    rec.pos_x = px(engine);
    rec.pos_y = py(engine);
    stream.records.push_back(rec);
    if (with_truth)
      stream.ground_truth->push_back({std::uint8_t(bit(engine)), std::uint8_t(bit(engine)),
                                      std::uint8_t(bit(engine))});
  }
  return stream;
}

/// Scratch directory removed on destruction.
struct TempDir {
  std::filesystem::path path;

  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() /
           ("hooprank_" + tag + "_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

 private:
  static int& counter() {
    static int n = 0;
    return n;
  }
};

}  // namespace test_helpers
