#pragma once

// Feature construction: half-window temporal max pooling into the 8-dim
// pooled vector b, 8-bit label signatures, maximum-likelihood fitting of
// the 256 signature-indexed diagonal Gaussians, and the posterior encoding
// of b into the 256-dim assessment feature phi.

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "hooprank/errors.hpp"
#include "hooprank/event_stream.hpp"
#include "hooprank/numeric.hpp"

namespace hooprank {

inline constexpr int kPooledDim = 8;
inline constexpr int kNumMixtures = 256;

/// 8 pooled values ordered (event, half) = (1,1),(1,2),(2,1),(2,2),...
using PooledVector = std::array<double, kPooledDim>;

/// Flat index of the (event, half) block; event in 1..4, half in 1..2.
inline constexpr int pooled_index(int event, int half) {
  return 2 * (event - 1) + (half - 1);
}

/// 8-bit ground-truth pattern selecting one of the 256 mixtures.
/// Bit k = 2*(event-1) + (half-1); index = sum_k bits[k] * 2^k.
struct Signature {
  std::array<std::uint8_t, 8> bits{};

  int index() const {
    int idx = 0;
    for (int k = 0; k < kPooledDim; ++k)
      idx |= int(bits[static_cast<std::size_t>(k)]) << k;
    return idx;
  }

  static Signature from_index(int index) {
    if (index < 0 || index >= kNumMixtures)
      throw ValidationError("signature index out of range");
    Signature s;
    for (int k = 0; k < kPooledDim; ++k)
      s.bits[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>((index >> k) & 1);
    return s;
  }

  bool operator==(const Signature&) const = default;
};

/// Max pooling of each atomic event over each half of the segment.
/// Event 4 pools the zone flags.
inline PooledVector pool_segment(const Segment& segment) {
  const std::size_t len = segment.frames.size();
  if (len < 2 || len % 2 != 0)
    throw ValidationError("segment length must be even and at least 2");
  if (segment.zone_flags.size() != len)
    throw ValidationError("segment zone flags length mismatch");

  PooledVector b{};
  const std::size_t half_len = len / 2;
  for (int half = 1; half <= 2; ++half) {
    const std::size_t begin = (half == 1) ? 0 : half_len;
    const std::size_t end = (half == 1) ? half_len : len;
    double m[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = begin; i < end; ++i) {
      const FrameRecord& r = segment.frames[i];
      m[0] = std::max(m[0], r.p_shoot);
      m[1] = std::max(m[1], r.p_possess);
      m[2] = std::max(m[2], r.p_made);
      m[3] = std::max(m[3], double(segment.zone_flags[i]));
    }
    for (int e = 1; e <= kNumEvents; ++e)
      b[static_cast<std::size_t>(pooled_index(e, half))] = m[e - 1];
  }
  return b;
}

/// Half-pooled binary labels: bit (e,h) is set iff event e occurs at any
/// frame of half h. Events 1..3 come from the ground-truth triples,
/// event 4 from the zone flags.
inline Signature signature_of_labels(std::span<const GroundTruthTriple> truth,
                                     std::span<const std::uint8_t> zone_flags) {
  const std::size_t len = truth.size();
  if (len != zone_flags.size())
    throw ValidationError("ground truth / zone flags length mismatch");
  if (len < 2 || len % 2 != 0)
    throw ValidationError("segment length must be even and at least 2");

  Signature sig;
  const std::size_t half_len = len / 2;
  for (std::size_t i = 0; i < len; ++i) {
    const int half = i < half_len ? 1 : 2;
    for (int e = 1; e <= 3; ++e)
      if (truth[i][static_cast<std::size_t>(e - 1)])
        sig.bits[static_cast<std::size_t>(pooled_index(e, half))] = 1;
    if (zone_flags[i]) sig.bits[static_cast<std::size_t>(pooled_index(4, half))] = 1;
  }
  return sig;
}

struct GaussianComponent {
  std::array<double, kPooledDim> mean{};
  std::array<double, kPooledDim> variance{};
  std::int64_t sample_count = 0;
  bool active = false;
};

/// The 256 signature-indexed diagonal Gaussians with activity flags.
struct MixtureBank {
  std::array<GaussianComponent, kNumMixtures> components{};
  double variance_floor = 1e-6;
  int min_samples = 2;

  int active_count() const {
    int n = 0;
    for (const auto& c : components) n += c.active ? 1 : 0;
    return n;
  }
};

struct FitConfig {
  double variance_floor = 1e-6;
  int min_samples = 2;
};

inline void validate_fit_config(const FitConfig& cfg) {
  if (!(cfg.variance_floor > 0.0))
    throw ValidationError("variance_floor must be positive");
  if (cfg.min_samples < 2) throw ValidationError("min_samples must be at least 2");
}

/// Maximum-likelihood fit per signature group: arithmetic mean and
/// population (divide-by-count) variance per dimension, floored at
/// variance_floor. Groups below min_samples stay inactive.
inline MixtureBank fit_mixtures(
    std::span<const std::pair<PooledVector, Signature>> samples,
    double variance_floor = 1e-6, int min_samples = 2) {
  validate_fit_config({variance_floor, min_samples});

  std::array<std::vector<const PooledVector*>, kNumMixtures> groups;
  for (const auto& [b, sig] : samples)
    groups[static_cast<std::size_t>(sig.index())].push_back(&b);

  MixtureBank bank;
  bank.variance_floor = variance_floor;
  bank.min_samples = min_samples;
  for (int n = 0; n < kNumMixtures; ++n) {
    GaussianComponent& comp = bank.components[static_cast<std::size_t>(n)];
    const auto& group = groups[static_cast<std::size_t>(n)];
    comp.sample_count = static_cast<std::int64_t>(group.size());
    if (comp.sample_count < min_samples) continue;
    comp.active = true;
    const double count = static_cast<double>(group.size());
    for (int d = 0; d < kPooledDim; ++d) {
      double sum = 0.0;
      for (const PooledVector* b : group) sum += (*b)[static_cast<std::size_t>(d)];
      const double mean = sum / count;
      double sq = 0.0;
      for (const PooledVector* b : group) {
        const double dev = (*b)[static_cast<std::size_t>(d)] - mean;
        sq += dev * dev;
      }
      comp.mean[static_cast<std::size_t>(d)] = mean;
      comp.variance[static_cast<std::size_t>(d)] = std::max(sq / count, variance_floor);
    }
  }
  if (bank.active_count() == 0)
    throw ProcessingError("mixture fitting failed: no signature group reaches min_samples");
  return bank;
}

/// Log of the 8-dim diagonal Gaussian density, evaluated in log space.
inline double log_density(const PooledVector& b, const GaussianComponent& comp) {
  if (!comp.active) throw ProcessingError("log_density queried on inactive mixture");
  double acc = 0.0;
  for (int d = 0; d < kPooledDim; ++d) {
    const double var = comp.variance[static_cast<std::size_t>(d)];
    const double dev = b[static_cast<std::size_t>(d)] - comp.mean[static_cast<std::size_t>(d)];
    acc += std::log(kTwoPi * var) + dev * dev / var;
  }
  return -0.5 * acc;
}

/// Posterior responsibilities under uniform priors: softmax of the active
/// components' log densities. Inactive components are exactly 0, so the
/// result sums to 1 over the active set.
inline std::array<double, kNumMixtures> encode(const PooledVector& b,
                                               const MixtureBank& bank) {
  std::array<double, kNumMixtures> phi{};
  std::vector<double> logd;
  std::vector<int> active;
  logd.reserve(kNumMixtures);
  active.reserve(kNumMixtures);
  for (int n = 0; n < kNumMixtures; ++n) {
    const GaussianComponent& comp = bank.components[static_cast<std::size_t>(n)];
    if (!comp.active) continue;
    active.push_back(n);
    logd.push_back(log_density(b, comp));
  }
  if (active.empty())
    throw ProcessingError("encode queried on a bank with no active mixtures");
  softmax_in_place(logd);
  for (std::size_t i = 0; i < active.size(); ++i)
    phi[static_cast<std::size_t>(active[i])] = logd[i];
  return phi;
}

/// (b, signature) pairs from every segment of a stream; requires the
/// stream's ground-truth annotations.
inline std::vector<std::pair<PooledVector, Signature>> pooled_training_samples(
    const EventStream& stream, int segment_length, int stride,
    const CourtGeometry& geometry) {
  if (!stream.ground_truth.has_value())
    throw ProcessingError("ground truth events required to build training samples (stream '" +
                          stream.player_id + "')");
  std::vector<std::pair<PooledVector, Signature>> out;
  for (const Segment& seg : segment_stream(stream, segment_length, stride, geometry)) {
    std::span<const GroundTruthTriple> truth(
        stream.ground_truth->data() + seg.start_offset, seg.frames.size());
    out.emplace_back(pool_segment(seg), signature_of_labels(truth, seg.zone_flags));
  }
  return out;
}

}  // namespace hooprank
