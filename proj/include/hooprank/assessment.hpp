#pragma once

// Relevance-weighted assessment scoring, pairwise hinge-loss training of
// the linear weights, pairwise-accuracy evaluation, top-weight mixture
// inspection, and the ablation variants.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hooprank/errors.hpp"
#include "hooprank/event_stream.hpp"
#include "hooprank/features.hpp"
#include "hooprank/numeric.hpp"

namespace hooprank {

// Guards the relevance-normalized denominator against all-zero relevance.
inline constexpr double kRelevanceEpsilon = 1e-9;

enum class RelevanceRule { kMax, kMean };

inline std::string relevance_rule_name(RelevanceRule rule) {
  return rule == RelevanceRule::kMax ? "max" : "mean";
}

inline RelevanceRule relevance_rule_from_name(std::string_view name) {
  if (name == "max") return RelevanceRule::kMax;
  if (name == "mean") return RelevanceRule::kMean;
  throw ValidationError("unknown relevance rule '" + std::string(name) + "'");
}

/// Shared knobs for segmentation, mixture fitting, and scoring.
struct PipelineConfig {
  int segment_length = 10;
  int stride = 1;
  CourtGeometry geometry{};
  RelevanceRule relevance = RelevanceRule::kMax;
  double variance_floor = 1e-6;
  int min_samples = 2;
};

inline void validate_pipeline_config(const PipelineConfig& cfg) {
  validate_segmentation(cfg.segment_length, cfg.stride);
  validate_geometry(cfg.geometry);
  validate_fit_config({cfg.variance_floor, cfg.min_samples});
}

/// Learned linear weights over phi plus everything needed to score.
struct AssessmentModel {
  std::array<double, kNumMixtures> weights{};
  MixtureBank bank;
  int segment_length = 10;
  int stride = 1;
  RelevanceRule relevance = RelevanceRule::kMax;
  CourtGeometry geometry{};
};

/// Two player streams and the expert's verdict: label 1 iff the player of
/// stream_a was judged better.
struct PairExample {
  std::shared_ptr<const EventStream> stream_a;
  std::shared_ptr<const EventStream> stream_b;
  int label = 0;
};

enum class WeightInit { kZeros, kSmallUniform };

inline WeightInit weight_init_from_name(std::string_view name) {
  if (name == "zeros") return WeightInit::kZeros;
  if (name == "small_uniform") return WeightInit::kSmallUniform;
  throw ValidationError("unknown weight_init '" + std::string(name) + "'");
}

struct TrainConfig {
  double learning_rate = 0.001;
  int iterations = 100;
  std::uint64_t seed = 1;
  WeightInit weight_init = WeightInit::kZeros;
};

inline void validate_train_config(const TrainConfig& cfg) {
  if (!(cfg.learning_rate > 0.0))
    throw ValidationError("learning_rate must be positive");
  if (cfg.iterations < 1) throw ValidationError("iterations must be at least 1");
}

struct SegmentTerm {
  std::int64_t start_frame = 0;
  double relevance = 0.0;
  double contribution = 0.0;   // w . phi
  double weighted_term = 0.0;  // relevance * contribution
};

struct ScoreBreakdown {
  double total = 0.0;
  std::vector<SegmentTerm> per_segment;
};

/// Relevance of one segment: max (default) or mean of p_shoot.
inline double segment_relevance(const Segment& segment,
                                RelevanceRule rule = RelevanceRule::kMax) {
  if (rule == RelevanceRule::kMax) {
    double m = 0.0;
    for (const FrameRecord& r : segment.frames) m = std::max(m, r.p_shoot);
    return m;
  }
  double s = 0.0;
  for (const FrameRecord& r : segment.frames) s += r.p_shoot;
  return segment.frames.empty() ? 0.0 : s / double(segment.frames.size());
}

/// sum(r_t * c_t) / sum(r_t); the denominator must clear kRelevanceEpsilon.
inline double relevance_weighted_total(std::span<const double> relevance,
                                       std::span<const double> contribution) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < relevance.size(); ++i) {
    num += relevance[i] * contribution[i];
    den += relevance[i];
  }
  if (!(den > kRelevanceEpsilon)) throw ProcessingError("no relevant segments");
  return num / den;
}

/// Per-segment feature for the generic linear ranker. dim must be constant
/// across a stream.
using SegmentEncoder = std::function<std::vector<double>(const Segment&)>;

/// phi encoder of the full model. Copies the bank into the closure.
inline SegmentEncoder make_phi_encoder(MixtureBank bank) {
  return [bank = std::move(bank)](const Segment& seg) {
    const auto phi = encode(pool_segment(seg), bank);
    return std::vector<double>(phi.begin(), phi.end());
  };
}

/// Raw pooled-vector encoder (the "no GMs" ablation).
inline SegmentEncoder make_pooled_encoder() {
  return [](const Segment& seg) {
    const PooledVector b = pool_segment(seg);
    return std::vector<double>(b.begin(), b.end());
  };
}

/// Relevance-weighted mean segment feature of a stream,
/// Phi = sum(r_t phi_t) / sum(r_t), so that S = w . Phi.
struct StreamFeature {
  std::vector<double> phi;
  double relevance_sum = 0.0;
};

inline StreamFeature relevance_weighted_feature(const EventStream& stream,
                                                int segment_length, int stride,
                                                const CourtGeometry& geometry,
                                                RelevanceRule rule,
                                                const SegmentEncoder& encoder) {
  const auto segments = segment_stream(stream, segment_length, stride, geometry);
  if (segments.empty())
    throw ProcessingError("no relevant segments (stream '" + stream.player_id +
                          "' shorter than one segment)");
  StreamFeature out;
  double den = 0.0;
  for (const Segment& seg : segments) {
    const double r = segment_relevance(seg, rule);
    den += r;
    if (r == 0.0) continue;  // zero-relevance segments cannot contribute
    const std::vector<double> phi = encoder(seg);
    if (out.phi.empty()) out.phi.assign(phi.size(), 0.0);
    for (std::size_t d = 0; d < phi.size(); ++d) out.phi[d] += r * phi[d];
  }
  if (!(den > kRelevanceEpsilon))
    throw ProcessingError("no relevant segments (stream '" + stream.player_id + "')");
  if (out.phi.empty()) out.phi.assign(encoder(segments.front()).size(), 0.0);
  for (double& v : out.phi) v /= den;
  out.relevance_sum = den;
  return out;
}

/// Scores a stream against arbitrary weights/encoder; fills the breakdown
/// when requested. Used by score() and by the ablation variants.
inline double score_stream(const EventStream& stream, int segment_length,
                           int stride, const CourtGeometry& geometry,
                           RelevanceRule rule, const SegmentEncoder& encoder,
                           std::span<const double> weights,
                           ScoreBreakdown* breakdown = nullptr) {
  const auto segments = segment_stream(stream, segment_length, stride, geometry);
  std::vector<double> relevance;
  std::vector<double> contribution;
  relevance.reserve(segments.size());
  contribution.reserve(segments.size());
  for (const Segment& seg : segments) {
    const double r = segment_relevance(seg, rule);
    const std::vector<double> phi = encoder(seg);
    double c = 0.0;
    for (std::size_t d = 0; d < phi.size() && d < weights.size(); ++d)
      c += weights[d] * phi[d];
    relevance.push_back(r);
    contribution.push_back(c);
  }
  const double total = relevance_weighted_total(relevance, contribution);
  if (breakdown) {
    breakdown->total = total;
    breakdown->per_segment.clear();
    breakdown->per_segment.reserve(segments.size());
    for (std::size_t i = 0; i < segments.size(); ++i)
      breakdown->per_segment.push_back({segments[i].start_frame, relevance[i],
                                        contribution[i],
                                        relevance[i] * contribution[i]});
  }
  return total;
}

/// Relevance-weighted assessment score of a stream under the model, with
/// one term per segment.
inline ScoreBreakdown score(const EventStream& stream, const AssessmentModel& model) {
  ScoreBreakdown breakdown;
  score_stream(stream, model.segment_length, model.stride, model.geometry,
               model.relevance, make_phi_encoder(model.bank), model.weights,
               &breakdown);
  return breakdown;
}

// ---------------------------------------------------------------------------
// Linear ranking core. Streams reduce to their relevance-weighted mean
// features, so scores are linear in w and the hinge loss is piecewise linear.
// ---------------------------------------------------------------------------

struct RankingPair {
  std::vector<double> phi_a;
  std::vector<double> phi_b;
  int label = 0;
};

/// L(w) = sum_i max(0, (1/2 - Y_i) (w.Phi_a - w.Phi_b)).
inline double hinge_loss_at(std::span<const RankingPair> pairs,
                            std::span<const double> weights) {
  double loss = 0.0;
  for (const RankingPair& p : pairs) {
    double diff = 0.0;
    for (std::size_t d = 0; d < weights.size(); ++d)
      diff += weights[d] * (p.phi_a[d] - p.phi_b[d]);
    loss += std::max(0.0, (0.5 - double(p.label)) * diff);
  }
  return loss;
}

/// Full-batch subgradient: (1/2 - Y_i)(Phi_a - Phi_b) per pair at or past
/// the kink, 0 at strictly satisfied pairs. Counting exact ties as
/// violated matters: it makes the first step from w = 0 the full
/// mean-contrast direction instead of a no-op, and keeps pushing tied
/// pairs apart (ties count as incorrect downstream).
inline std::vector<double> hinge_subgradient_at(std::span<const RankingPair> pairs,
                                                std::span<const double> weights) {
  std::vector<double> grad(weights.size(), 0.0);
  for (const RankingPair& p : pairs) {
    const double sign = 0.5 - double(p.label);
    double diff = 0.0;
    for (std::size_t d = 0; d < weights.size(); ++d)
      diff += weights[d] * (p.phi_a[d] - p.phi_b[d]);
    if (sign * diff >= 0.0)
      for (std::size_t d = 0; d < weights.size(); ++d)
        grad[d] += sign * (p.phi_a[d] - p.phi_b[d]);
  }
  return grad;
}

struct RawTrainResult {
  std::vector<double> weights;
  // loss at the initial weights, then after each of the `iterations` steps
  std::vector<double> loss_trajectory;
};

/// Deterministic full-batch subgradient descent at a fixed learning rate.
inline RawTrainResult train_linear_ranker(std::span<const RankingPair> pairs,
                                          std::size_t dim, const TrainConfig& cfg) {
  validate_train_config(cfg);
  if (pairs.empty()) throw ValidationError("training requires at least one pair");

  for (const RankingPair& p : pairs)
    if (p.phi_a.size() != dim || p.phi_b.size() != dim)
      throw ValidationError("ranking pair feature dimension mismatch");

  RawTrainResult result;
  result.weights.assign(dim, 0.0);
  if (cfg.weight_init == WeightInit::kSmallUniform) {
    auto engine = make_engine(cfg.seed);
    std::uniform_real_distribution<double> init(-1e-3, 1e-3);
    for (double& w : result.weights) w = init(engine);
  }
  result.loss_trajectory.reserve(static_cast<std::size_t>(cfg.iterations) + 1);
  for (int it = 0; it < cfg.iterations; ++it) {
    const double loss = hinge_loss_at(pairs, result.weights);
    if (!std::isfinite(loss)) throw ProcessingError("non-finite training loss");
    result.loss_trajectory.push_back(loss);
    const std::vector<double> grad = hinge_subgradient_at(pairs, result.weights);
    for (std::size_t d = 0; d < dim; ++d)
      result.weights[d] -= cfg.learning_rate * grad[d];
  }
  result.loss_trajectory.push_back(hinge_loss_at(pairs, result.weights));
  return result;
}

namespace detail {

// Deduped stream -> Phi cache; pair features reference the cached vectors.
class StreamFeatureCache {
 public:
  StreamFeatureCache(int segment_length, int stride, const CourtGeometry& geometry,
                     RelevanceRule rule, const SegmentEncoder& encoder)
      : segment_length_(segment_length), stride_(stride), geometry_(geometry),
        rule_(rule), encoder_(encoder) {}

  const StreamFeature& get(const EventStream& stream) {
    auto it = cache_.find(&stream);
    if (it == cache_.end())
      it = cache_.emplace(&stream, relevance_weighted_feature(
                                       stream, segment_length_, stride_,
                                       geometry_, rule_, encoder_)).first;
    return it->second;
  }

 private:
  int segment_length_;
  int stride_;
  CourtGeometry geometry_;
  RelevanceRule rule_;
  const SegmentEncoder& encoder_;
  std::map<const EventStream*, StreamFeature> cache_;
};

inline std::vector<const EventStream*> unique_streams(
    std::span<const PairExample> pairs) {
  std::vector<const EventStream*> ordered;
  for (const PairExample& p : pairs) {
    for (const EventStream* s : {p.stream_a.get(), p.stream_b.get()}) {
      if (std::find(ordered.begin(), ordered.end(), s) == ordered.end())
        ordered.push_back(s);
    }
  }
  return ordered;
}

}  // namespace detail

/// Per-pair relevance-weighted mean features under the full phi encoding.
inline std::vector<RankingPair> build_ranking_pairs(
    std::span<const PairExample> pairs, const PipelineConfig& cfg,
    const SegmentEncoder& encoder) {
  detail::StreamFeatureCache cache(cfg.segment_length, cfg.stride, cfg.geometry,
                                   cfg.relevance, encoder);
  std::vector<RankingPair> out;
  out.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const PairExample& p = pairs[i];
    if (p.label != 0 && p.label != 1)
      throw ValidationError("pair " + std::to_string(i) + ": label must be 0 or 1");
    try {
      out.push_back({cache.get(*p.stream_a).phi, cache.get(*p.stream_b).phi, p.label});
    } catch (const ProcessingError& e) {
      throw ProcessingError("pair " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

/// Total hinge loss of the model over labeled pairs (score-based route).
inline double hinge_loss(std::span<const PairExample> pairs,
                         const AssessmentModel& model) {
  const SegmentEncoder encoder = make_phi_encoder(model.bank);
  double loss = 0.0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const PairExample& p = pairs[i];
    try {
      const double sa = score_stream(*p.stream_a, model.segment_length, model.stride,
                                     model.geometry, model.relevance, encoder,
                                     model.weights);
      const double sb = score_stream(*p.stream_b, model.segment_length, model.stride,
                                     model.geometry, model.relevance, encoder,
                                     model.weights);
      loss += std::max(0.0, (0.5 - double(p.label)) * (sa - sb));
    } catch (const ProcessingError& e) {
      throw ProcessingError("pair " + std::to_string(i) + ": " + e.what());
    }
  }
  return loss;
}

struct TrainResult {
  AssessmentModel model;
  std::vector<double> loss_trajectory;
};

/// Fits the linear weights from labeled pairs over a fitted bank.
inline TrainResult train(std::span<const PairExample> pairs, const MixtureBank& bank,
                         const PipelineConfig& cfg, const TrainConfig& train_cfg) {
  validate_pipeline_config(cfg);
  validate_train_config(train_cfg);
  const SegmentEncoder encoder = make_phi_encoder(bank);
  const std::vector<RankingPair> ranking = build_ranking_pairs(pairs, cfg, encoder);
  RawTrainResult raw = train_linear_ranker(ranking, kNumMixtures, train_cfg);

  TrainResult result;
  std::copy(raw.weights.begin(), raw.weights.end(), result.model.weights.begin());
  result.model.bank = bank;
  result.model.segment_length = cfg.segment_length;
  result.model.stride = cfg.stride;
  result.model.relevance = cfg.relevance;
  result.model.geometry = cfg.geometry;
  result.loss_trajectory = std::move(raw.loss_trajectory);
  return result;
}

struct PairVerdict {
  std::size_t pair_index = 0;
  double score_a = 0.0;
  double score_b = 0.0;
  int label = 0;
  int predicted = -1;  // 1: a better, 0: b better, -1: tie
  bool correct = false;
};

struct EvaluationResult {
  double accuracy = 0.0;
  std::vector<PairVerdict> verdicts;
};

/// Pairwise accuracy under an arbitrary stream scorer. Ties incorrect.
inline EvaluationResult evaluate_with_scorer(
    std::span<const PairExample> pairs,
    const std::function<double(const EventStream&)>& scorer) {
  EvaluationResult result;
  result.verdicts.reserve(pairs.size());
  std::map<const EventStream*, double> cache;
  auto score_of = [&](const EventStream& s) {
    auto it = cache.find(&s);
    if (it == cache.end()) it = cache.emplace(&s, scorer(s)).first;
    return it->second;
  };
  std::size_t correct = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const PairExample& p = pairs[i];
    PairVerdict v;
    v.pair_index = i;
    v.label = p.label;
    try {
      v.score_a = score_of(*p.stream_a);
      v.score_b = score_of(*p.stream_b);
    } catch (const ProcessingError& e) {
      throw ProcessingError("pair " + std::to_string(i) + ": " + e.what());
    }
    v.predicted = v.score_a > v.score_b ? 1 : (v.score_a < v.score_b ? 0 : -1);
    v.correct = v.predicted == p.label;
    correct += v.correct ? 1 : 0;
    result.verdicts.push_back(v);
  }
  result.accuracy = pairs.empty() ? 0.0 : double(correct) / double(pairs.size());
  return result;
}

/// Pairwise accuracy of the model: a pair counts iff the score ordering
/// matches the expert label; exact ties count as incorrect.
inline EvaluationResult evaluate(std::span<const PairExample> pairs,
                                 const AssessmentModel& model) {
  const SegmentEncoder encoder = make_phi_encoder(model.bank);
  return evaluate_with_scorer(pairs, [&](const EventStream& s) {
    return score_stream(s, model.segment_length, model.stride, model.geometry,
                        model.relevance, encoder, model.weights);
  });
}

struct TopMixture {
  int index = 0;
  double weight = 0.0;
  Signature signature;
};

/// The k active mixtures with the largest |w|, descending; ties broken by
/// ascending index.
inline std::vector<TopMixture> top_mixtures(const AssessmentModel& model, int k) {
  if (k < 1) throw ValidationError("top-k must be at least 1");
  std::vector<int> active;
  for (int n = 0; n < kNumMixtures; ++n)
    if (model.bank.components[static_cast<std::size_t>(n)].active) active.push_back(n);
  if (k > static_cast<int>(active.size()))
    throw ValidationError("top-k exceeds the number of active mixtures (" +
                          std::to_string(active.size()) + ")");
  std::stable_sort(active.begin(), active.end(), [&](int a, int b) {
    const double wa = std::abs(model.weights[static_cast<std::size_t>(a)]);
    const double wb = std::abs(model.weights[static_cast<std::size_t>(b)]);
    if (wa != wb) return wa > wb;
    return a < b;
  });
  std::vector<TopMixture> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i)
    out.push_back({active[static_cast<std::size_t>(i)],
                   model.weights[static_cast<std::size_t>(active[static_cast<std::size_t>(i)])],
                   Signature::from_index(active[static_cast<std::size_t>(i)])});
  return out;
}

// ---------------------------------------------------------------------------
// Ablation variants (Table-2-style baselines).
// ---------------------------------------------------------------------------

enum class AblationKind { kNoGm, kDropEvent, kUnitWeights, kSingleTopGm };

struct AblationSpec {
  AblationKind kind = AblationKind::kNoGm;
  int event = 0;  // kDropEvent: 1..4
  int rank = 1;   // kSingleTopGm: 1-based position by |w|

  std::string name() const {
    switch (kind) {
      case AblationKind::kNoGm: return "no_gm";
      case AblationKind::kDropEvent: return "no_p" + std::to_string(event);
      case AblationKind::kUnitWeights: return "unit_weights";
      case AblationKind::kSingleTopGm: return "single_gm_top" + std::to_string(rank);
    }
    return "unknown";
  }

  static AblationSpec parse(std::string_view name) {
    if (name == "no_gm") return {AblationKind::kNoGm, 0, 1};
    if (name == "unit_weights") return {AblationKind::kUnitWeights, 0, 1};
    if (name.starts_with("no_p") && name.size() == 5 && name[4] >= '1' && name[4] <= '4')
      return {AblationKind::kDropEvent, name[4] - '0', 1};
    if (name.starts_with("single_gm_top")) {
      int rank = 0;
      const auto digits = name.substr(13);
      if (!digits.empty() && detail_parse_rank(digits, rank) && rank >= 1)
        return {AblationKind::kSingleTopGm, 0, rank};
    }
    throw ValidationError("unknown ablation '" + std::string(name) +
                          "' (expected no_gm, no_p1..no_p4, unit_weights, single_gm_topK)");
  }

 private:
  static bool detail_parse_rank(std::string_view digits, int& out) {
    out = 0;
    for (char c : digits) {
      if (c < '0' || c > '9') return false;
      out = out * 10 + (c - '0');
    }
    return true;
  }
};

/// Zeroes event e's two pooled components.
inline PooledVector mask_event(PooledVector b, int event) {
  b[static_cast<std::size_t>(pooled_index(event, 1))] = 0.0;
  b[static_cast<std::size_t>(pooled_index(event, 2))] = 0.0;
  return b;
}

/// Clears event e's two signature bits (reduced signature space).
inline Signature mask_event(Signature sig, int event) {
  sig.bits[static_cast<std::size_t>(pooled_index(event, 1))] = 0;
  sig.bits[static_cast<std::size_t>(pooled_index(event, 2))] = 0;
  return sig;
}

/// Refits the bank from the training pairs' streams with event e removed
/// from both the pooled vectors and the signature space.
inline MixtureBank fit_bank_without_event(std::span<const PairExample> train_pairs,
                                          const PipelineConfig& cfg, int event) {
  std::vector<std::pair<PooledVector, Signature>> samples;
  for (const EventStream* stream : detail::unique_streams(train_pairs)) {
    for (auto& [b, sig] : pooled_training_samples(*stream, cfg.segment_length,
                                                  cfg.stride, cfg.geometry))
      samples.emplace_back(mask_event(b, event), mask_event(sig, event));
  }
  return fit_mixtures(samples, cfg.variance_floor, cfg.min_samples);
}

/// Fits the mixture bank from every distinct stream referenced by the pairs.
inline MixtureBank fit_bank(std::span<const PairExample> train_pairs,
                            const PipelineConfig& cfg) {
  validate_pipeline_config(cfg);
  std::vector<std::pair<PooledVector, Signature>> samples;
  for (const EventStream* stream : detail::unique_streams(train_pairs)) {
    for (auto& sample : pooled_training_samples(*stream, cfg.segment_length,
                                                cfg.stride, cfg.geometry))
      samples.push_back(std::move(sample));
  }
  return fit_mixtures(samples, cfg.variance_floor, cfg.min_samples);
}

/// Trains the requested variant on train_pairs and reports pairwise
/// accuracy on eval_pairs. `bank` is the full fitted bank; the drop-event
/// variant refits its own reduced bank from the training streams.
inline EvaluationResult run_ablation(const AblationSpec& spec,
                                     std::span<const PairExample> train_pairs,
                                     std::span<const PairExample> eval_pairs,
                                     const MixtureBank& bank,
                                     const PipelineConfig& cfg,
                                     const TrainConfig& train_cfg) {
  validate_pipeline_config(cfg);
  auto evaluate_linear = [&](const SegmentEncoder& encoder,
                             std::span<const double> weights) {
    return evaluate_with_scorer(eval_pairs, [&](const EventStream& s) {
      return score_stream(s, cfg.segment_length, cfg.stride, cfg.geometry,
                          cfg.relevance, encoder, weights);
    });
  };

  switch (spec.kind) {
    case AblationKind::kNoGm: {
      const SegmentEncoder encoder = make_pooled_encoder();
      const auto ranking = build_ranking_pairs(train_pairs, cfg, encoder);
      const auto raw = train_linear_ranker(ranking, kPooledDim, train_cfg);
      return evaluate_linear(encoder, raw.weights);
    }
    case AblationKind::kDropEvent: {
      if (spec.event < 1 || spec.event > kNumEvents)
        throw ValidationError("drop_event index must be in 1..4");
      const MixtureBank reduced = fit_bank_without_event(train_pairs, cfg, spec.event);
      const int event = spec.event;
      SegmentEncoder encoder = [reduced, event](const Segment& seg) {
        const auto phi = encode(mask_event(pool_segment(seg), event), reduced);
        return std::vector<double>(phi.begin(), phi.end());
      };
      const auto ranking = build_ranking_pairs(train_pairs, cfg, encoder);
      const auto raw = train_linear_ranker(ranking, kNumMixtures, train_cfg);
      return evaluate_linear(encoder, raw.weights);
    }
    case AblationKind::kUnitWeights: {
      const std::vector<double> ones(kNumMixtures, 1.0);
      return evaluate_linear(make_phi_encoder(bank), ones);
    }
    case AblationKind::kSingleTopGm: {
      const TrainResult full = train(train_pairs, bank, cfg, train_cfg);
      const auto top = top_mixtures(full.model, spec.rank);
      std::vector<double> masked(kNumMixtures, 0.0);
      const int idx = top.back().index;
      masked[static_cast<std::size_t>(idx)] = top.back().weight;
      return evaluate_linear(make_phi_encoder(bank), masked);
    }
  }
  throw ValidationError("unknown ablation kind");
}

}  // namespace hooprank
