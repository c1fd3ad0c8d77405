#pragma once

// Synthetic player generator: seeded event streams with ground-truth
// annotations, realized summary statistics, expert pair labeling, and
// train/test dataset assembly.
//
// Generative model, per player:
//  - the wearer attempts shots as a Poisson process at profile.shoot_rate;
//    one virtual opponent shoots at the same rate. Overlapping event slots
//    are dropped (earliest wins).
//  - every attempt opens a 1 s shooting window; a make appends a 0.6 s
//    made-shot window immediately after it.
//  - the wearer possesses the ball on a renewal process tuned to
//    possession_rate, forced on just before/into his own attempts and
//    forced off around opponent attempts.
//  - the wearer wanders the court between events and stands in the
//    attempt's zone (2pt inside the arc, 3pt outside) for the whole
//    shooting+made span of his own attempts.
//  - observed probabilities are the binary ground truth plus clamped
//    Gaussian noise of std profile.noise_level.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hooprank/assessment.hpp"
#include "hooprank/errors.hpp"
#include "hooprank/event_stream.hpp"
#include "hooprank/numeric.hpp"

namespace hooprank {

struct PlayerProfile {
  double shoot_rate = 3.0;         // attempts per minute
  double make_prob_2pt = 0.5;
  double make_prob_3pt = 0.33;
  double three_pt_tendency = 0.3;  // P(attempt taken from the 3pt zone)
  double possession_rate = 0.25;   // target share of frames with the ball
  double noise_level = 0.1;        // detector noise std
};

inline void validate_profile(const PlayerProfile& p) {
  if (!(p.shoot_rate > 0.0)) throw ValidationError("shoot_rate must be positive");
  for (double v : {p.make_prob_2pt, p.make_prob_3pt, p.three_pt_tendency,
                   p.possession_rate})
    if (!(v >= 0.0 && v <= 1.0))
      throw ValidationError("profile probabilities must be in [0,1]");
  if (!(p.noise_level >= 0.0)) throw ValidationError("noise_level must be >= 0");
}

/// Weights over realized per-minute rates (made/missed 2pt and 3pt) and
/// possession share; pairs closer than tie_margin are rejected.
struct ExpertCriterion {
  double made_2pt = 2.0;
  double made_3pt = 4.0;
  double miss_2pt = -1.0;
  double miss_3pt = -1.0;
  double possession = 0.0;
  double tie_margin = 0.6;
};

inline void validate_criterion(const ExpertCriterion& c) {
  if (!(c.tie_margin > 0.0)) throw ValidationError("tie_margin must be positive");
  if (c.made_2pt == 0.0 && c.made_3pt == 0.0 && c.miss_2pt == 0.0 &&
      c.miss_3pt == 0.0 && c.possession == 0.0)
    throw ValidationError("criterion needs at least one nonzero weight");
}

struct SimConfig {
  double duration_minutes = 13.0;
  double frame_rate = 5.0;  // samples per second
  std::uint64_t seed = 1;
  CourtGeometry geometry{};
};

inline void validate_sim_config(const SimConfig& cfg) {
  if (!(cfg.duration_minutes > 0.0))
    throw ValidationError("duration_minutes must be positive");
  if (!(cfg.frame_rate > 0.0)) throw ValidationError("frame_rate must be positive");
  validate_geometry(cfg.geometry);
}

// Opponent behavior (constants of the virtual defender).
inline constexpr double kOpponentRateScale = 1.0;
inline constexpr double kOpponentMake2 = 0.45;
inline constexpr double kOpponentMake3 = 0.33;
inline constexpr double kOpponentThreeTendency = 0.35;

// Event window shapes in seconds.
inline constexpr double kShootWindowSeconds = 1.0;
inline constexpr double kMadeWindowSeconds = 0.6;
inline constexpr double kPossessionLeadSeconds = 0.8;
inline constexpr double kEventGapSeconds = 0.6;
inline constexpr double kPossessionMeanSeconds = 6.0;
inline constexpr double kWanderSpeedMps = 3.0;

struct EventWindows {
  std::int64_t lead = 0;   // forced-possession frames before an attempt
  std::int64_t shoot = 0;  // shooting-window frames
  std::int64_t made = 0;   // made-shot-window frames
  std::int64_t gap = 0;    // dead frames after an event slot
};

inline EventWindows event_windows(double frame_rate) {
  auto frames = [frame_rate](double seconds) {
    return std::max<std::int64_t>(1, std::llround(seconds * frame_rate));
  };
  return {frames(kPossessionLeadSeconds), frames(kShootWindowSeconds),
          frames(kMadeWindowSeconds), frames(kEventGapSeconds)};
}

/// One realized shot attempt; wearer == false means the virtual opponent.
struct SimEvent {
  std::int64_t start_frame = 0;
  bool wearer = false;
  bool three_pt = false;
  bool made = false;
};

struct PlayerStats {
  std::int64_t attempts_2pt = 0;
  std::int64_t made_2pt = 0;
  std::int64_t attempts_3pt = 0;
  std::int64_t made_3pt = 0;
  double possession_share = 0.0;
  double duration_minutes = 0.0;

  std::int64_t miss_2pt() const { return attempts_2pt - made_2pt; }
  std::int64_t miss_3pt() const { return attempts_3pt - made_3pt; }
};

struct SimulatedPlayer {
  EventStream stream;
  PlayerStats stats;
  std::vector<SimEvent> events;
};

namespace detail {

// Uniform court point whose zone matches `three_pt`; bounded rejection.
inline Point2 sample_zone_point(std::mt19937_64& engine, const CourtGeometry& g,
                                bool three_pt) {
  std::uniform_real_distribution<double> ux(0.0, g.court_length);
  std::uniform_real_distribution<double> uy(0.0, g.court_width);
  Point2 p{};
  for (int attempt = 0; attempt < 256; ++attempt) {
    p = {ux(engine), uy(engine)};
    if (zone_indicator(p, g) == (three_pt ? 1 : 0)) return p;
  }
  return p;  // pathological geometry; keep the last draw
}

}  // namespace detail

/// Deterministic synthetic stream for one player. Same profile + config
/// (including seed) reproduce the stream bit-identically.
inline SimulatedPlayer simulate_player(const PlayerProfile& profile,
                                       const SimConfig& config) {
  validate_profile(profile);
  validate_sim_config(config);

  const double fps = config.frame_rate;
  const auto total_frames =
      std::max<std::int64_t>(1, std::llround(config.duration_minutes * 60.0 * fps));
  const EventWindows win = event_windows(fps);
  auto engine = make_engine(config.seed);

  // Phase 1+2: Poisson arrival times, wearer then opponent, in frames.
  auto draw_arrivals = [&](double per_minute) {
    std::vector<double> times;
    const double per_frame = per_minute / (60.0 * fps);
    std::exponential_distribution<double> gap(per_frame);
    double t = gap(engine);
    while (t < double(total_frames)) {
      times.push_back(t);
      t += gap(engine);
    }
    return times;
  };
  const std::vector<double> wearer_times = draw_arrivals(profile.shoot_rate);
  const std::vector<double> opponent_times =
      draw_arrivals(profile.shoot_rate * kOpponentRateScale);

  struct Candidate {
    double time;
    bool wearer;
  };
  std::vector<Candidate> candidates;
  candidates.reserve(wearer_times.size() + opponent_times.size());
  for (double t : wearer_times) candidates.push_back({t, true});
  for (double t : opponent_times) candidates.push_back({t, false});
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.time != b.time) return a.time < b.time;
    return a.wearer && !b.wearer;
  });

  // Greedy non-overlapping slots; colliding attempts are dropped.
  std::vector<SimEvent> events;
  std::int64_t last_slot_end = 0;
  for (const Candidate& c : candidates) {
    const auto start = static_cast<std::int64_t>(std::floor(c.time));
    const std::int64_t slot_begin = start - win.lead;
    const std::int64_t slot_end = start + win.shoot + win.made + win.gap;
    if (slot_begin < last_slot_end) continue;
    if (slot_begin < 0 || start + win.shoot + win.made > total_frames) continue;
    events.push_back({start, c.wearer, false, false});
    last_slot_end = slot_end;
  }

  // Phase 3: zone and make outcomes; two draws per event, always.
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (SimEvent& e : events) {
    const double u_zone = unit(engine);
    const double u_make = unit(engine);
    const double tendency = e.wearer ? profile.three_pt_tendency : kOpponentThreeTendency;
    e.three_pt = u_zone < tendency;
    const double make_prob = e.wearer
                                 ? (e.three_pt ? profile.make_prob_3pt : profile.make_prob_2pt)
                                 : (e.three_pt ? kOpponentMake3 : kOpponentMake2);
    e.made = u_make < make_prob;
  }

  // Phase 4: base possession renewal process.
  std::vector<std::uint8_t> possessed(static_cast<std::size_t>(total_frames), 0);
  const double p = profile.possession_rate;
  if (p >= 1.0) {
    std::fill(possessed.begin(), possessed.end(), std::uint8_t{1});
  } else if (p > 0.0) {
    const double mean_have = kPossessionMeanSeconds * fps;
    const double mean_idle = mean_have * (1.0 - p) / p;
    bool state = unit(engine) < p;
    std::int64_t t = 0;
    while (t < total_frames) {
      std::exponential_distribution<double> seg(1.0 / (state ? mean_have : mean_idle));
      const auto len = std::max<std::int64_t>(1, std::llround(seg(engine)));
      if (state)
        for (std::int64_t i = t; i < std::min(t + len, total_frames); ++i)
          possessed[static_cast<std::size_t>(i)] = 1;
      t += len;
      state = !state;
    }
  }

  // Phase 5: waypoint wander across the court.
  std::vector<Point2> path(static_cast<std::size_t>(total_frames));
  {
    std::uniform_real_distribution<double> ux(0.0, config.geometry.court_length);
    std::uniform_real_distribution<double> uy(0.0, config.geometry.court_width);
    Point2 pos{ux(engine), uy(engine)};
    Point2 target{ux(engine), uy(engine)};
    const double step = kWanderSpeedMps / fps;
    for (std::int64_t t = 0; t < total_frames; ++t) {
      path[static_cast<std::size_t>(t)] = pos;
      const double dx = target.x - pos.x;
      const double dy = target.y - pos.y;
      const double dist = std::hypot(dx, dy);
      if (dist <= step) {
        pos = target;
        target = {ux(engine), uy(engine)};
      } else {
        pos.x += step * dx / dist;
        pos.y += step * dy / dist;
      }
    }
  }

  // Phase 6: pin the wearer to a spot in the attempt's zone.
  for (const SimEvent& e : events) {
    if (!e.wearer) continue;
    const Point2 spot = detail::sample_zone_point(engine, config.geometry, e.three_pt);
    for (std::int64_t t = e.start_frame - win.lead;
         t < e.start_frame + win.shoot + win.made; ++t)
      path[static_cast<std::size_t>(t)] = spot;
  }

  // Ground-truth label arrays with event overrides.
  std::vector<std::uint8_t> y_shoot(static_cast<std::size_t>(total_frames), 0);
  std::vector<std::uint8_t> y_made(static_cast<std::size_t>(total_frames), 0);
  for (const SimEvent& e : events) {
    for (std::int64_t t = e.start_frame; t < e.start_frame + win.shoot; ++t)
      y_shoot[static_cast<std::size_t>(t)] = 1;
    if (e.made)
      for (std::int64_t t = e.start_frame + win.shoot;
           t < e.start_frame + win.shoot + win.made; ++t)
        y_made[static_cast<std::size_t>(t)] = 1;
    const std::int64_t release = e.start_frame + win.shoot;
    if (e.wearer) {
      for (std::int64_t t = e.start_frame - win.lead; t < release; ++t)
        possessed[static_cast<std::size_t>(t)] = 1;
      for (std::int64_t t = release; t < e.start_frame + win.shoot + win.made; ++t)
        possessed[static_cast<std::size_t>(t)] = 0;
    } else {
      for (std::int64_t t = e.start_frame - win.lead;
           t < e.start_frame + win.shoot + win.made; ++t)
        possessed[static_cast<std::size_t>(t)] = 0;
    }
  }

  // Phase 7: observed probabilities = truth + clamped Gaussian noise.
  std::normal_distribution<double> noise(0.0, 1.0);
  SimulatedPlayer out;
  out.events = events;
  out.stream.records.reserve(static_cast<std::size_t>(total_frames));
  auto& truth = out.stream.ground_truth.emplace();
  truth.reserve(static_cast<std::size_t>(total_frames));
  for (std::int64_t t = 0; t < total_frames; ++t) {
    const auto i = static_cast<std::size_t>(t);
    const GroundTruthTriple y = {y_shoot[i], possessed[i], y_made[i]};
    FrameRecord rec;
    rec.frame_index = t;
    double observed[3];
    for (int e = 0; e < 3; ++e) {
      const double n = noise(engine);
      observed[e] = std::clamp(double(y[static_cast<std::size_t>(e)]) +
                                   profile.noise_level * n,
                               0.0, 1.0);
    }
    rec.p_shoot = observed[0];
    rec.p_possess = observed[1];
    rec.p_made = observed[2];
    rec.pos_x = path[i].x;
    rec.pos_y = path[i].y;
    out.stream.records.push_back(rec);
    truth.push_back(y);
  }

  std::int64_t have = 0;
  for (std::uint8_t v : possessed) have += v;
  out.stats.duration_minutes = config.duration_minutes;
  out.stats.possession_share = double(have) / double(total_frames);
  for (const SimEvent& e : events) {
    if (!e.wearer) continue;
    if (e.three_pt) {
      ++out.stats.attempts_3pt;
      out.stats.made_3pt += e.made ? 1 : 0;
    } else {
      ++out.stats.attempts_2pt;
      out.stats.made_2pt += e.made ? 1 : 0;
    }
  }
  return out;
}

/// Expert criterion value over realized statistics.
inline double criterion_value(const PlayerStats& stats, const ExpertCriterion& c) {
  validate_criterion(c);
  if (!(stats.duration_minutes > 0.0))
    throw ValidationError("stats duration must be positive");
  const double minutes = stats.duration_minutes;
  return c.made_2pt * (double(stats.made_2pt) / minutes) +
         c.made_3pt * (double(stats.made_3pt) / minutes) +
         c.miss_2pt * (double(stats.miss_2pt()) / minutes) +
         c.miss_3pt * (double(stats.miss_3pt()) / minutes) +
         c.possession * stats.possession_share;
}

/// Y = 1 iff player a's criterion value is higher; pairs within tie_margin
/// are rejected (nullopt).
inline std::optional<int> label_pair(const PlayerStats& stats_a,
                                     const PlayerStats& stats_b,
                                     const ExpertCriterion& criterion) {
  const double ca = criterion_value(stats_a, criterion);
  const double cb = criterion_value(stats_b, criterion);
  if (std::abs(ca - cb) <= criterion.tie_margin) return std::nullopt;
  return ca > cb ? 1 : 0;
}

// Population ranges for generated player profiles.
inline constexpr double kProfileShootRateMin = 2.8;
inline constexpr double kProfileShootRateMax = 3.2;
inline constexpr double kProfileMake2Min = 0.25;
inline constexpr double kProfileMake2Max = 0.70;
inline constexpr double kProfileMake3Min = 0.15;
inline constexpr double kProfileMake3Max = 0.50;
inline constexpr double kProfileTendencyMin = 0.10;
inline constexpr double kProfileTendencyMax = 0.60;
inline constexpr double kProfilePossessionMin = 0.20;
inline constexpr double kProfilePossessionMax = 0.30;

struct GenerateConfig {
  SimConfig sim{};
  int n_players = 48;
  int n_pairs = 250;  // per split
  double noise_level = 0.1;
  ExpertCriterion criterion{};
};

inline void validate_generate_config(const GenerateConfig& cfg) {
  validate_sim_config(cfg.sim);
  validate_criterion(cfg.criterion);
  if (cfg.n_players < 4) throw ValidationError("need at least 4 players");
  if (cfg.n_pairs < 1) throw ValidationError("need at least 1 pair per split");
  if (!(cfg.noise_level >= 0.0)) throw ValidationError("noise_level must be >= 0");
}

struct DatasetPlayer {
  std::string id;
  PlayerProfile profile;
  std::shared_ptr<const EventStream> stream;
  PlayerStats stats;
};

struct Dataset {
  std::vector<DatasetPlayer> train_players;
  std::vector<DatasetPlayer> test_players;
  std::vector<PairExample> train_pairs;
  std::vector<PairExample> test_pairs;
  GenerateConfig config;
};

namespace detail {

inline constexpr std::uint64_t kSaltProfiles = 0x70726f66;   // "prof"
inline constexpr std::uint64_t kSaltPlayerBase = 0x1000;
inline constexpr std::uint64_t kSaltTrainPairs = 0x74726e;   // "trn"
inline constexpr std::uint64_t kSaltTestPairs = 0x747374;    // "tst"

inline std::vector<PairExample> draw_pairs(const std::vector<DatasetPlayer>& players,
                                           const ExpertCriterion& criterion,
                                           int n_pairs, std::mt19937_64& engine) {
  std::vector<std::pair<std::size_t, std::size_t>> candidates;
  for (std::size_t i = 0; i < players.size(); ++i)
    for (std::size_t j = 0; j < players.size(); ++j)
      if (i != j) candidates.emplace_back(i, j);
  std::shuffle(candidates.begin(), candidates.end(), engine);

  std::vector<PairExample> pairs;
  pairs.reserve(static_cast<std::size_t>(n_pairs));
  for (const auto& [i, j] : candidates) {
    if (static_cast<int>(pairs.size()) == n_pairs) break;
    const auto label = label_pair(players[i].stats, players[j].stats, criterion);
    if (!label) continue;
    pairs.push_back({players[i].stream, players[j].stream, *label});
  }
  if (static_cast<int>(pairs.size()) < n_pairs)
    throw ProcessingError("insufficient players for requested pairs after tie rejection");
  return pairs;
}

}  // namespace detail

/// Seeded dataset: disjoint train/test player splits, per-split labeled
/// pairs, deterministic for a fixed GenerateConfig.
inline Dataset generate_dataset(const GenerateConfig& cfg) {
  validate_generate_config(cfg);

  Dataset dataset;
  dataset.config = cfg;

  auto profile_engine = make_engine(cfg.sim.seed, detail::kSaltProfiles);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto draw_in = [&](double lo, double hi) { return lo + (hi - lo) * unit(profile_engine); };

  const int n_train = cfg.n_players / 2;
  for (int i = 0; i < cfg.n_players; ++i) {
    PlayerProfile profile;
    profile.shoot_rate = draw_in(kProfileShootRateMin, kProfileShootRateMax);
    profile.make_prob_2pt = draw_in(kProfileMake2Min, kProfileMake2Max);
    profile.make_prob_3pt = draw_in(kProfileMake3Min, kProfileMake3Max);
    profile.three_pt_tendency = draw_in(kProfileTendencyMin, kProfileTendencyMax);
    profile.possession_rate = draw_in(kProfilePossessionMin, kProfilePossessionMax);
    profile.noise_level = cfg.noise_level;

    SimConfig player_cfg = cfg.sim;
    player_cfg.seed = mix_seed(cfg.sim.seed, detail::kSaltPlayerBase + static_cast<std::uint64_t>(i));
    SimulatedPlayer sim = simulate_player(profile, player_cfg);

    std::string id = "p" + std::string(i < 10 ? "0" : "") + std::to_string(i);
    sim.stream.player_id = id;
    DatasetPlayer player{std::move(id), profile,
                         std::make_shared<EventStream>(std::move(sim.stream)), sim.stats};
    (i < n_train ? dataset.train_players : dataset.test_players).push_back(std::move(player));
  }

  auto train_engine = make_engine(cfg.sim.seed, detail::kSaltTrainPairs);
  auto test_engine = make_engine(cfg.sim.seed, detail::kSaltTestPairs);
  dataset.train_pairs =
      detail::draw_pairs(dataset.train_players, cfg.criterion, cfg.n_pairs, train_engine);
  dataset.test_pairs =
      detail::draw_pairs(dataset.test_players, cfg.criterion, cfg.n_pairs, test_engine);
  return dataset;
}

/// Copy of a stream with the observed probabilities replaced by the
/// ground-truth binaries (the "GT events" evaluation mode).
inline EventStream substitute_ground_truth(const EventStream& stream) {
  if (!stream.ground_truth.has_value())
    throw ProcessingError("stream '" + stream.player_id + "' carries no ground truth");
  EventStream out = stream;
  for (std::size_t i = 0; i < out.records.size(); ++i) {
    const GroundTruthTriple& y = (*out.ground_truth)[i];
    out.records[i].p_shoot = double(y[0]);
    out.records[i].p_possess = double(y[1]);
    out.records[i].p_made = double(y[2]);
  }
  return out;
}

}  // namespace hooprank
