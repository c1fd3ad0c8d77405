#pragma once

// Per-frame atomic-event streams: parsing and serialization of the CSV
// interchange format, validation, fixed-length segmentation, and the
// 2pt/3pt zone indicator derived from court position.

#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hooprank/errors.hpp"
#include "hooprank/numeric.hpp"

namespace hooprank {

inline constexpr int kNumEvents = 4;

/// One sample of the three detector probabilities plus court position.
struct FrameRecord {
  std::int64_t frame_index = 0;
  double p_shoot = 0.0;    // somebody shooting
  double p_possess = 0.0;  // camera wearer possesses the ball
  double p_made = 0.0;     // made shot
  double pos_x = 0.0;      // meters
  double pos_y = 0.0;

  bool operator==(const FrameRecord&) const = default;
};

// Binary labels for events 1..3 on one frame.
using GroundTruthTriple = std::array<std::uint8_t, 3>;

struct EventStream {
  std::string player_id;
  std::vector<FrameRecord> records;
  // Present on simulator output; required when fitting mixture parameters.
  std::optional<std::vector<GroundTruthTriple>> ground_truth;

  bool operator==(const EventStream&) const = default;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point2&) const = default;
};

/// Canonical court: origin at one baseline corner, x along the length.
struct CourtGeometry {
  double court_length = 28.0;
  double court_width = 15.0;
  double three_point_radius = 6.75;
  // On the midline, 1.575 m inside each baseline.
  std::array<Point2, 2> baskets = {{{1.575, 7.5}, {26.425, 7.5}}};

  bool operator==(const CourtGeometry&) const = default;
};

inline void validate_geometry(const CourtGeometry& g) {
  if (!(g.court_length > 0.0) || !(g.court_width > 0.0))
    throw ValidationError("court dimensions must be positive");
  if (!(g.three_point_radius > 0.0))
    throw ValidationError("three_point_radius must be positive");
  for (const Point2& b : g.baskets) {
    if (b.x < 0.0 || b.x > g.court_length || b.y < 0.0 || b.y > g.court_width)
      throw ValidationError("basket outside the court rectangle");
  }
}

/// 1 iff pos is in the 3-point zone: Euclidean distance to the nearest
/// basket exceeds the radius. A point exactly on the arc is 2-point zone.
inline int zone_indicator(Point2 pos, const CourtGeometry& g) {
  double best = std::numeric_limits<double>::infinity();
  for (const Point2& b : g.baskets) {
    double dx = pos.x - b.x;
    double dy = pos.y - b.y;
    best = std::min(best, dx * dx + dy * dy);
  }
  return best > g.three_point_radius * g.three_point_radius ? 1 : 0;
}

/// Fixed-length window of T_s consecutive frames starting at start_frame.
struct Segment {
  std::int64_t start_frame = 0;  // frame_index of the first record
  std::size_t start_offset = 0;  // record offset within the source stream
  std::vector<FrameRecord> frames;
  std::vector<std::uint8_t> zone_flags;  // p4 per frame
};

inline void validate_segmentation(int segment_length, int stride) {
  if (segment_length < 2 || segment_length % 2 != 0)
    throw ValidationError("segment_length must be even and at least 2");
  if (stride < 1) throw ValidationError("stride must be at least 1");
}

/// All windows [t, t+T_s) fully inside the stream, at the given stride.
/// A stream shorter than T_s yields no segments.
inline std::vector<Segment> segment_stream(const EventStream& stream,
                                           int segment_length, int stride,
                                           const CourtGeometry& geometry) {
  validate_segmentation(segment_length, stride);
  validate_geometry(geometry);
  std::vector<Segment> out;
  const std::size_t n = stream.records.size();
  const auto len = static_cast<std::size_t>(segment_length);
  if (n < len) return out;
  out.reserve((n - len) / static_cast<std::size_t>(stride) + 1);
  for (std::size_t start = 0; start + len <= n;
       start += static_cast<std::size_t>(stride)) {
    Segment seg;
    seg.start_frame = stream.records[start].frame_index;
    seg.start_offset = start;
    seg.frames.assign(stream.records.begin() + static_cast<std::ptrdiff_t>(start),
                      stream.records.begin() + static_cast<std::ptrdiff_t>(start + len));
    seg.zone_flags.reserve(len);
    for (const FrameRecord& r : seg.frames)
      seg.zone_flags.push_back(
          static_cast<std::uint8_t>(zone_indicator({r.pos_x, r.pos_y}, geometry)));
    out.push_back(std::move(seg));
  }
  return out;
}

enum class StreamFormat { kCsv };

inline constexpr std::string_view kStreamHeader = "frame,p_shoot,p_possess,p_made,x,y";
inline constexpr std::string_view kStreamHeaderWithTruth =
    "frame,p_shoot,p_possess,p_made,x,y,y1,y2,y3";

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return fields;
}

template <typename T>
bool parse_number(std::string_view text, T& out) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last;
}

inline bool looks_like_data_line(std::string_view line) {
  auto fields = split_fields(line);
  if (fields.empty()) return false;
  std::int64_t v = 0;
  return parse_number(fields[0], v);
}

}  // namespace detail

/// Parses the line-delimited stream format. The first line is skipped as a
/// header unless its first field is an integer. Errors carry 1-based
/// physical line numbers.
inline EventStream parse_stream(std::string_view input,
                                StreamFormat format = StreamFormat::kCsv) {
  (void)format;  // kCsv is the only wire format
  EventStream stream;
  bool expect_truth = false;
  bool first_data = true;
  std::int64_t prev_frame = -1;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= input.size()) {
    std::size_t nl = input.find('\n', pos);
    std::string_view line = (nl == std::string_view::npos)
                                ? input.substr(pos)
                                : input.substr(pos, nl - pos);
    pos = (nl == std::string_view::npos) ? input.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line_no == 1 && !detail::looks_like_data_line(line)) continue;  // header

    auto fields = detail::split_fields(line);
    if (fields.size() != 6 && fields.size() != 9)
      throw ParseError("malformed record", line_no);

    FrameRecord rec;
    double probs[3];
    if (!detail::parse_number(fields[0], rec.frame_index) ||
        !detail::parse_number(fields[1], probs[0]) ||
        !detail::parse_number(fields[2], probs[1]) ||
        !detail::parse_number(fields[3], probs[2]) ||
        !detail::parse_number(fields[4], rec.pos_x) ||
        !detail::parse_number(fields[5], rec.pos_y))
      throw ParseError("malformed record", line_no);
    if (rec.frame_index < 0) throw ParseError("negative frame index", line_no);
    for (double p : probs)
      if (!(p >= 0.0 && p <= 1.0))
        throw ParseError("probability out of range", line_no);
    if (!std::isfinite(rec.pos_x) || !std::isfinite(rec.pos_y))
      throw ParseError("non-finite coordinate", line_no);
    if (rec.frame_index <= prev_frame)
      throw ParseError("non-monotone frame index", line_no);
    prev_frame = rec.frame_index;
    rec.p_shoot = probs[0];
    rec.p_possess = probs[1];
    rec.p_made = probs[2];

    const bool has_truth = fields.size() == 9;
    if (first_data) {
      expect_truth = has_truth;
      if (expect_truth) stream.ground_truth.emplace();
      first_data = false;
    } else if (has_truth != expect_truth) {
      throw ParseError("inconsistent ground truth columns", line_no);
    }
    if (has_truth) {
      GroundTruthTriple t{};
      for (int i = 0; i < 3; ++i) {
        int v = 0;
        if (!detail::parse_number(fields[static_cast<std::size_t>(6 + i)], v))
          throw ParseError("malformed record", line_no);
        if (v != 0 && v != 1)
          throw ParseError("ground truth value out of range", line_no);
        t[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
      }
      stream.ground_truth->push_back(t);
    }
    stream.records.push_back(rec);
  }

  if (stream.records.empty()) throw ParseError("empty stream");
  return stream;
}

/// Canonical serialization; parse_stream(serialize_stream(s)) reproduces
/// s bit-exactly (modulo player_id, which lives outside the file).
inline std::string serialize_stream(const EventStream& stream) {
  std::string out;
  const bool truth = stream.ground_truth.has_value();
  out.append(truth ? kStreamHeaderWithTruth : kStreamHeader);
  out.push_back('\n');
  for (std::size_t i = 0; i < stream.records.size(); ++i) {
    const FrameRecord& r = stream.records[i];
    out += std::to_string(r.frame_index);
    out.push_back(',');
    out += format_double(r.p_shoot);
    out.push_back(',');
    out += format_double(r.p_possess);
    out.push_back(',');
    out += format_double(r.p_made);
    out.push_back(',');
    out += format_double(r.pos_x);
    out.push_back(',');
    out += format_double(r.pos_y);
    if (truth) {
      for (int e = 0; e < 3; ++e) {
        out.push_back(',');
        out += std::to_string(int((*stream.ground_truth)[i][static_cast<std::size_t>(e)]));
      }
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace hooprank
