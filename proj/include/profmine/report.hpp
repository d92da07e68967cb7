#ifndef PROFMINE_REPORT_HPP
#define PROFMINE_REPORT_HPP

// Group-by aggregation of classified and binned profiles, CSV tables and
// static SVG charts (pie for one population, line for one or two).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "profmine/binning.hpp"
#include "profmine/error.hpp"
#include "profmine/knn.hpp"
#include "profmine/profile.hpp"

namespace profmine {

enum class GroupBy { AgeRange, Gender };
enum class Measure { AboutMeClass, WallCountClass, MusicShareClass, ActivityInterestClass };

inline constexpr std::array<GroupBy, 2> kAllGroupBys = {GroupBy::AgeRange, GroupBy::Gender};
inline constexpr std::array<Measure, 4> kAllMeasures = {Measure::AboutMeClass, Measure::WallCountClass,
                                                        Measure::MusicShareClass,
                                                        Measure::ActivityInterestClass};

inline std::string_view to_string(GroupBy g) { return g == GroupBy::AgeRange ? "age_range" : "gender"; }

inline std::string_view to_string(Measure m) {
  switch (m) {
    case Measure::AboutMeClass: return "about_me_class";
    case Measure::WallCountClass: return "wall_count_class";
    case Measure::MusicShareClass: return "music_share_class";
    case Measure::ActivityInterestClass: return "activity_interest_class";
  }
  return "about_me_class";
}

struct Distribution {
  std::string dimension;   ///< measure name
  std::string population;  ///< filter, e.g. "age_range=UpTo19"
  std::vector<std::pair<std::string, std::int64_t>> buckets;

  std::int64_t total() const {
    std::int64_t sum = 0;
    for (const auto& [name, count] : buckets) sum += count;
    return sum;
  }
  std::int64_t count_of(std::string_view bucket) const {
    for (const auto& [name, count] : buckets) {
      if (name == bucket) return count;
    }
    return 0;
  }

  friend bool operator==(const Distribution&, const Distribution&) = default;
};

struct Comparison {
  std::string left_name;
  std::string right_name;
  Distribution left;
  Distribution right;
};

inline std::vector<std::string> group_values(GroupBy g) {
  std::vector<std::string> out;
  if (g == GroupBy::AgeRange) {
    for (auto v : kAllAgeRanges) out.emplace_back(to_string(v));
  } else {
    for (auto v : kAllGenders) out.emplace_back(to_string(v));
  }
  return out;
}

inline std::vector<std::string> bucket_names(Measure m) {
  std::vector<std::string> out;
  switch (m) {
    case Measure::AboutMeClass:
      for (auto v : kAllClassLabels) out.emplace_back(to_string(v));
      break;
    case Measure::WallCountClass:
      for (auto v : kAllWallCountClasses) out.emplace_back(to_string(v));
      break;
    case Measure::MusicShareClass:
    case Measure::ActivityInterestClass:
      for (auto v : kAllShareClasses) out.emplace_back(to_string(v));
      break;
  }
  return out;
}

namespace detail {

inline std::string group_of(const Profile& p, GroupBy g) {
  if (g == GroupBy::Gender) return std::string(to_string(p.gender));
  if (!p.age_range) throw Error(ErrorKind::Report, "profile " + p.record_id + " has no age_range");
  return std::string(to_string(*p.age_range));
}

inline std::string bucket_of(const Profile& p, Measure m) {
  auto need = [&](const auto& opt) {
    if (!opt) {
      throw Error(ErrorKind::Report, "profile " + p.record_id + " has no " + std::string(to_string(m)));
    }
    return std::string(to_string(*opt));
  };
  switch (m) {
    case Measure::AboutMeClass: return need(p.about_me_class);
    case Measure::WallCountClass: return need(p.wall_count_class);
    case Measure::MusicShareClass: return need(p.music_share_class);
    case Measure::ActivityInterestClass: return need(p.activity_interest_class);
  }
  return {};
}

}  // namespace detail

/// One distribution per group value (empty groups included), buckets in
/// enumeration order.
inline std::vector<Distribution> aggregate(std::span<const Profile> profiles, GroupBy group_by,
                                           Measure measure) {
  const auto groups = group_values(group_by);
  const auto buckets = bucket_names(measure);
  std::vector<Distribution> out;
  for (const auto& g : groups) {
    Distribution d{std::string(to_string(measure)), std::string(to_string(group_by)) + "=" + g, {}};
    for (const auto& b : buckets) d.buckets.emplace_back(b, 0);
    out.push_back(std::move(d));
  }
  for (const auto& p : profiles) {
    const auto g = detail::group_of(p, group_by);
    const auto b = detail::bucket_of(p, measure);
    const auto gi = std::find(groups.begin(), groups.end(), g) - groups.begin();
    const auto bi = std::find(buckets.begin(), buckets.end(), b) - buckets.begin();
    ++out[static_cast<std::size_t>(gi)].buckets[static_cast<std::size_t>(bi)].second;
  }
  return out;
}

/// Looks up the distribution for one group value.
inline const Distribution& find_group(const std::vector<Distribution>& dists, GroupBy group_by,
                                      std::string_view value) {
  const auto population = std::string(to_string(group_by)) + "=" + std::string(value);
  for (const auto& d : dists) {
    if (d.population == population) return d;
  }
  throw Error(ErrorKind::Report, "no distribution for " + population);
}

inline Comparison compare(const Distribution& left, const Distribution& right, std::string left_name,
                          std::string right_name) {
  if (left.dimension != right.dimension) {
    throw Error(ErrorKind::Report, "cannot compare " + left.dimension + " with " + right.dimension);
  }
  if (left.buckets.size() != right.buckets.size()) {
    throw Error(ErrorKind::Report, "bucket sets differ in size");
  }
  for (std::size_t i = 0; i < left.buckets.size(); ++i) {
    if (left.buckets[i].first != right.buckets[i].first) {
      throw Error(ErrorKind::Report, "bucket mismatch: " + left.buckets[i].first + " vs " +
                                         right.buckets[i].first);
    }
  }
  return {std::move(left_name), std::move(right_name), left, right};
}

// ---------------------------------------------------------------------------
// Tables

namespace detail {

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline double percent(std::int64_t count, std::int64_t population) {
  return population == 0 ? 0.0 : 100.0 * static_cast<double>(count) / static_cast<double>(population);
}

}  // namespace detail

/// "bucket,count,percent" with one row per bucket.
inline std::string emit_table(const Distribution& d) {
  std::string out = "bucket,count,percent\n";
  const auto population = d.total();
  for (const auto& [name, count] : d.buckets) {
    out += fmt::format("{},{},{:.4f}\n", detail::csv_field(name), count, detail::percent(count, population));
  }
  return out;
}

/// "bucket,<left>,<right>" with one row per bucket.
inline std::string emit_table(const Comparison& c) {
  std::string out =
      fmt::format("bucket,{},{}\n", detail::csv_field(c.left_name), detail::csv_field(c.right_name));
  for (std::size_t i = 0; i < c.left.buckets.size(); ++i) {
    out += fmt::format("{},{},{}\n", detail::csv_field(c.left.buckets[i].first), c.left.buckets[i].second,
                       c.right.buckets[i].second);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Charts

enum class ChartKind { Pie, Line };

struct PieSlice {
  std::string bucket;
  std::int64_t count = 0;
  double start_deg = 0.0;
  double sweep_deg = 0.0;
};

/// Slice geometry in bucket order; zero-count buckets get zero sweep.
inline std::vector<PieSlice> pie_slices(const Distribution& d) {
  const auto total = d.total();
  if (total <= 0) throw Error(ErrorKind::Chart, "pie chart of an all-zero distribution (" + d.population + ")");
  std::vector<PieSlice> slices;
  double start = 0.0;
  for (const auto& [name, count] : d.buckets) {
    const double sweep = 360.0 * static_cast<double>(count) / static_cast<double>(total);
    slices.push_back({name, count, start, sweep});
    start += sweep;
  }
  return slices;
}

namespace detail {

inline std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline constexpr std::array<std::string_view, 11> kPalette = {
    "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
    "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#86bcb6"};

inline std::string svg_open(int width, int height, std::string_view title) {
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect width=\"{0}\" height=\"{1}\" fill=\"#ffffff\"/>\n"
      "<text x=\"{2}\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">{3}</text>\n",
      width, height, width / 2, xml_escape(title));
}

inline std::string pie_svg(const Distribution& d) {
  const auto slices = pie_slices(d);
  const auto total = d.total();
  constexpr double cx = 200, cy = 230, r = 160;
  const int height = std::max(440, 60 + 22 * static_cast<int>(slices.size()));
  std::string out = svg_open(640, height, d.dimension + " | " + d.population);
  auto point = [&](double deg) {
    // 0 degrees at twelve o'clock, clockwise.
    const double rad = (deg - 90.0) * std::numbers::pi / 180.0;
    return std::pair{cx + r * std::cos(rad), cy + r * std::sin(rad)};
  };
  for (std::size_t i = 0; i < slices.size(); ++i) {
    const auto& s = slices[i];
    const auto color = kPalette[i % kPalette.size()];
    if (s.count == 0) continue;
    if (s.count == total) {
      out += fmt::format("<circle cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"{:.3f}\" fill=\"{}\" stroke=\"#ffffff\"/>\n",
                         cx, cy, r, color);
      continue;
    }
    const auto [x0, y0] = point(s.start_deg);
    const auto [x1, y1] = point(s.start_deg + s.sweep_deg);
    out += fmt::format(
        "<path d=\"M {:.3f} {:.3f} L {:.3f} {:.3f} A {:.3f} {:.3f} 0 {} 1 {:.3f} {:.3f} Z\" fill=\"{}\" "
        "stroke=\"#ffffff\" data-bucket=\"{}\" data-degrees=\"{:.6f}\"/>\n",
        cx, cy, x0, y0, r, r, s.sweep_deg > 180.0 ? 1 : 0, x1, y1, color, xml_escape(s.bucket), s.sweep_deg);
  }
  for (std::size_t i = 0; i < slices.size(); ++i) {
    const auto& s = slices[i];
    const double y = 60 + 22.0 * static_cast<double>(i);
    out += fmt::format("<rect x=\"400\" y=\"{:.1f}\" width=\"14\" height=\"14\" fill=\"{}\"/>\n", y,
                       kPalette[i % kPalette.size()]);
    out += fmt::format("<text x=\"420\" y=\"{:.1f}\">{}: {} ({:.1f}%)</text>\n", y + 12, xml_escape(s.bucket),
                       s.count, detail::percent(s.count, total));
  }
  return out + "</svg>\n";
}

struct Series {
  std::string name;
  const Distribution* dist;
};

inline std::string line_svg(std::string_view title, std::span<const Series> series) {
  const auto& buckets = series.front().dist->buckets;
  const std::size_t n = buckets.size();
  std::int64_t max_count = 0;
  for (const auto& s : series) {
    for (const auto& [name, count] : s.dist->buckets) max_count = std::max(max_count, count);
  }
  const std::int64_t y_max = std::max<std::int64_t>(1, max_count);
  constexpr double left = 70, right = 40, top = 50, plot_h = 300;
  const double step = 70;
  const double width = left + right + step * static_cast<double>(std::max<std::size_t>(n, 2) - 1);
  const double height = top + plot_h + 110 + 18.0 * static_cast<double>(series.size());
  std::string out = svg_open(static_cast<int>(width), static_cast<int>(height), title);
  const double base = top + plot_h;
  auto x_at = [&](std::size_t i) { return left + step * static_cast<double>(i); };
  auto y_at = [&](std::int64_t c) {
    return base - plot_h * static_cast<double>(c) / static_cast<double>(y_max);
  };
  out += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"#333333\"/>\n",
                     left, base, x_at(n == 0 ? 0 : n - 1) + 10);
  out += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" stroke=\"#333333\"/>\n",
                     left, base, top);
  out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{}</text>\n", left - 6, top + 4, y_max);
  out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">0</text>\n", left - 6, base + 4);
  for (std::size_t i = 0; i < n; ++i) {
    out += fmt::format(
        "<text x=\"{0:.1f}\" y=\"{1:.1f}\" text-anchor=\"end\" transform=\"rotate(-40 {0:.1f} {1:.1f})\">{2}</text>\n",
        x_at(i), base + 16, xml_escape(buckets[i].first));
  }
  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto color = kPalette[s % kPalette.size()];
    std::string points;
    for (std::size_t i = 0; i < n; ++i) {
      if (i) points += ' ';
      points += fmt::format("{:.1f},{:.1f}", x_at(i), y_at(series[s].dist->buckets[i].second));
    }
    out += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>\n", points, color);
    for (std::size_t i = 0; i < n; ++i) {
      const auto count = series[s].dist->buckets[i].second;
      out += fmt::format("<circle cx=\"{:.1f}\" cy=\"{:.1f}\" r=\"3\" fill=\"{}\"/>\n", x_at(i), y_at(count), color);
      out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\" fill=\"{}\">{}</text>\n", x_at(i),
                         y_at(count) - 8 - 12.0 * static_cast<double>(s), color, count);
    }
    const double ly = base + 95 + 18.0 * static_cast<double>(s);
    out += fmt::format("<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"14\" height=\"4\" fill=\"{}\"/>\n", left, ly - 4, color);
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\">{}</text>\n", left + 20, ly, xml_escape(series[s].name));
  }
  return out + "</svg>\n";
}

}  // namespace detail

inline std::string emit_chart(const Distribution& d, ChartKind kind) {
  if (kind == ChartKind::Pie) return detail::pie_svg(d);
  const detail::Series one[] = {{d.population, &d}};
  return detail::line_svg(d.dimension + " | " + d.population, one);
}

/// Two-series line chart over the shared bucket axis.
inline std::string emit_chart(const Comparison& c) {
  const detail::Series two[] = {{c.left_name, &c.left}, {c.right_name, &c.right}};
  return detail::line_svg(c.left.dimension + " | " + c.left_name + " vs " + c.right_name, two);
}

}  // namespace profmine

#endif  // PROFMINE_REPORT_HPP
