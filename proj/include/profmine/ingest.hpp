#ifndef PROFMINE_INGEST_HPP
#define PROFMINE_INGEST_HPP

// Raw profile ingestion: line-delimited JSON objects with the keys
//   id, birthday, about_me, activities, gender, interests, wall_count,
//   political, music_count
// Absent keys and JSON null both mean "missing". Unknown keys, non-object
// lines and wrongly typed values make the line malformed.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "profmine/date.hpp"
#include "profmine/error.hpp"
#include "profmine/profile.hpp"

namespace profmine {

struct RawProfile {
  std::string record_id;
  std::optional<std::string> birthday;
  std::optional<std::string> about_me;
  std::optional<std::string> activities;
  std::optional<std::string> gender;
  std::optional<std::string> interests;
  std::optional<std::int64_t> wall_count;
  std::optional<std::string> political;
  std::optional<std::int64_t> music_count;
  std::size_t line = 0;  ///< 1-based source line, 0 when built in memory

  friend bool operator==(const RawProfile&, const RawProfile&) = default;
};

struct LineError {
  std::size_t line = 0;
  std::string message;
};

struct LoadResult {
  std::vector<RawProfile> records;
  std::vector<LineError> errors;
};

enum class RejectReason { Malformed, MissingText, MissingNumeric, NegativeNumeric, InvalidDate };

inline std::string_view to_string(RejectReason r) {
  switch (r) {
    case RejectReason::Malformed: return "MALFORMED";
    case RejectReason::MissingText: return "MISSING_TEXT";
    case RejectReason::MissingNumeric: return "MISSING_NUMERIC";
    case RejectReason::NegativeNumeric: return "NEGATIVE_NUMERIC";
    case RejectReason::InvalidDate: return "INVALID_DATE";
  }
  return "MALFORMED";
}

struct Rejection {
  std::string record_id;
  RejectReason reason = RejectReason::Malformed;

  friend bool operator==(const Rejection&, const Rejection&) = default;
};

struct RejectionReport {
  std::vector<Rejection> rejected;
  std::size_t accepted_count = 0;
  std::size_t rejected_count = 0;
};

inline constexpr std::array<std::string_view, 9> kInputKeys = {
    "id", "birthday", "about_me", "activities", "gender", "interests", "wall_count", "political", "music_count"};

inline RawProfile raw_profile_from_json(const nlohmann::json& obj) {
  using namespace detail;
  if (!obj.is_object()) throw Error(ErrorKind::Parse, "record is not an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(kInputKeys.begin(), kInputKeys.end(), key) == kInputKeys.end()) {
      throw Error(ErrorKind::Parse, "unknown key '" + key + "'");
    }
  }
  RawProfile raw;
  raw.record_id = require_string(obj, "id");
  if (raw.record_id.empty()) throw Error(ErrorKind::Parse, "empty id");
  raw.birthday = optional_string(obj, "birthday");
  raw.about_me = optional_string(obj, "about_me");
  raw.activities = optional_string(obj, "activities");
  raw.gender = optional_string(obj, "gender");
  raw.interests = optional_string(obj, "interests");
  raw.wall_count = optional_integer(obj, "wall_count");
  raw.political = optional_string(obj, "political");
  raw.music_count = optional_integer(obj, "music_count");
  return raw;
}

/// Parses every non-blank line. Malformed lines are reported, not dropped
/// silently; a repeated id aborts with a validation error.
inline LoadResult load_profiles(std::istream& source) {
  if (!source) throw Error(ErrorKind::Input, "unreadable profile source");
  LoadResult result;
  std::set<std::string, std::less<>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    RawProfile raw;
    try {
      raw = raw_profile_from_json(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      result.errors.push_back({line_no, e.what()});
      continue;
    } catch (const Error& e) {
      result.errors.push_back({line_no, e.what()});
      continue;
    }
    if (!seen.insert(raw.record_id).second) {
      throw Error(ErrorKind::Validation, "duplicate record id '" + raw.record_id + "' at line " +
                                             std::to_string(line_no));
    }
    raw.line = line_no;
    result.records.push_back(std::move(raw));
  }
  if (source.bad()) throw Error(ErrorKind::Input, "read failure in profile source");
  return result;
}

inline LoadResult load_profiles(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Input, "cannot open input " + path);
  return load_profiles(in);
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

inline std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline std::int64_t count_items(const std::optional<std::string>& list) {
  if (!list) return 0;
  std::int64_t n = 0;
  std::string_view rest = *list;
  while (true) {
    const auto comma = rest.find(',');
    if (!trim(rest.substr(0, comma)).empty()) ++n;
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return n;
}

}  // namespace detail

inline Gender normalize_gender(const std::optional<std::string>& text) {
  if (!text) return Gender::Unspecified;
  const auto lowered = detail::ascii_lower(detail::trim(*text));
  if (lowered == "male") return Gender::Male;
  if (lowered == "female") return Gender::Female;
  return Gender::Unspecified;
}

/// Number of non-empty comma-separated items across activities and interests.
inline std::int64_t activity_interest_count(const std::optional<std::string>& activities,
                                            const std::optional<std::string>& interests) {
  return detail::count_items(activities) + detail::count_items(interests);
}

/// First failing rule for a record, or nullopt when it is acceptable.
inline std::optional<RejectReason> rejection_reason(const RawProfile& raw) {
  if (!raw.about_me || detail::trim(*raw.about_me).empty()) return RejectReason::MissingText;
  if (!raw.wall_count || !raw.music_count) return RejectReason::MissingNumeric;
  if (*raw.wall_count < 0 || *raw.music_count < 0) return RejectReason::NegativeNumeric;
  if (raw.birthday && !parse_iso_date(*raw.birthday)) return RejectReason::InvalidDate;
  return std::nullopt;
}

struct FilterResult {
  std::vector<Profile> profiles;
  RejectionReport report;
};

inline FilterResult validate_and_filter(std::span<const RawProfile> raws) {
  FilterResult result;
  for (const auto& raw : raws) {
    if (auto reason = rejection_reason(raw)) {
      result.report.rejected.push_back({raw.record_id, *reason});
      continue;
    }
    Profile p;
    p.record_id = raw.record_id;
    if (raw.birthday) p.birthday = parse_iso_date(*raw.birthday);
    p.about_me = *raw.about_me;
    p.activities = raw.activities;
    p.gender = normalize_gender(raw.gender);
    p.interests = raw.interests;
    p.wall_count = *raw.wall_count;
    p.political = raw.political;
    p.music_count = *raw.music_count;
    p.activity_interest_count = activity_interest_count(raw.activities, raw.interests);
    result.profiles.push_back(std::move(p));
  }
  result.report.accepted_count = result.profiles.size();
  result.report.rejected_count = result.report.rejected.size();
  return result;
}

/// load_profiles + validate_and_filter, with malformed lines folded into the
/// report as "line:<n>" / MALFORMED so every input record is accounted for.
inline FilterResult ingest(std::istream& source) {
  auto loaded = load_profiles(source);
  auto result = validate_and_filter(loaded.records);

  // Re-interleave malformed lines with validation rejections by line number.
  std::vector<std::pair<std::size_t, Rejection>> ordered;
  std::size_t next = 0;
  for (const auto& raw : loaded.records) {
    if (next < result.report.rejected.size() && result.report.rejected[next].record_id == raw.record_id) {
      ordered.emplace_back(raw.line, result.report.rejected[next++]);
    }
  }
  for (const auto& e : loaded.errors) {
    ordered.emplace_back(e.line, Rejection{"line:" + std::to_string(e.line), RejectReason::Malformed});
  }
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  result.report.rejected.clear();
  for (auto& [line, r] : ordered) result.report.rejected.push_back(std::move(r));
  result.report.rejected_count = result.report.rejected.size();
  return result;
}

inline nlohmann::ordered_json rejection_report_to_json(const RejectionReport& report) {
  nlohmann::ordered_json obj;
  obj["accepted_count"] = report.accepted_count;
  obj["rejected_count"] = report.rejected_count;
  obj["rejected"] = nlohmann::ordered_json::array();
  for (const auto& r : report.rejected) {
    obj["rejected"].push_back({{"id", r.record_id}, {"reason", std::string(to_string(r.reason))}});
  }
  return obj;
}

}  // namespace profmine

#endif  // PROFMINE_INGEST_HPP
