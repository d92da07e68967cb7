#ifndef PROFMINE_BINNING_HPP
#define PROFMINE_BINNING_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "profmine/date.hpp"
#include "profmine/error.hpp"

namespace profmine {

enum class WallCountClass { VeryLow, Low, Medium, High, VeryHigh };
enum class ShareClass { Low, Medium, High };
enum class AgeRange { UpTo19, From20To32, From33To45, Over45, Hidden };

/// Where the unassigned value 5 of the share tables lands.
enum class GapPolicy { FiveIsLow, FiveIsMedium };

inline constexpr std::array<WallCountClass, 5> kAllWallCountClasses = {
    WallCountClass::VeryLow, WallCountClass::Low, WallCountClass::Medium, WallCountClass::High,
    WallCountClass::VeryHigh};
inline constexpr std::array<ShareClass, 3> kAllShareClasses = {ShareClass::Low, ShareClass::Medium,
                                                               ShareClass::High};
inline constexpr std::array<AgeRange, 5> kAllAgeRanges = {AgeRange::UpTo19, AgeRange::From20To32,
                                                          AgeRange::From33To45, AgeRange::Over45,
                                                          AgeRange::Hidden};

inline std::string_view to_string(WallCountClass c) {
  switch (c) {
    case WallCountClass::VeryLow: return "VeryLow";
    case WallCountClass::Low: return "Low";
    case WallCountClass::Medium: return "Medium";
    case WallCountClass::High: return "High";
    case WallCountClass::VeryHigh: return "VeryHigh";
  }
  return "VeryLow";
}

inline std::string_view to_string(ShareClass c) {
  switch (c) {
    case ShareClass::Low: return "Low";
    case ShareClass::Medium: return "Medium";
    case ShareClass::High: return "High";
  }
  return "Low";
}

inline std::string_view to_string(AgeRange r) {
  switch (r) {
    case AgeRange::UpTo19: return "UpTo19";
    case AgeRange::From20To32: return "From20To32";
    case AgeRange::From33To45: return "From33To45";
    case AgeRange::Over45: return "Over45";
    case AgeRange::Hidden: return "Hidden";
  }
  return "Hidden";
}

inline std::string_view to_string(GapPolicy p) {
  return p == GapPolicy::FiveIsLow ? "five_is_low" : "five_is_medium";
}

template <typename Enum, std::size_t N>
std::optional<Enum> parse_enum(std::string_view name, const std::array<Enum, N>& all) {
  for (auto value : all) {
    if (to_string(value) == name) return value;
  }
  return std::nullopt;
}

inline std::optional<GapPolicy> parse_gap_policy(std::string_view name) {
  if (name == "five_is_low") return GapPolicy::FiveIsLow;
  if (name == "five_is_medium") return GapPolicy::FiveIsMedium;
  return std::nullopt;
}

inline WallCountClass bin_wall_count(std::int64_t n) {
  if (n < 0) throw Error(ErrorKind::Domain, "negative wall count " + std::to_string(n));
  if (n < 10) return WallCountClass::VeryLow;
  if (n <= 50) return WallCountClass::Low;
  if (n <= 100) return WallCountClass::Medium;
  if (n <= 200) return WallCountClass::High;
  return WallCountClass::VeryHigh;
}

inline ShareClass bin_share(std::int64_t n, GapPolicy policy, std::string_view what) {
  if (n < 0) throw Error(ErrorKind::Domain, "negative " + std::string(what) + " " + std::to_string(n));
  if (n < 5) return ShareClass::Low;
  if (n == 5) return policy == GapPolicy::FiveIsLow ? ShareClass::Low : ShareClass::Medium;
  if (n <= 15) return ShareClass::Medium;
  return ShareClass::High;
}

inline ShareClass bin_music_share(std::int64_t n, GapPolicy policy = GapPolicy::FiveIsLow) {
  return bin_share(n, policy, "music count");
}

inline ShareClass bin_activities_interests(std::int64_t n, GapPolicy policy = GapPolicy::FiveIsLow) {
  return bin_share(n, policy, "activity/interest count");
}

/// Completed years from birthday to reference.
inline std::optional<int> age_from_birthday(const std::optional<Date>& birthday, const Date& reference) {
  if (!reference.ok()) throw Error(ErrorKind::Domain, "invalid reference date");
  if (!birthday || !birthday->ok()) return std::nullopt;
  if (*birthday > reference) {
    throw Error(ErrorKind::Domain, "birthday " + format_iso_date(*birthday) + " is after reference date " +
                                       format_iso_date(reference));
  }
  int years = static_cast<int>(reference.year()) - static_cast<int>(birthday->year());
  const bool reached = reference.month() > birthday->month() ||
                       (reference.month() == birthday->month() && reference.day() >= birthday->day());
  if (!reached) --years;
  return years;
}

inline AgeRange age_range(std::optional<int> age) {
  if (!age) return AgeRange::Hidden;
  if (*age < 0) throw Error(ErrorKind::Domain, "negative age " + std::to_string(*age));
  if (*age <= 19) return AgeRange::UpTo19;
  if (*age <= 32) return AgeRange::From20To32;
  if (*age <= 45) return AgeRange::From33To45;
  return AgeRange::Over45;
}

}  // namespace profmine

#endif  // PROFMINE_BINNING_HPP
