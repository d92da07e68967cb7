#ifndef PROFMINE_PROFILE_HPP
#define PROFMINE_PROFILE_HPP

// Profile record model and its line-delimited JSON persistence. Every stage
// file (accepted corpus, classified, binned) uses this one encoding; later
// stages only add derived keys.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "profmine/binning.hpp"
#include "profmine/date.hpp"
#include "profmine/error.hpp"
#include "profmine/knn.hpp"

namespace profmine {

enum class Gender { Male, Female, Unspecified };

inline constexpr std::array<Gender, 3> kAllGenders = {Gender::Male, Gender::Female,
                                                      Gender::Unspecified};

inline std::string_view to_string(Gender g) {
  switch (g) {
    case Gender::Male: return "Male";
    case Gender::Female: return "Female";
    case Gender::Unspecified: return "Unspecified";
  }
  return "Unspecified";
}

struct Profile {
  std::string record_id;
  std::optional<Date> birthday;
  std::string about_me;
  std::optional<std::string> activities;
  Gender gender = Gender::Unspecified;
  std::optional<std::string> interests;
  std::int64_t wall_count = 0;
  std::optional<std::string> political;
  std::int64_t music_count = 0;
  std::int64_t activity_interest_count = 0;

  // Filled by the classify stage.
  std::optional<ClassLabel> about_me_class;
  // Filled by the bin stage.
  std::optional<int> age;
  std::optional<AgeRange> age_range;
  std::optional<WallCountClass> wall_count_class;
  std::optional<ShareClass> music_share_class;
  std::optional<ShareClass> activity_interest_class;

  friend bool operator==(const Profile&, const Profile&) = default;
};

namespace detail {

template <typename T>
void put_optional(nlohmann::ordered_json& obj, const char* key, const std::optional<T>& value) {
  if (value) obj[key] = *value;
}

template <typename Enum>
void put_enum(nlohmann::ordered_json& obj, const char* key, const std::optional<Enum>& value) {
  if (value) obj[key] = std::string(to_string(*value));
}

inline const nlohmann::json* field(const nlohmann::json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return nullptr;
  return &*it;
}

inline std::string require_string(const nlohmann::json& obj, const char* key) {
  const auto* v = field(obj, key);
  if (!v || !v->is_string()) throw Error(ErrorKind::Parse, std::string("missing string field '") + key + "'");
  return v->get<std::string>();
}

inline std::optional<std::string> optional_string(const nlohmann::json& obj, const char* key) {
  const auto* v = field(obj, key);
  if (!v) return std::nullopt;
  if (!v->is_string()) throw Error(ErrorKind::Parse, std::string("field '") + key + "' is not a string");
  return v->get<std::string>();
}

inline std::optional<std::int64_t> optional_integer(const nlohmann::json& obj, const char* key) {
  const auto* v = field(obj, key);
  if (!v) return std::nullopt;
  if (v->is_number_integer() && !v->is_number_unsigned()) return v->get<std::int64_t>();
  if (v->is_number_unsigned()) {
    const auto u = v->get<std::uint64_t>();
    if (u <= static_cast<std::uint64_t>(INT64_MAX)) return static_cast<std::int64_t>(u);
  }
  throw Error(ErrorKind::Parse, std::string("field '") + key + "' is not an integer");
}

template <typename Enum, std::size_t N>
std::optional<Enum> optional_enum(const nlohmann::json& obj, const char* key,
                                  const std::array<Enum, N>& all) {
  auto name = optional_string(obj, key);
  if (!name) return std::nullopt;
  auto value = parse_enum(*name, all);
  if (!value) throw Error(ErrorKind::Parse, std::string("field '") + key + "' has unknown value '" + *name + "'");
  return value;
}

}  // namespace detail

inline nlohmann::ordered_json profile_to_json(const Profile& p) {
  nlohmann::ordered_json obj;
  obj["id"] = p.record_id;
  if (p.birthday) obj["birthday"] = format_iso_date(*p.birthday);
  obj["about_me"] = p.about_me;
  detail::put_optional(obj, "activities", p.activities);
  obj["gender"] = std::string(to_string(p.gender));
  detail::put_optional(obj, "interests", p.interests);
  obj["wall_count"] = p.wall_count;
  detail::put_optional(obj, "political", p.political);
  obj["music_count"] = p.music_count;
  obj["activity_interest_count"] = p.activity_interest_count;
  detail::put_enum(obj, "about_me_class", p.about_me_class);
  detail::put_optional(obj, "age", p.age);
  detail::put_enum(obj, "age_range", p.age_range);
  detail::put_enum(obj, "wall_count_class", p.wall_count_class);
  detail::put_enum(obj, "music_share_class", p.music_share_class);
  detail::put_enum(obj, "activity_interest_class", p.activity_interest_class);
  return obj;
}

inline Profile profile_from_json(const nlohmann::json& obj) {
  using namespace detail;
  if (!obj.is_object()) throw Error(ErrorKind::Parse, "expected an object");
  Profile p;
  p.record_id = require_string(obj, "id");
  if (auto b = optional_string(obj, "birthday")) {
    p.birthday = parse_iso_date(*b);
    if (!p.birthday) throw Error(ErrorKind::Parse, "invalid birthday '" + *b + "'");
  }
  p.about_me = require_string(obj, "about_me");
  p.activities = optional_string(obj, "activities");
  auto gender = optional_enum(obj, "gender", kAllGenders);
  if (!gender) throw Error(ErrorKind::Parse, "missing field 'gender'");
  p.gender = *gender;
  p.interests = optional_string(obj, "interests");
  p.political = optional_string(obj, "political");
  auto require_count = [&](const char* key) {
    auto v = optional_integer(obj, key);
    if (!v || *v < 0) throw Error(ErrorKind::Parse, std::string("field '") + key + "' must be a count");
    return *v;
  };
  p.wall_count = require_count("wall_count");
  p.music_count = require_count("music_count");
  p.activity_interest_count = require_count("activity_interest_count");
  p.about_me_class = optional_enum(obj, "about_me_class", kAllClassLabels);
  if (auto age = optional_integer(obj, "age")) p.age = static_cast<int>(*age);
  p.age_range = optional_enum(obj, "age_range", kAllAgeRanges);
  p.wall_count_class = optional_enum(obj, "wall_count_class", kAllWallCountClasses);
  p.music_share_class = optional_enum(obj, "music_share_class", kAllShareClasses);
  p.activity_interest_class = optional_enum(obj, "activity_interest_class", kAllShareClasses);
  return p;
}

/// Writes the corpus as JSON lines via a temporary file and a rename.
inline void persist_corpus(std::span<const Profile> profiles, const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Storage, "cannot write " + tmp.string());
    for (const auto& p : profiles) out << profile_to_json(p).dump() << '\n';
    out.flush();
    if (!out) throw Error(ErrorKind::Storage, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::Storage, "cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

inline std::vector<Profile> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Storage, "cannot read " + path.string());
  std::vector<Profile> profiles;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      profiles.push_back(profile_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Storage, path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(ErrorKind::Storage, path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (in.bad()) throw Error(ErrorKind::Storage, "read failed for " + path.string());
  return profiles;
}

}  // namespace profmine

#endif  // PROFMINE_PROFILE_HPP
