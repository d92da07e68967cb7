#ifndef PROFMINE_ARFF_HPP
#define PROFMINE_ARFF_HPP

// ARFF dataset model, emitter and a reader for the same grammar subset.
//
// Emitted layout (LF line endings, no comments):
//   @relation <name>
//   @attribute <name> numeric | string | date <format> | {v1,v2,...}
//   @data
//   v1,v2,...          one line per row, '?' for missing
//
// Names and string-like values are written bare unless they are empty, are
// the lone "?", or contain a space, tab, comma, quote, backslash, brace,
// '%' or a line break; then they are single-quoted with \\ \' \n \r \t
// escapes. Numbers use the shortest representation that round-trips.

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "profmine/binning.hpp"
#include "profmine/error.hpp"
#include "profmine/knn.hpp"
#include "profmine/profile.hpp"

namespace profmine::arff {

struct Numeric {
  friend bool operator==(const Numeric&, const Numeric&) = default;
};
struct String {
  friend bool operator==(const String&, const String&) = default;
};
struct Nominal {
  std::vector<std::string> domain;
  friend bool operator==(const Nominal&, const Nominal&) = default;
};
struct DateKind {
  std::string format = "yyyy-MM-dd";
  friend bool operator==(const DateKind&, const DateKind&) = default;
};

using AttributeKind = std::variant<Numeric, Nominal, String, DateKind>;

struct Attribute {
  std::string name;
  AttributeKind kind;
  friend bool operator==(const Attribute&, const Attribute&) = default;
};

struct Missing {
  friend bool operator==(const Missing&, const Missing&) = default;
};

/// Numeric attributes hold double; nominal, string and date hold text.
using Value = std::variant<Missing, double, std::string>;
using Row = std::vector<Value>;

struct Dataset {
  std::string relation;
  std::vector<Attribute> attributes;
  std::vector<Row> rows;
  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// ---------------------------------------------------------------------------
// Validation

/// Throws `kind` naming the first violated invariant.
inline void validate(const Dataset& ds, ErrorKind kind = ErrorKind::Encoding) {
  if (ds.relation.empty()) throw Error(kind, "empty relation name");
  for (std::size_t a = 0; a < ds.attributes.size(); ++a) {
    const auto& attr = ds.attributes[a];
    if (attr.name.empty()) throw Error(kind, "attribute " + std::to_string(a) + " has an empty name");
    if (const auto* nom = std::get_if<Nominal>(&attr.kind)) {
      if (nom->domain.empty()) throw Error(kind, "nominal attribute " + attr.name + " has an empty domain");
      std::set<std::string_view> unique(nom->domain.begin(), nom->domain.end());
      if (unique.size() != nom->domain.size()) {
        throw Error(kind, "nominal attribute " + attr.name + " has duplicate values");
      }
    }
  }
  for (std::size_t r = 0; r < ds.rows.size(); ++r) {
    const auto& row = ds.rows[r];
    const auto where = "row " + std::to_string(r);
    if (row.size() != ds.attributes.size()) {
      throw Error(kind, where + " has " + std::to_string(row.size()) + " values, expected " +
                            std::to_string(ds.attributes.size()));
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      const auto& value = row[c];
      if (std::holds_alternative<Missing>(value)) continue;
      const auto& attr = ds.attributes[c];
      const auto col = where + " column " + attr.name;
      if (std::holds_alternative<Numeric>(attr.kind)) {
        const auto* d = std::get_if<double>(&value);
        if (!d) throw Error(kind, col + ": expected a number");
        if (!std::isfinite(*d)) throw Error(kind, col + ": non-finite number");
        continue;
      }
      const auto* s = std::get_if<std::string>(&value);
      if (!s) throw Error(kind, col + ": expected text");
      if (const auto* nom = std::get_if<Nominal>(&attr.kind)) {
        if (std::find(nom->domain.begin(), nom->domain.end(), *s) == nom->domain.end()) {
          throw Error(kind, col + ": '" + *s + "' is not in the nominal domain");
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// Emission

inline bool needs_quotes(std::string_view s) {
  if (s.empty() || s == "?") return true;
  return s.find_first_of(" \t,'\"\\{}%\n\r") != std::string_view::npos;
}

inline std::string quote(std::string_view s) {
  if (!needs_quotes(s)) return std::string(s);
  std::string out = "'";
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\'': out += "\\'"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '\'';
  return out;
}

inline std::string format_number(double d) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d);
  return std::string(buf, end);
}

inline std::string type_text(const AttributeKind& kind) {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Numeric>) {
          return "numeric";
        } else if constexpr (std::is_same_v<K, String>) {
          return "string";
        } else if constexpr (std::is_same_v<K, DateKind>) {
          return "date " + quote(k.format);
        } else {
          std::string out = "{";
          for (std::size_t i = 0; i < k.domain.size(); ++i) {
            if (i) out += ',';
            out += quote(k.domain[i]);
          }
          return out + "}";
        }
      },
      kind);
}

inline std::string emit(const Dataset& ds) {
  validate(ds, ErrorKind::Encoding);
  std::string out;
  out += "@relation " + quote(ds.relation) + "\n";
  for (const auto& attr : ds.attributes) {
    out += "@attribute " + quote(attr.name) + " " + type_text(attr.kind) + "\n";
  }
  out += "@data\n";
  for (const auto& row : ds.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      std::visit(
          [&](const auto& v) {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, Missing>) {
              out += '?';
            } else if constexpr (std::is_same_v<V, double>) {
              out += format_number(v);
            } else {
              out += quote(v);
            }
          },
          row[c]);
    }
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class Cursor {
 public:
  Cursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::Parse, "line " + std::to_string(line_) + ": " + msg);
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }
  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void expect(char c) {
    skip_space();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool consume(char c) {
    skip_space();
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  std::string_view rest() const { return text_.substr(pos_); }

  /// A quoted or bare token; bare tokens stop at any character in `stops`.
  /// Sets `quoted` so callers can tell '?' from a missing marker.
  std::string token(std::string_view stops, bool& quoted) {
    skip_space();
    quoted = false;
    if (peek() == '\'' || peek() == '"') {
      quoted = true;
      const char q = text_[pos_++];
      std::string out;
      while (true) {
        if (pos_ >= text_.size()) fail("unterminated quoted value");
        char c = text_[pos_++];
        if (c == q) break;
        if (c == '\\') {
          if (pos_ >= text_.size()) fail("dangling escape");
          c = text_[pos_++];
          switch (c) {
            case 'n': c = '\n'; break;
            case 'r': c = '\r'; break;
            case 't': c = '\t'; break;
            default: break;
          }
        }
        out += c;
      }
      return out;
    }
    const auto start = pos_;
    while (pos_ < text_.size() && stops.find(text_[pos_]) == std::string_view::npos) ++pos_;
    auto bare = text_.substr(start, pos_ - start);
    while (!bare.empty() && (bare.back() == ' ' || bare.back() == '\t')) bare.remove_suffix(1);
    if (bare.empty()) fail("empty value");
    return std::string(bare);
  }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

inline std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

inline bool starts_with_keyword(std::string_view line, std::string_view keyword) {
  if (line.size() < keyword.size()) return false;
  if (lower(line.substr(0, keyword.size())) != keyword) return false;
  return line.size() == keyword.size() || line[keyword.size()] == ' ' || line[keyword.size()] == '\t';
}

inline AttributeKind parse_kind(Cursor& cur) {
  cur.skip_space();
  if (cur.consume('{')) {
    Nominal nom;
    if (cur.consume('}')) cur.fail("empty nominal domain");
    do {
      bool quoted = false;
      nom.domain.push_back(cur.token(",}", quoted));
    } while (cur.consume(','));
    cur.expect('}');
    if (!cur.done()) cur.fail("trailing text after nominal domain");
    return nom;
  }
  bool quoted = false;
  const auto word = lower(cur.token(" \t", quoted));
  if (word == "numeric" || word == "real" || word == "integer") {
    if (!cur.done()) cur.fail("trailing text after type");
    return Numeric{};
  }
  if (word == "string") {
    if (!cur.done()) cur.fail("trailing text after type");
    return String{};
  }
  if (word == "date") {
    DateKind date;
    if (!cur.done()) date.format = cur.token("", quoted);
    if (!cur.done()) cur.fail("trailing text after date format");
    return date;
  }
  cur.fail("unknown attribute kind '" + word + "'");
}

}  // namespace detail

inline Dataset parse(std::string_view text) {
  Dataset ds;
  bool have_relation = false;
  bool in_data = false;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '%') continue;
    line.remove_prefix(first);

    auto fail = [&](const std::string& msg) {
      throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": " + msg);
    };

    if (!in_data) {
      if (detail::starts_with_keyword(line, "@relation")) {
        if (have_relation) fail("duplicate @relation");
        detail::Cursor cur(line.substr(9), line_no);
        bool quoted = false;
        ds.relation = cur.token(" \t", quoted);
        if (!cur.done()) fail("trailing text after relation name");
        have_relation = true;
      } else if (detail::starts_with_keyword(line, "@attribute")) {
        if (!have_relation) fail("@attribute before @relation");
        detail::Cursor cur(line.substr(10), line_no);
        bool quoted = false;
        Attribute attr;
        attr.name = cur.token(" \t{", quoted);
        attr.kind = detail::parse_kind(cur);
        ds.attributes.push_back(std::move(attr));
      } else if (detail::starts_with_keyword(line, "@data")) {
        if (!have_relation) fail("@data before @relation");
        if (line.find_first_not_of(" \t", 5) != std::string_view::npos) fail("trailing text after @data");
        in_data = true;
      } else {
        fail("unexpected header line");
      }
      continue;
    }

    detail::Cursor cur(line, line_no);
    Row row;
    do {
      if (row.size() >= ds.attributes.size()) {
        fail("row has more than " + std::to_string(ds.attributes.size()) + " values");
      }
      bool quoted = false;
      auto token = cur.token(",", quoted);
      const auto& attr = ds.attributes[row.size()];
      if (!quoted && token == "?") {
        row.emplace_back(Missing{});
      } else if (std::holds_alternative<Numeric>(attr.kind)) {
        double d = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), d);
        if (ec != std::errc() || ptr != token.data() + token.size()) {
          fail("'" + token + "' is not a number for attribute " + attr.name);
        }
        row.emplace_back(d);
      } else {
        if (const auto* nom = std::get_if<Nominal>(&attr.kind)) {
          if (std::find(nom->domain.begin(), nom->domain.end(), token) == nom->domain.end()) {
            fail("'" + token + "' is outside the domain of " + attr.name);
          }
        }
        row.emplace_back(std::move(token));
      }
    } while (cur.consume(','));
    if (!cur.done()) fail("unexpected text after value");
    if (row.size() != ds.attributes.size()) {
      fail("row has " + std::to_string(row.size()) + " values, expected " +
           std::to_string(ds.attributes.size()));
    }
    ds.rows.push_back(std::move(row));
  }
  if (!have_relation) throw Error(ErrorKind::Parse, "missing @relation");
  if (!in_data) throw Error(ErrorKind::Parse, "missing @data");
  validate(ds, ErrorKind::Parse);
  return ds;
}

// ---------------------------------------------------------------------------
// Profile dataset schema

inline constexpr std::string_view kRelation = "social_profiles";

template <typename Enum, std::size_t N>
Nominal nominal_of(const std::array<Enum, N>& all) {
  Nominal nom;
  for (auto v : all) nom.domain.emplace_back(to_string(v));
  return nom;
}

inline std::vector<Attribute> profile_schema() {
  return {
      {"age_range", nominal_of(kAllAgeRanges)},
      {"gender", nominal_of(kAllGenders)},
      {"about_me_class", nominal_of(kAllClassLabels)},
      {"wall_count", Numeric{}},
      {"wall_count_class", nominal_of(kAllWallCountClasses)},
      {"music_count", Numeric{}},
      {"music_share_class", nominal_of(kAllShareClasses)},
      {"activity_interest_count", Numeric{}},
      {"activity_interest_class", nominal_of(kAllShareClasses)},
  };
}

/// One row per classified and binned profile, in input order.
inline Dataset build_dataset(std::span<const Profile> profiles) {
  Dataset ds{std::string(kRelation), profile_schema(), {}};
  auto nominal = [](const auto& opt) -> Value {
    if (!opt) return Missing{};
    return std::string(to_string(*opt));
  };
  for (const auto& p : profiles) {
    ds.rows.push_back({
        nominal(p.age_range),
        std::string(to_string(p.gender)),
        nominal(p.about_me_class),
        static_cast<double>(p.wall_count),
        nominal(p.wall_count_class),
        static_cast<double>(p.music_count),
        nominal(p.music_share_class),
        static_cast<double>(p.activity_interest_count),
        nominal(p.activity_interest_class),
    });
  }
  return ds;
}

}  // namespace profmine::arff

#endif  // PROFMINE_ARFF_HPP
