#ifndef PROFMINE_TEXTPREP_HPP
#define PROFMINE_TEXTPREP_HPP

// Text normalization, tokenization and common-word removal.
//
// A token is a maximal run of Unicode letters and digits, lowercased.
// Classification uses the C.UTF-8 ctype tables; if that locale cannot be
// opened the rules degrade to ASCII letters and digits.

#include <locale.h>
#include <wctype.h>

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "profmine/error.hpp"

namespace profmine {

using TokenList = std::vector<std::string>;

namespace detail {

inline locale_t utf8_ctype() {
  static const locale_t loc = newlocale(LC_CTYPE_MASK, "C.UTF-8", static_cast<locale_t>(0));
  return loc;
}

// Decodes one code point starting at text[pos]; returns U+FFFD-like sentinel
// (0xFFFFFFFF) for invalid sequences and advances by one byte in that case.
inline char32_t decode_utf8(std::string_view text, std::size_t& pos) {
  constexpr char32_t kInvalid = 0xFFFFFFFF;
  auto byte = [&](std::size_t i) { return static_cast<unsigned char>(text[i]); };
  const unsigned char lead = byte(pos);
  if (lead < 0x80) {
    ++pos;
    return lead;
  }
  std::size_t len = 0;
  char32_t cp = 0;
  if ((lead & 0xE0) == 0xC0) {
    len = 2;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    len = 3;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    len = 4;
    cp = lead & 0x07;
  } else {
    ++pos;
    return kInvalid;
  }
  if (pos + len > text.size()) {
    ++pos;
    return kInvalid;
  }
  for (std::size_t i = 1; i < len; ++i) {
    const unsigned char c = byte(pos + i);
    if ((c & 0xC0) != 0x80) {
      ++pos;
      return kInvalid;
    }
    cp = (cp << 6) | (c & 0x3F);
  }
  // Reject overlong forms, surrogates and out-of-range values.
  static constexpr char32_t kMin[] = {0, 0, 0x80, 0x800, 0x10000};
  if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    ++pos;
    return kInvalid;
  }
  pos += len;
  return cp;
}

inline void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

inline bool is_word_char(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9');
  }
  if (cp == 0xFFFFFFFF) return false;
  const locale_t loc = utf8_ctype();
  return loc != static_cast<locale_t>(0) && iswalnum_l(static_cast<wint_t>(cp), loc);
}

inline char32_t to_lower(char32_t cp) {
  if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') ? cp + ('a' - 'A') : cp;
  const locale_t loc = utf8_ctype();
  if (loc == static_cast<locale_t>(0)) return cp;
  return static_cast<char32_t>(towlower_l(static_cast<wint_t>(cp), loc));
}

}  // namespace detail

/// Lowercases, maps every non letter/digit to a separator, collapses
/// separator runs into one space and strips the ends.
inline std::string normalize_text(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  std::size_t pos = 0;
  while (pos < raw.size()) {
    const char32_t cp = detail::decode_utf8(raw, pos);
    if (!detail::is_word_char(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    detail::append_utf8(out, detail::to_lower(cp));
  }
  return out;
}

/// Splits normalized text on single spaces.
inline TokenList tokenize(std::string_view normalized) {
  TokenList tokens;
  std::size_t start = 0;
  while (start < normalized.size()) {
    std::size_t end = normalized.find(' ', start);
    if (end == std::string_view::npos) end = normalized.size();
    if (end > start) tokens.emplace_back(normalized.substr(start, end - start));
    start = end + 1;
  }
  return tokens;
}

class StopwordList {
 public:
  StopwordList() = default;
  StopwordList(std::initializer_list<std::string_view> words) {
    for (auto w : words) add(w);
  }

  /// Words are normalized on insertion; a word that normalizes to several
  /// tokens contributes each of them.
  void add(std::string_view word) {
    for (auto& token : tokenize(normalize_text(word))) words_.insert(std::move(token));
  }

  bool contains(std::string_view token) const { return words_.find(token) != words_.end(); }
  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  const std::set<std::string, std::less<>>& words() const { return words_; }

 private:
  std::set<std::string, std::less<>> words_;
};

/// Built-in English function-word list.
inline const StopwordList& default_stopwords() {
  static const StopwordList list{
      "a",       "about",   "above",  "after",   "again",  "against", "all",     "am",
      "an",      "and",     "any",    "are",     "as",     "at",      "be",      "because",
      "been",    "before",  "being",  "below",   "between", "both",   "but",     "by",
      "can",     "could",   "did",    "do",      "does",   "doing",   "down",    "during",
      "each",    "few",     "for",    "from",    "further", "had",    "has",     "have",
      "having",  "he",      "her",    "here",    "hers",   "herself", "him",     "himself",
      "his",     "how",     "i",      "if",      "in",     "into",    "is",      "it",
      "its",     "itself",  "just",   "me",      "more",   "most",    "my",      "myself",
      "no",      "nor",     "not",    "now",     "of",     "off",     "on",      "once",
      "only",    "or",      "other",  "our",     "ours",   "ourselves", "out",   "over",
      "own",     "same",    "she",    "should",  "so",     "some",    "such",    "than",
      "that",    "the",     "their",  "theirs",  "them",   "themselves", "then", "there",
      "these",   "they",    "this",   "those",   "through", "to",     "too",     "under",
      "until",   "up",      "very",   "was",     "we",     "were",    "what",    "when",
      "where",   "which",   "while",  "who",     "whom",   "why",     "will",    "with",
      "would",   "you",     "your",   "yours",   "yourself", "yourselves", "also", "im",
  };
  return list;
}

/// Reads a stopword file: one word per line, '#' lines ignored.
inline StopwordList load_stopwords(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Input, "cannot open stopword file " + path);
  StopwordList list;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.front() == '#') continue;
    list.add(line);
  }
  return list;
}

inline TokenList remove_stopwords(const TokenList& tokens, const StopwordList& stops) {
  TokenList kept;
  kept.reserve(tokens.size());
  std::copy_if(tokens.begin(), tokens.end(), std::back_inserter(kept),
               [&](const std::string& t) { return !stops.contains(t); });
  return kept;
}

/// normalize -> tokenize -> remove_stopwords.
inline TokenList preprocess(std::string_view raw, const StopwordList& stops) {
  return remove_stopwords(tokenize(normalize_text(raw)), stops);
}

}  // namespace profmine

#endif  // PROFMINE_TEXTPREP_HPP
