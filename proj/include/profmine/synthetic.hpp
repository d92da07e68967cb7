#ifndef PROFMINE_SYNTHETIC_HPP
#define PROFMINE_SYNTHETIC_HPP

// Seeded generators for a labeled sample corpus and for raw profile records.
//
// Each class draws most of its words from its own vocabulary, some from the
// next class's vocabulary and a shared pool, with stopwords and punctuation
// mixed in. Output depends only on the seed: draws come straight from
// std::mt19937_64, whose sequence is fixed by the standard.

#include <array>
#include <cctype>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "profmine/knn.hpp"
#include "profmine/textprep.hpp"

namespace profmine::synthetic {

using Vocabulary = std::array<std::string_view, 15>;

/// Per-class word lists, indexed like kSampleLabels.
inline constexpr std::array<Vocabulary, 10> kClassVocabulary = {{
    {"fight", "angry", "rage", "battle", "fierce", "shout", "dominate", "attack", "tough", "boxing",
     "compete", "win", "furious", "clash", "power"},
    {"truth", "honest", "trust", "integrity", "fair", "transparent", "genuine", "loyal", "principle",
     "candid", "straight", "reliable", "promise", "keep", "word"},
    {"love", "romance", "heart", "candle", "sunset", "kiss", "dating", "poetry", "roses", "moonlight",
     "darling", "passion", "valentine", "dream", "together"},
    {"sincere", "earnest", "devoted", "commitment", "dedicated", "serious", "respect", "heartfelt",
     "faithful", "wholehearted", "dependable", "steady", "duty", "care", "responsible"},
    {"lie", "cheat", "trick", "fake", "scam", "pretend", "deceive", "sneaky", "bluff", "hustle",
     "manipulate", "secret", "steal", "excuse", "shortcut"},
    {"friends", "party", "fun", "hangout", "chat", "smile", "welcome", "social", "buddies", "laugh",
     "outgoing", "meet", "cheerful", "share", "kind"},
    {"learn", "study", "books", "science", "curious", "research", "knowledge", "course", "university",
     "reading", "skills", "explore", "lecture", "math", "coding"},
    {"tradition", "family", "faith", "values", "church", "heritage", "modest", "discipline", "custom",
     "elders", "order", "classic", "prayer", "stable", "culture"},
    {"feelings", "tears", "cry", "sensitive", "mood", "lonely", "sad", "happy", "emotion", "moved",
     "nostalgic", "deep", "soul", "hurt", "touched"},
    {"sleep", "nap", "lazy", "couch", "tired", "relax", "later", "bed", "snooze", "weekend", "slow",
     "chill", "tv", "procrastinate", "rest"},
}};

inline constexpr std::array<std::string_view, 24> kSharedVocabulary = {
    "life", "people", "time", "world", "good", "music", "day", "city", "work", "home",
    "movies", "food", "travel", "like", "things", "always", "new", "best", "person", "really",
    "know", "think", "every", "year"};

inline constexpr std::array<std::string_view, 16> kFillerStopwords = {
    "i", "am", "the", "and", "a", "to", "of", "my", "is", "with", "in", "for", "me", "it", "that", "you"};

/// Uniform index in [0, n) from the raw 64-bit stream.
inline std::size_t pick(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

/// Percent-scale Bernoulli draw.
inline bool chance(std::mt19937_64& rng, unsigned percent) { return pick(rng, 100) < percent; }

/// One text of the given class, 40 to 80 words.
inline std::string generate_text(std::mt19937_64& rng, std::size_t class_index) {
  const std::size_t length = 40 + pick(rng, 41);
  std::string text;
  for (std::size_t w = 0; w < length; ++w) {
    const auto roll = pick(rng, 100);
    std::string_view word;
    if (roll < 60) {
      word = kClassVocabulary[class_index][pick(rng, 15)];
    } else if (roll < 70) {
      word = kClassVocabulary[(class_index + 1) % 10][pick(rng, 15)];
    } else if (roll < 85) {
      word = kSharedVocabulary[pick(rng, kSharedVocabulary.size())];
    } else {
      word = kFillerStopwords[pick(rng, kFillerStopwords.size())];
    }
    if (!text.empty()) text += (w % 9 == 0) ? ". " : " ";
    std::string token(word);
    if (w % 9 == 0) token[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(token[0])));
    text += token;
  }
  text += '.';
  return text;
}

inline std::string doc_id(std::size_t class_index, std::size_t n) {
  std::string id(to_string(kSampleLabels[class_index]));
  for (auto& c : id) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return fmt::format("{}-{:03}", id, n);
}

/// docs_per_class documents for each of the ten labels, grouped by class.
inline std::vector<SampleDocument> generate_corpus(std::size_t docs_per_class, std::uint64_t seed,
                                                   const StopwordList& stops = default_stopwords()) {
  std::mt19937_64 rng(seed);
  std::vector<SampleDocument> corpus;
  corpus.reserve(docs_per_class * 10);
  for (std::size_t c = 0; c < 10; ++c) {
    for (std::size_t i = 0; i < docs_per_class; ++i) {
      corpus.push_back(make_sample(doc_id(c, i), generate_text(rng, c), kSampleLabels[c], stops));
    }
  }
  return corpus;
}

/// Raw profile lines in the ingest input format. Every record is valid;
/// about_me texts come from a class drawn uniformly.
inline std::vector<nlohmann::ordered_json> generate_profiles(std::size_t count, std::uint64_t seed) {
  static constexpr std::array<std::string_view, 12> kHobbies = {
      "football", "chess", "hiking", "painting", "cooking", "gaming",
      "cricket", "photography", "dancing", "singing", "cycling", "swimming"};
  std::mt19937_64 rng(seed);
  std::vector<nlohmann::ordered_json> out;
  out.reserve(count);
  auto list = [&](std::size_t max_items) {
    const auto n = pick(rng, max_items + 1);
    std::string s;
    for (std::size_t i = 0; i < n; ++i) {
      if (i) s += ", ";
      s += kHobbies[pick(rng, kHobbies.size())];
    }
    return s;
  };
  for (std::size_t i = 0; i < count; ++i) {
    nlohmann::ordered_json obj;
    obj["id"] = fmt::format("u{:05}", i);
    if (!chance(rng, 12)) {
      const auto year = 1950 + pick(rng, 59);
      const auto month = 1 + pick(rng, 12);
      const auto day = 1 + pick(rng, 28);
      obj["birthday"] = fmt::format("{:04}-{:02}-{:02}", year, month, day);
    }
    obj["about_me"] = generate_text(rng, pick(rng, 10));
    obj["activities"] = list(10);
    const auto g = pick(rng, 100);
    if (g < 47) {
      obj["gender"] = "male";
    } else if (g < 94) {
      obj["gender"] = "Female";
    } else if (g < 97) {
      obj["gender"] = "other";
    }
    obj["interests"] = list(10);
    obj["wall_count"] = pick(rng, 400);
    if (chance(rng, 30)) obj["political"] = "moderate";
    obj["music_count"] = pick(rng, 30);
    out.push_back(std::move(obj));
  }
  return out;
}

}  // namespace profmine::synthetic

#endif  // PROFMINE_SYNTHETIC_HPP
