#ifndef PROFMINE_FEATURES_HPP
#define PROFMINE_FEATURES_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "profmine/error.hpp"
#include "profmine/textprep.hpp"

namespace profmine {

/// Occurrence count per term plus the total over all terms.
struct TermCounts {
  std::map<std::string, std::int64_t, std::less<>> counts;
  std::int64_t total = 0;

  std::int64_t count_of(std::string_view term) const {
    auto it = counts.find(term);
    return it == counts.end() ? 0 : it->second;
  }

  friend bool operator==(const TermCounts&, const TermCounts&) = default;
};

/// Normalized term frequency, term -> count / total.
using TfMap = std::map<std::string, double, std::less<>>;

/// Selected feature terms, ordered by descending TF then ascending term.
struct FeatureSet {
  std::vector<std::string> terms;

  std::size_t size() const { return terms.size(); }
  bool empty() const { return terms.empty(); }
};

using CountVector = std::vector<std::int64_t>;

inline constexpr int kDefaultFeatureCount = 50;

inline TermCounts term_counts(const TokenList& tokens) {
  TermCounts tc;
  for (const auto& t : tokens) ++tc.counts[t];
  tc.total = static_cast<std::int64_t>(tokens.size());
  return tc;
}

inline TfMap term_frequency(const TermCounts& counts) {
  if (counts.total <= 0) throw Error(ErrorKind::EmptyDocument, "document has no terms");
  TfMap tf;
  const double total = static_cast<double>(counts.total);
  for (const auto& [term, n] : counts.counts) tf.emplace(term, static_cast<double>(n) / total);
  return tf;
}

inline FeatureSet select_features(const TfMap& tf, int n) {
  if (n < 1) throw Error(ErrorKind::Parameter, "feature count must be >= 1");
  if (tf.empty()) throw Error(ErrorKind::EmptyDocument, "no terms to select features from");
  std::vector<std::pair<std::string, double>> ranked(tf.begin(), tf.end());
  const auto keep = std::min<std::size_t>(static_cast<std::size_t>(n), ranked.size());
  std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep), ranked.end(),
                    [](const auto& a, const auto& b) {
                      if (a.second != b.second) return a.second > b.second;
                      return a.first < b.first;
                    });
  FeatureSet fs;
  fs.terms.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) fs.terms.push_back(std::move(ranked[i].first));
  return fs;
}

inline CountVector count_vector(const FeatureSet& features, const TermCounts& counts) {
  CountVector v;
  v.reserve(features.size());
  for (const auto& term : features.terms) v.push_back(counts.count_of(term));
  return v;
}

}  // namespace profmine

#endif  // PROFMINE_FEATURES_HPP
