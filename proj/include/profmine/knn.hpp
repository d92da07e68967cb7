#ifndef PROFMINE_KNN_HPP
#define PROFMINE_KNN_HPP

// Distance matrix against a pre-classified sample corpus and k-nearest
// neighbour voting.
//
// For a target text the feature terms are the target's own top-TF terms.
// Every sample document is projected onto those terms with raw occurrence
// counts, and one Euclidean distance per sample forms the distance matrix.
// The matrix is sorted ascending (ties by doc_id) and the k nearest rows
// vote. A tied vote goes to the label with the smallest summed distance,
// then to the lexicographically smallest label name.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "profmine/error.hpp"
#include "profmine/features.hpp"
#include "profmine/textprep.hpp"

namespace profmine {

enum class ClassLabel {
  Aggressive,
  Honest,
  Romantic,
  Sincere,
  Dishonest,
  Friendly,
  Eager_to_Learn,
  Conservative,
  Emotional,
  Lazy,
  Unclassifiable,
};

/// All labels in enumeration order, sentinel last.
inline constexpr std::array<ClassLabel, 11> kAllClassLabels = {
    ClassLabel::Aggressive,     ClassLabel::Honest,       ClassLabel::Romantic,
    ClassLabel::Sincere,        ClassLabel::Dishonest,    ClassLabel::Friendly,
    ClassLabel::Eager_to_Learn, ClassLabel::Conservative, ClassLabel::Emotional,
    ClassLabel::Lazy,           ClassLabel::Unclassifiable,
};

/// The ten labels a sample document may carry.
inline constexpr std::span<const ClassLabel> kSampleLabels{kAllClassLabels.data(), 10};

inline std::string_view to_string(ClassLabel label) {
  switch (label) {
    case ClassLabel::Aggressive: return "Aggressive";
    case ClassLabel::Honest: return "Honest";
    case ClassLabel::Romantic: return "Romantic";
    case ClassLabel::Sincere: return "Sincere";
    case ClassLabel::Dishonest: return "Dishonest";
    case ClassLabel::Friendly: return "Friendly";
    case ClassLabel::Eager_to_Learn: return "Eager_to_Learn";
    case ClassLabel::Conservative: return "Conservative";
    case ClassLabel::Emotional: return "Emotional";
    case ClassLabel::Lazy: return "Lazy";
    case ClassLabel::Unclassifiable: return "Unclassifiable";
  }
  return "Unclassifiable";
}

inline std::optional<ClassLabel> parse_class_label(std::string_view name) {
  for (auto label : kAllClassLabels) {
    if (to_string(label) == name) return label;
  }
  return std::nullopt;
}

/// A pre-classified known text with its preprocessing cached.
struct SampleDocument {
  std::string doc_id;
  std::string text;
  ClassLabel label = ClassLabel::Unclassifiable;
  TokenList tokens;
  TermCounts counts;
};

inline SampleDocument make_sample(std::string doc_id, std::string text, ClassLabel label,
                                  const StopwordList& stops = default_stopwords()) {
  if (label == ClassLabel::Unclassifiable) {
    throw Error(ErrorKind::Corpus, "sample " + doc_id + " carries the Unclassifiable label");
  }
  if (text.empty()) throw Error(ErrorKind::Corpus, "sample " + doc_id + " has empty text");
  SampleDocument doc{std::move(doc_id), std::move(text), label, {}, {}};
  doc.tokens = preprocess(doc.text, stops);
  doc.counts = term_counts(doc.tokens);
  return doc;
}

/// Reads a line-delimited sample corpus of {"id","label","text"} objects.
inline std::vector<SampleDocument> read_sample_corpus(std::istream& in,
                                                      const StopwordList& stops = default_stopwords()) {
  std::vector<SampleDocument> corpus;
  std::set<std::string, std::less<>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto where = "corpus line " + std::to_string(line_no);
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::Parse, where + ": " + e.what());
    }
    if (!obj.is_object()) throw Error(ErrorKind::Parse, where + ": expected an object");
    for (const char* key : {"id", "label", "text"}) {
      if (!obj.contains(key) || !obj[key].is_string()) {
        throw Error(ErrorKind::Parse, where + ": missing string field '" + key + "'");
      }
    }
    auto id = obj["id"].get<std::string>();
    const auto label_name = obj["label"].get<std::string>();
    const auto label = parse_class_label(label_name);
    if (!label || *label == ClassLabel::Unclassifiable) {
      throw Error(ErrorKind::Parse, where + ": unknown class label '" + label_name + "'");
    }
    if (!seen.insert(id).second) throw Error(ErrorKind::Corpus, "duplicate sample id " + id);
    corpus.push_back(make_sample(std::move(id), obj["text"].get<std::string>(), *label, stops));
  }
  if (in.bad()) throw Error(ErrorKind::Input, "failed reading sample corpus");
  return corpus;
}

inline std::vector<SampleDocument> load_sample_corpus(const std::string& path,
                                                      const StopwordList& stops = default_stopwords()) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Input, "cannot open sample corpus " + path);
  return read_sample_corpus(in, stops);
}

inline void write_sample_corpus(std::ostream& out, std::span<const SampleDocument> corpus) {
  for (const auto& doc : corpus) {
    nlohmann::ordered_json obj;
    obj["id"] = doc.doc_id;
    obj["label"] = to_string(doc.label);
    obj["text"] = doc.text;
    out << obj.dump() << '\n';
  }
}

// ---------------------------------------------------------------------------
// Distances

inline std::vector<double> squared_diff_row(std::span<const std::int64_t> target,
                                            std::span<const std::int64_t> sample) {
  if (target.size() != sample.size()) {
    throw Error(ErrorKind::Dimension, "vector lengths differ (" + std::to_string(target.size()) +
                                          " vs " + std::to_string(sample.size()) + ")");
  }
  std::vector<double> row(target.size());
  for (std::size_t k = 0; k < target.size(); ++k) {
    const auto diff = static_cast<double>(target[k] - sample[k]);
    row[k] = diff * diff;
  }
  return row;
}

inline double euclidean_distance(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorKind::Dimension, "vector lengths differ (" + std::to_string(a.size()) +
                                          " vs " + std::to_string(b.size()) + ")");
  }
  if (a.empty()) throw Error(ErrorKind::Dimension, "zero-length vectors");
  double sum = 0.0;
  for (double sq : squared_diff_row(a, b)) sum += sq;
  return std::sqrt(sum);
}

struct DistanceRow {
  std::string doc_id;
  ClassLabel label = ClassLabel::Unclassifiable;
  double distance = 0.0;

  friend bool operator==(const DistanceRow&, const DistanceRow&) = default;
};

/// One row per sample document, in corpus order.
struct DistanceMatrix {
  std::vector<DistanceRow> rows;
};

/// A sample already projected onto the feature coordinates.
struct LabeledVector {
  std::string doc_id;
  ClassLabel label = ClassLabel::Unclassifiable;
  CountVector vec;
};

inline DistanceMatrix distance_matrix(std::span<const std::int64_t> target,
                                      std::span<const LabeledVector> samples) {
  if (samples.empty()) throw Error(ErrorKind::Corpus, "empty sample corpus");
  DistanceMatrix dm;
  dm.rows.reserve(samples.size());
  for (const auto& s : samples) {
    dm.rows.push_back({s.doc_id, s.label, euclidean_distance(target, s.vec)});
  }
  return dm;
}

inline DistanceMatrix distance_matrix(std::span<const std::int64_t> target,
                                      std::span<const SampleDocument> samples,
                                      const FeatureSet& features) {
  if (samples.empty()) throw Error(ErrorKind::Corpus, "empty sample corpus");
  if (features.empty()) throw Error(ErrorKind::Dimension, "empty feature set");
  if (target.size() != features.size()) {
    throw Error(ErrorKind::Dimension, "target vector does not match feature count");
  }
  DistanceMatrix dm;
  dm.rows.reserve(samples.size());
  for (const auto& s : samples) {
    const auto sample_vec = count_vector(features, s.counts);
    dm.rows.push_back({s.doc_id, s.label, euclidean_distance(target, sample_vec)});
  }
  return dm;
}

// ---------------------------------------------------------------------------
// Voting

inline constexpr int kDefaultK = 5;

struct KnnResult {
  ClassLabel label = ClassLabel::Unclassifiable;
  std::vector<DistanceRow> evidence;  ///< the k nearest rows, ascending
};

inline KnnResult knn_classify(const DistanceMatrix& dm, int k) {
  if (dm.rows.empty()) throw Error(ErrorKind::Corpus, "empty distance matrix");
  if (k < 1 || static_cast<std::size_t>(k) > dm.rows.size()) {
    throw Error(ErrorKind::Parameter, "k=" + std::to_string(k) + " outside [1, " +
                                          std::to_string(dm.rows.size()) + "]");
  }
  std::vector<DistanceRow> sorted = dm.rows;
  auto nearer = [](const DistanceRow& a, const DistanceRow& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.doc_id < b.doc_id;
  };
  const auto kk = static_cast<std::ptrdiff_t>(k);
  std::partial_sort(sorted.begin(), sorted.begin() + kk, sorted.end(), nearer);
  sorted.resize(static_cast<std::size_t>(k));

  struct Tally {
    int votes = 0;
    double summed = 0.0;
  };
  std::map<ClassLabel, Tally> tally;
  for (const auto& row : sorted) {
    auto& t = tally[row.label];
    ++t.votes;
    t.summed += row.distance;
  }
  auto best = tally.begin();
  for (auto it = std::next(tally.begin()); it != tally.end(); ++it) {
    const auto& [label, t] = *it;
    const auto& b = best->second;
    if (t.votes != b.votes) {
      if (t.votes > b.votes) best = it;
    } else if (t.summed != b.summed) {
      if (t.summed < b.summed) best = it;
    } else if (to_string(label) < to_string(best->first)) {
      best = it;
    }
  }
  return {best->first, std::move(sorted)};
}

// ---------------------------------------------------------------------------
// End to end

struct ClassifyOptions {
  int n_features = kDefaultFeatureCount;
  int k = kDefaultK;
};

/// Full text path: preprocess, rank the target's terms, project, vote.
/// Text with no terms left after stopword removal is Unclassifiable.
inline KnnResult classify_text_detailed(std::string_view text, std::span<const SampleDocument> corpus,
                                        const ClassifyOptions& opts,
                                        const StopwordList& stops = default_stopwords()) {
  if (corpus.empty()) throw Error(ErrorKind::Corpus, "empty sample corpus");
  if (opts.n_features < 1) throw Error(ErrorKind::Parameter, "feature count must be >= 1");
  if (opts.k < 1 || static_cast<std::size_t>(opts.k) > corpus.size()) {
    throw Error(ErrorKind::Parameter, "k=" + std::to_string(opts.k) + " outside [1, " +
                                          std::to_string(corpus.size()) + "]");
  }
  const auto counts = term_counts(preprocess(text, stops));
  if (counts.total == 0) return {ClassLabel::Unclassifiable, {}};
  const auto features = select_features(term_frequency(counts), opts.n_features);
  const auto target = count_vector(features, counts);
  return knn_classify(distance_matrix(target, corpus, features), opts.k);
}

inline ClassLabel classify_text(std::string_view text, std::span<const SampleDocument> corpus,
                                int n_features, int k,
                                const StopwordList& stops = default_stopwords()) {
  return classify_text_detailed(text, corpus, {n_features, k}, stops).label;
}

/// Classifies many texts against one read-only corpus. Work is split across
/// threads; results keep the input order.
inline std::vector<ClassLabel> classify_all(std::span<const std::string> texts,
                                            std::span<const SampleDocument> corpus,
                                            const ClassifyOptions& opts,
                                            const StopwordList& stops = default_stopwords(),
                                            unsigned threads = 0) {
  std::vector<ClassLabel> out(texts.size(), ClassLabel::Unclassifiable);
  if (texts.empty()) return out;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, texts.size()));

  std::vector<std::exception_ptr> failures(threads);
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < texts.size(); i += threads) {
          out[i] = classify_text_detailed(texts[i], corpus, opts, stops).label;
        }
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return out;
}

}  // namespace profmine

#endif  // PROFMINE_KNN_HPP
