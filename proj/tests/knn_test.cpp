#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracle/brute_force_knn.hpp"
#include "profmine/knn.hpp"

namespace profmine {
namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorKind::Input;
}

TEST(SquaredDiffRow, Examples) {
  EXPECT_EQ(squared_diff_row(CountVector{2, 0}, CountVector{2, 0}), (std::vector<double>{0, 0}));
  EXPECT_EQ(squared_diff_row(CountVector{3, 0}, CountVector{0, 4}), (std::vector<double>{9, 16}));
  EXPECT_TRUE(squared_diff_row(CountVector{}, CountVector{}).empty());
  EXPECT_EQ(kind_of([] { squared_diff_row(CountVector{1}, CountVector{1, 2}); }), ErrorKind::Dimension);
}

TEST(EuclideanDistance, Examples) {
  EXPECT_DOUBLE_EQ(euclidean_distance(CountVector{0, 0}, CountVector{3, 4}), 5.0);
  EXPECT_DOUBLE_EQ(euclidean_distance(CountVector{7, 1, 9}, CountVector{7, 1, 9}), 0.0);
  EXPECT_DOUBLE_EQ(euclidean_distance(CountVector{1, 1, 1}, CountVector{2, 2, 2}), std::sqrt(3.0));
  EXPECT_EQ(kind_of([] { euclidean_distance(CountVector{}, CountVector{}); }), ErrorKind::Dimension);
  EXPECT_EQ(kind_of([] { euclidean_distance(CountVector{1}, CountVector{1, 2}); }), ErrorKind::Dimension);
}

TEST(EuclideanDistance, MetricAxiomsSmallSample) {
  std::mt19937_64 rng(42);
  auto vec = [&](std::size_t dim) {
    CountVector v(dim);
    for (auto& x : v) x = static_cast<std::int64_t>(rng() % 101);
    return v;
  };
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t dim = 1 + rng() % 8;
    const auto x = vec(dim), y = vec(dim), z = vec(dim);
    const double dxy = euclidean_distance(x, y);
    EXPECT_GE(dxy, 0.0);
    EXPECT_EQ(euclidean_distance(x, x), 0.0);
    EXPECT_NEAR(dxy, euclidean_distance(y, x), 1e-9);
    EXPECT_LE(euclidean_distance(x, z), dxy + euclidean_distance(y, z) + 1e-9);
  }
}

TEST(DistanceMatrix, FromSampleDocuments) {
  const StopwordList none;
  const std::vector<SampleDocument> samples = {
      make_sample("s1", "a a b", ClassLabel::Honest, none),
      make_sample("s2", "c", ClassLabel::Lazy, none),
  };
  const FeatureSet fs{{"a", "b"}};
  const auto dm = distance_matrix(CountVector{2, 1}, samples, fs);
  ASSERT_EQ(dm.rows.size(), 2u);
  EXPECT_EQ(dm.rows[0], (DistanceRow{"s1", ClassLabel::Honest, 0.0}));
  EXPECT_EQ(dm.rows[1].doc_id, "s2");
  EXPECT_DOUBLE_EQ(dm.rows[1].distance, std::sqrt(5.0));
}

TEST(DistanceMatrix, Errors) {
  const std::vector<SampleDocument> none;
  EXPECT_EQ(kind_of([&] { distance_matrix(CountVector{1}, none, FeatureSet{{"a"}}); }), ErrorKind::Corpus);
  const std::vector<SampleDocument> one = {make_sample("s", "a", ClassLabel::Honest)};
  EXPECT_EQ(kind_of([&] { distance_matrix(CountVector{}, one, FeatureSet{}); }), ErrorKind::Dimension);
}

DistanceMatrix matrix(std::initializer_list<DistanceRow> rows) { return {rows}; }

TEST(KnnClassify, Examples) {
  EXPECT_EQ(knn_classify(matrix({{"a", ClassLabel::Lazy, 3.0}, {"b", ClassLabel::Honest, 1.0}}), 1).label,
            ClassLabel::Honest);
  EXPECT_EQ(knn_classify(matrix({{"a", ClassLabel::Honest, 1.0},
                                 {"b", ClassLabel::Honest, 2.0},
                                 {"c", ClassLabel::Lazy, 1.5},
                                 {"d", ClassLabel::Romantic, 9.0}}),
                         3)
                .label,
            ClassLabel::Honest);
  // 1-1 vote: smaller summed distance wins.
  EXPECT_EQ(knn_classify(matrix({{"x", ClassLabel::Lazy, 2.0}, {"y", ClassLabel::Honest, 1.0}}), 2).label,
            ClassLabel::Honest);
}

TEST(KnnClassify, LexicographicLabelBreaksFullTie) {
  // Equal votes and sums: "Aggressive" < "Lazy".
  const auto r = knn_classify(matrix({{"x", ClassLabel::Lazy, 1.0}, {"y", ClassLabel::Aggressive, 1.0}}), 2);
  EXPECT_EQ(r.label, ClassLabel::Aggressive);
  // "Eager_to_Learn" < "Emotional" although Emotional is later in the enum.
  const auto r2 =
      knn_classify(matrix({{"x", ClassLabel::Emotional, 1.0}, {"y", ClassLabel::Eager_to_Learn, 1.0}}), 2);
  EXPECT_EQ(r2.label, ClassLabel::Eager_to_Learn);
}

TEST(KnnClassify, EvidenceSortedWithDocIdTieBreak) {
  const auto r = knn_classify(matrix({{"c", ClassLabel::Honest, 1.0},
                                      {"a", ClassLabel::Lazy, 1.0},
                                      {"b", ClassLabel::Lazy, 0.5},
                                      {"d", ClassLabel::Honest, 4.0}}),
                              3);
  ASSERT_EQ(r.evidence.size(), 3u);
  EXPECT_EQ(r.evidence[0].doc_id, "b");
  EXPECT_EQ(r.evidence[1].doc_id, "a");
  EXPECT_EQ(r.evidence[2].doc_id, "c");
  EXPECT_EQ(r.label, ClassLabel::Lazy);
}

TEST(KnnClassify, Errors) {
  EXPECT_EQ(kind_of([] { knn_classify(DistanceMatrix{}, 1); }), ErrorKind::Corpus);
  EXPECT_EQ(kind_of([] { knn_classify(matrix({{"a", ClassLabel::Honest, 0.0}}), 2); }), ErrorKind::Parameter);
  EXPECT_EQ(kind_of([] { knn_classify(matrix({{"a", ClassLabel::Honest, 0.0}}), 0); }), ErrorKind::Parameter);
}

// Random small instances with many distance ties, checked against the
// brute-force oracle for every k.
TEST(KnnClassify, MatchesBruteForceOracle) {
  std::mt19937_64 rng(99);
  for (int instance = 0; instance < 100; ++instance) {
    const std::size_t dim = 1 + rng() % 4;
    const std::size_t t = 1 + rng() % 20;
    CountVector target(dim);
    for (auto& x : target) x = static_cast<std::int64_t>(rng() % 4);
    std::vector<LabeledVector> samples;
    std::vector<oracle::Sample> oracle_samples;
    for (std::size_t i = 0; i < t; ++i) {
      LabeledVector s{"d" + std::to_string(rng() % 1000) + "_" + std::to_string(i),
                      kSampleLabels[rng() % 10], CountVector(dim)};
      for (auto& x : s.vec) x = static_cast<std::int64_t>(rng() % 4);
      oracle_samples.push_back({s.doc_id, std::string(to_string(s.label)), {s.vec.begin(), s.vec.end()}});
      samples.push_back(std::move(s));
    }
    const auto dm = distance_matrix(target, samples);
    for (int k = 1; k <= static_cast<int>(t); ++k) {
      const auto expected = oracle::classify({target.begin(), target.end()}, oracle_samples, k);
      EXPECT_EQ(to_string(knn_classify(dm, k).label), expected) << "instance " << instance << " k " << k;
    }
  }
}

TEST(KnnClassify, InvariantUnderCorpusPermutation) {
  std::mt19937_64 rng(5);
  for (int instance = 0; instance < 50; ++instance) {
    DistanceMatrix dm;
    for (int i = 0; i < 12; ++i) {
      dm.rows.push_back({"id" + std::to_string(i), kSampleLabels[rng() % 10], static_cast<double>(rng() % 4)});
    }
    for (int k = 1; k <= 12; ++k) {
      const auto expected = knn_classify(dm, k);
      auto shuffled = dm;
      std::shuffle(shuffled.rows.begin(), shuffled.rows.end(), rng);
      const auto got = knn_classify(shuffled, k);
      EXPECT_EQ(got.label, expected.label);
      EXPECT_EQ(got.evidence, expected.evidence);
    }
  }
}

TEST(ClassifyText, IdenticalDocumentWinsWithKOne) {
  const std::vector<SampleDocument> corpus = {
      make_sample("h", "honest truth always honest", ClassLabel::Honest),
      make_sample("l", "lazy sleepy couch nap", ClassLabel::Lazy),
      make_sample("r", "romance roses candle", ClassLabel::Romantic),
  };
  EXPECT_EQ(classify_text("lazy sleepy couch nap", corpus, 50, 1), ClassLabel::Lazy);
  EXPECT_EQ(classify_text("Honest truth, always HONEST!", corpus, 50, 1), ClassLabel::Honest);
}

TEST(ClassifyText, OnlyStopwordsIsUnclassifiable) {
  const std::vector<SampleDocument> corpus = {make_sample("h", "honest", ClassLabel::Honest)};
  EXPECT_EQ(classify_text("It is what it is, and so are you", corpus, 50, 1), ClassLabel::Unclassifiable);
  EXPECT_EQ(classify_text("", corpus, 50, 1), ClassLabel::Unclassifiable);
}

TEST(ClassifyText, ParameterChecks) {
  const std::vector<SampleDocument> corpus = {make_sample("h", "honest", ClassLabel::Honest)};
  EXPECT_EQ(kind_of([&] { classify_text("honest", corpus, 50, 2); }), ErrorKind::Parameter);
  EXPECT_EQ(kind_of([&] { classify_text("honest", std::vector<SampleDocument>{}, 50, 1); }), ErrorKind::Corpus);
}

// Disjoint per-class vocabularies: the brute-force nearest neighbour over
// the raw count vectors (on the target's own terms) must agree.
TEST(ClassifyText, DisjointVocabulariesAgreeWithNearestNeighbour) {
  std::mt19937_64 rng(17);
  const StopwordList none;
  std::vector<SampleDocument> corpus;
  std::vector<std::vector<std::string>> vocab(10);
  for (std::size_t c = 0; c < 10; ++c) {
    for (int w = 0; w < 5; ++w) vocab[c].push_back("w" + std::to_string(c) + "x" + std::to_string(w));
  }
  auto text_for = [&](std::size_t c) {
    std::string s;
    for (int i = 0, n = 10 + static_cast<int>(rng() % 10); i < n; ++i) s += vocab[c][rng() % 5] + " ";
    return s;
  };
  for (std::size_t c = 0; c < 10; ++c) {
    for (int d = 0; d < 8; ++d) {
      corpus.push_back(make_sample("c" + std::to_string(c) + "d" + std::to_string(d), text_for(c),
                                   kSampleLabels[c], none));
    }
  }
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t c = rng() % 10;
    const auto text = text_for(c);
    const auto label = classify_text(text, corpus, 50, 1, none);
    EXPECT_EQ(label, kSampleLabels[c]);

    // Oracle: nearest sample by brute force over the target's terms.
    const auto tc = term_counts(tokenize(normalize_text(text)));
    std::vector<long long> t;
    std::vector<std::string> terms;
    for (const auto& [term, n] : tc.counts) {
      terms.push_back(term);
      t.push_back(n);
    }
    std::vector<oracle::Sample> os;
    for (const auto& s : corpus) {
      std::vector<long long> v;
      for (const auto& term : terms) v.push_back(s.counts.count_of(term));
      os.push_back({s.doc_id, std::string(to_string(s.label)), v});
    }
    EXPECT_EQ(oracle::classify(t, os, 1), to_string(label));
  }
}

TEST(ClassifyAll, ParallelMatchesSequentialOrder) {
  const std::vector<SampleDocument> corpus = {
      make_sample("h", "honest truth", ClassLabel::Honest),
      make_sample("l", "lazy nap", ClassLabel::Lazy),
  };
  const std::vector<std::string> texts = {"nap nap", "truth", "the", "lazy", "honest truth", "nap"};
  const auto seq = classify_all(texts, corpus, {50, 1}, default_stopwords(), 1);
  const auto par = classify_all(texts, corpus, {50, 1}, default_stopwords(), 4);
  EXPECT_EQ(seq, par);
  EXPECT_EQ(seq, (std::vector<ClassLabel>{ClassLabel::Lazy, ClassLabel::Honest, ClassLabel::Unclassifiable,
                                          ClassLabel::Lazy, ClassLabel::Honest, ClassLabel::Lazy}));
}

TEST(SampleCorpus, ReadValidatesLabels) {
  std::istringstream good(R"({"id":"a","label":"Honest","text":"truth"})"
                          "\n\n"
                          R"({"id":"b","label":"Eager_to_Learn","text":"books"})"
                          "\n");
  const auto corpus = read_sample_corpus(good);
  ASSERT_EQ(corpus.size(), 2u);
  EXPECT_EQ(corpus[1].label, ClassLabel::Eager_to_Learn);

  std::istringstream bad_label(R"({"id":"a","label":"Grumpy","text":"x"})");
  EXPECT_EQ(kind_of([&] { read_sample_corpus(bad_label); }), ErrorKind::Parse);
  std::istringstream sentinel(R"({"id":"a","label":"Unclassifiable","text":"x"})");
  EXPECT_EQ(kind_of([&] { read_sample_corpus(sentinel); }), ErrorKind::Parse);
  std::istringstream dup(R"({"id":"a","label":"Honest","text":"x"})"
                         "\n"
                         R"({"id":"a","label":"Lazy","text":"y"})");
  EXPECT_EQ(kind_of([&] { read_sample_corpus(dup); }), ErrorKind::Corpus);
  EXPECT_EQ(kind_of([] { load_sample_corpus("/nonexistent/corpus.jsonl"); }), ErrorKind::Input);
}

}  // namespace
}  // namespace profmine
