#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "profmine/report.hpp"

namespace profmine {
namespace {

Profile make(std::string id, AgeRange range, Gender g, ClassLabel label, WallCountClass wall, ShareClass music,
             ShareClass ai) {
  Profile p;
  p.record_id = std::move(id);
  p.about_me = "x";
  p.gender = g;
  p.age_range = range;
  p.about_me_class = label;
  p.wall_count_class = wall;
  p.music_share_class = music;
  p.activity_interest_class = ai;
  return p;
}

std::vector<Profile> ten_profiles() {
  using A = AgeRange;
  using C = ClassLabel;
  using W = WallCountClass;
  using S = ShareClass;
  return {
      make("p01", A::UpTo19, Gender::Female, C::Honest, W::Low, S::Low, S::Low),
      make("p02", A::UpTo19, Gender::Male, C::Honest, W::VeryLow, S::Medium, S::Low),
      make("p03", A::UpTo19, Gender::Female, C::Friendly, W::High, S::High, S::Medium),
      make("p04", A::From20To32, Gender::Male, C::Eager_to_Learn, W::Low, S::Low, S::Low),
      make("p05", A::From20To32, Gender::Male, C::Honest, W::Medium, S::Low, S::High),
      make("p06", A::From20To32, Gender::Unspecified, C::Unclassifiable, W::VeryHigh, S::Medium, S::Low),
      make("p07", A::From33To45, Gender::Female, C::Eager_to_Learn, W::Low, S::Low, S::Medium),
      make("p08", A::Over45, Gender::Female, C::Honest, W::VeryLow, S::Low, S::Low),
      make("p09", A::Hidden, Gender::Male, C::Friendly, W::Low, S::High, S::Low),
      make("p10", A::Hidden, Gender::Female, C::Honest, W::Medium, S::Medium, S::Medium),
  };
}

TEST(Aggregate, HandTallyByAgeRange) {
  const auto profiles = ten_profiles();
  const auto dists = aggregate(profiles, GroupBy::AgeRange, Measure::AboutMeClass);
  ASSERT_EQ(dists.size(), kAllAgeRanges.size());
  const auto& teens = find_group(dists, GroupBy::AgeRange, "UpTo19");
  EXPECT_EQ(teens.population, "age_range=UpTo19");
  EXPECT_EQ(teens.dimension, "about_me_class");
  EXPECT_EQ(teens.total(), 3);
  EXPECT_EQ(teens.count_of("Honest"), 2);
  EXPECT_EQ(teens.count_of("Friendly"), 1);
  const auto& twenties = find_group(dists, GroupBy::AgeRange, "From20To32");
  EXPECT_EQ(twenties.count_of("Eager_to_Learn"), 1);
  EXPECT_EQ(twenties.count_of("Honest"), 1);
  EXPECT_EQ(twenties.count_of("Unclassifiable"), 1);
  EXPECT_EQ(find_group(dists, GroupBy::AgeRange, "Hidden").total(), 2);
  EXPECT_EQ(find_group(dists, GroupBy::AgeRange, "Over45").count_of("Honest"), 1);
  ASSERT_EQ(teens.buckets.size(), kAllClassLabels.size());
  EXPECT_EQ(teens.buckets.front().first, "Aggressive");
}

TEST(Aggregate, HandTallyByGender) {
  const auto profiles = ten_profiles();
  const auto wall = aggregate(profiles, GroupBy::Gender, Measure::WallCountClass);
  const auto& female = find_group(wall, GroupBy::Gender, "Female");
  const std::vector<std::pair<std::string, std::int64_t>> expected_female = {
      {"VeryLow", 1}, {"Low", 2}, {"Medium", 1}, {"High", 1}, {"VeryHigh", 0}};
  EXPECT_EQ(female.buckets, expected_female);
  const auto& male = find_group(wall, GroupBy::Gender, "Male");
  const std::vector<std::pair<std::string, std::int64_t>> expected_male = {
      {"VeryLow", 1}, {"Low", 2}, {"Medium", 1}, {"High", 0}, {"VeryHigh", 0}};
  EXPECT_EQ(male.buckets, expected_male);
  EXPECT_EQ(find_group(wall, GroupBy::Gender, "Unspecified").count_of("VeryHigh"), 1);

  const auto music = aggregate(profiles, GroupBy::Gender, Measure::MusicShareClass);
  EXPECT_EQ(find_group(music, GroupBy::Gender, "Female").count_of("Low"), 3);
  EXPECT_EQ(find_group(music, GroupBy::Gender, "Male").count_of("High"), 1);
}

TEST(Aggregate, EmptyInputGivesZeroCountsForEveryGroup) {
  for (auto g : kAllGroupBys) {
    for (auto m : kAllMeasures) {
      const auto dists = aggregate(std::vector<Profile>{}, g, m);
      EXPECT_EQ(dists.size(), group_values(g).size());
      for (const auto& d : dists) {
        EXPECT_EQ(d.total(), 0);
        EXPECT_EQ(d.buckets.size(), bucket_names(m).size());
      }
    }
  }
}

TEST(Aggregate, MissingDerivedFieldIsReportError) {
  auto profiles = ten_profiles();
  profiles[4].music_share_class.reset();
  try {
    aggregate(profiles, GroupBy::Gender, Measure::MusicShareClass);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Report);
    EXPECT_NE(std::string(e.what()).find("p05"), std::string::npos);
  }
  EXPECT_NO_THROW(aggregate(profiles, GroupBy::Gender, Measure::WallCountClass));
}

std::vector<Profile> random_profiles(std::mt19937_64& rng, std::size_t n) {
  std::vector<Profile> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(make("r" + std::to_string(i), kAllAgeRanges[rng() % kAllAgeRanges.size()],
                       kAllGenders[rng() % kAllGenders.size()], kAllClassLabels[rng() % kAllClassLabels.size()],
                       kAllWallCountClasses[rng() % kAllWallCountClasses.size()],
                       kAllShareClasses[rng() % kAllShareClasses.size()],
                       kAllShareClasses[rng() % kAllShareClasses.size()]));
  }
  return out;
}

TEST(Aggregate, ConservesCountsAndIgnoresOrder) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    auto profiles = random_profiles(rng, rng() % 200);
    for (auto g : kAllGroupBys) {
      for (auto m : kAllMeasures) {
        const auto dists = aggregate(profiles, g, m);
        const auto sum = std::accumulate(dists.begin(), dists.end(), std::int64_t{0},
                                         [](std::int64_t acc, const Distribution& d) { return acc + d.total(); });
        EXPECT_EQ(sum, static_cast<std::int64_t>(profiles.size()));
        auto shuffled = profiles;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        EXPECT_EQ(aggregate(shuffled, g, m), dists);
      }
    }
  }
}

TEST(Compare, PairsBucketsInOrder) {
  const auto dists = aggregate(ten_profiles(), GroupBy::Gender, Measure::WallCountClass);
  const auto c = compare(find_group(dists, GroupBy::Gender, "Male"), find_group(dists, GroupBy::Gender, "Female"),
                         "Male", "Female");
  EXPECT_EQ(emit_table(c),
            "bucket,Male,Female\nVeryLow,1,1\nLow,2,2\nMedium,1,1\nHigh,0,1\nVeryHigh,0,0\n");
}

TEST(Compare, BucketMismatchIsReportError) {
  const Distribution a{"m", "g=a", {{"x", 1}, {"y", 2}}};
  const Distribution b{"m", "g=b", {{"x", 1}, {"z", 2}}};
  const Distribution c{"other", "g=c", {{"x", 1}, {"y", 2}}};
  const Distribution d{"m", "g=d", {{"x", 1}}};
  for (const auto* right : {&b, &c, &d}) {
    try {
      compare(a, *right, "a", "b");
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Report);
    }
  }
}

// Minimal CSV reader for the table round trip; tables never quote here.
std::vector<std::vector<std::string>> split_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

TEST(EmitTable, RecoversCountsAndPercentages) {
  std::mt19937_64 rng(5);
  const auto profiles = random_profiles(rng, 137);
  for (const auto& d : aggregate(profiles, GroupBy::AgeRange, Measure::AboutMeClass)) {
    const auto rows = split_csv(emit_table(d));
    ASSERT_EQ(rows.size(), d.buckets.size() + 1);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"bucket", "count", "percent"}));
    double percent_sum = 0.0;
    for (std::size_t i = 0; i < d.buckets.size(); ++i) {
      ASSERT_EQ(rows[i + 1].size(), 3u);
      EXPECT_EQ(rows[i + 1][0], d.buckets[i].first);
      EXPECT_EQ(std::stoll(rows[i + 1][1]), d.buckets[i].second);
      const double pct = std::stod(rows[i + 1][2]);
      EXPECT_NEAR(pct, 100.0 * static_cast<double>(d.buckets[i].second) / static_cast<double>(d.total()), 5e-5);
      percent_sum += pct;
    }
    if (d.total() > 0) {
      EXPECT_NEAR(percent_sum, 100.0, 1e-3);
    }
  }
}

TEST(EmitTable, ZeroPopulationHasZeroPercent) {
  const Distribution d{"m", "g=a", {{"x", 0}, {"y", 0}}};
  EXPECT_EQ(emit_table(d), "bucket,count,percent\nx,0,0.0000\ny,0,0.0000\n");
}

TEST(PieSlices, Geometry) {
  const auto one = pie_slices({"m", "p", {{"A", 7}}});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_DOUBLE_EQ(one[0].sweep_deg, 360.0);

  const auto halves = pie_slices({"m", "p", {{"A", 2}, {"B", 2}}});
  EXPECT_DOUBLE_EQ(halves[0].sweep_deg, 180.0);
  EXPECT_DOUBLE_EQ(halves[1].sweep_deg, 180.0);
  EXPECT_DOUBLE_EQ(halves[1].start_deg, 180.0);

  const auto quarter = pie_slices({"m", "p", {{"A", 1}, {"B", 3}}});
  EXPECT_DOUBLE_EQ(quarter[0].sweep_deg, 90.0);
  EXPECT_DOUBLE_EQ(quarter[1].sweep_deg, 270.0);
}

TEST(PieSlices, SweepsSumToFullCircle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    Distribution d{"m", "p", {}};
    for (std::size_t i = 0, n = 1 + rng() % 11; i < n; ++i) {
      d.buckets.emplace_back("b" + std::to_string(i), static_cast<std::int64_t>(rng() % 50));
    }
    if (d.total() == 0) d.buckets[0].second = 1;
    double sum = 0.0;
    for (const auto& s : pie_slices(d)) sum += s.sweep_deg;
    EXPECT_NEAR(sum, 360.0, 1e-6);
  }
}

TEST(PieSlices, AllZeroIsChartError) {
  try {
    pie_slices({"m", "p", {{"A", 0}, {"B", 0}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Chart);
  }
  EXPECT_THROW(emit_chart(Distribution{"m", "p", {{"A", 0}}}, ChartKind::Pie), Error);
}

TEST(EmitChart, PieSvgCarriesSliceDegrees) {
  const auto svg = emit_chart(Distribution{"about_me_class", "age_range=UpTo19", {{"A", 1}, {"B", 3}}},
                              ChartKind::Pie);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("data-bucket=\"A\" data-degrees=\"90.000000\""), std::string::npos);
  EXPECT_NE(svg.find("data-bucket=\"B\" data-degrees=\"270.000000\""), std::string::npos);
  EXPECT_NE(svg.find("age_range=UpTo19"), std::string::npos);
  EXPECT_EQ(svg.substr(svg.size() - 7), "</svg>\n");
}

TEST(EmitChart, SingleBucketPieIsFullCircle) {
  const auto svg = emit_chart(Distribution{"m", "p", {{"A", 0}, {"B", 4}}}, ChartKind::Pie);
  EXPECT_NE(svg.find("<circle"), std::string::npos);
  EXPECT_EQ(svg.find("<path"), std::string::npos);
}

TEST(EmitChart, LineChartLabelsEveryBucketAndSeries) {
  const auto dists = aggregate(ten_profiles(), GroupBy::Gender, Measure::AboutMeClass);
  const auto c = compare(find_group(dists, GroupBy::Gender, "Male"), find_group(dists, GroupBy::Gender, "Female"),
                         "Male", "Female");
  const auto svg = emit_chart(c);
  for (const auto& name : bucket_names(Measure::AboutMeClass)) {
    EXPECT_NE(svg.find(">" + name + "</text>"), std::string::npos) << name;
  }
  EXPECT_NE(svg.find(">Male</text>"), std::string::npos);
  EXPECT_NE(svg.find(">Female</text>"), std::string::npos);
  std::size_t polylines = 0;
  for (auto pos = svg.find("<polyline"); pos != std::string::npos; pos = svg.find("<polyline", pos + 1)) ++polylines;
  EXPECT_EQ(polylines, 2u);

  const auto single = emit_chart(find_group(dists, GroupBy::Gender, "Unspecified"), ChartKind::Line);
  EXPECT_NE(single.find("gender=Unspecified"), std::string::npos);
}

TEST(EmitChart, LineChartOfEmptyPopulationIsValid) {
  const auto svg = emit_chart(Distribution{"m", "p", {{"A", 0}, {"B", 0}}}, ChartKind::Line);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
}

}  // namespace
}  // namespace profmine
