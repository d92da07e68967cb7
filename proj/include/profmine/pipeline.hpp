#ifndef PROFMINE_PIPELINE_HPP
#define PROFMINE_PIPELINE_HPP

// Stage functions and the end-to-end run.
//
// Output tree of run_pipeline(config):
//   <out>/stages/profiles.jsonl     accepted corpus
//   <out>/stages/rejections.json    rejection report
//   <out>/stages/classified.jsonl   + about_me_class
//   <out>/stages/binned.jsonl       + age, age_range and the three bins
//   <out>/dataset.arff
//   <out>/reports/<run-id>/{tables/*.csv, charts/*.svg, manifest.json}
//   <out>/summary.json
// A failing run leaves whatever was written plus <out>/FAILED.

#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "profmine/arff.hpp"
#include "profmine/binning.hpp"
#include "profmine/date.hpp"
#include "profmine/error.hpp"
#include "profmine/ingest.hpp"
#include "profmine/knn.hpp"
#include "profmine/profile.hpp"
#include "profmine/report.hpp"
#include "profmine/textprep.hpp"

namespace profmine {

namespace fs = std::filesystem;

struct RunConfig {
  std::string input_path;
  std::string corpus_path;
  std::optional<std::string> stopword_path;
  int n_features = kDefaultFeatureCount;
  int k = kDefaultK;
  Date reference_date{};
  std::string output_dir;
  GapPolicy gap_policy = GapPolicy::FiveIsLow;
  std::string run_id = "default";
  unsigned threads = 0;  ///< 0 = hardware concurrency
};

inline void validate_config(const RunConfig& c) {
  if (c.input_path.empty()) throw Error(ErrorKind::Parameter, "input path is empty");
  if (c.corpus_path.empty()) throw Error(ErrorKind::Parameter, "corpus path is empty");
  if (c.output_dir.empty()) throw Error(ErrorKind::Parameter, "output directory is empty");
  if (c.stopword_path && c.stopword_path->empty()) throw Error(ErrorKind::Parameter, "stopword path is empty");
  if (c.n_features < 1) throw Error(ErrorKind::Parameter, "feature count must be >= 1");
  if (c.k < 1) throw Error(ErrorKind::Parameter, "k must be >= 1");
  if (!c.reference_date.ok()) throw Error(ErrorKind::Parameter, "reference date is invalid");
  if (c.run_id.empty() || c.run_id.find_first_of("/\\") != std::string::npos || c.run_id == "." ||
      c.run_id == "..") {
    throw Error(ErrorKind::Parameter, "run id must be a plain directory name");
  }
}

struct RunSummary {
  std::size_t ingested = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t classified = 0;
  std::size_t unclassifiable = 0;
  std::vector<std::string> artifacts;  ///< paths relative to the output dir
};

// ---------------------------------------------------------------------------
// File helpers

/// Writes via a sibling temporary file and a rename.
inline void write_file_atomic(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::Storage, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error(ErrorKind::Storage, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::Storage, "cannot rename " + tmp.string() + ": " + ec.message());
}

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Storage, "cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void persist_profiles(std::span<const Profile> profiles, const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  persist_corpus(profiles, path);
}

// ---------------------------------------------------------------------------
// In-memory stages

/// Sets about_me_class on every profile, preserving order.
inline std::vector<Profile> classify_profiles(std::vector<Profile> profiles,
                                              std::span<const SampleDocument> corpus,
                                              const ClassifyOptions& opts, const StopwordList& stops,
                                              unsigned threads = 0) {
  if (corpus.empty()) throw Error(ErrorKind::Corpus, "empty sample corpus");
  if (opts.k < 1 || static_cast<std::size_t>(opts.k) > corpus.size()) {
    throw Error(ErrorKind::Parameter, "k=" + std::to_string(opts.k) + " outside [1, " +
                                          std::to_string(corpus.size()) + "]");
  }
  std::vector<std::string> texts;
  texts.reserve(profiles.size());
  for (const auto& p : profiles) texts.push_back(p.about_me);
  const auto labels = classify_all(texts, corpus, opts, stops, threads);
  for (std::size_t i = 0; i < profiles.size(); ++i) profiles[i].about_me_class = labels[i];
  return profiles;
}

/// Derives age, age range and the three bins for every profile.
inline std::vector<Profile> bin_profiles(std::vector<Profile> profiles, const Date& reference,
                                         GapPolicy policy) {
  for (auto& p : profiles) {
    try {
      p.age = age_from_birthday(p.birthday, reference);
      p.age_range = age_range(p.age);
      p.wall_count_class = bin_wall_count(p.wall_count);
      p.music_share_class = bin_music_share(p.music_count, policy);
      p.activity_interest_class = bin_activities_interests(p.activity_interest_count, policy);
    } catch (const Error& e) {
      throw Error(e.kind(), "record " + p.record_id + ": " + e.what());
    }
  }
  return profiles;
}

// ---------------------------------------------------------------------------
// Reports

struct ReportOutput {
  nlohmann::ordered_json manifest;
  std::vector<std::string> files;  ///< relative to the report directory
};

/// Writes every table, chart and the manifest under report_dir.
inline ReportOutput write_reports(std::span<const Profile> profiles, const fs::path& report_dir,
                                  const std::string& run_id) {
  ReportOutput out;
  out.manifest["run_id"] = run_id;
  out.manifest["profiles"] = profiles.size();
  auto& artifacts = out.manifest["artifacts"] = nlohmann::ordered_json::array();

  auto emit = [&](const std::string& rel, const std::string& content, nlohmann::ordered_json entry) {
    write_file_atomic(report_dir / rel, content);
    entry["path"] = rel;
    artifacts.push_back(std::move(entry));
    out.files.push_back(rel);
  };

  for (auto group_by : kAllGroupBys) {
    for (auto measure : kAllMeasures) {
      const auto dists = aggregate(profiles, group_by, measure);
      const auto groups = group_values(group_by);
      for (std::size_t g = 0; g < dists.size(); ++g) {
        const auto& d = dists[g];
        const auto stem = std::string(to_string(group_by)) + "__" + groups[g] + "__" + d.dimension;
        nlohmann::ordered_json entry{{"type", "table"},
                                     {"group_by", to_string(group_by)},
                                     {"filter", d.population},
                                     {"measure", d.dimension},
                                     {"population", d.total()}};
        emit("tables/" + stem + ".csv", emit_table(d), entry);

        const auto kind = group_by == GroupBy::AgeRange ? ChartKind::Pie : ChartKind::Line;
        entry["type"] = "chart";
        entry["chart"] = kind == ChartKind::Pie ? "pie" : "line";
        if (kind == ChartKind::Pie && d.total() == 0) {
          entry["path"] = nullptr;
          entry["skipped"] = "empty population";
          artifacts.push_back(std::move(entry));
          continue;
        }
        emit("charts/" + stem + ".svg", emit_chart(d, kind), entry);
      }
    }
  }

  for (auto measure : kAllMeasures) {
    const auto dists = aggregate(profiles, GroupBy::Gender, measure);
    const auto cmp = compare(find_group(dists, GroupBy::Gender, "Male"),
                             find_group(dists, GroupBy::Gender, "Female"), "Male", "Female");
    const auto stem = "gender__Male_vs_Female__" + std::string(to_string(measure));
    nlohmann::ordered_json entry{{"type", "comparison_table"},
                                 {"group_by", "gender"},
                                 {"filter", "gender=Male | gender=Female"},
                                 {"measure", to_string(measure)}};
    emit("tables/" + stem + ".csv", emit_table(cmp), entry);
    entry["type"] = "comparison_chart";
    entry["chart"] = "line";
    emit("charts/" + stem + ".svg", emit_chart(cmp), entry);
  }

  write_file_atomic(report_dir / "manifest.json", out.manifest.dump(2) + "\n");
  out.files.push_back("manifest.json");
  return out;
}

// ---------------------------------------------------------------------------
// Persisted stages, each reading the previous stage's file

inline RejectionReport stage_ingest(const fs::path& input, const fs::path& profiles_out,
                                    const fs::path& rejections_out) {
  std::ifstream in(input, std::ios::binary);
  if (!in) throw Error(ErrorKind::Input, "cannot open input " + input.string());
  auto result = ingest(in);
  persist_profiles(result.profiles, profiles_out);
  write_file_atomic(rejections_out, rejection_report_to_json(result.report).dump(2) + "\n");
  return result.report;
}

inline StopwordList resolve_stopwords(const std::optional<std::string>& path) {
  return path ? load_stopwords(*path) : default_stopwords();
}

inline std::vector<Profile> stage_classify(const fs::path& profiles_in, const fs::path& corpus_path,
                                           const std::optional<std::string>& stopword_path,
                                           const ClassifyOptions& opts, const fs::path& out,
                                           unsigned threads = 0) {
  const auto stops = resolve_stopwords(stopword_path);
  const auto corpus = load_sample_corpus(corpus_path.string(), stops);
  auto profiles = classify_profiles(load_corpus(profiles_in), corpus, opts, stops, threads);
  persist_profiles(profiles, out);
  return profiles;
}

inline std::vector<Profile> stage_bin(const fs::path& in, const Date& reference, GapPolicy policy,
                                      const fs::path& out) {
  auto profiles = bin_profiles(load_corpus(in), reference, policy);
  persist_profiles(profiles, out);
  return profiles;
}

inline void stage_arff(const fs::path& in, const fs::path& out) {
  write_file_atomic(out, arff::emit(arff::build_dataset(load_corpus(in))));
}

inline ReportOutput stage_report(const fs::path& in, const fs::path& report_dir, const std::string& run_id) {
  return write_reports(load_corpus(in), report_dir, run_id);
}

// ---------------------------------------------------------------------------
// End to end

inline nlohmann::ordered_json summary_to_json(const RunSummary& s) {
  nlohmann::ordered_json obj;
  obj["ingested"] = s.ingested;
  obj["accepted"] = s.accepted;
  obj["rejected"] = s.rejected;
  obj["classified"] = s.classified;
  obj["unclassifiable"] = s.unclassifiable;
  obj["artifacts"] = s.artifacts;
  return obj;
}

inline RunSummary run_pipeline(const RunConfig& config) {
  validate_config(config);
  const fs::path out_dir = config.output_dir;
  fs::create_directories(out_dir);
  const fs::path failed_marker = out_dir / "FAILED";
  fs::remove(failed_marker);

  try {
    RunSummary summary;
    const auto stages = out_dir / "stages";
    const auto report = stage_ingest(config.input_path, stages / "profiles.jsonl", stages / "rejections.json");
    summary.accepted = report.accepted_count;
    summary.rejected = report.rejected_count;
    summary.ingested = summary.accepted + summary.rejected;

    const auto classified = stage_classify(stages / "profiles.jsonl", config.corpus_path, config.stopword_path,
                                           {config.n_features, config.k}, stages / "classified.jsonl",
                                           config.threads);
    for (const auto& p : classified) {
      if (p.about_me_class == ClassLabel::Unclassifiable) {
        ++summary.unclassifiable;
      } else {
        ++summary.classified;
      }
    }

    stage_bin(stages / "classified.jsonl", config.reference_date, config.gap_policy, stages / "binned.jsonl");
    stage_arff(stages / "binned.jsonl", out_dir / "dataset.arff");
    const auto reports_rel = fs::path("reports") / config.run_id;
    const auto reports = stage_report(stages / "binned.jsonl", out_dir / reports_rel, config.run_id);

    summary.artifacts = {"stages/profiles.jsonl", "stages/rejections.json", "stages/classified.jsonl",
                         "stages/binned.jsonl", "dataset.arff"};
    for (const auto& f : reports.files) summary.artifacts.push_back((reports_rel / f).generic_string());
    summary.artifacts.push_back("summary.json");
    write_file_atomic(out_dir / "summary.json", summary_to_json(summary).dump(2) + "\n");
    return summary;
  } catch (const std::exception& e) {
    std::ofstream marker(failed_marker, std::ios::binary | std::ios::trunc);
    marker << e.what() << '\n';
    throw;
  }
}

}  // namespace profmine

#endif  // PROFMINE_PIPELINE_HPP
