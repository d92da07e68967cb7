// profmine: command-line front end for the profile mining pipeline.
//
//   profmine run --input in.jsonl --corpus corpus.jsonl --ref-date 2012-01-01 --out out/
//   profmine ingest|classify|bin|arff|report ...   individual stages
//   profmine gen-corpus|gen-profiles ...           seeded synthetic fixtures

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "profmine/profmine.hpp"

namespace {

using namespace profmine;

Date parse_date_option(const std::string& text) {
  auto date = parse_iso_date(text);
  if (!date) throw Error(ErrorKind::Parameter, "reference date must be YYYY-MM-DD, got '" + text + "'");
  return *date;
}

GapPolicy parse_policy_option(const std::string& text) {
  auto policy = parse_gap_policy(text);
  if (!policy) throw Error(ErrorKind::Parameter, "unknown gap policy '" + text + "'");
  return *policy;
}

std::optional<std::string> optional_path(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Profile mining pipeline: ingest, classify, bin, ARFF export and reports"};
  app.require_subcommand(1);

  // run
  RunConfig run_cfg;
  std::string run_stopwords, run_ref_date, run_policy = "five_is_low";
  auto* run = app.add_subcommand("run", "Run every stage end to end");
  run->add_option("--input", run_cfg.input_path, "Line-delimited raw profiles")->required();
  run->add_option("--corpus", run_cfg.corpus_path, "Pre-classified sample corpus")->required();
  run->add_option("--stopwords", run_stopwords, "Stopword file (default: built-in list)");
  run->add_option("--features", run_cfg.n_features, "Number of selected features")
      ->default_val(kDefaultFeatureCount)
      ->check(CLI::PositiveNumber);
  run->add_option("--k", run_cfg.k, "Neighbours per vote")->default_val(kDefaultK)->check(CLI::PositiveNumber);
  run->add_option("--ref-date", run_ref_date, "Reference date for ages, YYYY-MM-DD")->required();
  run->add_option("--out", run_cfg.output_dir, "Output directory")->required();
  run->add_option("--gap-policy", run_policy, "five_is_low | five_is_medium")
      ->check(CLI::IsMember({"five_is_low", "five_is_medium"}));
  run->add_option("--run-id", run_cfg.run_id, "Report directory name")->default_val("default");
  run->add_option("--threads", run_cfg.threads, "Classifier threads (0 = all cores)")->default_val(0);

  // ingest
  std::string ing_input, ing_out, ing_rejections;
  auto* ing = app.add_subcommand("ingest", "Validate raw profiles and persist the accepted corpus");
  ing->add_option("--input", ing_input)->required();
  ing->add_option("--out", ing_out, "Accepted corpus (JSON lines)")->required();
  ing->add_option("--rejections", ing_rejections, "Rejection report (JSON)")->required();

  // classify
  std::string cls_input, cls_corpus, cls_stopwords, cls_out;
  ClassifyOptions cls_opts;
  unsigned cls_threads = 0;
  auto* cls = app.add_subcommand("classify", "Assign about_me class labels by k-NN");
  cls->add_option("--input", cls_input, "Accepted corpus from 'ingest'")->required();
  cls->add_option("--corpus", cls_corpus)->required();
  cls->add_option("--stopwords", cls_stopwords);
  cls->add_option("--features", cls_opts.n_features)->default_val(kDefaultFeatureCount)->check(CLI::PositiveNumber);
  cls->add_option("--k", cls_opts.k)->default_val(kDefaultK)->check(CLI::PositiveNumber);
  cls->add_option("--threads", cls_threads)->default_val(0);
  cls->add_option("--out", cls_out)->required();

  // bin
  std::string bin_input, bin_ref_date, bin_out, bin_policy = "five_is_low";
  auto* bin = app.add_subcommand("bin", "Derive age ranges and count classes");
  bin->add_option("--input", bin_input, "Classified corpus from 'classify'")->required();
  bin->add_option("--ref-date", bin_ref_date)->required();
  bin->add_option("--gap-policy", bin_policy)->check(CLI::IsMember({"five_is_low", "five_is_medium"}));
  bin->add_option("--out", bin_out)->required();

  // arff
  std::string arff_input, arff_out;
  auto* arff_cmd = app.add_subcommand("arff", "Write the ARFF dataset");
  arff_cmd->add_option("--input", arff_input, "Binned corpus from 'bin'")->required();
  arff_cmd->add_option("--out", arff_out)->required();

  // report
  std::string rep_input, rep_out, rep_run_id = "default";
  auto* rep = app.add_subcommand("report", "Write distribution tables, charts and manifest");
  rep->add_option("--input", rep_input, "Binned corpus from 'bin'")->required();
  rep->add_option("--out", rep_out, "Reports root; files go to <out>/<run-id>/")->required();
  rep->add_option("--run-id", rep_run_id);

  // generators
  std::size_t gen_docs = 60;
  std::uint64_t gen_seed = 20111;
  std::string gen_out;
  auto* gen_corpus = app.add_subcommand("gen-corpus", "Write a seeded synthetic sample corpus");
  gen_corpus->add_option("--docs-per-class", gen_docs)->default_val(60);
  gen_corpus->add_option("--seed", gen_seed)->default_val(20111);
  gen_corpus->add_option("--out", gen_out)->required();

  std::size_t gen_count = 1340;
  std::uint64_t gen_pseed = 1753;
  std::string gen_pout;
  auto* gen_profiles = app.add_subcommand("gen-profiles", "Write seeded synthetic raw profiles");
  gen_profiles->add_option("--count", gen_count)->default_val(1340);
  gen_profiles->add_option("--seed", gen_pseed)->default_val(1753);
  gen_profiles->add_option("--out", gen_pout)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      run_cfg.stopword_path = optional_path(run_stopwords);
      run_cfg.reference_date = parse_date_option(run_ref_date);
      run_cfg.gap_policy = parse_policy_option(run_policy);
      const auto summary = run_pipeline(run_cfg);
      std::cout << summary_to_json(summary).dump(2) << '\n';
    } else if (ing->parsed()) {
      const auto report = stage_ingest(ing_input, ing_out, ing_rejections);
      std::cout << "accepted " << report.accepted_count << ", rejected " << report.rejected_count << '\n';
    } else if (cls->parsed()) {
      const auto profiles =
          stage_classify(cls_input, cls_corpus, optional_path(cls_stopwords), cls_opts, cls_out, cls_threads);
      std::cout << "classified " << profiles.size() << " profiles\n";
    } else if (bin->parsed()) {
      const auto profiles =
          stage_bin(bin_input, parse_date_option(bin_ref_date), parse_policy_option(bin_policy), bin_out);
      std::cout << "binned " << profiles.size() << " profiles\n";
    } else if (arff_cmd->parsed()) {
      stage_arff(arff_input, arff_out);
    } else if (rep->parsed()) {
      const auto out = stage_report(rep_input, std::filesystem::path(rep_out) / rep_run_id, rep_run_id);
      std::cout << "wrote " << out.files.size() << " report files\n";
    } else if (gen_corpus->parsed()) {
      const auto corpus = synthetic::generate_corpus(gen_docs, gen_seed);
      std::ostringstream text;
      write_sample_corpus(text, corpus);
      write_file_atomic(gen_out, text.str());
    } else if (gen_profiles->parsed()) {
      std::string text;
      for (const auto& obj : synthetic::generate_profiles(gen_count, gen_pseed)) text += obj.dump() + "\n";
      write_file_atomic(gen_pout, text);
    }
  } catch (const std::exception& e) {
    std::cerr << "profmine: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
