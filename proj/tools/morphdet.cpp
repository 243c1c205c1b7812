// Command-line front end: dataset validation, splits, feature
// extraction, detector training/evaluation, vulnerability runs, report
// rendering and the synthetic test corpus.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "morphdet/exp/config.hpp"
#include "morphdet/exp/detector.hpp"
#include "morphdet/exp/manifest.hpp"
#include "morphdet/exp/report.hpp"
#include "morphdet/exp/split.hpp"
#include "morphdet/exp/synth.hpp"
#include "morphdet/exp/vuln.hpp"
#include "morphdet/iqm/feature_io.hpp"
#include "morphdet/metrics/score_io.hpp"

namespace fs = std::filesystem;
using namespace morphdet;

namespace {

struct CommonFlags {
  std::string manifest_path;
  std::string split_path;
  std::string config_path;
  std::string out;
  std::string detector = "iqm-svm";
  double retained = -1.0;
  double svm_c = -1.0;
  int frames = -1;
  std::string quality;
};

DatasetManifest load_valid_manifest(const std::string& path) {
  DatasetManifest m = load_manifest(path);
  const auto errors = validate_manifest(m);
  if (!errors.empty()) {
    for (const auto& e : errors) {
      std::cerr << "manifest error [" << manifest_error_name(e.code)
                << "] " << e.detail << "\n";
    }
    throw std::runtime_error("manifest validation failed with " +
                             std::to_string(errors.size()) + " error(s)");
  }
  return m;
}

// Config file first, explicit flags on top.
ExperimentConfig resolve_config(const CommonFlags& flags, CLI::App* cmd) {
  ExperimentConfig cfg;
  if (!flags.config_path.empty()) cfg = load_config(flags.config_path);
  cfg.detector = detector_kind_from_string(flags.detector);
  if (cmd->count("--retained")) cfg.retained_variance = flags.retained;
  if (cmd->count("--svm-c")) cfg.svm_c = flags.svm_c;
  if (cmd->count("--frames")) cfg.frames_per_video = flags.frames;
  if (cmd->count("--quality")) cfg.quality = flags.quality;
  cfg.validate();
  return cfg;
}

std::string feature_file_stem(const std::string& subject,
                              const std::string& video) {
  return subject + "_" + video;
}

FeatureCache load_feature_cache(const DatasetManifest& manifest,
                                const std::string& dir) {
  FeatureCache cache;
  for (const auto& subject : manifest.subjects) {
    for (const auto& video : subject.videos) {
      const fs::path stem = fs::path(dir) / feature_file_stem(subject.id,
                                                              video.id);
      const fs::path bin = stem.string() + ".fbin";
      const fs::path csv = stem.string() + ".csv";
      if (fs::exists(bin)) {
        cache[subject.id + "/" + video.id] = read_feature_bin(bin.string());
      } else if (fs::exists(csv)) {
        cache[subject.id + "/" + video.id] = read_feature_csv(csv.string());
      } else {
        throw std::runtime_error("no feature file for " + subject.id + "/" +
                                 video.id + " under " + dir);
      }
    }
  }
  return cache;
}

void print_summary(const EvalSummary& s) {
  std::printf("eer            %.4f%%  (threshold %.6g)\n", 100.0 * s.eer,
              s.eer_threshold);
  std::printf("far/frr at eer %.4f%% / %.4f%%\n", 100.0 * s.far_at_threshold,
              100.0 * s.frr_at_threshold);
  std::printf("frr at far10%%  %.4f%%\n", 100.0 * s.frr_at_far10);
  if (s.attack_far) std::printf("attack far     %.4f%%\n", 100.0 * *s.attack_far);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deep-morph detection and face-verification vulnerability toolkit"};
  app.require_subcommand(1);
  CommonFlags flags;

  // validate-manifest
  auto* validate = app.add_subcommand("validate-manifest",
                                      "check a dataset manifest");
  validate->add_option("--manifest", flags.manifest_path)->required();

  // make-split
  std::uint64_t seed = 1;
  double test_fraction = 0.5;
  auto* split_cmd = app.add_subcommand("make-split",
                                       "subject-disjoint train/test split");
  split_cmd->add_option("--manifest", flags.manifest_path)->required();
  split_cmd->add_option("--seed", seed);
  split_cmd->add_option("--test-fraction", test_fraction);
  split_cmd->add_option("--out", flags.out)->required();

  // extract-features
  std::string feature_kind = "iqm";
  std::string feature_format = "csv";
  auto* extract = app.add_subcommand("extract-features",
                                     "per-frame pixel or IQM features");
  extract->add_option("--manifest", flags.manifest_path)->required();
  extract->add_option("--kind", feature_kind)
      ->check(CLI::IsMember({"iqm", "pixels"}));
  extract->add_option("--format", feature_format)
      ->check(CLI::IsMember({"csv", "bin"}));
  extract->add_option("--config", flags.config_path);
  extract->add_option("--out", flags.out)->required();

  // train-detector
  std::string model_path;
  std::string features_dir;
  auto* train = app.add_subcommand("train-detector",
                                   "fit a detector on the train split");
  train->add_option("--manifest", flags.manifest_path)->required();
  train->add_option("--split", flags.split_path)->required();
  train->add_option("--detector", flags.detector)
      ->check(CLI::IsMember({"pixels-pca-lda", "iqm-pca-lda", "iqm-svm"}));
  train->add_option("--config", flags.config_path);
  train->add_option("--retained", flags.retained);
  train->add_option("--svm-c", flags.svm_c);
  train->add_option("--frames", flags.frames);
  train->add_option("--quality", flags.quality)
      ->check(CLI::IsMember({"LQ", "HQ", "all"}));
  train->add_option("--features", features_dir);
  train->add_option("--out", flags.out)->required();

  // eval-detector
  std::string database_label = "synthetic";
  auto* eval_cmd = app.add_subcommand("eval-detector",
                                      "score the test split with a model");
  eval_cmd->add_option("--manifest", flags.manifest_path)->required();
  eval_cmd->add_option("--split", flags.split_path)->required();
  eval_cmd->add_option("--model", model_path)->required();
  eval_cmd->add_option("--detector", flags.detector)
      ->check(CLI::IsMember({"pixels-pca-lda", "iqm-pca-lda", "iqm-svm"}));
  eval_cmd->add_option("--config", flags.config_path);
  eval_cmd->add_option("--retained", flags.retained);
  eval_cmd->add_option("--svm-c", flags.svm_c);
  eval_cmd->add_option("--frames", flags.frames);
  eval_cmd->add_option("--quality", flags.quality)
      ->check(CLI::IsMember({"LQ", "HQ", "all"}));
  eval_cmd->add_option("--features", features_dir);
  eval_cmd->add_option("--database", database_label);
  eval_cmd->add_option("--out", flags.out)->required();

  // run-vuln
  int bins = 40;
  auto* vuln = app.add_subcommand("run-vuln",
                                  "licit/tampered verification protocols");
  vuln->add_option("--manifest", flags.manifest_path)->required();
  vuln->add_option("--bins", bins);
  vuln->add_option("--out", flags.out)->required();

  // report
  std::vector<std::string> summary_paths;
  auto* report = app.add_subcommand("report", "assemble the results table");
  report->add_option("--summary", summary_paths)->required();
  report->add_option("--out", flags.out)->required();

  // synth-corpus
  SynthParams synth;
  auto* synth_cmd = app.add_subcommand("synth-corpus",
                                       "generate the dataset-free corpus");
  synth_cmd->add_option("--subjects", synth.subjects);
  synth_cmd->add_option("--seed", synth.seed);
  synth_cmd->add_option("--frames", synth.frames_per_video);
  synth_cmd->add_option("--frame-size", synth.frame_size);
  synth_cmd->add_option("--probe-videos", synth.probe_videos);
  synth_cmd->add_option("--attack-videos", synth.attack_videos);
  synth_cmd->add_option("--embedding-dim", synth.embedding_dim);
  synth_cmd->add_option("--out", flags.out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      load_valid_manifest(flags.manifest_path);
      std::printf("manifest ok: %s\n", flags.manifest_path.c_str());
      return 0;
    }

    if (split_cmd->parsed()) {
      const DatasetManifest m = load_valid_manifest(flags.manifest_path);
      const SplitPlan plan = make_split(m, seed, test_fraction);
      save_split(plan, flags.out);
      std::printf("split: %zu train / %zu test subjects -> %s\n",
                  plan.train_subjects.size(), plan.test_subjects.size(),
                  flags.out.c_str());
      return 0;
    }

    if (extract->parsed()) {
      const DatasetManifest m = load_valid_manifest(flags.manifest_path);
      ExperimentConfig cfg;
      if (!flags.config_path.empty()) cfg = load_config(flags.config_path);
      cfg.detector = feature_kind == "pixels" ? DetectorKind::kPixelsPcaLda
                                              : DetectorKind::kIqmSvm;
      fs::create_directories(flags.out);
      long files = 0;
      for (const auto& subject : m.subjects) {
        for (const auto& video : subject.videos) {
          FeatureTable t;
          t.column_names = feature_kind == "iqm"
                               ? iqm_registry_names()
                               : std::vector<std::string>{};
          t.rows = video_features(m, subject, video, cfg.detector, cfg);
          if (feature_kind == "pixels") {
            for (std::size_t c = 0; c < t.rows[0].size(); ++c) {
              t.column_names.push_back("p" + std::to_string(c));
            }
          }
          for (std::size_t f = 0; f < t.rows.size(); ++f) {
            t.frame_ids.push_back(video.id + "/" + std::to_string(f));
          }
          const fs::path stem =
              fs::path(flags.out) / feature_file_stem(subject.id, video.id);
          if (feature_format == "bin") {
            write_feature_bin(t, stem.string() + ".fbin");
          } else {
            write_feature_csv(t, stem.string() + ".csv");
          }
          ++files;
        }
      }
      std::printf("extracted %s features for %ld videos -> %s\n",
                  feature_kind.c_str(), files, flags.out.c_str());
      return 0;
    }

    if (train->parsed()) {
      const DatasetManifest m = load_valid_manifest(flags.manifest_path);
      const SplitPlan plan = load_split(flags.split_path);
      const ExperimentConfig cfg = resolve_config(flags, train);
      FeatureCache cache;
      const FeatureCache* cache_ptr = nullptr;
      if (!features_dir.empty()) {
        cache = load_feature_cache(m, features_dir);
        cache_ptr = &cache;
      }
      const DetectorRunResult run =
          run_detector_experiment(cfg, m, plan, cache_ptr);
      save_detector(run.model, flags.out);
      std::printf("trained %s on %ld original + %ld morph frames (%zu train subjects)\n",
                  detector_kind_to_string(cfg.detector).c_str(),
                  run.train_original_frames, run.train_morph_frames,
                  run.train_subjects_used.size());
      print_summary(run.summary);
      std::printf("model -> %s\n", flags.out.c_str());
      return 0;
    }

    if (eval_cmd->parsed()) {
      const DatasetManifest m = load_valid_manifest(flags.manifest_path);
      const SplitPlan plan = load_split(flags.split_path);
      const DetectorModel model = load_detector(model_path);
      flags.detector = detector_kind_to_string(model.kind);
      const ExperimentConfig cfg = resolve_config(flags, eval_cmd);
      FeatureCache cache;
      const FeatureCache* cache_ptr = nullptr;
      if (!features_dir.empty()) {
        cache = load_feature_cache(m, features_dir);
        cache_ptr = &cache;
      }
      const DetectorRunResult run =
          eval_detector(cfg, m, plan, model, cache_ptr);
      fs::create_directories(flags.out);
      const std::string label = detector_kind_to_string(model.kind);
      write_score_file(run.test_scores,
                       (fs::path(flags.out) / (label + ".scores")).string());
      write_summary_json(run.summary, database_label, label,
                         (fs::path(flags.out) / (label + "_summary.json"))
                             .string());
      print_summary(run.summary);
      std::printf("scores + summary -> %s\n", flags.out.c_str());
      return 0;
    }

    if (vuln->parsed()) {
      const DatasetManifest m = load_valid_manifest(flags.manifest_path);
      const VulnRunResult r = run_vulnerability_experiment(m, bins);
      write_vuln_outputs(r, flags.out);
      print_summary(r.summary);
      std::printf("vulnerability outputs -> %s\n", flags.out.c_str());
      return 0;
    }

    if (report->parsed()) {
      std::vector<ReportRow> rows;
      for (const auto& p : summary_paths) {
        rows.push_back(read_summary_json(p));
      }
      fs::create_directories(flags.out);
      const std::string csv =
          (fs::path(flags.out) / "results.csv").string();
      write_report_csv(rows, csv);
      std::printf("report table (%zu rows) -> %s\n", rows.size(), csv.c_str());
      return 0;
    }

    if (synth_cmd->parsed()) {
      const DatasetManifest m = generate_synth_corpus(synth, flags.out);
      long videos = 0;
      for (const auto& s : m.subjects) videos += static_cast<long>(s.videos.size());
      std::printf("synthetic corpus: %zu subjects, %ld videos -> %s\n",
                  m.subjects.size(), videos, flags.out.c_str());
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
