#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <set>

#include "morphdet/exp/config.hpp"
#include "morphdet/exp/detector.hpp"
#include "morphdet/exp/manifest.hpp"
#include "morphdet/exp/report.hpp"
#include "morphdet/exp/split.hpp"
#include "morphdet/exp/synth.hpp"
#include "morphdet/exp/vuln.hpp"
#include "morphdet/iqm/feature_io.hpp"
#include "morphdet/raster/netpbm.hpp"
#include "oracles.hpp"

using namespace morphdet;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
}

DatasetManifest tiny_manifest(const fs::path& dir) {
  // two subjects, one enroll + one probe video each, one attack
  DatasetManifest m;
  m.base_dir = dir.string();
  for (int s = 0; s < 2; ++s) {
    SubjectEntry subject;
    subject.id = "s" + std::to_string(s);
    for (int v = 0; v < 2; ++v) {
      VideoEntry video;
      video.id = "v" + std::to_string(v);
      video.role = v == 0 ? VideoRole::kEnroll : VideoRole::kProbe;
      for (int f = 0; f < 3; ++f) {
        const std::string rel = subject.id + "_" + video.id + "_" +
                                std::to_string(f) + ".ppm";
        RasterImage img(16, 16, 3, 100.0 + 20.0 * s + 5.0 * f);
        write_netpbm(img, (dir / rel).string());
        video.frames.push_back(rel);
      }
      subject.videos.push_back(std::move(video));
    }
    m.subjects.push_back(std::move(subject));
  }
  VideoEntry attack;
  attack.id = "a0";
  attack.role = VideoRole::kAttack;
  attack.quality = QualityTag::kHq;
  attack.attack_target = "s1";
  {
    const std::string rel = "s0_a0_0.ppm";
    write_netpbm(RasterImage(16, 16, 3, 50.0), (dir / rel).string());
    attack.frames.push_back(rel);
  }
  m.subjects[0].videos.push_back(std::move(attack));
  return m;
}

}  // namespace

TEST_CASE("manifest validation reports distinct error codes") {
  const fs::path dir = temp_dir("morphdet_manifest_test");
  DatasetManifest m = tiny_manifest(dir);
  CHECK(validate_manifest(m).empty());

  SUBCASE("missing file") {
    m.subjects[0].videos[0].frames.push_back("nope.ppm");
    const auto errors = validate_manifest(m);
    REQUIRE(errors.size() == 1);
    CHECK(errors[0].code == ManifestErrorCode::kMissingFile);
  }
  SUBCASE("dangling attack target") {
    m.subjects[0].videos[2].attack_target = "ghost";
    const auto errors = validate_manifest(m);
    REQUIRE(errors.size() == 1);
    CHECK(errors[0].code == ManifestErrorCode::kDanglingAttackTarget);
  }
  SUBCASE("duplicate video id with overlapping roles") {
    VideoEntry dup = m.subjects[0].videos[0];  // enroll v0
    dup.role = VideoRole::kProbe;
    m.subjects[0].videos.push_back(dup);
    const auto errors = validate_manifest(m);
    std::set<ManifestErrorCode> codes;
    for (const auto& e : errors) codes.insert(e.code);
    CHECK(codes.count(ManifestErrorCode::kDuplicateVideo) == 1);
    CHECK(codes.count(ManifestErrorCode::kOverlappingRoles) == 1);
  }
  SUBCASE("duplicate subject") {
    m.subjects.push_back(m.subjects[0]);
    const auto errors = validate_manifest(m);
    bool found = false;
    for (const auto& e : errors) {
      if (e.code == ManifestErrorCode::kDuplicateSubject) found = true;
    }
    CHECK(found);
  }
  SUBCASE("bbox count mismatch") {
    m.subjects[0].videos[0].bboxes = {{0, 0, 4, 4}, {1, 1, 4, 4}};
    const auto errors = validate_manifest(m);
    REQUIRE(errors.size() == 1);
    CHECK(errors[0].code == ManifestErrorCode::kBadBBoxCount);
  }
  fs::remove_all(dir);
}

TEST_CASE("manifest json round-trips") {
  const fs::path dir = temp_dir("morphdet_manifest_rt");
  DatasetManifest m = tiny_manifest(dir);
  m.subjects[0].videos[0].bboxes = {{2, 3, 8, 8}};
  const std::string path = (dir / "manifest.json").string();
  save_manifest(m, path);
  const DatasetManifest back = load_manifest(path);
  CHECK(back.subjects.size() == 2);
  CHECK(back.subjects[0].videos[0].role == VideoRole::kEnroll);
  CHECK(back.subjects[0].videos[2].attack_target == "s1");
  CHECK(back.subjects[0].videos[0].bboxes.size() == 1);
  CHECK(back.subjects[0].videos[0].bboxes[0].w == 8);
  CHECK(back.subjects[0].videos[1].quality == QualityTag::kOriginal);
  CHECK(validate_manifest(back).empty());
  fs::remove_all(dir);
}

TEST_CASE("make_split is deterministic, disjoint and covering") {
  DatasetManifest m;
  for (int s = 0; s < 32; ++s) {
    SubjectEntry e;
    e.id = "subj" + std::to_string(s);
    m.subjects.push_back(e);
  }
  const SplitPlan a = make_split(m, 7, 0.5);
  const SplitPlan b = make_split(m, 7, 0.5);
  CHECK(a.train_subjects == b.train_subjects);
  CHECK(a.test_subjects == b.test_subjects);
  CHECK(a.train_subjects.size() == 16);
  CHECK(a.test_subjects.size() == 16);
  std::set<std::string> all(a.train_subjects.begin(), a.train_subjects.end());
  for (const auto& id : a.test_subjects) CHECK(all.insert(id).second);
  CHECK(all.size() == 32);
  check_split(a, m);

  const SplitPlan c = make_split(m, 8, 0.5);
  CHECK(c.train_subjects != a.train_subjects);

  DatasetManifest two;
  two.subjects = {SubjectEntry{"a", {}}, SubjectEntry{"b", {}}};
  const SplitPlan d = make_split(two, 1, 0.5);
  CHECK(d.train_subjects.size() == 1);
  CHECK(d.test_subjects.size() == 1);
  CHECK_THROWS_AS(make_split(two, 1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_split(two, 1, 1.0), std::invalid_argument);
}

TEST_CASE("split files round-trip and leakage is rejected") {
  const fs::path dir = temp_dir("morphdet_split_test");
  DatasetManifest m;
  for (int s = 0; s < 4; ++s) {
    m.subjects.push_back(SubjectEntry{"s" + std::to_string(s), {}});
  }
  const SplitPlan plan = make_split(m, 3, 0.5);
  const std::string path = (dir / "split.json").string();
  save_split(plan, path);
  const SplitPlan back = load_split(path);
  CHECK(back.train_subjects == plan.train_subjects);
  CHECK(back.test_subjects == plan.test_subjects);
  CHECK(back.seed == plan.seed);

  SplitPlan leaky = plan;
  leaky.test_subjects.push_back(plan.train_subjects[0]);
  CHECK_THROWS(check_split(leaky, m));

  SplitPlan missing = plan;
  missing.test_subjects.clear();
  CHECK_THROWS(check_split(missing, m));
  fs::remove_all(dir);
}

TEST_CASE("sample_frame_indices follows the floor-linspace rule") {
  const auto all20 = sample_frame_indices(20, 20);
  REQUIRE(all20.size() == 20);
  for (std::size_t i = 0; i < 20; ++i) CHECK(all20[i] == i);

  const auto every_other = sample_frame_indices(40, 20);
  REQUIRE(every_other.size() == 20);
  for (std::size_t i = 0; i < 20; ++i) CHECK(every_other[i] == 2 * i);

  const auto clamped = sample_frame_indices(5, 20);
  REQUIRE(clamped.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(clamped[i] == i);

  const auto thirds = sample_frame_indices(10, 3);
  CHECK(thirds == std::vector<std::size_t>{0, 3, 6});

  CHECK_THROWS_AS(sample_frame_indices(0, 20), std::invalid_argument);
}

TEST_CASE("config json round-trips and validates") {
  const fs::path dir = temp_dir("morphdet_config_test");
  ExperimentConfig cfg;
  cfg.detector = DetectorKind::kPixelsPcaLda;
  cfg.retained_variance = 0.99;
  cfg.svm_c = 2.5;
  cfg.frames_per_video = 10;
  cfg.quality = "HQ";
  const std::string path = (dir / "config.json").string();
  save_config(cfg, path);
  const ExperimentConfig back = load_config(path);
  CHECK(back.detector == DetectorKind::kPixelsPcaLda);
  CHECK(back.retained_variance == 0.99);
  CHECK(back.svm_c == 2.5);
  CHECK(back.frames_per_video == 10);
  CHECK(back.quality == "HQ");

  ExperimentConfig bad;
  bad.retained_variance = 1.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ExperimentConfig{};
  bad.quality = "mid";
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  fs::remove_all(dir);
}

TEST_CASE("feature tables round-trip in csv and binary") {
  const fs::path dir = temp_dir("morphdet_featio_test");
  FeatureTable t;
  t.column_names = iqm_registry_names();
  oracle::TestRng rng(401);
  for (int r = 0; r < 4; ++r) {
    t.frame_ids.push_back("frame" + std::to_string(r));
    std::vector<double> row(t.column_names.size());
    for (double& v : row) v = rng.gaussian();
    t.rows.push_back(std::move(row));
  }
  const std::string csv = (dir / "f.csv").string();
  write_feature_csv(t, csv);
  const FeatureTable tc = read_feature_csv(csv);
  CHECK(tc.column_names == t.column_names);
  CHECK(tc.frame_ids == t.frame_ids);
  REQUIRE(tc.rows.size() == t.rows.size());
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    CHECK(tc.rows[r] == t.rows[r]);  // %.17g round-trip
  }

  const std::string bin = (dir / "f.bin").string();
  write_feature_bin(t, bin);
  const FeatureTable tb = read_feature_bin(bin);
  CHECK(tb.column_names == t.column_names);
  CHECK(tb.frame_ids == t.frame_ids);
  CHECK(tb.rows == t.rows);

  // registry hash guards the binary layout
  FeatureTable other = t;
  other.column_names[0] = "renamed";
  const std::string bin2 = (dir / "g.bin").string();
  write_feature_bin(other, bin2);
  const FeatureTable tb2 = read_feature_bin(bin2);
  CHECK(tb2.column_names[0] == "f0");  // generic names, hash 0
  fs::remove_all(dir);
}

TEST_CASE("synth corpus generates a valid, attack-bearing manifest") {
  const fs::path dir = temp_dir("morphdet_synth_test");
  SynthParams params;
  params.subjects = 4;
  params.probe_videos = 3;
  params.attack_videos = 2;
  params.frames_per_video = 4;
  params.frame_size = 16;
  params.embedding_dim = 12;
  params.seed = 5;
  const DatasetManifest m = generate_synth_corpus(params, dir.string());
  CHECK(m.subjects.size() == 4);
  CHECK(validate_manifest(m).empty());

  long originals = 0, attacks = 0;
  for (const auto& s : m.subjects) {
    for (const auto& v : s.videos) {
      if (v.role == VideoRole::kAttack) {
        ++attacks;
        CHECK(!v.attack_target.empty());
        CHECK(m.find_subject(v.attack_target) != nullptr);
        CHECK(v.attack_target != s.id);
      } else {
        ++originals;
      }
      CHECK(v.frames.size() == 4);
      CHECK(!v.embedding.empty());
    }
  }
  CHECK(originals == 4 * (2 + 3));
  CHECK(attacks == 4 * 2);

  // reload from disk and spot-check one frame
  const DatasetManifest loaded =
      load_manifest((dir / "manifest.json").string());
  CHECK(validate_manifest(loaded).empty());
  const RasterImage img =
      read_netpbm(loaded.resolve(loaded.subjects[0].videos[0].frames[0]));
  CHECK(img.width == 16);
  CHECK(img.channels == 3);

  // determinism: regenerating with the same seed reproduces frames
  const fs::path dir2 = temp_dir("morphdet_synth_test2");
  generate_synth_corpus(params, dir2.string());
  CHECK(slurp(dir / "frames/s00/v00/000.ppm") ==
        slurp(dir2 / "frames/s00/v00/000.ppm"));
  CHECK(slurp(dir / "embeddings/s00_v00.emb") ==
        slurp(dir2 / "embeddings/s00_v00.emb"));
  fs::remove_all(dir);
  fs::remove_all(dir2);
}

TEST_CASE("detector experiment runs end to end on a small corpus") {
  const fs::path dir = temp_dir("morphdet_detector_test");
  SynthParams params;
  params.subjects = 4;
  params.probe_videos = 4;
  params.attack_videos = 4;
  params.frames_per_video = 6;
  params.frame_size = 16;
  params.seed = 9;
  const DatasetManifest m = generate_synth_corpus(params, dir.string());
  const SplitPlan split = make_split(m, 1, 0.5);

  ExperimentConfig cfg;
  cfg.detector = DetectorKind::kIqmSvm;
  cfg.frames_per_video = 4;
  const DetectorRunResult run = run_detector_experiment(cfg, m, split);
  CHECK(run.summary.eer <= 0.5);
  CHECK(run.test_scores.size() == 2 * (2 + 4 + 4));  // 2 test subjects
  for (const auto& id : run.train_subjects_used) {
    CHECK(split.is_train(id));
  }

  // per-video score equals the mean of sampled per-frame scores
  const SubjectEntry* test_subject = nullptr;
  for (const auto& s : m.subjects) {
    if (split.is_test(s.id)) {
      test_subject = &s;
      break;
    }
  }
  REQUIRE(test_subject != nullptr);
  const VideoEntry& video = test_subject->videos[0];
  const auto rows =
      video_features(m, *test_subject, video, cfg.detector, cfg);
  const auto idx = sample_frame_indices(rows.size(), cfg.frames_per_video);
  double mean = 0.0;
  for (std::size_t i : idx) mean += run.model.score(rows[i]);
  mean /= static_cast<double>(idx.size());
  bool found = false;
  for (const auto& line : run.test_scores) {
    if (line.probe == test_subject->id + "/" + video.id) {
      found = true;
      CHECK(line.score == doctest::Approx(mean).epsilon(1e-12));
    }
  }
  CHECK(found);

  // model files round-trip
  const std::string mpath = (dir / "model.bin").string();
  save_detector(run.model, mpath);
  const DetectorModel back = load_detector(mpath);
  CHECK(back.kind == run.model.kind);
  CHECK(back.feature_dim == run.model.feature_dim);
  const DetectorRunResult rerun = eval_detector(cfg, m, split, back);
  CHECK(rerun.summary.eer == run.summary.eer);

  // deterministic rerun end to end
  const DetectorRunResult again = run_detector_experiment(cfg, m, split);
  REQUIRE(again.test_scores.size() == run.test_scores.size());
  for (std::size_t i = 0; i < run.test_scores.size(); ++i) {
    CHECK(again.test_scores[i].score == run.test_scores[i].score);
  }
  fs::remove_all(dir);
}

TEST_CASE("detector rejects leaky splits and missing classes") {
  const fs::path dir = temp_dir("morphdet_detector_leak");
  SynthParams params;
  params.subjects = 2;
  params.probe_videos = 2;
  params.attack_videos = 1;
  params.frames_per_video = 3;
  params.frame_size = 16;
  const DatasetManifest m = generate_synth_corpus(params, dir.string());

  SplitPlan leaky;
  leaky.train_subjects = {"s00", "s01"};
  leaky.test_subjects = {"s01"};
  ExperimentConfig cfg;
  CHECK_THROWS(run_detector_experiment(cfg, m, leaky));
  fs::remove_all(dir);
}

TEST_CASE("vulnerability experiment produces histograms and attack far") {
  const fs::path dir = temp_dir("morphdet_vuln_test");
  SynthParams params;
  params.subjects = 4;
  params.probe_videos = 4;
  params.attack_videos = 3;
  params.frames_per_video = 5;
  params.frame_size = 16;
  params.seed = 21;
  const DatasetManifest m = generate_synth_corpus(params, dir.string());

  const VulnRunResult r = run_vulnerability_experiment(m, 20);
  CHECK(r.summary.attack_far.has_value());
  CHECK(*r.summary.attack_far >= 0.0);
  CHECK(*r.summary.attack_far <= 1.0);
  CHECK(r.scores.licit.genuine.size() == 4 * 4);
  CHECK(r.scores.licit.impostor.size() == 4 * 3 * 4);
  CHECK(r.scores.attack.size() == 4 * 3);
  long genuine_total = 0;
  for (long c : r.histogram.genuine) genuine_total += c;
  CHECK(genuine_total == 16);

  write_vuln_outputs(r, (dir / "out").string(), "demo");
  CHECK(fs::exists(dir / "out/demo_licit.scores"));
  CHECK(fs::exists(dir / "out/demo_attack.scores"));
  CHECK(fs::exists(dir / "out/demo_summary.json"));
  CHECK(fs::exists(dir / "out/demo_histogram.csv"));
  CHECK(fs::exists(dir / "out/demo_histogram.svg"));

  // determinism of rendered artifacts
  write_vuln_outputs(r, (dir / "out2").string(), "demo");
  CHECK(slurp(dir / "out/demo_histogram.svg") ==
        slurp(dir / "out2/demo_histogram.svg"));
  fs::remove_all(dir);
}

TEST_CASE("report csv renders two-decimal percentages") {
  const fs::path dir = temp_dir("morphdet_report_test");
  // four rows shaped like the published baseline table
  std::vector<ReportRow> rows = {
      {"LQ deep morph", "pixels-pca-lda", 0.3948, 0.7810},
      {"LQ deep morph", "iqm-pca-lda", 0.2052, 0.6667},
      {"LQ deep morph", "iqm-svm", 0.03333, 0.0095},
      {"HQ deep morph", "iqm-svm", 0.0897, 0.0905},
  };
  const std::string path = (dir / "table.csv").string();
  write_report_csv(rows, path);
  const std::string content = slurp(path);
  CHECK(content ==
        "database,detector,eer_percent,frr_at_far10_percent\n"
        "LQ deep morph,pixels-pca-lda,39.48,78.10\n"
        "LQ deep morph,iqm-pca-lda,20.52,66.67\n"
        "LQ deep morph,iqm-svm,3.33,0.95\n"
        "HQ deep morph,iqm-svm,8.97,9.05\n");

  EvalSummary s;
  s.eer = 0.125;
  s.frr_at_far10 = 0.25;
  s.attack_far = 0.9;
  const std::string jpath = (dir / "summary.json").string();
  write_summary_json(s, "db", "kind", jpath);
  const ReportRow back = read_summary_json(jpath);
  CHECK(back.database == "db");
  CHECK(back.detector == "kind");
  CHECK(back.eer == 0.125);
  CHECK(back.frr_at_far10 == 0.25);
  CHECK_THROWS_AS(write_report_csv({}, path), std::invalid_argument);
  fs::remove_all(dir);
}
