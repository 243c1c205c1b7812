#include "morphdet/exp/split.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

using nlohmann::json;

namespace morphdet {

bool SplitPlan::is_train(const std::string& subject_id) const {
  return std::find(train_subjects.begin(), train_subjects.end(), subject_id) !=
         train_subjects.end();
}

bool SplitPlan::is_test(const std::string& subject_id) const {
  return std::find(test_subjects.begin(), test_subjects.end(), subject_id) !=
         test_subjects.end();
}

SplitPlan make_split(const DatasetManifest& manifest, std::uint64_t seed,
                     double test_fraction) {
  if (test_fraction <= 0.0 || test_fraction >= 1.0) {
    throw std::invalid_argument("make_split: test_fraction outside (0,1)");
  }
  std::vector<std::string> ids;
  for (const auto& s : manifest.subjects) ids.push_back(s.id);
  if (ids.size() < 2) {
    throw std::invalid_argument("make_split: need at least 2 subjects");
  }

  // Explicit Fisher-Yates with mt19937_64 draws; mt19937_64 output is
  // fully specified by the standard, so plans reproduce across builds.
  std::mt19937_64 rng(seed);
  for (std::size_t i = ids.size() - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
    std::swap(ids[i], ids[j]);
  }

  std::size_t test_count = static_cast<std::size_t>(
      std::llround(test_fraction * static_cast<double>(ids.size())));
  test_count = std::clamp<std::size_t>(test_count, 1, ids.size() - 1);

  SplitPlan plan;
  plan.seed = seed;
  plan.test_subjects.assign(ids.begin(), ids.begin() + test_count);
  plan.train_subjects.assign(ids.begin() + test_count, ids.end());
  std::sort(plan.test_subjects.begin(), plan.test_subjects.end());
  std::sort(plan.train_subjects.begin(), plan.train_subjects.end());
  return plan;
}

void save_split(const SplitPlan& plan, const std::string& path) {
  json j;
  j["seed"] = plan.seed;
  j["train"] = plan.train_subjects;
  j["test"] = plan.test_subjects;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("split: cannot open " + path);
  out << j.dump(2) << '\n';
}

SplitPlan load_split(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("split: cannot open " + path);
  json j;
  in >> j;
  SplitPlan plan;
  plan.seed = j.value("seed", 0ull);
  plan.train_subjects = j.at("train").get<std::vector<std::string>>();
  plan.test_subjects = j.at("test").get<std::vector<std::string>>();
  return plan;
}

void check_split(const SplitPlan& plan, const DatasetManifest& manifest) {
  std::set<std::string> train(plan.train_subjects.begin(),
                              plan.train_subjects.end());
  std::set<std::string> test(plan.test_subjects.begin(),
                             plan.test_subjects.end());
  for (const auto& id : train) {
    if (test.count(id)) {
      throw std::runtime_error("split: subject '" + id +
                               "' appears in both train and test");
    }
  }
  for (const auto& subject : manifest.subjects) {
    if (!train.count(subject.id) && !test.count(subject.id)) {
      throw std::runtime_error("split: subject '" + subject.id +
                               "' is unassigned");
    }
  }
}

}  // namespace morphdet
