#ifndef MORPHDET_EXP_SPLIT_HPP
#define MORPHDET_EXP_SPLIT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "morphdet/exp/manifest.hpp"

namespace morphdet {

// Subject-disjoint Train/Test partition. Every manifest subject is
// assigned to exactly one side.
struct SplitPlan {
  std::uint64_t seed = 0;
  std::vector<std::string> train_subjects;
  std::vector<std::string> test_subjects;

  bool is_train(const std::string& subject_id) const;
  bool is_test(const std::string& subject_id) const;
};

// Deterministic seeded Fisher-Yates shuffle of the subject ids, then the
// first round(test_fraction * n) subjects (at least 1, at most n-1) go
// to Test. Same seed, same plan.
SplitPlan make_split(const DatasetManifest& manifest, std::uint64_t seed,
                     double test_fraction);

void save_split(const SplitPlan& plan, const std::string& path);
SplitPlan load_split(const std::string& path);

// Checks the plan against a manifest: no overlap, full coverage.
void check_split(const SplitPlan& plan, const DatasetManifest& manifest);

}  // namespace morphdet

#endif
