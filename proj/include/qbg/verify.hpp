#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace qbg {

struct VerifyConfig {
  std::vector<int> dims;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

struct CheckResult {
  std::string name;
  int dim = 0;
  bool passed = false;
  double worst = 0.0;      // worst observed deviation or margin
  double tolerance = 0.0;
  std::string detail;
};

/// Runs every module invariant on sampled and constructed states for each
/// dimension in config.dims. Throws InvalidArgument when dims is empty or
/// contains a value below 2, or when samples == 0.
std::vector<CheckResult> run_verification(const VerifyConfig& config);

/// Largest |left - right| limit of max_imaginary across region joints, found
/// by scanning `points` evenly spaced s_r values and bisecting each region
/// change down to adjacent doubles.
double boundary_joint_jump(int d, int points = 10000);

void print_check_table(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace qbg
