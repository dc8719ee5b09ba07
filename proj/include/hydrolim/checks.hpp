#pragma once

// Invariant battery behind `hydrolim check`: transforms, Littlewood-Paley
// blocks, projector laws, pressure identities, Poincare bounds and
// heat-kernel exactness, each with its tolerance.

#include <cstdint>
#include <string>
#include <vector>

#include "hydrolim/grid.hpp"
#include "hydrolim/lp_besov.hpp"

namespace hydrolim {

struct CheckResult {
  std::string name;
  double tolerance = 0.0;
  double measured = 0.0;
  bool pass = false;
};

struct CheckOptions {
  Grid grid{16, 8};
  std::uint64_t seed = 7;
  int samples = 10;
  /// Partition used by the Littlewood-Paley checks.
  const DyadicPartition* partition = &DyadicPartition::standard();
};

std::vector<CheckResult> run_checks(const CheckOptions& opts = {});

/// A deliberately wrong partition (Gaussian chi, so phi has unbounded
/// support) declared with the standard support.
const DyadicPartition& broken_partition();

}  // namespace hydrolim
