#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace measure_modes {

/// Outcome of one randomized property campaign.
struct CampaignResult {
  std::string property;
  std::size_t trials = 0;
  std::size_t violations = 0;
  /// Human-readable description of the first violation, empty if none.
  std::string first_violation;
};

/// Runs every property campaign with `trials` draws each from a generator seeded by `seed`.
/// Identical (seed, trials) give identical results.
std::vector<CampaignResult> run_campaigns(std::uint64_t seed, std::size_t trials);

}  // namespace measure_modes
