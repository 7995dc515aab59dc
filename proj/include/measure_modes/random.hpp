#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "measure_modes/measure.hpp"
#include "measure_modes/piecewise.hpp"
#include "measure_modes/region.hpp"
#include "measure_modes/sigma_atoms.hpp"

namespace measure_modes {

/// Seeded generators for property campaigns. Bounded draws avoid
/// std::uniform_int_distribution so that streams match across standard libraries.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  /// Uniform in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi);
  bool coin() { return integer(0, 1) == 1; }
  /// k / 2^level with k uniform in [0, 2^level].
  Rational dyadic_point(int level);
  /// Positive random weights summing to 1.
  std::vector<Rational> weights(std::size_t count);

  /// Up to max_atoms distinct dyadic locations at the given level.
  Measure atomic_measure(int max_atoms, int level);
  /// Atoms plus a simple density on dyadic breakpoints; either part may be absent.
  Measure mixed_measure(int max_atoms, int level);
  /// Continuous piecewise-linear with up to `pieces` segments, values in [-bound, bound] on a grid of 1/4.
  PiecewiseFunc continuous_function(int pieces, int level, int bound);
  /// Monotone (nondecreasing or nonincreasing) continuous piecewise-linear function.
  PiecewiseFunc monotone_function(int pieces, int level, int bound);
  PiecewiseFunc simple_function(int pieces, int level, int bound);
  /// Union of up to max_components random intervals with random endpoint flags.
  Region region(int max_components, int level);
  /// Random probability weights on the atoms of fsa, with small denominators.
  AtomMeasure atom_measure(std::size_t atoms);

  std::mt19937_64& engine() { return rng_; }

 private:
  std::vector<Rational> sorted_breakpoints(int pieces, int level);

  std::mt19937_64 rng_;
};

}  // namespace measure_modes
