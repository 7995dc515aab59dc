#pragma once

#include <cstddef>
#include <stdexcept>
#include <variant>
#include <vector>

#include "measure_modes/measure.hpp"

namespace measure_modes {

/// Raised by operations restricted to purely atomic inputs.
class AtomicOnlyError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kProhorovAtomCutoff = 15;

/// sup_A |a(A) - b(A)|, closed form: positive part of (a - b) over atoms and density cells.
Rational tv_distance(const Measure& a, const Measure& b);

/// Exact Prohorov distance between purely atomic measures with at most
/// kProhorovAtomCutoff distinct support points in total. Both one-sided
/// constraints are enforced. Throws AtomicOnlyError otherwise.
Rational prohorov_distance(const Measure& a, const Measure& b);

/// max |a(A) - b(A)| over every union of the elementary pieces of the dyadic
/// grid at `level` (open cells and grid points). Lower bound of tv_distance,
/// equal to it when all atoms and density breakpoints are dyadic at `level`.
/// Throws std::invalid_argument if level is outside [0, 10].
Rational tv_brute_oracle(const Measure& a, const Measure& b, int level);

enum class GaugeKind { F, S };

/// Finite truncation of a basic F-topology (functions) or S-topology (sets) neighbourhood.
struct GaugeSpec {
  std::variant<std::vector<PiecewiseFunc>, std::vector<Region>> family;
  Rational epsilon;
  Measure center;

  GaugeKind kind() const { return family.index() == 0 ? GaugeKind::F : GaugeKind::S; }
  std::size_t size() const;
};

struct GaugeResult {
  bool contained = false;
  /// epsilon - max deviation over the family; contained iff margin > 0.
  Rational margin;
  Rational worst_deviation;
  std::size_t worst_index = 0;
};

/// Throws std::invalid_argument for an empty family or epsilon <= 0.
GaugeResult gauge_contains(const GaugeSpec& g, const Measure& candidate);

}  // namespace measure_modes
