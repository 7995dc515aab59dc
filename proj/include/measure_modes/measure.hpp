#pragma once

#include <span>
#include <string>
#include <vector>

#include "measure_modes/piecewise.hpp"
#include "measure_modes/rational.hpp"
#include "measure_modes/region.hpp"

namespace measure_modes {

struct Atom {
  Rational location;
  Rational mass;
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finitely many point masses plus a piecewise-constant Lebesgue density.
///
/// The type itself only enforces shape (locations in [0,1], a Simple density);
/// probability-measure invariants are checked by measure_validate so that
/// sub-probability pieces can be built and combined along the way.
class Measure {
 public:
  Measure();
  /// Atoms are stored sorted by location. Throws std::invalid_argument for a
  /// location outside [0,1] or a non-Simple density.
  Measure(std::vector<Atom> atoms, PiecewiseFunc density);

  static Measure dirac(const Rational& p);
  /// Uniform probability on [a, b], a < b.
  static Measure uniform(const Rational& a, const Rational& b);
  static Measure atomic(std::vector<Atom> atoms);
  /// Density 2 on [k/n, k/n + 1/(2n)), k = 0..n-1, zero elsewhere.
  static Measure square_wave(int n);
  static Measure zero() { return Measure(); }

  const std::vector<Atom>& atoms() const { return atoms_; }
  const PiecewiseFunc& density() const { return density_; }

  Rational atom_mass() const;
  Rational density_mass() const;
  Rational total_mass() const { return atom_mass() + density_mass(); }
  bool is_atomic() const { return density_.is_zero(); }
  /// Mass of the atom at exactly x (0 if none).
  Rational atom_at(const Rational& x) const;
  /// ∫_lo^hi density dx for 0 <= lo <= hi <= 1.
  Rational density_integral(const Rational& lo, const Rational& hi) const;

  friend bool operator==(const Measure&, const Measure&) = default;

 private:
  std::vector<Atom> atoms_;
  PiecewiseFunc density_;
};

struct MeasureVerdict {
  bool valid = true;
  /// "negative_mass", "negative_density", "duplicate_atom", "total_mass" or empty.
  std::string violated;
  std::string detail;
  Rational total;
};

MeasureVerdict measure_validate(const Measure& m);

Rational measure_of(const Measure& m, const Region& a);
Rational integrate(const Measure& m, const PiecewiseFunc& f);

/// Exact mixture. Throws std::invalid_argument on length mismatch, negative
/// weight, or weights not summing to 1.
Measure convex_combine(std::span<const Rational> weights, std::span<const Measure> measures);

/// Sum of two (sub-)measures; atoms at the same location are merged.
Measure measure_add(const Measure& a, const Measure& b);
Measure measure_scale(const Measure& m, const Rational& c);
/// m restricted to a: m(· ∩ a).
Measure measure_restrict(const Measure& m, const Region& a);

/// Simple density with the given breakpoints/values after dropping zero-width cells.
PiecewiseFunc make_density(std::vector<Rational> breakpoints, std::vector<Rational> values);

/// Sorted union of the breakpoints of two functions.
std::vector<Rational> merged_breakpoints(const PiecewiseFunc& f, const PiecewiseFunc& g);

}  // namespace measure_modes
