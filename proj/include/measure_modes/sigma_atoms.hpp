#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "measure_modes/rational.hpp"

namespace measure_modes {

/// Sorted subset of the ground set {1..m}.
using Subset = std::vector<int>;

struct FiniteSigmaAlgebra {
  int ground_size = 1;
  std::vector<Subset> generators;
  /// Atoms ordered by their smallest element.
  std::vector<Subset> atoms;
};

/// Partition of {1..m} into the atoms of the σ-algebra generated by `generators`.
/// Throws std::invalid_argument for m < 1 or an element outside {1..m}.
std::vector<Subset> atoms_of(int ground_size, const std::vector<Subset>& generators);

/// Sorts and deduplicates each generator, then computes the atoms.
FiniteSigmaAlgebra make_sigma_algebra(int ground_size, std::vector<Subset> generators);

struct ElementaryCountReport {
  std::size_t atom_count = 0;
  bool separable = true;
  bool metrizable = true;
  std::string verdict;
  std::string dense_family;
  /// Why the uncountable-atom branch has no finite instance.
  std::string uncountable_branch;
};

ElementaryCountReport elementary_count_verdict(const FiniteSigmaAlgebra& fsa);

/// Probability weights, one per atom, in atom order.
struct AtomMeasure {
  std::vector<Rational> weights;
  friend bool operator==(const AtomMeasure&, const AtomMeasure&) = default;
};

/// Throws std::invalid_argument unless nu has one nonnegative weight per atom summing to 1.
void validate_atom_measure(const FiniteSigmaAlgebra& fsa, const AtomMeasure& nu);

/// Measure of a union of atoms given as a ground subset.
/// Throws std::invalid_argument if `a` is not a union of atoms.
Rational atom_measure_of(const FiniteSigmaAlgebra& fsa, const AtomMeasure& nu, const Subset& a);

struct DenseWitness {
  AtomMeasure rho;
  /// Common denominator 2^level of rho's weights.
  long long denominator = 1;
  int level = 0;
  /// epsilon - |rho(a) - nu(a)|, exact and positive.
  Rational margin;
  /// nu was already on the dyadic grid and is returned unchanged.
  bool unchanged = false;
};

/// Member of the dyadic grid on the simplex with |rho(a) - nu(a)| < epsilon.
///
/// Uses the first level j with 2^-j < epsilon: rho(a) is nu(a) rounded half-up
/// to a multiple of 2^-j, spread over the atoms of a (and of its complement)
/// by largest remainder. Throws std::invalid_argument for epsilon <= 0.
DenseWitness dense_family_member(const FiniteSigmaAlgebra& fsa, const AtomMeasure& nu, const Subset& a,
                                 const Rational& epsilon);

}  // namespace measure_modes
