#pragma once

#include <vector>

#include "measure_modes/measure.hpp"
#include "measure_modes/piecewise.hpp"

namespace measure_modes {

/// Level-set quantization of a test function f: if a measure rho matches nu
/// on every cell to within cell_tolerance, then |∫f dnu - ∫f drho| < target_epsilon.
struct QuantizationCertificate {
  PiecewiseFunc f;
  int n = 1;
  std::vector<Region> cells;
  /// Lower band edge of each cell.
  std::vector<Rational> band_floor;
  Rational cell_tolerance;
  Rational target_epsilon;
  /// f ≡ 0: every rho satisfies the conclusion.
  bool trivial = false;
};

/// n = smallest integer with 4|f|/n < epsilon; tolerance = epsilon / (2 n |f|).
/// Throws std::invalid_argument for epsilon <= 0.
QuantizationCertificate make_certificate(const PiecewiseFunc& f, const Rational& target_epsilon);

struct CertificateCheck {
  bool hypothesis = false;
  bool conclusion = false;
  /// target_epsilon - |∫f dnu - ∫f drho|
  Rational gap;
  /// max_i |nu(A_i) - rho(A_i)|
  Rational worst_cell_deviation;
};

CertificateCheck certificate_check(const QuantizationCertificate& c, const Measure& nu,
                                   const Measure& rho);

/// Greedy discrete approximation on the grid {0, 1/n1, ..., 1}.
struct VagueApproxResult {
  Measure atoms;
  int n1 = 2;
  /// Grid centers that received positive mass, in cover order.
  std::vector<Rational> centers_used;
  /// Cover-difference cell of every grid center, indexed like the grid.
  std::vector<Region> cells;
  /// Ball diameter 2/n1: any f oscillating by less than eps over sets of this
  /// diameter is integrated to within eps.
  Rational error_bound;
};

/// Mass at center i = nu(B(x_i, 1/n1) \ ∪_{j<i} B(x_j, 1/n1)), balls open and
/// clipped to [0,1]. Compact ambient space, so no escape atom is needed.
/// Throws std::invalid_argument if n1 < 2.
VagueApproxResult vague_approximate(const Measure& nu, int n1);

/// Smallest n1 with 2L/n1 < epsilon for a ContinuousPL f of Lipschitz constant L.
int vague_grid_for(const PiecewiseFunc& f, const Rational& epsilon);

/// The proof's generic bound (1 + 2|f|) * epsilon.
Rational vague_generic_bound(const PiecewiseFunc& f, const Rational& epsilon);

}  // namespace measure_modes
