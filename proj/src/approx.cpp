#include "measure_modes/approx.hpp"

#include <stdexcept>

namespace measure_modes {

QuantizationCertificate make_certificate(const PiecewiseFunc& f, const Rational& target_epsilon) {
  if (target_epsilon.sign() <= 0) throw std::invalid_argument("target epsilon must be positive");
  QuantizationCertificate c{f, 1, {}, {}, {}, target_epsilon, false};
  const Rational m = f.sup_norm();
  if (m.is_zero()) {
    c.trivial = true;
    c.n = 1;
    c.cells = {Region::whole()};
    c.band_floor = {Rational(0)};
    c.cell_tolerance = target_epsilon;
    return c;
  }
  // 4m/n < eps  <=>  n > 4m/eps
  const std::int64_t n = floor_to_int(4 * m / target_epsilon) + 1;
  if (n > 1'000'000) throw std::invalid_argument("certificate would need more than 10^6 cells");
  c.n = static_cast<int>(n);
  auto partition = func_level_partition(f, c.n);
  c.cells = std::move(partition.cells);
  c.band_floor = std::move(partition.band_floor);
  c.cell_tolerance = target_epsilon / (2 * Rational(static_cast<long>(n)) * m);
  return c;
}

CertificateCheck certificate_check(const QuantizationCertificate& c, const Measure& nu,
                                   const Measure& rho) {
  CertificateCheck out;
  for (const auto& cell : c.cells) {
    out.worst_cell_deviation = max(out.worst_cell_deviation, abs(measure_of(nu, cell) - measure_of(rho, cell)));
  }
  out.hypothesis = c.trivial || out.worst_cell_deviation < c.cell_tolerance;
  const Rational diff = abs(integrate(nu, c.f) - integrate(rho, c.f));
  out.gap = c.target_epsilon - diff;
  out.conclusion = out.gap.sign() > 0;
  return out;
}

VagueApproxResult vague_approximate(const Measure& nu, int n1) {
  if (n1 < 2) throw std::invalid_argument("vague approximation needs n1 >= 2");
  VagueApproxResult out;
  out.n1 = n1;
  out.error_bound = Rational(2, n1);
  const Rational radius(1, n1);
  Region covered;
  std::vector<Atom> atoms;
  for (int i = 0; i <= n1; ++i) {
    const Rational center(i, n1);
    const Rational lo = max(center - radius, Rational(0));
    const Rational hi = min(center + radius, Rational(1));
    const Region ball = Region::interval(lo, hi, lo == 0, hi == 1);
    Region cell = region_difference(ball, covered);
    covered = region_union(covered, ball);
    const Rational mass = measure_of(nu, cell);
    if (mass.sign() > 0) {
      atoms.push_back(Atom{center, mass});
      out.centers_used.push_back(center);
    }
    out.cells.push_back(std::move(cell));
  }
  out.atoms = Measure::atomic(std::move(atoms));
  return out;
}

int vague_grid_for(const PiecewiseFunc& f, const Rational& epsilon) {
  if (epsilon.sign() <= 0) throw std::invalid_argument("epsilon must be positive");
  const std::int64_t n = floor_to_int(2 * f.lipschitz() / epsilon) + 1;
  if (n > 1'000'000) throw std::invalid_argument("grid would exceed 10^6 centers");
  return static_cast<int>(std::max<std::int64_t>(n, 2));
}

Rational vague_generic_bound(const PiecewiseFunc& f, const Rational& epsilon) {
  return (1 + 2 * f.sup_norm()) * epsilon;
}

}  // namespace measure_modes
