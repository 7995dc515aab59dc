#include <doctest.h>

#include "measure_modes/approx.hpp"
#include "measure_modes/random.hpp"
#include "oracles.hpp"

using namespace measure_modes;

namespace {
Rational q(long n, long d) { return Rational(n, d); }
}  // namespace

TEST_CASE("certificate examples") {
  const auto id = make_certificate(PiecewiseFunc::identity(), 1);
  CHECK(id.n == 5);
  CHECK(id.cell_tolerance == q(1, 10));
  CHECK(id.cells.size() == 5);
  CHECK(!id.trivial);

  const auto one = make_certificate(PiecewiseFunc::constant(1), q(1, 2));
  CHECK(one.n == 9);
  CHECK(std::count_if(one.cells.begin(), one.cells.end(), [](const Region& r) { return !r.empty(); }) == 1);

  const auto zero = make_certificate(PiecewiseFunc::constant(0), q(1, 2));
  CHECK(zero.trivial);
  CHECK(certificate_check(zero, Measure::dirac(0), Measure::dirac(1)).conclusion);

  CHECK_THROWS_AS(make_certificate(PiecewiseFunc::identity(), 0), std::invalid_argument);
}

TEST_CASE("n is the smallest integer with 4|f|/n < epsilon") {
  Sampler s(8);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = s.continuous_function(4, 3, 2);
    if (f.is_zero()) continue;
    const Rational eps(s.integer(1, 12), s.integer(1, 6));
    const auto c = make_certificate(f, eps);
    const Rational m = f.sup_norm();
    CHECK(4 * m / c.n < eps);
    if (c.n > 1) CHECK(4 * m / (c.n - 1) >= eps);
    CHECK(c.cell_tolerance == eps / (2 * Rational(c.n) * m));
  }
}

TEST_CASE("certificate check examples") {
  const Measure unif = Measure::uniform(0, 1);
  const auto c = make_certificate(PiecewiseFunc::identity(), 1);
  const auto same = certificate_check(c, unif, unif);
  CHECK(same.hypothesis);
  CHECK(same.conclusion);
  CHECK(same.gap == 1);

  const auto far = certificate_check(c, unif, Measure::dirac(0));
  CHECK(far.conclusion);
  CHECK(far.gap == q(1, 2));

  const auto tight = make_certificate(PiecewiseFunc::identity(), q(1, 10));
  const auto ends = certificate_check(tight, Measure::dirac(0), Measure::dirac(1));
  CHECK(!ends.hypothesis);
  CHECK(ends.worst_cell_deviation == 1);
  CHECK(!ends.conclusion);
}

TEST_CASE("vague approximation examples") {
  const auto half = vague_approximate(Measure::dirac(q(1, 2)), 2);
  CHECK(half.atoms == Measure::atomic({{q(1, 2), 1}}));
  CHECK(half.error_bound == 1);

  const auto unif = vague_approximate(Measure::uniform(0, 1), 2);
  CHECK(unif.atoms == Measure::atomic({{0, q(1, 2)}, {q(1, 2), q(1, 2)}}));
  CHECK(unif.centers_used == std::vector<Rational>{0, q(1, 2)});
  REQUIRE(unif.cells.size() == 3);
  CHECK(unif.cells[0] == Region::interval(0, q(1, 2), true, false));
  CHECK(unif.cells[1] == Region::closed(q(1, 2), 1));
  CHECK(unif.cells[2].empty());
  CHECK_THROWS_AS(vague_approximate(Measure::dirac(0), 1), std::invalid_argument);
}

TEST_CASE("vague approximation masses are the cover differences") {
  Sampler s(12);
  for (int trial = 0; trial < 100; ++trial) {
    const Measure nu = s.mixed_measure(4, 4);
    const int n1 = static_cast<int>(s.integer(2, 12));
    const auto r = vague_approximate(nu, n1);
    CHECK(measure_validate(r.atoms).valid);
    CHECK(r.atoms.is_atomic());
    REQUIRE(r.cells.size() == static_cast<std::size_t>(n1) + 1);
    Region all;
    for (int i = 0; i <= n1; ++i) {
      const Region& cell = r.cells[static_cast<std::size_t>(i)];
      CHECK(region_disjoint(all, cell));
      all = region_union(all, cell);
      CHECK(r.atoms.atom_at(Rational(i, n1)) == oracle::measure_of(nu, cell));
      // Every point of the cell lies within 1/n1 of its center.
      for (const auto& c : cell.components()) {
        CHECK(abs(c.lo - Rational(i, n1)) <= Rational(1, n1));
        CHECK(abs(c.hi - Rational(i, n1)) <= Rational(1, n1));
      }
    }
    CHECK(all == Region::whole());
  }
}

TEST_CASE("grid size and the two error bounds") {
  Sampler s(13);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = s.continuous_function(4, 3, 2);
    const Rational eps(s.integer(1, 8), 8);
    const int n1 = vague_grid_for(f, eps);
    CHECK(Rational(n1) > 2 * f.lipschitz() / eps);
    CHECK(n1 >= 2);
    const Measure nu = s.mixed_measure(4, 4);
    const auto r = vague_approximate(nu, n1);
    const Rational err = abs(integrate(nu, f) - integrate(r.atoms, f));
    CHECK(err <= eps);
    CHECK(err <= vague_generic_bound(f, eps));
  }
}

TEST_CASE("the grid error need not shrink monotonically for non-monotone f") {
  // f is flat between 0 and 3/8 but bumps at 1/4, where the level-2 grid puts a center.
  const Measure nu = Measure::dirac(q(3, 8));
  const auto f = PiecewiseFunc::continuous({0, q(1, 4), q(3, 8), 1}, {0, 1, 0, 0});
  auto error = [&](int n1) { return abs(integrate(nu, f) - integrate(vague_approximate(nu, n1).atoms, f)); };
  CHECK(error(2).is_zero());
  CHECK(error(4) == 1);
  CHECK(error(8).is_zero());
}

TEST_CASE("the grid error is nonincreasing for monotone f") {
  Sampler s(14);
  for (int trial = 0; trial < 60; ++trial) {
    const auto f = s.monotone_function(4, 4, 2);
    const Measure nu = s.mixed_measure(3, 5);
    Rational prev;
    for (int j = 1; j <= 8; ++j) {
      const Rational err = abs(integrate(nu, f) - integrate(vague_approximate(nu, 1 << j).atoms, f));
      if (j > 1) CHECK(err <= prev);
      CHECK(err <= f.lipschitz() / (1 << j));
      prev = err;
    }
  }
}
