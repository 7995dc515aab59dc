#include <doctest.h>

#include "measure_modes/random.hpp"
#include "measure_modes/sigma_atoms.hpp"
#include "oracles.hpp"

using namespace measure_modes;

namespace {

std::uint32_t to_mask(const Subset& s) {
  std::uint32_t m = 0;
  for (int x : s) m |= 1u << (x - 1);
  return m;
}

Subset to_subset(std::uint32_t m) {
  Subset s;
  for (int x = 0; x < 32; ++x) {
    if (m >> x & 1u) s.push_back(x + 1);
  }
  return s;
}

}  // namespace

TEST_CASE("atom examples") {
  CHECK(atoms_of(3, {{1, 2}, {2, 3}}) == std::vector<Subset>{{1}, {2}, {3}});
  CHECK(atoms_of(4, {}) == std::vector<Subset>{{1, 2, 3, 4}});
  CHECK(atoms_of(4, {{1, 2}}) == std::vector<Subset>{{1, 2}, {3, 4}});
  CHECK_THROWS_AS(atoms_of(0, {}), std::invalid_argument);
  CHECK_THROWS_AS(atoms_of(3, {{4}}), std::invalid_argument);
}

TEST_CASE("atoms match brute-force closure for every generator family on small ground sets") {
  for (int m = 1; m <= 3; ++m) {
    const std::uint32_t subsets = 1u << m;
    for (std::uint32_t family = 0; family < (1u << subsets); ++family) {
      std::vector<std::uint32_t> gens;
      std::vector<Subset> gen_sets;
      for (std::uint32_t s = 0; s < subsets; ++s) {
        if (family >> s & 1u) {
          gens.push_back(s);
          gen_sets.push_back(to_subset(s));
        }
      }
      std::vector<Subset> expected;
      for (auto a : oracle::sigma_atoms(m, gens)) expected.push_back(to_subset(a));
      std::sort(expected.begin(), expected.end());
      CHECK(atoms_of(m, gen_sets) == expected);
    }
  }
}

TEST_CASE("generators are unions of atoms") {
  Sampler s(21);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = static_cast<int>(s.integer(1, 10));
    std::vector<Subset> gens;
    for (int g = 0; g < 3; ++g) gens.push_back(to_subset(static_cast<std::uint32_t>(s.integer(0, (1 << m) - 1))));
    const auto fsa = make_sigma_algebra(m, gens);
    std::uint32_t seen = 0;
    for (const auto& a : fsa.atoms) {
      CHECK((seen & to_mask(a)) == 0);
      seen |= to_mask(a);
    }
    CHECK(seen == (1u << m) - 1);
    for (const auto& g : fsa.generators) {
      std::uint32_t rebuilt = 0;
      for (const auto& a : fsa.atoms) {
        if ((to_mask(a) & to_mask(g)) != 0) rebuilt |= to_mask(a);
      }
      CHECK(rebuilt == to_mask(g));
    }
  }
}

TEST_CASE("elementary count verdicts") {
  const auto three = elementary_count_verdict(make_sigma_algebra(3, {{1}, {2}}));
  CHECK(three.atom_count == 3);
  CHECK(three.separable);
  CHECK(three.metrizable);
  CHECK(three.dense_family.find("2-simplex") != std::string::npos);
  const auto one = elementary_count_verdict(make_sigma_algebra(5, {}));
  CHECK(one.atom_count == 1);
  CHECK(one.verdict.find("single point") != std::string::npos);
  std::vector<Subset> singles;
  for (int x = 1; x <= 10; ++x) singles.push_back({x});
  const auto ten = elementary_count_verdict(make_sigma_algebra(10, singles));
  CHECK(ten.atom_count == 10);
  CHECK(ten.dense_family.find("2^j") != std::string::npos);
  CHECK(!ten.uncountable_branch.empty());
}

TEST_CASE("dense witness examples") {
  const auto fsa = make_sigma_algebra(3, {{1}, {2}});
  const AtomMeasure unif{{Rational(1, 3), Rational(1, 3), Rational(1, 3)}};
  const auto w = dense_family_member(fsa, unif, {1}, Rational(1, 10));
  CHECK(w.denominator == 16);
  CHECK(w.rho.weights[0] == Rational(5, 16));
  CHECK(w.margin == Rational(1, 10) - Rational(1, 48));
  Rational total;
  for (const auto& x : w.rho.weights) total += x;
  CHECK(total == 1);

  const AtomMeasure grid{{Rational(1, 4), Rational(1, 2), Rational(1, 4)}};
  const auto same = dense_family_member(fsa, grid, {2}, Rational(1, 100));
  CHECK(same.unchanged);
  CHECK(same.rho == grid);
  CHECK(same.denominator == 4);

  const auto vacuous = dense_family_member(fsa, unif, {1, 2}, 2);
  CHECK(vacuous.denominator == 1);
  CHECK_THROWS_AS(dense_family_member(fsa, unif, {1}, 0), std::invalid_argument);
  const auto coarse = make_sigma_algebra(3, {{1, 2}});
  const AtomMeasure two{{Rational(1, 3), Rational(2, 3)}};
  CHECK_THROWS_AS(dense_family_member(coarse, two, {1}, Rational(1, 10)), std::invalid_argument);
  CHECK_THROWS_AS(dense_family_member(fsa, AtomMeasure{{Rational(1, 2), Rational(1, 2)}}, {1}, 1),
                  std::invalid_argument);
}

TEST_CASE("dense witnesses succeed at denominator at most 128 for epsilon at least 1/64") {
  Sampler s(22);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = static_cast<int>(s.integer(1, 6));
    std::vector<Subset> gens{to_subset(static_cast<std::uint32_t>(s.integer(0, (1 << m) - 1)))};
    const auto fsa = make_sigma_algebra(m, gens);
    const AtomMeasure nu = s.atom_measure(fsa.atoms.size());
    Subset a;
    for (const auto& atom : fsa.atoms) {
      if (s.coin()) a.insert(a.end(), atom.begin(), atom.end());
    }
    std::sort(a.begin(), a.end());
    const Rational eps(1, s.integer(1, 64));
    const auto w = dense_family_member(fsa, nu, a, eps);
    validate_atom_measure(fsa, w.rho);
    CHECK(w.denominator <= 128);
    const Rational dev = abs(atom_measure_of(fsa, w.rho, a) - atom_measure_of(fsa, nu, a));
    CHECK(w.margin == eps - dev);
    CHECK(w.margin > 0);
    for (const auto& x : w.rho.weights) CHECK((x * Rational(static_cast<long>(w.denominator))).is_integer());
  }
}
