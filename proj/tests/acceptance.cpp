// Acceptance run: one PASS/FAIL line per criterion, exact arithmetic throughout.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "measure_modes/approx.hpp"
#include "measure_modes/metrics.hpp"
#include "measure_modes/random.hpp"
#include "measure_modes/sequences.hpp"
#include "measure_modes/sigma_atoms.hpp"
#include "oracles.hpp"

using namespace measure_modes;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

// Known failure: the error along n1 = 2^j is not monotone for general
// piecewise-linear f (see README). Reported as FAIL without affecting the exit code.
constexpr int kDocumentedFailure = 4;

const ModeVerdict& verdict(const std::vector<ModeVerdict>& vs, Mode m) {
  return *std::find_if(vs.begin(), vs.end(), [&](const ModeVerdict& v) { return v.mode == m; });
}

// Every classification made during the run, for the hierarchy criterion.
std::vector<std::vector<ModeVerdict>> g_runs;

std::vector<ModeVerdict> classify(const SequenceFamily& fam, const Measure& c, const Budget& b = {}) {
  auto v = classify_modes(fam, c, b);
  g_runs.push_back(v);
  return v;
}

Outcome gallery_pins() {
  Outcome o;
  const auto v = classify(SequenceFamily::dirac_at(), Measure::dirac(0));
  o.require(verdict(v, Mode::Weak).status == Status::ConvergesExact, "weak verdict");
  const auto& s = verdict(v, Mode::Setwise);
  o.require(s.status == Status::DivergesWitness && s.witness &&
                std::get<Region>(s.witness->object) == Region::open(0, 1) && s.witness->gap == 1,
            "setwise witness (0,1) with gap 1");
  const auto& tv = verdict(v, Mode::TV);
  o.require(tv.status == Status::DivergesWitness && tv.witness && tv.witness->gap == 1, "tv gap 1");
  const auto c = compactness_gap(SequenceFamily::dirac_at(), 3, {Rational(1, 8), Rational(1, 16), Rational(1, 32)});
  const auto it = std::find_if(c.entries.begin(), c.entries.end(),
                               [](const CompactnessEntry& e) { return e.u == Region::open(0, 1); });
  o.require(it != c.entries.end() && it->exact_gap == 1 && it->limsup_u == 1 && it->exact_inner == 0,
            "compactness gap of (0,1) is 1");
  o.require(gallery_run().ok(), "gallery table pins");
  return o;
}

Outcome setwise_not_tv() {
  Outcome o;
  const Measure unif = Measure::uniform(0, 1);
  const auto fam = SequenceFamily::square_wave();
  const auto sets = setwise_test_family(4);
  const auto s = classify_setwise(fam, unif, sets);
  o.require(s.status == Status::ConvergesExact && s.tested == sets.size(),
            "setwise ConvergesExact on all " + std::to_string(sets.size()) + " sets");
  for (int n = 1; n <= 64; ++n) {
    const Measure term = family_term(fam, n);
    o.require(tv_distance(term, unif) == Rational(1, 2), "tv 1/2 at n=" + std::to_string(n));
    // square_wave(n) has breakpoints k/(2n): dyadic when n is a power of two.
    if ((n & (n - 1)) == 0 && n <= 512) {
      int level = 1;
      while ((1 << (level - 1)) < n) ++level;
      o.require(tv_brute_oracle(term, unif, level) == Rational(1, 2), "oracle tv at n=" + std::to_string(n));
    }
  }
  const auto t = eventual_tv(fam, unif);
  o.require(t && t->limit == Rational(1, 2) && t->attained_from == 1, "tv tail is 1/2 from n=1");
  classify(fam, unif, Budget{2, 2, 64});
  return o;
}

Outcome certificate_trials() {
  Outcome o;
  Sampler s(1001);
  int hypotheses = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const PiecewiseFunc f = trial % 2 ? s.continuous_function(4, 3, 2) : s.simple_function(4, 3, 2);
    const Rational eps(s.integer(1, 8), 4);
    const Measure nu = s.mixed_measure(3, 3);
    const auto cert = make_certificate(f, eps);
    // Half the trials mix in a small perturbation, the rest an arbitrary one.
    const Rational t = trial % 4 < 2 ? min(cert.cell_tolerance, Rational(1)) * Rational(s.integer(0, 15), 16)
                                     : Rational(s.integer(0, 16), 16);
    const Rational ts[] = {1 - t, t};
    const Measure parts[] = {nu, s.mixed_measure(3, 3)};
    const Measure rho = convex_combine(ts, parts);
    const auto check = certificate_check(cert, nu, rho);
    const Rational margin = eps - abs(oracle::integrate(nu, f) - oracle::integrate(rho, f));
    o.require(check.gap == margin, "exact margin at trial " + std::to_string(trial));
    if (check.hypothesis) {
      ++hypotheses;
      o.require(check.conclusion && margin > 0, "hypothesis without conclusion at trial " + std::to_string(trial));
    }
  }
  o.require(hypotheses >= 5000, "too few trials satisfied the hypothesis");
  o.detail = o.pass ? std::to_string(hypotheses) + " trials met the hypothesis" : o.detail;
  return o;
}

Outcome vague_bound() {
  Outcome o;
  Sampler s(1002);
  int monotone_violations = 0;
  int monotone_f_violations = 0;
  std::string first;
  for (int trial = 0; trial < 1000; ++trial) {
    const bool monotone = trial % 4 == 3;
    const PiecewiseFunc f = monotone ? s.monotone_function(4, 3, 2) : s.continuous_function(4, 3, 2);
    const Measure nu = s.mixed_measure(3, 4);
    const Rational exact = oracle::integrate(nu, f);
    const Rational eps(s.integer(1, 8), 8);
    const int n1 = vague_grid_for(f, eps);
    o.require(Rational(n1) > 2 * f.lipschitz() / eps, "grid too coarse at trial " + std::to_string(trial));
    const Rational err = abs(exact - integrate(vague_approximate(nu, n1).atoms, f));
    o.require(err <= eps, "error above epsilon at trial " + std::to_string(trial));

    Rational prev;
    for (int j = 1; j <= 10; ++j) {
      const int n = 1 << j;
      const Rational e = abs(exact - integrate(vague_approximate(nu, n).atoms, f));
      o.require(e <= f.lipschitz() / n, "error above L/2^j at trial " + std::to_string(trial));
      if (j > 1 && e > prev) {
        if (monotone) ++monotone_f_violations;
        if (monotone_violations++ == 0) {
          first = "trial " + std::to_string(trial) + ": error " + prev.str() + " at n1=" + std::to_string(n / 2) +
                  " then " + e.str() + " at n1=" + std::to_string(n);
        }
      }
      prev = e;
    }
    if (prev > f.lipschitz() / 1024) o.require(false, "error not tending to 0");
  }
  o.require(monotone_f_violations == 0, "monotone f lost monotonicity");
  if (o.pass && monotone_violations > 0) {
    o.pass = false;
    o.detail = "error increased along n1 = 2^j in " + std::to_string(monotone_violations) +
               " steps (none for monotone f; L/2^j bound and eps bound hold); first: " + first;
  }
  return o;
}

Outcome metric_axioms() {
  Outcome o;
  Sampler s(1003);
  for (int trial = 0; trial < 2000; ++trial) {
    const Measure a = s.atomic_measure(5, 4);
    const Measure b = s.atomic_measure(5, 4);
    const Measure c = s.atomic_measure(5, 4);
    const std::string at = " at trial " + std::to_string(trial);
    for (const auto& d : std::vector<std::function<Rational(const Measure&, const Measure&)>>{
             tv_distance, prohorov_distance}) {
      o.require(d(a, b) == d(b, a), "symmetry" + at);
      o.require(d(a, a) == 0 && (d(a, b) == 0) == (a == b), "identity" + at);
      o.require(d(a, c) <= d(a, b) + d(b, c), "triangle" + at);
    }
    o.require(tv_distance(a, b) == tv_brute_oracle(a, b, 4), "tv vs brute oracle" + at);
    o.require(tv_distance(a, b) == oracle::tv_atomic(a, b), "tv vs half l1" + at);
    o.require(prohorov_distance(a, b) == oracle::prohorov(a, b), "prohorov vs oracle" + at);
    o.require(prohorov_distance(a, b) <= tv_distance(a, b), "prohorov above tv" + at);
  }
  return o;
}

Outcome portmanteau() {
  Outcome o;
  const Measure unif = Measure::uniform(0, 1);
  const std::vector<std::pair<SequenceFamily, Measure>> gallery = {
      {SequenceFamily::dirac_at(), Measure::dirac(0)},
      {SequenceFamily::square_wave(), unif},
      {SequenceFamily::constant(unif), unif},
      {SequenceFamily::uniform_on(), Measure::dirac(0)}};
  for (const auto& [fam, c] : gallery) {
    o.require(portmanteau_crosscheck(fam, c, 3).agree, "disagreement on " + fam.name());
  }
  Sampler s(1004);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Measure> terms;
    const int len = static_cast<int>(s.integer(1, 12));
    const Measure settle = s.mixed_measure(2, 2);
    for (int n = 1; n <= len; ++n) terms.push_back(s.coin() ? settle : s.mixed_measure(2, 2));
    const Measure c = s.coin() ? settle : s.mixed_measure(2, 2);
    const auto fam = SequenceFamily::tabulated(terms);
    o.require(portmanteau_crosscheck(fam, c, 2).agree, "disagreement on tabulated trial " + std::to_string(trial));
    classify(fam, c, Budget{2, 2, 64});
  }
  return o;
}

Subset to_subset(std::uint32_t m) {
  Subset out;
  for (int x = 0; x < 32; ++x) {
    if (m >> x & 1u) out.push_back(x + 1);
  }
  return out;
}

Outcome sigma_atoms_check() {
  Outcome o;
  for (int m = 1; m <= 4; ++m) {
    const std::uint32_t subsets = 1u << m;
    for (std::uint64_t family = 0; family < (std::uint64_t{1} << subsets); ++family) {
      std::vector<std::uint32_t> gens;
      std::vector<Subset> gen_sets;
      for (std::uint32_t x = 0; x < subsets; ++x) {
        if (family >> x & 1u) {
          gens.push_back(x);
          gen_sets.push_back(to_subset(x));
        }
      }
      std::vector<Subset> expected;
      for (auto a : oracle::sigma_atoms(m, gens)) expected.push_back(to_subset(a));
      std::sort(expected.begin(), expected.end());
      o.require(atoms_of(m, gen_sets) == expected, "atoms differ for m=" + std::to_string(m));
    }
  }
  Sampler s(1005);
  for (int trial = 0; trial < 1000; ++trial) {
    const int m = static_cast<int>(s.integer(1, 8));
    std::vector<Subset> gens;
    for (int g = static_cast<int>(s.integer(0, 3)); g > 0; --g) {
      gens.push_back(to_subset(static_cast<std::uint32_t>(s.integer(0, (1 << m) - 1))));
    }
    const auto fsa = make_sigma_algebra(m, gens);
    const AtomMeasure nu = s.atom_measure(fsa.atoms.size());
    Subset a;
    Rational nu_a;
    for (std::size_t i = 0; i < fsa.atoms.size(); ++i) {
      if (s.coin()) {
        a.insert(a.end(), fsa.atoms[i].begin(), fsa.atoms[i].end());
        nu_a += nu.weights[i];
      }
    }
    std::sort(a.begin(), a.end());
    const Rational eps(1, s.integer(1, 100));
    const auto w = dense_family_member(fsa, nu, a, eps);
    Rational rho_a, total;
    bool grid = true;
    for (std::size_t i = 0; i < fsa.atoms.size(); ++i) {
      const Rational& x = w.rho.weights[i];
      total += x;
      grid = grid && x >= 0 && (x * Rational(static_cast<long>(w.denominator))).is_integer();
      if (std::includes(a.begin(), a.end(), fsa.atoms[i].begin(), fsa.atoms[i].end())) rho_a += x;
    }
    const std::string at = " at query " + std::to_string(trial);
    o.require(total == 1 && grid, "rho off the dyadic simplex" + at);
    o.require(w.margin == eps - abs(rho_a - nu_a) && w.margin > 0, "margin" + at);
  }
  return o;
}

Outcome hierarchy() {
  Outcome o;
  Sampler s(1006);
  for (int trial = 0; trial < 20; ++trial) {
    const Measure c = trial % 3 == 0 ? Measure::dirac(0) : s.mixed_measure(2, 2);
    for (const auto& fam : {SequenceFamily::dirac_at(), SequenceFamily::uniform_on(),
                            SequenceFamily::square_wave(), SequenceFamily::constant(s.mixed_measure(2, 2))}) {
      classify(fam, c, Budget{2, 2, 64});
    }
  }
  for (const auto& v : g_runs) {
    if (converging(verdict(v, Mode::TV).status)) {
      o.require(converging(verdict(v, Mode::Setwise).status), "tv evidence without setwise evidence");
    }
    if (converging(verdict(v, Mode::Setwise).status)) {
      o.require(converging(verdict(v, Mode::Weak).status), "setwise evidence without weak evidence");
    }
  }
  for (int trial = 0; trial < 1000; ++trial) {
    const Measure a = s.mixed_measure(3, 3);
    const Measure b = s.mixed_measure(3, 3);
    const Rational tv = tv_distance(a, b);
    const Region r = s.region(3, 4);
    const PiecewiseFunc f = trial % 2 ? s.continuous_function(4, 3, 3) : s.simple_function(4, 3, 3);
    const std::string at = " at pair " + std::to_string(trial);
    o.require(abs(oracle::measure_of(a, r) - oracle::measure_of(b, r)) <= tv, "set bridge" + at);
    o.require(abs(oracle::integrate(a, f) - oracle::integrate(b, f)) <= 2 * f.sup_norm() * tv, "function bridge" + at);
  }
  o.detail = o.pass ? std::to_string(g_runs.size()) + " classifications checked" : o.detail;
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "gallery pins", 1, gallery_pins},
      {2, "setwise convergence without tv convergence", 5, setwise_not_tv},
      {3, "quantization certificate", 30, certificate_trials},
      {4, "grid approximation bound", 30, vague_bound},
      {5, "metric axioms", 60, metric_axioms},
      {6, "portmanteau open/closed agreement", 10, portmanteau},
      {7, "sigma-algebra atoms and dense family", 30, sigma_atoms_check},
      {8, "mode hierarchy", 0, hierarchy},
  };
  int unexpected = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      out.require(false, "runtime above " + std::to_string(static_cast<int>(c.limit_seconds)) + " s");
    }
    const bool documented = !out.pass && c.id == kDocumentedFailure;
    if (!out.pass && !documented) ++unexpected;
    std::printf("%s criterion %d %-44s %7.2f s  %s\n",
                out.pass ? "PASS" : (documented ? "FAIL (documented)" : "FAIL"), c.id, c.name, secs,
                out.detail.c_str());
  }
  return unexpected == 0 ? 0 : 1;
}
