#include "measure_modes/campaign.hpp"

#include <algorithm>
#include <functional>

#include "measure_modes/approx.hpp"
#include "measure_modes/json_io.hpp"
#include "measure_modes/metrics.hpp"
#include "measure_modes/random.hpp"
#include "measure_modes/sequences.hpp"
#include "measure_modes/sigma_atoms.hpp"

namespace measure_modes {

namespace {

CampaignResult campaign(const std::string& property, std::size_t trials,
                        const std::function<std::string()>& trial) {
  CampaignResult r{property, trials, 0, {}};
  for (std::size_t i = 0; i < trials; ++i) {
    std::string bad = trial();
    if (bad.empty()) continue;
    if (r.violations++ == 0) r.first_violation = "trial " + std::to_string(i) + ": " + bad;
  }
  return r;
}

std::string dump(const Measure& m) { return to_json(m).dump(); }

}  // namespace

std::vector<CampaignResult> run_campaigns(std::uint64_t seed, std::size_t trials) {
  Sampler s(seed);
  std::vector<CampaignResult> out;

  out.push_back(campaign("metric axioms (tv, prohorov)", trials, [&]() -> std::string {
    const Measure a = s.atomic_measure(4, 3), b = s.atomic_measure(4, 3), c = s.atomic_measure(4, 3);
    for (auto d : {&tv_distance, &prohorov_distance}) {
      if (d(a, b) != d(b, a)) return "asymmetric on " + dump(a) + ", " + dump(b);
      if (!d(a, a).is_zero()) return "d(a,a) != 0 for " + dump(a);
      if (d(a, c) > d(a, b) + d(b, c)) return "triangle fails on " + dump(a) + ", " + dump(b) + ", " + dump(c);
    }
    if (prohorov_distance(a, b) > tv_distance(a, b)) return "prohorov > tv on " + dump(a) + ", " + dump(b);
    return {};
  }));

  out.push_back(campaign("quantization certificate", trials, [&]() -> std::string {
    const PiecewiseFunc f = s.continuous_function(4, 3, 2);
    const Rational eps(s.integer(1, 8), 4);
    const Measure nu = s.mixed_measure(3, 3);
    const auto cert = make_certificate(f, eps);
    const Rational t = min(cert.cell_tolerance, Rational(1)) * Rational(s.integer(0, 15), 16);
    const Rational ts[] = {1 - t, t};
    const Measure parts[] = {nu, s.mixed_measure(3, 3)};
    const auto check = certificate_check(cert, nu, convex_combine(ts, parts));
    if (check.hypothesis && !check.conclusion) return "hypothesis without conclusion for " + dump(nu);
    return {};
  }));

  out.push_back(campaign("vague approximation bound", trials, [&]() -> std::string {
    const PiecewiseFunc f = s.continuous_function(4, 3, 2);
    const Rational eps(s.integer(1, 8), 8);
    const Measure nu = s.mixed_measure(3, 4);
    const auto approx = vague_approximate(nu, vague_grid_for(f, eps));
    if (abs(integrate(nu, f) - integrate(approx.atoms, f)) > eps) return "error above eps for " + dump(nu);
    return {};
  }));

  out.push_back(campaign("mode hierarchy bridges", trials, [&]() -> std::string {
    const Measure a = s.mixed_measure(3, 3), b = s.mixed_measure(3, 3);
    const Rational tv = tv_distance(a, b);
    const Region r = s.region(2, 3);
    if (abs(measure_of(a, r) - measure_of(b, r)) > tv) return "set deviation above tv";
    const PiecewiseFunc f = s.continuous_function(4, 3, 2);
    if (abs(integrate(a, f) - integrate(b, f)) > 2 * f.sup_norm() * tv) return "integral deviation above 2|f|tv";
    return {};
  }));

  out.push_back(campaign("portmanteau on tabulated prefixes", trials, [&]() -> std::string {
    std::vector<Measure> terms;
    const auto len = s.integer(1, 6);
    for (std::int64_t i = 0; i < len; ++i) terms.push_back(s.mixed_measure(2, 2));
    const auto report = portmanteau_crosscheck(SequenceFamily::tabulated(terms), s.mixed_measure(2, 2), 1);
    if (!report.agree) return "open and closed verdicts disagree";
    return {};
  }));

  out.push_back(campaign("dense family witness", trials, [&]() -> std::string {
    const int m = static_cast<int>(s.integer(1, 6));
    std::vector<Subset> gens;
    for (int g = 0; g < 2; ++g) {
      Subset sub;
      for (int x = 1; x <= m; ++x) {
        if (s.coin()) sub.push_back(x);
      }
      gens.push_back(sub);
    }
    const auto fsa = make_sigma_algebra(m, gens);
    const AtomMeasure nu = s.atom_measure(fsa.atoms.size());
    Subset a;
    for (const auto& atom : fsa.atoms) {
      if (s.coin()) a.insert(a.end(), atom.begin(), atom.end());
    }
    std::sort(a.begin(), a.end());
    const Rational eps(1, s.integer(1, 64));
    const auto w = dense_family_member(fsa, nu, a, eps);
    const Rational dev = abs(atom_measure_of(fsa, w.rho, a) - atom_measure_of(fsa, nu, a));
    if (w.margin != eps - dev || w.margin.sign() <= 0) return "margin not exact or not positive";
    if (w.denominator > 128) return "denominator above 128";
    return {};
  }));
  return out;
}

}  // namespace measure_modes
