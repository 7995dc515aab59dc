#include "measure_modes/metrics.hpp"

#include <algorithm>
#include <cstdint>
#include <map>

namespace measure_modes {

Rational tv_distance(const Measure& a, const Measure& b) {
  Rational total;
  // Atoms: walk both sorted lists together.
  std::map<Rational, Rational> diff;
  for (const auto& atom : a.atoms()) diff[atom.location] += atom.mass;
  for (const auto& atom : b.atoms()) diff[atom.location] -= atom.mass;
  for (const auto& [loc, d] : diff) total += positive_part(d);

  const auto pts = merged_breakpoints(a.density(), b.density());
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Rational mid = (pts[i] + pts[i + 1]) / 2;
    total += positive_part(a.density()(mid) - b.density()(mid)) * (pts[i + 1] - pts[i]);
  }
  return total;
}

namespace {

struct SupportPoint {
  Rational x;
  Rational mass_a;
  Rational mass_b;
};

std::vector<SupportPoint> joint_support(const Measure& a, const Measure& b) {
  std::map<Rational, SupportPoint> pts;
  for (const auto& atom : a.atoms()) {
    auto& p = pts.try_emplace(atom.location, SupportPoint{atom.location, 0, 0}).first->second;
    p.mass_a += atom.mass;
  }
  for (const auto& atom : b.atoms()) {
    auto& p = pts.try_emplace(atom.location, SupportPoint{atom.location, 0, 0}).first->second;
    p.mass_b += atom.mass;
  }
  std::vector<SupportPoint> out;
  for (auto& [x, p] : pts) out.push_back(std::move(p));
  return out;
}

// Smallest eps with needed <= Q(closed eps-neighbourhood of A) + eps, given the
// distances of every support point to A and its Q-mass.
Rational one_sided_threshold(const Rational& needed,
                             std::vector<std::pair<Rational, const Rational*>>& dist_mass) {
  std::sort(dist_mass.begin(), dist_mass.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  Rational covered;
  std::size_t i = 0;
  while (i < dist_mass.size()) {
    const Rational t = dist_mass[i].first;
    while (i < dist_mass.size() && dist_mass[i].first == t) {
      covered += *dist_mass[i].second;
      ++i;
    }
    Rational candidate = max(t, needed - covered);
    if (i == dist_mass.size() || candidate < dist_mass[i].first) return candidate;
  }
  return needed;  // unreachable: the last step always returns
}

}  // namespace

Rational prohorov_distance(const Measure& a, const Measure& b) {
  if (!a.is_atomic() || !b.is_atomic()) {
    throw AtomicOnlyError("atomic-only operation: Prohorov distance needs purely atomic measures");
  }
  const auto support = joint_support(a, b);
  if (support.size() > kProhorovAtomCutoff) {
    throw AtomicOnlyError("atomic-only operation: joint support of " +
                          std::to_string(support.size()) + " points exceeds the cutoff of " +
                          std::to_string(kProhorovAtomCutoff));
  }
  const std::size_t n = support.size();
  Rational eps;
  std::vector<std::pair<Rational, const Rational*>> dist_mass(n);
  std::vector<Rational> dist(n);
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    Rational mass_a, mass_b;
    for (std::size_t j = 0; j < n; ++j) {
      if (mask & (1u << j)) {
        mass_a += support[j].mass_a;
        mass_b += support[j].mass_b;
      }
    }
    for (std::size_t s = 0; s < n; ++s) {
      bool first = true;
      for (std::size_t j = 0; j < n; ++j) {
        if (!(mask & (1u << j))) continue;
        Rational d = abs(support[s].x - support[j].x);
        if (first || d < dist[s]) dist[s] = std::move(d);
        first = false;
      }
    }
    if (mass_a > eps) {
      for (std::size_t s = 0; s < n; ++s) dist_mass[s] = {dist[s], &support[s].mass_b};
      eps = max(eps, one_sided_threshold(mass_a, dist_mass));
    }
    if (mass_b > eps) {
      for (std::size_t s = 0; s < n; ++s) dist_mass[s] = {dist[s], &support[s].mass_a};
      eps = max(eps, one_sided_threshold(mass_b, dist_mass));
    }
  }
  return eps;
}

Rational tv_brute_oracle(const Measure& a, const Measure& b, int level) {
  if (level < 0 || level > 10) throw std::invalid_argument("oracle level must be in [0, 10]");
  const std::int64_t cells = std::int64_t{1} << level;
  std::vector<Rational> deltas;
  for (std::int64_t i = 0; i <= cells; ++i) {
    const Region point = Region::point(dyadic(i, level));
    deltas.push_back(measure_of(a, point) - measure_of(b, point));
    if (i < cells) {
      const Region cell = Region::open(dyadic(i, level), dyadic(i + 1, level));
      deltas.push_back(measure_of(a, cell) - measure_of(b, cell));
    }
  }
  // Small grids: literal enumeration of every union of pieces.
  if (deltas.size() <= 12) {
    Rational best;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << deltas.size()); ++mask) {
      Rational s;
      for (std::size_t j = 0; j < deltas.size(); ++j) {
        if (mask & (1u << j)) s += deltas[j];
      }
      best = max(best, abs(s));
    }
    return best;
  }
  // The best union collects all pieces of one sign.
  Rational pos, neg;
  for (const auto& d : deltas) {
    if (d.sign() > 0) pos += d;
    else neg -= d;
  }
  return max(pos, neg);
}

std::size_t GaugeSpec::size() const {
  return std::visit([](const auto& v) { return v.size(); }, family);
}

GaugeResult gauge_contains(const GaugeSpec& g, const Measure& candidate) {
  if (g.epsilon.sign() <= 0) throw std::invalid_argument("gauge epsilon must be positive");
  if (g.size() == 0) throw std::invalid_argument("gauge family must be nonempty");
  GaugeResult out;
  auto consider = [&](std::size_t i, Rational dev) {
    if (i == 0 || dev > out.worst_deviation) {
      out.worst_deviation = std::move(dev);
      out.worst_index = i;
    }
  };
  if (const auto* funcs = std::get_if<std::vector<PiecewiseFunc>>(&g.family)) {
    for (std::size_t i = 0; i < funcs->size(); ++i) {
      consider(i, abs(integrate(candidate, (*funcs)[i]) - integrate(g.center, (*funcs)[i])));
    }
  } else {
    const auto& sets = std::get<std::vector<Region>>(g.family);
    for (std::size_t i = 0; i < sets.size(); ++i) {
      consider(i, abs(measure_of(candidate, sets[i]) - measure_of(g.center, sets[i])));
    }
  }
  out.margin = g.epsilon - out.worst_deviation;
  out.contained = out.margin.sign() > 0;
  return out;
}

}  // namespace measure_modes
