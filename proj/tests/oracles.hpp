#pragma once

// Reference computations used only by the tests. Each one works from the raw
// definitions rather than from the library routine it checks.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "measure_modes/measure.hpp"
#include "measure_modes/piecewise.hpp"
#include "measure_modes/region.hpp"

namespace oracle {

using measure_modes::Interval;
using measure_modes::Measure;
using measure_modes::PiecewiseFunc;
using measure_modes::Rational;
using measure_modes::Region;

inline bool in_interval(const Interval& iv, const Rational& x) {
  const bool left = iv.lo_closed ? iv.lo <= x : iv.lo < x;
  const bool right = iv.hi_closed ? x <= iv.hi : x < iv.hi;
  return left && right;
}

inline bool member(const std::vector<Interval>& pieces, const Rational& x) {
  return std::any_of(pieces.begin(), pieces.end(), [&](const Interval& iv) { return in_interval(iv, x); });
}

inline bool member(const Region& r, const Rational& x) { return member(r.components(), x); }

/// Every i/2^level and every midpoint between neighbours.
inline std::vector<Rational> probe_points(int level) {
  std::vector<Rational> out;
  const std::int64_t cells = std::int64_t{1} << level;
  for (std::int64_t i = 0; i <= 2 * cells; ++i) out.push_back(Rational(i, 2 * cells));
  return out;
}

/// Evaluation straight from breakpoints and values.
inline Rational eval(const PiecewiseFunc& f, const Rational& x) {
  const auto& b = f.breakpoints();
  const auto& v = f.values();
  if (f.kind() == measure_modes::FuncKind::Simple) {
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
      if (x < b[i + 1] || i + 2 == b.size()) return v[i];
    }
    return v.back();
  }
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    if (x <= b[i + 1]) return v[i] + (v[i + 1] - v[i]) * (x - b[i]) / (b[i + 1] - b[i]);
  }
  return v.back();
}

inline std::vector<Rational> cut_points(const Measure& m, const Region* r, const PiecewiseFunc* f) {
  std::set<Rational> pts{Rational(0), Rational(1)};
  for (const auto& b : m.density().breakpoints()) pts.insert(b);
  if (r != nullptr) {
    for (const auto& c : r->components()) {
      pts.insert(c.lo);
      pts.insert(c.hi);
    }
  }
  if (f != nullptr) {
    for (const auto& b : f->breakpoints()) pts.insert(b);
  }
  return {pts.begin(), pts.end()};
}

/// Atom masses by direct membership plus the density integrated segment by segment.
inline Rational measure_of(const Measure& m, const Region& r) {
  Rational s;
  for (const auto& a : m.atoms()) {
    if (member(r, a.location)) s += a.mass;
  }
  const auto pts = cut_points(m, &r, nullptr);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Rational mid = (pts[i] + pts[i + 1]) / 2;
    if (member(r, mid)) s += eval(m.density(), mid) * (pts[i + 1] - pts[i]);
  }
  return s;
}

/// Simpson's rule on every segment where both f and the density are polynomial.
inline Rational integrate(const Measure& m, const PiecewiseFunc& f) {
  Rational s;
  for (const auto& a : m.atoms()) s += a.mass * eval(f, a.location);
  const auto pts = cut_points(m, nullptr, &f);
  const bool simple = f.kind() == measure_modes::FuncKind::Simple;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Rational h = pts[i + 1] - pts[i];
    const Rational mid = (pts[i] + pts[i + 1]) / 2;
    const Rational d = eval(m.density(), mid);
    if (simple) {
      s += h * d * eval(f, mid);
    } else {
      s += h * d * (eval(f, pts[i]) + 4 * eval(f, mid) + eval(f, pts[i + 1])) / 6;
    }
  }
  return s;
}

/// Half the l1 distance between atom masses.
inline Rational tv_atomic(const Measure& a, const Measure& b) {
  std::map<Rational, Rational> diff;
  for (const auto& x : a.atoms()) diff[x.location] += x.mass;
  for (const auto& x : b.atoms()) diff[x.location] -= x.mass;
  Rational s;
  for (const auto& [loc, d] : diff) s += measure_modes::abs(d);
  return s / 2;
}

/// Prohorov distance of atomic measures: the smallest candidate epsilon that
/// satisfies every subset constraint in both directions, with closed neighbourhoods.
inline Rational prohorov(const Measure& a, const Measure& b) {
  std::map<Rational, std::pair<Rational, Rational>> mass;
  for (const auto& x : a.atoms()) mass[x.location].first += x.mass;
  for (const auto& x : b.atoms()) mass[x.location].second += x.mass;
  std::vector<Rational> loc;
  std::vector<Rational> pa, pb;
  for (const auto& [x, m] : mass) {
    loc.push_back(x);
    pa.push_back(m.first);
    pb.push_back(m.second);
  }
  const std::size_t n = loc.size();
  auto neighbourhood_mass = [&](std::uint32_t set, const Rational& eps, const std::vector<Rational>& w) {
    Rational s;
    for (std::size_t y = 0; y < n; ++y) {
      for (std::size_t x = 0; x < n; ++x) {
        if ((set >> x & 1u) && measure_modes::abs(loc[x] - loc[y]) <= eps) {
          s += w[y];
          break;
        }
      }
    }
    return s;
  };
  auto set_mass = [&](std::uint32_t set, const std::vector<Rational>& w) {
    Rational s;
    for (std::size_t x = 0; x < n; ++x) {
      if (set >> x & 1u) s += w[x];
    }
    return s;
  };
  std::set<Rational> dists{Rational(0)};
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) dists.insert(measure_modes::abs(loc[x] - loc[y]));
  }
  std::set<Rational> candidates(dists.begin(), dists.end());
  for (std::uint32_t set = 1; set < (1u << n); ++set) {
    for (const auto& d : dists) {
      candidates.insert(measure_modes::positive_part(set_mass(set, pa) - neighbourhood_mass(set, d, pb)));
      candidates.insert(measure_modes::positive_part(set_mass(set, pb) - neighbourhood_mass(set, d, pa)));
    }
  }
  for (const auto& eps : candidates) {
    bool ok = true;
    for (std::uint32_t set = 1; set < (1u << n) && ok; ++set) {
      ok = set_mass(set, pa) <= neighbourhood_mass(set, eps, pb) + eps &&
           set_mass(set, pb) <= neighbourhood_mass(set, eps, pa) + eps;
    }
    if (ok) return eps;
  }
  return Rational(1);
}

/// Atoms of the σ-algebra on {0..m-1} generated by bitmask generators: close
/// under complement and union, then keep the minimal nonempty members.
inline std::vector<std::uint32_t> sigma_atoms(int m, const std::vector<std::uint32_t>& gens) {
  const std::uint32_t full = (1u << m) - 1;
  std::set<std::uint32_t> algebra{0u, full};
  for (auto g : gens) algebra.insert(g & full);
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<std::uint32_t> snapshot(algebra.begin(), algebra.end());
    for (auto x : snapshot) {
      grew |= algebra.insert(full & ~x).second;
      for (auto y : snapshot) grew |= algebra.insert(x | y).second;
    }
  }
  std::vector<std::uint32_t> atoms;
  for (auto x : algebra) {
    if (x == 0) continue;
    const bool minimal = std::none_of(algebra.begin(), algebra.end(),
                                      [&](std::uint32_t y) { return y != 0 && y != x && (y & x) == y; });
    if (minimal) atoms.push_back(x);
  }
  return atoms;
}

}  // namespace oracle
