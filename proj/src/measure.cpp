#include "measure_modes/measure.hpp"

#include <algorithm>
#include <stdexcept>

namespace measure_modes {

Measure::Measure() : density_(PiecewiseFunc::constant(0)) {}

Measure::Measure(std::vector<Atom> atoms, PiecewiseFunc density)
    : atoms_(std::move(atoms)), density_(std::move(density)) {
  if (density_.kind() != FuncKind::Simple) {
    throw std::invalid_argument("density must be a simple (piecewise-constant) function");
  }
  for (const auto& a : atoms_) {
    if (a.location < 0 || a.location > 1) {
      throw std::invalid_argument("atom location outside [0,1]: " + a.location.str());
    }
  }
  std::stable_sort(atoms_.begin(), atoms_.end(),
                   [](const Atom& x, const Atom& y) { return x.location < y.location; });
}

Measure Measure::dirac(const Rational& p) { return atomic({Atom{p, 1}}); }

Measure Measure::uniform(const Rational& a, const Rational& b) {
  if (!(a < b)) throw std::invalid_argument("uniform(a,b) needs a < b");
  const Rational h = 1 / (b - a);
  return Measure({}, make_density({0, a, b, 1}, {0, h, 0}));
}

Measure Measure::atomic(std::vector<Atom> atoms) {
  return Measure(std::move(atoms), PiecewiseFunc::constant(0));
}

Measure Measure::square_wave(int n) {
  if (n < 1) throw std::invalid_argument("square wave needs n >= 1");
  std::vector<Rational> pts;
  std::vector<Rational> vals;
  for (int j = 0; j <= 2 * n; ++j) pts.emplace_back(j, 2 * n);
  for (int j = 0; j < 2 * n; ++j) vals.push_back(j % 2 == 0 ? 2 : 0);
  return Measure({}, PiecewiseFunc::simple(std::move(pts), std::move(vals)));
}

Rational Measure::atom_mass() const {
  Rational s;
  for (const auto& a : atoms_) s += a.mass;
  return s;
}

Rational Measure::density_mass() const { return density_integral(0, 1); }

Rational Measure::atom_at(const Rational& x) const {
  Rational s;
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                             [](const Atom& a, const Rational& v) { return a.location < v; });
  for (; it != atoms_.end() && it->location == x; ++it) s += it->mass;
  return s;
}

Rational Measure::density_integral(const Rational& lo, const Rational& hi) const {
  Rational s;
  if (!(lo < hi)) return s;
  const auto& b = density_.breakpoints();
  const auto& v = density_.values();
  for (std::size_t i = density_.cell_of(lo); i < v.size() && b[i] < hi; ++i) {
    if (v[i].is_zero()) continue;
    const Rational& l = max(b[i], lo);
    const Rational& r = min(b[i + 1], hi);
    if (l < r) s += v[i] * (r - l);
  }
  return s;
}

MeasureVerdict measure_validate(const Measure& m) {
  MeasureVerdict out;
  out.total = m.total_mass();
  auto fail = [&](std::string what, std::string detail) {
    if (out.valid) {
      out.valid = false;
      out.violated = std::move(what);
      out.detail = std::move(detail);
    }
  };
  const auto& atoms = m.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].mass.sign() < 0) {
      fail("negative_mass", "atom at " + atoms[i].location.str() + " has mass " + atoms[i].mass.str());
    }
    if (i > 0 && atoms[i].location == atoms[i - 1].location) {
      fail("duplicate_atom", "two atoms at " + atoms[i].location.str());
    }
  }
  for (const auto& v : m.density().values()) {
    if (v.sign() < 0) fail("negative_density", "density value " + v.str());
  }
  if (out.total != 1) fail("total_mass", "total mass is " + out.total.str() + ", expected 1/1");
  return out;
}

Rational measure_of(const Measure& m, const Region& a) {
  Rational s;
  for (const auto& atom : m.atoms()) {
    if (a.contains(atom.location)) s += atom.mass;
  }
  for (const auto& c : a.components()) s += m.density_integral(c.lo, c.hi);
  return s;
}

std::vector<Rational> merged_breakpoints(const PiecewiseFunc& f, const PiecewiseFunc& g) {
  std::vector<Rational> pts;
  pts.reserve(f.breakpoints().size() + g.breakpoints().size());
  std::merge(f.breakpoints().begin(), f.breakpoints().end(), g.breakpoints().begin(),
             g.breakpoints().end(), std::back_inserter(pts));
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

Rational integrate(const Measure& m, const PiecewiseFunc& f) {
  Rational s;
  for (const auto& atom : m.atoms()) s += atom.mass * f(atom.location);
  const PiecewiseFunc& d = m.density();
  if (d.is_zero()) return s;
  const auto pts = merged_breakpoints(f, d);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Rational& l = pts[i];
    const Rational& r = pts[i + 1];
    const Rational mid = (l + r) / 2;
    const Rational dv = d(mid);
    if (dv.is_zero()) continue;
    // Continuous f is affine on [l, r]; a simple f is constant there.
    const Rational mean = f.kind() == FuncKind::ContinuousPL ? (f(l) + f(r)) / 2 : f(mid);
    s += dv * mean * (r - l);
  }
  return s;
}

PiecewiseFunc make_density(std::vector<Rational> breakpoints, std::vector<Rational> values) {
  std::vector<Rational> pts{breakpoints.front()};
  std::vector<Rational> vals;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (breakpoints[i] == breakpoints[i + 1]) continue;
    pts.push_back(breakpoints[i + 1]);
    vals.push_back(values[i]);
  }
  return PiecewiseFunc::simple(std::move(pts), std::move(vals));
}

namespace {

template <class Op>
PiecewiseFunc combine_densities(const PiecewiseFunc& f, const PiecewiseFunc& g, Op op) {
  auto pts = merged_breakpoints(f, g);
  std::vector<Rational> vals;
  vals.reserve(pts.size() - 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Rational mid = (pts[i] + pts[i + 1]) / 2;
    vals.push_back(op(mid, f(mid), g(mid)));
  }
  return PiecewiseFunc::simple(std::move(pts), std::move(vals)).canonical();
}

}  // namespace

Measure measure_add(const Measure& a, const Measure& b) {
  std::vector<Atom> atoms;
  std::merge(a.atoms().begin(), a.atoms().end(), b.atoms().begin(), b.atoms().end(),
             std::back_inserter(atoms),
             [](const Atom& x, const Atom& y) { return x.location < y.location; });
  std::vector<Atom> merged;
  for (auto& atom : atoms) {
    if (!merged.empty() && merged.back().location == atom.location) {
      merged.back().mass += atom.mass;
    } else {
      merged.push_back(std::move(atom));
    }
  }
  auto density = combine_densities(
      a.density(), b.density(),
      [](const Rational&, const Rational& x, const Rational& y) { return x + y; });
  return Measure(std::move(merged), std::move(density));
}

Measure measure_scale(const Measure& m, const Rational& c) {
  std::vector<Atom> atoms = m.atoms();
  for (auto& a : atoms) a.mass *= c;
  std::vector<Rational> vals = m.density().values();
  for (auto& v : vals) v *= c;
  return Measure(std::move(atoms), PiecewiseFunc::simple(m.density().breakpoints(), std::move(vals)));
}

Measure measure_restrict(const Measure& m, const Region& a) {
  std::vector<Atom> atoms;
  for (const auto& atom : m.atoms()) {
    if (a.contains(atom.location)) atoms.push_back(atom);
  }
  std::vector<Rational> pts = m.density().breakpoints();
  for (const auto& c : a.components()) {
    pts.push_back(c.lo);
    pts.push_back(c.hi);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<Rational> vals;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const Rational mid = (pts[i] + pts[i + 1]) / 2;
    vals.push_back(a.contains(mid) ? m.density()(mid) : Rational(0));
  }
  return Measure(std::move(atoms), PiecewiseFunc::simple(std::move(pts), std::move(vals)).canonical());
}

Measure convex_combine(std::span<const Rational> weights, std::span<const Measure> measures) {
  if (weights.size() != measures.size()) {
    throw std::invalid_argument("convex_combine: weights and measures differ in length");
  }
  if (weights.empty()) throw std::invalid_argument("convex_combine: empty mixture");
  Rational total;
  for (const auto& w : weights) {
    if (w.sign() < 0) throw std::invalid_argument("convex_combine: negative weight " + w.str());
    total += w;
  }
  if (total != 1) {
    throw std::invalid_argument("convex_combine: weights sum to " + total.str() + ", expected 1/1");
  }
  Measure out;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i].is_zero()) continue;
    out = measure_add(out, measure_scale(measures[i], weights[i]));
  }
  return out;
}

}  // namespace measure_modes
