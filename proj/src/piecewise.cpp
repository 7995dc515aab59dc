#include "measure_modes/piecewise.hpp"

#include <algorithm>
#include <stdexcept>

namespace measure_modes {

namespace {

void check_breakpoints(const std::vector<Rational>& b) {
  if (b.size() < 2) throw std::invalid_argument("piecewise function needs at least two breakpoints");
  if (b.front() != 0 || b.back() != 1) {
    throw std::invalid_argument("breakpoints must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < b.size(); ++i) {
    if (!(b[i - 1] < b[i])) throw std::invalid_argument("breakpoints must be strictly increasing");
  }
}

// Clips the value interval I to [vmin, vmax] (closed); returns false if empty.
bool clip_values(const Rational& vmin, const Rational& vmax, Rational& lo, Rational& hi,
                 bool& lo_closed, bool& hi_closed) {
  if (lo < vmin) {
    lo = vmin;
    lo_closed = true;
  }
  if (hi > vmax) {
    hi = vmax;
    hi_closed = true;
  }
  return !Interval{lo, hi, lo_closed, hi_closed}.empty();
}

}  // namespace

PiecewiseFunc PiecewiseFunc::continuous(std::vector<Rational> breakpoints,
                                        std::vector<Rational> values) {
  check_breakpoints(breakpoints);
  if (values.size() != breakpoints.size()) {
    throw std::invalid_argument("continuous piecewise-linear function needs one value per breakpoint");
  }
  return PiecewiseFunc(FuncKind::ContinuousPL, std::move(breakpoints), std::move(values));
}

PiecewiseFunc PiecewiseFunc::simple(std::vector<Rational> breakpoints, std::vector<Rational> values) {
  check_breakpoints(breakpoints);
  if (values.size() + 1 != breakpoints.size()) {
    throw std::invalid_argument("simple function needs one value per cell");
  }
  return PiecewiseFunc(FuncKind::Simple, std::move(breakpoints), std::move(values));
}

PiecewiseFunc PiecewiseFunc::constant(const Rational& c) { return simple({0, 1}, {c}); }

PiecewiseFunc PiecewiseFunc::identity() { return continuous({0, 1}, {0, 1}); }

PiecewiseFunc PiecewiseFunc::hat(const Rational& left, const Rational& peak, const Rational& right) {
  if (!(left < peak && peak < right) || peak < 0 || peak > 1) {
    throw std::invalid_argument("hat needs left < peak < right with peak in [0,1]");
  }
  auto tent = [&](const Rational& x) -> Rational {
    if (x <= left || x >= right) return 0;
    if (x <= peak) return (x - left) / (peak - left);
    return (right - x) / (right - peak);
  };
  std::vector<Rational> pts{Rational(0), max(left, Rational(0)), peak, min(right, Rational(1)),
                            Rational(1)};
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<Rational> vals;
  vals.reserve(pts.size());
  for (const auto& x : pts) vals.push_back(tent(x));
  return continuous(std::move(pts), std::move(vals));
}

std::optional<PiecewiseFunc> PiecewiseFunc::indicator(const Region& a) {
  std::vector<Rational> pts{Rational(0)};
  for (const auto& c : a.components()) {
    const bool hi_ok = c.hi == 1 ? c.hi_closed : !c.hi_closed;
    if (!c.lo_closed || !hi_ok || c.lo == c.hi) return std::nullopt;
    pts.push_back(c.lo);
    pts.push_back(c.hi);
  }
  pts.push_back(1);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<Rational> vals;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    vals.push_back(a.contains((pts[i] + pts[i + 1]) / 2) ? 1 : 0);
  }
  return simple(std::move(pts), std::move(vals));
}

std::size_t PiecewiseFunc::cell_of(const Rational& x) const {
  if (x < 0 || x > 1) throw std::out_of_range("point outside [0,1]: " + x.str());
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  std::size_t idx = static_cast<std::size_t>(it - breaks_.begin());
  // idx is the first breakpoint > x; the cell starts one before it.
  if (idx >= breaks_.size()) return cells() - 1;
  return idx - 1;
}

Rational PiecewiseFunc::operator()(const Rational& x) const {
  const std::size_t i = cell_of(x);
  if (kind_ == FuncKind::Simple) return values_[i];
  const Rational& x0 = breaks_[i];
  const Rational& x1 = breaks_[i + 1];
  return values_[i] + (values_[i + 1] - values_[i]) * (x - x0) / (x1 - x0);
}

Rational PiecewiseFunc::sup_norm() const {
  Rational m;
  for (const auto& v : values_) m = max(m, abs(v));
  return m;
}

Rational PiecewiseFunc::lipschitz() const {
  if (kind_ != FuncKind::ContinuousPL) {
    throw std::logic_error("Lipschitz constant requested for a simple function");
  }
  Rational l;
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
    l = max(l, abs((values_[i + 1] - values_[i]) / (breaks_[i + 1] - breaks_[i])));
  }
  return l;
}

Rational PiecewiseFunc::variation() const {
  Rational v;
  for (std::size_t i = 0; i + 1 < values_.size(); ++i) v += abs(values_[i + 1] - values_[i]);
  return v;
}

PiecewiseFunc PiecewiseFunc::canonical() const {
  std::vector<Rational> b{breaks_.front()};
  std::vector<Rational> v{values_.front()};
  if (kind_ == FuncKind::Simple) {
    for (std::size_t i = 1; i < values_.size(); ++i) {
      if (values_[i] != v.back()) {
        b.push_back(breaks_[i]);
        v.push_back(values_[i]);
      }
    }
    b.push_back(breaks_.back());
    return simple(std::move(b), std::move(v));
  }
  for (std::size_t i = 1; i + 1 < breaks_.size(); ++i) {
    const Rational left = (values_[i] - v.back()) / (breaks_[i] - b.back());
    const Rational right = (values_[i + 1] - values_[i]) / (breaks_[i + 1] - breaks_[i]);
    if (left != right) {
      b.push_back(breaks_[i]);
      v.push_back(values_[i]);
    }
  }
  b.push_back(breaks_.back());
  v.push_back(values_.back());
  return continuous(std::move(b), std::move(v));
}

Region func_preimage(const PiecewiseFunc& f, const Rational& lo, const Rational& hi, bool lo_closed,
                     bool hi_closed) {
  const Interval band{lo, hi, lo_closed, hi_closed};
  const auto& b = f.breakpoints();
  const auto& v = f.values();
  std::vector<Interval> pieces;
  if (f.kind() == FuncKind::Simple) {
    for (std::size_t i = 0; i < f.cells(); ++i) {
      if (band.contains(v[i])) pieces.push_back(Interval{b[i], b[i + 1], true, i + 1 == f.cells()});
    }
    return Region::from_intervals(std::move(pieces));
  }
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    const Rational& x0 = b[i];
    const Rational& x1 = b[i + 1];
    const Rational& v0 = v[i];
    const Rational& v1 = v[i + 1];
    if (v0 == v1) {
      if (band.contains(v0)) pieces.push_back(Interval{x0, x1, true, true});
      continue;
    }
    Rational vlo = lo, vhi = hi;
    bool clo = lo_closed, chi = hi_closed;
    if (!clip_values(min(v0, v1), max(v0, v1), vlo, vhi, clo, chi)) continue;
    auto x_at = [&](const Rational& val) { return x0 + (val - v0) * (x1 - x0) / (v1 - v0); };
    if (v0 < v1) {
      pieces.push_back(Interval{x_at(vlo), x_at(vhi), clo, chi});
    } else {
      pieces.push_back(Interval{x_at(vhi), x_at(vlo), chi, clo});
    }
  }
  return Region::from_intervals(std::move(pieces));
}

LevelPartition func_level_partition(const PiecewiseFunc& f, int n) {
  if (n < 1) throw std::invalid_argument("level partition needs n >= 1");
  LevelPartition out;
  const Rational m = f.sup_norm();
  if (m.is_zero()) {
    out.zero_function = true;
    out.cells.push_back(Region::whole());
    out.band_floor.push_back(0);
    return out;
  }
  const Rational width = 2 * m / n;
  for (int i = 1; i <= n; ++i) {
    Rational lo = -m + width * (i - 1);
    Rational hi = -m + width * i;
    out.cells.push_back(func_preimage(f, lo, hi, true, i == n));
    out.band_floor.push_back(std::move(lo));
  }
  return out;
}

}  // namespace measure_modes
