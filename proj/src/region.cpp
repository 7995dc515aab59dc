#include "measure_modes/region.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace measure_modes {

bool Interval::contains(const Rational& x) const {
  if (x < lo || x > hi) return false;
  if (x == lo && !lo_closed) return false;
  if (x == hi && !hi_closed) return false;
  return true;
}

Region Region::interval(const Rational& lo, const Rational& hi, bool lo_closed, bool hi_closed) {
  return from_intervals({Interval{lo, hi, lo_closed, hi_closed}});
}

Region Region::from_intervals(std::vector<Interval> pieces) {
  for (const auto& p : pieces) {
    if (p.lo < 0 || p.hi > 1 || p.lo > 1 || p.hi < 0) {
      throw std::invalid_argument("interval endpoint outside [0,1]: [" + p.lo.str() + ", " +
                                  p.hi.str() + "]");
    }
  }
  std::erase_if(pieces, [](const Interval& p) { return p.empty(); });
  // Closed left ends sort first so that ties on lo merge correctly.
  std::sort(pieces.begin(), pieces.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
  });

  Region out;
  for (auto& p : pieces) {
    if (out.parts_.empty()) {
      out.parts_.push_back(std::move(p));
      continue;
    }
    Interval& cur = out.parts_.back();
    const bool touches = p.lo < cur.hi || (p.lo == cur.hi && (cur.hi_closed || p.lo_closed));
    if (!touches) {
      out.parts_.push_back(std::move(p));
      continue;
    }
    if (p.lo == cur.lo) cur.lo_closed = cur.lo_closed || p.lo_closed;
    if (p.hi > cur.hi) {
      cur.hi = p.hi;
      cur.hi_closed = p.hi_closed;
    } else if (p.hi == cur.hi) {
      cur.hi_closed = cur.hi_closed || p.hi_closed;
    }
  }
  return out;
}

bool Region::is_whole() const {
  return parts_.size() == 1 && parts_[0].lo == 0 && parts_[0].hi == 1 && parts_[0].lo_closed &&
         parts_[0].hi_closed;
}

bool Region::contains(const Rational& x) const {
  // Components are sorted; find the last one starting at or before x.
  auto it = std::upper_bound(parts_.begin(), parts_.end(), x,
                             [](const Rational& v, const Interval& p) { return v < p.lo; });
  if (it == parts_.begin()) return false;
  return std::prev(it)->contains(x);
}

Rational Region::length() const {
  Rational total;
  for (const auto& p : parts_) total += p.hi - p.lo;
  return total;
}

bool Region::is_closed() const {
  return std::all_of(parts_.begin(), parts_.end(),
                     [](const Interval& p) { return p.lo_closed && p.hi_closed; });
}

bool Region::is_relatively_open() const {
  return std::all_of(parts_.begin(), parts_.end(), [](const Interval& p) {
    const bool lo_ok = !p.lo_closed || p.lo == 0;
    const bool hi_ok = !p.hi_closed || p.hi == 1;
    return lo_ok && hi_ok && p.lo < p.hi;
  });
}

Region region_union(const Region& a, const Region& b) {
  std::vector<Interval> all = a.components();
  all.insert(all.end(), b.components().begin(), b.components().end());
  return Region::from_intervals(std::move(all));
}

Region region_intersection(const Region& a, const Region& b) {
  std::vector<Interval> pieces;
  for (const auto& p : a.components()) {
    for (const auto& q : b.components()) {
      if (q.lo > p.hi) break;
      Interval r;
      if (p.lo > q.lo) {
        r.lo = p.lo;
        r.lo_closed = p.lo_closed;
      } else if (q.lo > p.lo) {
        r.lo = q.lo;
        r.lo_closed = q.lo_closed;
      } else {
        r.lo = p.lo;
        r.lo_closed = p.lo_closed && q.lo_closed;
      }
      if (p.hi < q.hi) {
        r.hi = p.hi;
        r.hi_closed = p.hi_closed;
      } else if (q.hi < p.hi) {
        r.hi = q.hi;
        r.hi_closed = q.hi_closed;
      } else {
        r.hi = p.hi;
        r.hi_closed = p.hi_closed && q.hi_closed;
      }
      if (!r.empty()) pieces.push_back(std::move(r));
    }
  }
  return Region::from_intervals(std::move(pieces));
}

Region region_complement(const Region& a) {
  std::vector<Interval> gaps;
  Rational cursor = 0;
  bool cursor_included = true;
  for (const auto& p : a.components()) {
    Interval gap{cursor, p.lo, cursor_included, !p.lo_closed};
    if (!gap.empty()) gaps.push_back(std::move(gap));
    cursor = p.hi;
    cursor_included = !p.hi_closed;
  }
  Interval tail{cursor, Rational(1), cursor_included, true};
  if (!tail.empty()) gaps.push_back(std::move(tail));
  return Region::from_intervals(std::move(gaps));
}

Region region_difference(const Region& a, const Region& b) {
  return region_intersection(a, region_complement(b));
}

Region region_closure(const Region& a) {
  std::vector<Interval> pieces = a.components();
  for (auto& p : pieces) {
    p.lo_closed = true;
    p.hi_closed = true;
  }
  return Region::from_intervals(std::move(pieces));
}

Region region_shrink(const Region& u, const Rational& delta) {
  if (delta.sign() <= 0) throw std::invalid_argument("shrink radius must be positive");
  std::vector<Interval> pieces;
  for (const auto& p : u.components()) {
    // A ball may spill past 0 or 1 only where the component already holds that endpoint.
    Rational lo = (p.lo == 0 && p.lo_closed) ? Rational(0) : p.lo + delta;
    Rational hi = (p.hi == 1 && p.hi_closed) ? Rational(1) : p.hi - delta;
    if (lo <= hi) pieces.push_back(Interval{std::move(lo), std::move(hi), true, true});
  }
  return Region::from_intervals(std::move(pieces));
}

bool region_subset(const Region& a, const Region& b) { return region_difference(a, b).empty(); }

bool region_disjoint(const Region& a, const Region& b) {
  return region_intersection(a, b).empty();
}

std::vector<Region> base_enumerate(int k) {
  if (k < 1) throw std::invalid_argument("base complexity must be >= 1");
  if (k > 6) throw std::invalid_argument("base complexity above 6 is not enumerable in practice");
  const std::int64_t cells = std::int64_t{1} << k;
  std::vector<Rational> grid;
  grid.reserve(static_cast<std::size_t>(cells + 1));
  for (std::int64_t i = 0; i <= cells; ++i) grid.push_back(dyadic(i, k));

  std::vector<Region> out;
  std::vector<Interval> stack;
  // Components (a_j, b_j) with a_1 < b_1 <= a_2 < b_2 <= ... on the grid.
  std::function<void(std::int64_t)> extend = [&](std::int64_t first) {
    for (std::int64_t a = first; a < cells; ++a) {
      for (std::int64_t b = a + 1; b <= cells; ++b) {
        stack.push_back(Interval{grid[a], grid[b], false, false});
        out.push_back(Region::from_intervals(stack));
        if (static_cast<int>(stack.size()) < k) extend(b);
        stack.pop_back();
      }
    }
  };
  extend(0);
  return out;
}

std::vector<Region> relative_open_variants(const Region& base_member) {
  const auto& parts = base_member.components();
  if (parts.empty()) return {};
  const bool at_zero = parts.front().lo == 0 && !parts.front().lo_closed;
  const bool at_one = parts.back().hi == 1 && !parts.back().hi_closed;
  std::vector<Region> out;
  auto make = [&](bool close_zero, bool close_one) {
    std::vector<Interval> v = parts;
    if (close_zero) v.front().lo_closed = true;
    if (close_one) v.back().hi_closed = true;
    out.push_back(Region::from_intervals(std::move(v)));
  };
  if (at_zero) make(true, false);
  if (at_one) make(false, true);
  if (at_zero && at_one) make(true, true);
  return out;
}

}  // namespace measure_modes
