#pragma once

#include <compare>
#include <cstddef>
#include <vector>

#include "measure_modes/rational.hpp"

namespace measure_modes {

/// One connected component of a Region: an interval inside [0,1] with
/// endpoint-inclusion flags. lo == hi is legal only as a closed singleton.
struct Interval {
  Rational lo;
  Rational hi;
  bool lo_closed = false;
  bool hi_closed = false;

  bool empty() const { return hi < lo || (lo == hi && !(lo_closed && hi_closed)); }
  bool contains(const Rational& x) const;
  Rational length() const { return empty() ? Rational(0) : hi - lo; }

  friend bool operator==(const Interval&, const Interval&) = default;
  friend std::strong_ordering operator<=>(const Interval&, const Interval&) = default;
};

/// Finite union of subintervals of [0,1]. Components are kept sorted,
/// pairwise disjoint and maximal, so structural equality is set equality.
class Region {
 public:
  Region() = default;

  /// Normalizes an arbitrary list of intervals. Empty pieces are dropped.
  /// Throws std::invalid_argument if any endpoint falls outside [0,1].
  static Region from_intervals(std::vector<Interval> pieces);
  static Region whole() { return interval(0, 1, true, true); }
  static Region interval(const Rational& lo, const Rational& hi, bool lo_closed, bool hi_closed);
  static Region point(const Rational& x) { return interval(x, x, true, true); }
  static Region open(const Rational& lo, const Rational& hi) { return interval(lo, hi, false, false); }
  static Region closed(const Rational& lo, const Rational& hi) { return interval(lo, hi, true, true); }

  const std::vector<Interval>& components() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  bool is_whole() const;

  bool contains(const Rational& x) const;
  /// Lebesgue measure.
  Rational length() const;

  /// Closed in [0,1]: every component closed on both sides.
  bool is_closed() const;
  /// Open relative to [0,1]: interior endpoints excluded; 0 and 1 may be included.
  bool is_relatively_open() const;

  friend bool operator==(const Region&, const Region&) = default;
  friend std::strong_ordering operator<=>(const Region&, const Region&) = default;

 private:
  std::vector<Interval> parts_;
};

Region region_union(const Region& a, const Region& b);
Region region_intersection(const Region& a, const Region& b);
Region region_complement(const Region& a);
Region region_difference(const Region& a, const Region& b);
Region region_closure(const Region& a);
/// Closed delta-core: { x in [0,1] : B(x,delta) ∩ [0,1] ⊂ u } with B the open ball.
/// Throws std::invalid_argument if delta <= 0.
Region region_shrink(const Region& u, const Rational& delta);
bool region_subset(const Region& a, const Region& b);
bool region_disjoint(const Region& a, const Region& b);

/// Every union of at most k open intervals whose endpoints lie on the grid
/// { i / 2^k : 0 <= i <= 2^k }. Deterministic order; family(k) ⊆ family(k+1).
std::vector<Region> base_enumerate(int k);

/// Relative-topology companions of an open base member: the variants that
/// include 0 and/or 1 when a component touches them. Excludes the input.
std::vector<Region> relative_open_variants(const Region& base_member);

}  // namespace measure_modes
