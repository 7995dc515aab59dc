#pragma once

#include <optional>
#include <vector>

#include "measure_modes/rational.hpp"
#include "measure_modes/region.hpp"

namespace measure_modes {

enum class FuncKind { ContinuousPL, Simple };

/// Test function on [0,1].
///
/// ContinuousPL: linear interpolation of one value per breakpoint.
/// Simple: one constant per cell [b_i, b_{i+1}); the last cell is closed at 1.
/// Breakpoints are strictly increasing, start at 0 and end at 1.
class PiecewiseFunc {
 public:
  /// Throws std::invalid_argument when the breakpoint/value layout is inconsistent.
  static PiecewiseFunc continuous(std::vector<Rational> breakpoints, std::vector<Rational> values);
  static PiecewiseFunc simple(std::vector<Rational> breakpoints, std::vector<Rational> values);
  static PiecewiseFunc constant(const Rational& c);
  static PiecewiseFunc identity();
  /// Continuous tent of height 1 at `peak`, vanishing outside (left, right); clipped to [0,1].
  static PiecewiseFunc hat(const Rational& left, const Rational& peak, const Rational& right);
  /// Indicator of `a` as a Simple function, when its cells line up as [lo, hi)
  /// pieces (with 1 allowed closed). nullopt otherwise.
  static std::optional<PiecewiseFunc> indicator(const Region& a);

  FuncKind kind() const { return kind_; }
  const std::vector<Rational>& breakpoints() const { return breaks_; }
  const std::vector<Rational>& values() const { return values_; }
  std::size_t cells() const { return breaks_.size() - 1; }

  Rational operator()(const Rational& x) const;
  /// Index of the cell [b_i, b_{i+1}) containing x (last cell closed).
  std::size_t cell_of(const Rational& x) const;

  Rational sup_norm() const;
  bool is_zero() const { return sup_norm().is_zero(); }
  /// Max |slope|. Only meaningful for ContinuousPL; throws for Simple.
  Rational lipschitz() const;
  /// Total variation over [0,1]: sum of |jumps| (Simple) or |node increments| (ContinuousPL).
  Rational variation() const;

  /// Same function with redundant breakpoints removed.
  PiecewiseFunc canonical() const;

  friend bool operator==(const PiecewiseFunc&, const PiecewiseFunc&) = default;

 private:
  PiecewiseFunc(FuncKind kind, std::vector<Rational> b, std::vector<Rational> v)
      : kind_(kind), breaks_(std::move(b)), values_(std::move(v)) {}

  FuncKind kind_ = FuncKind::Simple;
  std::vector<Rational> breaks_;
  std::vector<Rational> values_;
};

/// Equal-height level bands of f over [-|f|, |f|] and their exact preimages.
struct LevelPartition {
  /// f ≡ 0: the partition degenerates to the single cell [0,1].
  bool zero_function = false;
  std::vector<Region> cells;
  /// Lower band edges -|f| + 2(i-1)|f|/n, i = 1..n.
  std::vector<Rational> band_floor;
};

/// Cells A_i = f^{-1}([-M + 2(i-1)M/n, -M + 2iM/n)), last band closed, M = sup|f|.
/// Throws std::invalid_argument if n < 1.
LevelPartition func_level_partition(const PiecewiseFunc& f, int n);

/// Preimage f^{-1}(I) of an interval of values.
Region func_preimage(const PiecewiseFunc& f, const Rational& lo, const Rational& hi, bool lo_closed,
                     bool hi_closed);

}  // namespace measure_modes
