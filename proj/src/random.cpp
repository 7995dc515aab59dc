#include "measure_modes/random.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace measure_modes {

std::int64_t Sampler::integer(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("empty sampling range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(rng_());
  // Rejection sampling keeps the draw exactly uniform.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
  std::uint64_t x;
  do {
    x = rng_();
  } while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

Rational Sampler::dyadic_point(int level) { return dyadic(integer(0, std::int64_t{1} << level), level); }

std::vector<Rational> Sampler::weights(std::size_t count) {
  std::vector<std::int64_t> raw(count);
  std::int64_t total = 0;
  for (auto& w : raw) total += (w = integer(1, 12));
  std::vector<Rational> out;
  for (auto w : raw) out.emplace_back(w, total);
  return out;
}

Measure Sampler::atomic_measure(int max_atoms, int level) {
  const auto count = static_cast<std::size_t>(integer(1, max_atoms));
  std::set<Rational> locs;
  while (locs.size() < count && locs.size() < (std::size_t{1} << level) + 1) locs.insert(dyadic_point(level));
  const auto w = weights(locs.size());
  std::vector<Atom> atoms;
  std::size_t i = 0;
  for (const auto& x : locs) atoms.push_back(Atom{x, w[i++]});
  return Measure::atomic(std::move(atoms));
}

std::vector<Rational> Sampler::sorted_breakpoints(int pieces, int level) {
  std::set<Rational> pts{Rational(0), Rational(1)};
  const auto extra = integer(0, pieces - 1);
  for (std::int64_t i = 0; i < extra; ++i) pts.insert(dyadic_point(level));
  return {pts.begin(), pts.end()};
}

Measure Sampler::mixed_measure(int max_atoms, int level) {
  const auto shape = integer(0, 2);  // 0: atomic, 1: density, 2: both
  std::vector<Measure> parts;
  if (shape != 1) parts.push_back(atomic_measure(max_atoms, level));
  if (shape != 0) {
    auto b = sorted_breakpoints(4, level);
    std::vector<Rational> v;
    Rational mass;
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
      v.emplace_back(integer(0, 4));
      mass += v.back() * (b[i + 1] - b[i]);
    }
    if (mass.is_zero()) {
      v.assign(v.size(), Rational(1));
      mass = 1;
    }
    for (auto& x : v) x = x / mass;
    parts.push_back(Measure({}, PiecewiseFunc::simple(std::move(b), std::move(v))));
  }
  if (parts.size() == 1) return parts.front();
  const auto w = weights(2);
  return convex_combine(w, parts);
}

PiecewiseFunc Sampler::continuous_function(int pieces, int level, int bound) {
  auto b = sorted_breakpoints(pieces, level);
  std::vector<Rational> v;
  for (std::size_t i = 0; i < b.size(); ++i) v.emplace_back(integer(-4 * bound, 4 * bound), 4);
  return PiecewiseFunc::continuous(std::move(b), std::move(v));
}

PiecewiseFunc Sampler::monotone_function(int pieces, int level, int bound) {
  auto b = sorted_breakpoints(pieces, level);
  std::vector<std::int64_t> raw;
  for (std::size_t i = 0; i < b.size(); ++i) raw.push_back(integer(-4 * bound, 4 * bound));
  std::sort(raw.begin(), raw.end());
  if (coin()) std::reverse(raw.begin(), raw.end());
  std::vector<Rational> v;
  for (auto x : raw) v.emplace_back(x, 4);
  return PiecewiseFunc::continuous(std::move(b), std::move(v));
}

PiecewiseFunc Sampler::simple_function(int pieces, int level, int bound) {
  auto b = sorted_breakpoints(pieces, level);
  std::vector<Rational> v;
  for (std::size_t i = 0; i + 1 < b.size(); ++i) v.emplace_back(integer(-4 * bound, 4 * bound), 4);
  return PiecewiseFunc::simple(std::move(b), std::move(v));
}

Region Sampler::region(int max_components, int level) {
  std::vector<Interval> pieces;
  const auto count = integer(0, max_components);
  for (std::int64_t i = 0; i < count; ++i) {
    Rational a = dyadic_point(level), b = dyadic_point(level);
    if (b < a) std::swap(a, b);
    pieces.push_back(Interval{a, b, coin(), coin()});
  }
  return Region::from_intervals(std::move(pieces));
}

AtomMeasure Sampler::atom_measure(std::size_t atoms) {
  std::vector<std::int64_t> raw(atoms);
  std::int64_t total = 0;
  for (auto& w : raw) total += (w = integer(0, 9));
  if (total == 0) {
    raw.front() = 1;
    total = 1;
  }
  AtomMeasure out;
  for (auto w : raw) out.weights.emplace_back(w, total);
  return out;
}

}  // namespace measure_modes
