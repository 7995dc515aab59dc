#include "measure_modes/sequences.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace measure_modes {

SequenceFamily SequenceFamily::tabulated(std::vector<Measure> terms) {
  if (terms.empty()) throw std::invalid_argument("tabulated family needs at least one term");
  return SequenceFamily(FamilyKind::Tabulated, std::move(terms));
}

std::string SequenceFamily::name() const {
  switch (kind_) {
    case FamilyKind::DiracAt: return "dirac-at";
    case FamilyKind::UniformOn: return "uniform-on";
    case FamilyKind::SquareWave: return "square-wave";
    case FamilyKind::Constant: return "constant";
    case FamilyKind::Tabulated: return "tabulated";
  }
  return "?";
}

Measure family_term(const SequenceFamily& fam, int n) {
  if (n < 1) throw std::invalid_argument("family index must be >= 1");
  switch (fam.kind()) {
    case FamilyKind::DiracAt: return Measure::dirac(Rational(1, n));
    case FamilyKind::UniformOn: return Measure::uniform(0, Rational(1, n));
    case FamilyKind::SquareWave: return Measure::square_wave(n);
    case FamilyKind::Constant: return fam.payload().front();
    case FamilyKind::Tabulated:
      if (static_cast<std::size_t>(n) > fam.prefix_length()) {
        throw std::invalid_argument("index " + std::to_string(n) + " beyond tabulated prefix of length " +
                                    std::to_string(fam.prefix_length()));
      }
      return fam.payload()[static_cast<std::size_t>(n) - 1];
  }
  throw std::logic_error("unknown family kind");
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Vague: return "Vague";
    case Mode::Weak: return "Weak";
    case Mode::Setwise: return "Setwise";
    case Mode::TV: return "TV";
  }
  return "?";
}

std::string to_string(Status s) {
  switch (s) {
    case Status::ConvergesExact: return "ConvergesExact";
    case Status::ConvergesOnEvidence: return "ConvergesOnEvidence";
    case Status::DivergesWitness: return "DivergesWitness";
    case Status::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

constexpr std::int64_t kMaxIndex = 10'000'000;

int to_index(std::int64_t n) {
  if (n > kMaxIndex) throw std::invalid_argument("tail index beyond 10^7; region endpoints too fine");
  return static_cast<int>(std::max<std::int64_t>(n, 1));
}

// ceil(1/h) and floor(1/h) + 1 for h > 0.
int ceil_inv(const Rational& h) { return to_index(-floor_to_int(-(1 / h))); }
int floor_inv_plus_one(const Rational& h) { return to_index(floor_to_int(1 / h) + 1); }

// Smallest n0 <= start such that value(n) == limit for every n in [n0, start).
int walk_down(int start, const std::function<bool(int)>& matches) {
  int n = start;
  while (n > 1 && matches(n - 1)) --n;
  return n;
}

Tail exact_from(Rational limit, int attained, const Rational& max_deviation) {
  Tail t{std::move(limit), attained, max_deviation * (attained - 1)};
  return t;
}

// Components of positive length, in order.
const Interval* first_solid(const Region& a) {
  for (const auto& c : a.components()) {
    if (c.lo < c.hi) return &c;
  }
  return nullptr;
}

Rational leb_prefix(const Region& a, const Rational& x) {
  Rational s;
  for (const auto& c : a.components()) {
    if (c.lo >= x) break;
    s += min(c.hi, x) - c.lo;
  }
  return s;
}

}  // namespace

std::optional<Tail> eventual_value(const SequenceFamily& fam, const Region& a) {
  switch (fam.kind()) {
    case FamilyKind::DiracAt: {
      const auto& parts = a.components();
      const bool near_zero = !parts.empty() && parts.front().lo == 0 && parts.front().hi > 0;
      const Rational limit = near_zero ? 1 : 0;
      int start = 1;
      if (near_zero) {
        start = floor_inv_plus_one(parts.front().hi);
      } else {
        for (const auto& c : parts) {
          if (c.hi > 0) {
            start = floor_inv_plus_one(c.lo);
            break;
          }
        }
      }
      const int n0 = walk_down(start, [&](int n) { return (a.contains(Rational(1, n)) ? 1 : 0) == limit; });
      return exact_from(limit, n0, 1);
    }
    case FamilyKind::UniformOn: {
      const Interval* solid = first_solid(a);
      const bool near_zero = solid != nullptr && solid->lo == 0;
      const Rational limit = near_zero ? 1 : 0;
      int start = 1;
      if (solid != nullptr) start = ceil_inv(near_zero ? solid->hi : solid->lo);
      const int n0 = walk_down(start, [&](int n) { return n * leb_prefix(a, Rational(1, n)) == limit; });
      return exact_from(limit, n0, 1);
    }
    case FamilyKind::SquareWave: {
      // ∫_A (s_n - 1) = Σ F(hi) - F(lo) with 0 <= F <= 1/(2n) and F(0) = F(1) = 0.
      int lo_inside = 0, hi_inside = 0;
      for (const auto& c : a.components()) {
        if (c.lo > 0 && c.lo < 1) ++lo_inside;
        if (c.hi > 0 && c.hi < 1) ++hi_inside;
      }
      Tail t{a.length(), std::nullopt, Rational(std::max(lo_inside, hi_inside), 2)};
      if (t.envelope.is_zero()) t.attained_from = 1;
      return t;
    }
    case FamilyKind::Constant: return Tail{measure_of(fam.payload().front(), a), 1, 0};
    case FamilyKind::Tabulated: return std::nullopt;
  }
  return std::nullopt;
}

std::optional<Tail> eventual_integral(const SequenceFamily& fam, const PiecewiseFunc& f) {
  const Rational sup = f.sup_norm();
  const bool simple = f.kind() == FuncKind::Simple;
  const auto& b = f.breakpoints();
  const auto& v = f.values();
  switch (fam.kind()) {
    case FamilyKind::DiracAt: {
      if (simple) {
        const int start = f.cells() == 1 ? 1 : floor_inv_plus_one(b[1]);
        const int n0 = walk_down(start, [&](int n) { return f(Rational(1, n)) == v[0]; });
        return exact_from(v[0], n0, 2 * sup);
      }
      Tail t{v[0], std::nullopt, f.lipschitz()};
      if (v[0] == v[1]) {
        t.attained_from = walk_down(ceil_inv(b[1]), [&](int n) { return f(Rational(1, n)) == v[0]; });
      }
      return t;
    }
    case FamilyKind::UniformOn: {
      auto term = [&](int n) { return integrate(Measure::uniform(0, Rational(1, n)), f); };
      if (simple) {
        const int start = f.cells() == 1 ? 1 : ceil_inv(b[1]);
        const int n0 = walk_down(start, [&](int n) { return term(n) == v[0]; });
        return exact_from(v[0], n0, 2 * sup);
      }
      Tail t{v[0], std::nullopt, f.lipschitz() / 2};
      if (v[0] == v[1]) t.attained_from = walk_down(ceil_inv(b[1]), [&](int n) { return term(n) == v[0]; });
      return t;
    }
    case FamilyKind::SquareWave: {
      Tail t{integrate(Measure::uniform(0, 1), f), std::nullopt, f.variation() / 2};
      if (t.envelope.is_zero()) t.attained_from = 1;
      return t;
    }
    case FamilyKind::Constant: return Tail{integrate(fam.payload().front(), f), 1, 0};
    case FamilyKind::Tabulated: return std::nullopt;
  }
  return std::nullopt;
}

std::optional<Tail> eventual_tv(const SequenceFamily& fam, const Measure& c) {
  switch (fam.kind()) {
    case FamilyKind::DiracAt: {
      // tv(δ_x, c) = 1 - c({x})
      int start = 1;
      for (const auto& atom : c.atoms()) {
        if (atom.location > 0 && atom.mass.sign() > 0) {
          start = floor_inv_plus_one(atom.location);
          break;
        }
      }
      const int n0 = walk_down(start, [&](int n) { return c.atom_at(Rational(1, n)).is_zero(); });
      return exact_from(1, n0, 1);
    }
    case FamilyKind::UniformOn: {
      // tv = 1 - ∫_0^{1/n} min(n, d_c) >= 1 - D/n.
      const PiecewiseFunc& d = c.density();
      Tail t{1, std::nullopt, d.sup_norm()};
      if (d.values().front().is_zero()) {
        const int start = d.cells() == 1 ? 1 : ceil_inv(d.breakpoints()[1]);
        t.attained_from = walk_down(start, [&](int n) {
          return tv_distance(family_term(fam, n), c) == 1;
        });
      }
      return t;
    }
    case FamilyKind::SquareWave: {
      // tv_n = ∫_{high half-cells} (2 - d)^+, which tends to ½∫(2 - d)^+.
      const PiecewiseFunc& d = c.density();
      std::vector<Rational> w;
      Rational limit;
      for (std::size_t i = 0; i < d.cells(); ++i) {
        w.push_back(positive_part(2 - d.values()[i]));
        limit += w.back() * (d.breakpoints()[i + 1] - d.breakpoints()[i]) / 2;
      }
      Rational var;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) var += abs(w[i + 1] - w[i]);
      Tail t{limit, std::nullopt, var / 4};
      if (var.is_zero()) t.attained_from = 1;
      return t;
    }
    case FamilyKind::Constant: return Tail{tv_distance(fam.payload().front(), c), 1, 0};
    case FamilyKind::Tabulated: return std::nullopt;
  }
  return std::nullopt;
}

std::vector<Region> setwise_test_family(int k_base) {
  if (k_base < 1) return {};
  std::vector<Region> out;
  std::set<Region> seen;
  auto add = [&](Region r) {
    if (seen.insert(r).second) out.push_back(std::move(r));
  };
  const auto base = base_enumerate(k_base);
  for (const auto& u : base) add(u);
  for (const auto& u : base) {
    for (auto& v : relative_open_variants(u)) add(std::move(v));
  }
  const std::size_t open_count = out.size();
  for (std::size_t i = 0; i < open_count; ++i) add(region_closure(out[i]));
  for (std::size_t i = 0; i < open_count; ++i) add(region_complement(out[i]));
  return out;
}

std::vector<PiecewiseFunc> hat_family(int k_funcs) {
  std::vector<PiecewiseFunc> out;
  for (int level = 1; level <= k_funcs; ++level) {
    const std::int64_t cells = std::int64_t{1} << level;
    for (std::int64_t i = 0; i <= cells; ++i) {
      out.push_back(PiecewiseFunc::hat(dyadic(i - 1, level), dyadic(i, level), dyadic(i + 1, level)));
    }
  }
  return out;
}

namespace {

struct Candidate {
  std::size_t index = 0;
  Rational gap;
  Rational family_limit;
  Rational candidate_value;
};

// Larger gap wins; then fewer components; then longer region; then earlier index.
template <class Object>
bool better(const Candidate& x, const Candidate& y, const std::vector<Object>& objects) {
  if (x.gap != y.gap) return x.gap > y.gap;
  if constexpr (std::is_same_v<Object, Region>) {
    const auto& rx = objects[x.index];
    const auto& ry = objects[y.index];
    if (rx.size() != ry.size()) return rx.size() < ry.size();
    if (rx.length() != ry.length()) return rx.length() > ry.length();
  }
  return x.index < y.index;
}

// Value of one tested object on a tabulated window.
struct WindowState {
  bool all_zero = true;
  bool constant = true;
  Rational last_value;
  Rational gap;
};

template <class Object, class Eval, class TailFn, class TargetFn>
ModeVerdict classify_objects(Mode mode, const SequenceFamily& fam, const std::vector<Object>& objects,
                             TailFn tail_of, TargetFn target_of, Eval eval_term, int n_max) {
  ModeVerdict out;
  out.mode = mode;
  out.tested = objects.size();
  if (objects.empty()) {
    out.status = Status::Inconclusive;
    out.note = "empty test family at this budget";
    return out;
  }
  std::optional<Candidate> best;
  auto offer = [&](Candidate c) {
    if (!best || better(c, *best, objects)) best = std::move(c);
  };

  if (fam.is_catalog()) {
    for (std::size_t i = 0; i < objects.size(); ++i) {
      const Tail t = *tail_of(objects[i]);
      Rational target = target_of(objects[i]);
      Rational gap = abs(t.limit - target);
      if (gap.sign() > 0) offer(Candidate{i, std::move(gap), t.limit, std::move(target)});
    }
    out.status = best ? Status::DivergesWitness : Status::ConvergesExact;
  } else {
    const int len = std::min<int>(static_cast<int>(fam.prefix_length()), std::max(n_max, 1));
    const int first = len - (len + 1) / 2 + 1;  // last ceil(len/2) terms
    std::vector<Measure> window;
    for (int n = first; n <= len; ++n) window.push_back(family_term(fam, n));
    bool all_settled_zero = true;
    for (std::size_t i = 0; i < objects.size(); ++i) {
      const Rational target = target_of(objects[i]);
      bool zero = true, constant = true;
      Rational v0 = eval_term(window.front(), objects[i]);
      for (const auto& m : window) {
        const Rational v = eval_term(m, objects[i]);
        if (v != target) zero = false;
        if (v != v0) constant = false;
      }
      if (!zero) all_settled_zero = false;
      if (constant && v0 != target) offer(Candidate{i, abs(v0 - target), v0, target});
    }
    if (best) out.status = Status::DivergesWitness;
    else if (all_settled_zero) out.status = Status::ConvergesOnEvidence;
    else out.status = Status::Inconclusive;
    out.note = "tabulated prefix: terms " + std::to_string(first) + ".." + std::to_string(len) + " consulted";
  }
  if (best) {
    Witness w;
    if constexpr (std::is_same_v<Object, TvWitness>) {
      w.object = TvWitness{};
    } else {
      w.object = objects[best->index];
    }
    w.gap = best->gap;
    w.family_limit = best->family_limit;
    w.candidate_value = best->candidate_value;
    out.witness = std::move(w);
  }
  return out;
}

ModeVerdict classify_functions(Mode mode, const SequenceFamily& fam, const Measure& candidate,
                               const std::vector<PiecewiseFunc>& funcs, int n_max) {
  auto v = classify_objects(
      mode, fam, funcs, [&](const PiecewiseFunc& f) { return eventual_integral(fam, f); },
      [&](const PiecewiseFunc& f) { return integrate(candidate, f); },
      [](const Measure& m, const PiecewiseFunc& f) { return integrate(m, f); }, n_max);
  const std::string shared =
      "on [0,1] the compactly supported, vanishing and bounded continuous classes coincide";
  v.note = v.note.empty() ? shared : v.note + "; " + shared;
  return v;
}

ModeVerdict classify_tv(const SequenceFamily& fam, const Measure& candidate, int n_max) {
  const std::vector<TvWitness> single{TvWitness{}};
  return classify_objects(
      Mode::TV, fam, single, [&](const TvWitness&) { return eventual_tv(fam, candidate); },
      [](const TvWitness&) { return Rational(0); },
      [&](const Measure& m, const TvWitness&) { return tv_distance(m, candidate); }, n_max);
}

}  // namespace

ModeVerdict classify_setwise(const SequenceFamily& fam, const Measure& candidate,
                             const std::vector<Region>& sets, int n_max) {
  return classify_objects(
      Mode::Setwise, fam, sets, [&](const Region& a) { return eventual_value(fam, a); },
      [&](const Region& a) { return measure_of(candidate, a); },
      [](const Measure& m, const Region& a) { return measure_of(m, a); }, n_max);
}

std::vector<ModeVerdict> classify_modes(const SequenceFamily& fam, const Measure& candidate,
                                        const Budget& budget) {
  const auto funcs = hat_family(budget.k_funcs);
  std::vector<ModeVerdict> out;
  out.push_back(classify_functions(Mode::Vague, fam, candidate, funcs, budget.n_max));
  out.push_back(classify_functions(Mode::Weak, fam, candidate, funcs, budget.n_max));
  out.push_back(classify_setwise(fam, candidate, setwise_test_family(budget.k_base), budget.n_max));
  out.push_back(classify_tv(fam, candidate, budget.n_max));
  return out;
}

PortmanteauReport portmanteau_crosscheck(const SequenceFamily& fam, const Measure& candidate,
                                         int k_base, int n_max) {
  std::vector<Region> open, closed;
  std::set<Region> seen_open, seen_closed;
  auto add = [](std::vector<Region>& v, std::set<Region>& seen, Region r) {
    if (seen.insert(r).second) v.push_back(std::move(r));
  };
  if (k_base >= 1) {
    for (const auto& u : base_enumerate(k_base)) {
      add(open, seen_open, u);
      for (auto& r : relative_open_variants(u)) add(open, seen_open, std::move(r));
    }
  }
  for (const auto& u : open) add(closed, seen_closed, region_closure(u));
  for (const auto& u : open) add(closed, seen_closed, region_complement(u));

  PortmanteauReport out;
  out.open_verdict = classify_setwise(fam, candidate, open, n_max);
  out.closed_verdict = classify_setwise(fam, candidate, closed, n_max);
  out.agree = converging(out.open_verdict.status) == converging(out.closed_verdict.status);
  return out;
}

namespace {

// Points where the limit set function of the family can change behaviour.
std::vector<Rational> family_landmarks(const SequenceFamily& fam) {
  std::vector<Rational> pts;
  if (fam.kind() == FamilyKind::Constant) {
    const Measure& m = fam.payload().front();
    for (const auto& a : m.atoms()) pts.push_back(a.location);
    for (const auto& b : m.density().breakpoints()) pts.push_back(b);
  }
  return pts;
}

Rational inner_limit(const SequenceFamily& fam, const Region& u, std::vector<Rational> landmarks) {
  for (const auto& c : u.components()) {
    landmarks.push_back(c.lo);
    landmarks.push_back(c.hi);
  }
  landmarks.push_back(0);
  landmarks.push_back(1);
  std::sort(landmarks.begin(), landmarks.end());
  landmarks.erase(std::unique(landmarks.begin(), landmarks.end()), landmarks.end());
  Rational spacing = 1;
  for (std::size_t i = 0; i + 1 < landmarks.size(); ++i) {
    spacing = min(spacing, landmarks[i + 1] - landmarks[i]);
  }
  // Below a quarter of the landmark spacing the shrunk limit is affine in delta.
  const Rational d1 = spacing / 4;
  auto g = [&](const Rational& d) { return eventual_value(fam, region_shrink(u, d))->limit; };
  const Rational g1 = g(d1), g2 = g(d1 / 2), g4 = g(d1 / 4);
  if (g1 - g2 != 2 * (g2 - g4)) {
    throw std::logic_error("shrink limit is not affine near zero for " + fam.name());
  }
  return 2 * g2 - g1;
}

}  // namespace

CompactnessReport compactness_gap(const SequenceFamily& fam, int k_base,
                                  const std::vector<Rational>& deltas) {
  if (!fam.is_catalog()) throw std::invalid_argument("compactness gap needs a catalog family");
  for (const auto& d : deltas) {
    if (d.sign() <= 0) throw std::invalid_argument("shrink radii must be positive");
  }
  CompactnessReport out;
  out.k_base = k_base;
  out.deltas = deltas;
  const auto landmarks = family_landmarks(fam);
  for (auto& u : base_enumerate(k_base)) {
    CompactnessEntry e;
    e.limsup_u = eventual_value(fam, u)->limit;
    for (const auto& d : deltas) {
      e.grid_inner = max(e.grid_inner, eventual_value(fam, region_shrink(u, d))->limit);
    }
    e.grid_gap = e.limsup_u - e.grid_inner;
    e.exact_inner = inner_limit(fam, u, landmarks);
    e.exact_gap = e.limsup_u - e.exact_inner;
    e.u = std::move(u);
    if (e.exact_gap.sign() > 0) out.witnesses.push_back(out.entries.size());
    out.entries.push_back(std::move(e));
  }
  return out;
}

namespace {

void expect_status(GalleryReport& report, const GalleryRow& row, Mode mode, Status want,
                   const std::optional<Rational>& gap = std::nullopt,
                   const std::optional<Region>& region = std::nullopt) {
  const std::string where = row.family + " vs " + row.candidate + " [" + to_string(mode) + "]";
  const auto it = std::find_if(row.verdicts.begin(), row.verdicts.end(),
                               [&](const ModeVerdict& v) { return v.mode == mode; });
  if (it == row.verdicts.end()) {
    report.mismatches.push_back(where + ": verdict missing");
    return;
  }
  if (it->status != want) {
    report.mismatches.push_back(where + ": expected " + to_string(want) + ", got " + to_string(it->status));
    return;
  }
  if (gap && (!it->witness || it->witness->gap != *gap)) {
    report.mismatches.push_back(where + ": expected witness gap " + gap->str());
  }
  if (region) {
    const Region* r = it->witness ? std::get_if<Region>(&it->witness->object) : nullptr;
    if (r == nullptr || *r != *region) report.mismatches.push_back(where + ": unexpected witness set");
  }
}

}  // namespace

GalleryReport gallery_run(const Budget& budget, const std::vector<Rational>& deltas) {
  GalleryReport report;
  report.budget = budget;
  report.deltas = deltas;
  const Measure unif = Measure::uniform(0, 1);

  struct Case {
    SequenceFamily fam;
    Measure candidate;
    std::string candidate_name;
  };
  const std::vector<Case> cases{
      {SequenceFamily::dirac_at(), Measure::dirac(0), "dirac:0"},
      {SequenceFamily::square_wave(), unif, "uniform:0,1"},
      {SequenceFamily::constant(unif), unif, "uniform:0,1"},
  };
  for (const auto& c : cases) {
    GalleryRow row;
    row.family = c.fam.kind() == FamilyKind::Constant ? "constant(uniform:0,1)" : c.fam.name();
    row.candidate = c.candidate_name;
    row.verdicts = classify_modes(c.fam, c.candidate, budget);
    row.portmanteau = portmanteau_crosscheck(c.fam, c.candidate, budget.k_base, budget.n_max);
    row.compactness = compactness_gap(c.fam, budget.k_base, deltas);
    report.rows.push_back(std::move(row));
  }

  const auto& dirac = report.rows[0];
  expect_status(report, dirac, Mode::Vague, Status::ConvergesExact);
  expect_status(report, dirac, Mode::Weak, Status::ConvergesExact);
  expect_status(report, dirac, Mode::Setwise, Status::DivergesWitness, Rational(1), Region::open(0, 1));
  expect_status(report, dirac, Mode::TV, Status::DivergesWitness, Rational(1));
  const auto& escape = std::find_if(dirac.compactness.entries.begin(), dirac.compactness.entries.end(),
                                    [](const CompactnessEntry& e) { return e.u == Region::open(0, 1); });
  if (escape == dirac.compactness.entries.end() || escape->exact_gap != 1) {
    report.mismatches.push_back("dirac-at compactness: gap on (0,1) is not 1");
  }

  const auto& square = report.rows[1];
  expect_status(report, square, Mode::Vague, Status::ConvergesExact);
  expect_status(report, square, Mode::Weak, Status::ConvergesExact);
  expect_status(report, square, Mode::Setwise, Status::ConvergesExact);
  expect_status(report, square, Mode::TV, Status::DivergesWitness, Rational(1, 2));
  if (!square.compactness.witnesses.empty()) {
    report.mismatches.push_back("square-wave compactness: unexpected mass-escape witness");
  }

  const auto& constant = report.rows[2];
  for (Mode m : {Mode::Vague, Mode::Weak, Mode::Setwise, Mode::TV}) {
    expect_status(report, constant, m, Status::ConvergesExact);
  }
  if (!constant.compactness.witnesses.empty()) {
    report.mismatches.push_back("constant compactness: unexpected mass-escape witness");
  }

  for (const auto& row : report.rows) {
    if (!row.portmanteau.agree) {
      report.mismatches.push_back(row.family + ": open and closed setwise verdicts disagree");
    }
  }
  return report;
}

}  // namespace measure_modes
