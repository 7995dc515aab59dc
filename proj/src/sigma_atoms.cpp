#include "measure_modes/sigma_atoms.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace measure_modes {

namespace {

void check_elements(int m, const Subset& s) {
  for (int x : s) {
    if (x < 1 || x > m) {
      throw std::invalid_argument("element " + std::to_string(x) + " outside ground set {1.." +
                                  std::to_string(m) + "}");
    }
  }
}

bool is_dyadic(const Rational& q) {
  const mpz_class d = q.denominator();
  return (d & (d - 1)) == 0;
}

// Indices of atoms inside `a`; throws if `a` cuts an atom.
std::vector<std::size_t> atoms_inside(const FiniteSigmaAlgebra& fsa, const Subset& a) {
  check_elements(fsa.ground_size, a);
  std::vector<bool> in(static_cast<std::size_t>(fsa.ground_size) + 1, false);
  for (int x : a) in[static_cast<std::size_t>(x)] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fsa.atoms.size(); ++i) {
    const auto& atom = fsa.atoms[i];
    const auto hits = std::count_if(atom.begin(), atom.end(), [&](int x) { return in[static_cast<std::size_t>(x)]; });
    if (hits == 0) continue;
    if (static_cast<std::size_t>(hits) != atom.size()) {
      throw std::invalid_argument("set is not a union of atoms: it splits atom " + std::to_string(i + 1));
    }
    out.push_back(i);
  }
  return out;
}

// Integer weights summing to `units`, proportional to `w` by largest remainder.
std::vector<mpz_class> apportion(const std::vector<Rational>& w, const mpz_class& units) {
  std::vector<mpz_class> out(w.size());
  if (w.empty()) return out;
  Rational total;
  for (const auto& x : w) total += x;
  if (total.is_zero()) {
    out.front() = units;
    return out;
  }
  std::vector<std::pair<Rational, std::size_t>> rest;
  mpz_class used = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Rational share = w[i] * Rational(mpq_class(units)) / total;
    const mpz_class fl = static_cast<long>(floor_to_int(share));
    out[i] = fl;
    used += fl;
    rest.emplace_back(share - Rational(mpq_class(fl)), i);
  }
  std::stable_sort(rest.begin(), rest.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  for (std::size_t k = 0; used < units; ++k, ++used) out[rest[k].second] += 1;
  return out;
}

}  // namespace

std::vector<Subset> atoms_of(int ground_size, const std::vector<Subset>& generators) {
  if (ground_size < 1) throw std::invalid_argument("ground set must be nonempty");
  std::vector<Subset> blocks(1, Subset(static_cast<std::size_t>(ground_size)));
  std::iota(blocks[0].begin(), blocks[0].end(), 1);
  std::vector<bool> in(static_cast<std::size_t>(ground_size) + 1);
  for (const auto& g : generators) {
    check_elements(ground_size, g);
    std::fill(in.begin(), in.end(), false);
    for (int x : g) in[static_cast<std::size_t>(x)] = true;
    std::vector<Subset> next;
    for (const auto& b : blocks) {
      Subset inside, outside;
      for (int x : b) (in[static_cast<std::size_t>(x)] ? inside : outside).push_back(x);
      if (!inside.empty()) next.push_back(std::move(inside));
      if (!outside.empty()) next.push_back(std::move(outside));
    }
    blocks = std::move(next);
  }
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

FiniteSigmaAlgebra make_sigma_algebra(int ground_size, std::vector<Subset> generators) {
  for (auto& g : generators) {
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
  }
  FiniteSigmaAlgebra out;
  out.atoms = atoms_of(ground_size, generators);
  out.ground_size = ground_size;
  out.generators = std::move(generators);
  return out;
}

ElementaryCountReport elementary_count_verdict(const FiniteSigmaAlgebra& fsa) {
  ElementaryCountReport r;
  r.atom_count = fsa.atoms.size();
  if (r.atom_count == 1) {
    r.verdict = "M(X) is a single point (separable and metrizable)";
    r.dense_family = "the single measure putting mass 1 on the only atom";
  } else {
    r.verdict = "M(X) separable and metrizable";
    r.dense_family = "rational points of the " + std::to_string(r.atom_count - 1) +
                     "-simplex, enumerated by denominators 2^j for j = 0, 1, 2, ...; contains the "
                     "finite-scale shadow of the measures with rational mass on finite unions of atoms";
  }
  r.uncountable_branch =
      "uncountably many atoms would give uncountably many disjoint neighbourhoods W(δ_A, A, 1/2); "
      "no finite ground set has that many atoms";
  return r;
}

void validate_atom_measure(const FiniteSigmaAlgebra& fsa, const AtomMeasure& nu) {
  if (nu.weights.size() != fsa.atoms.size()) {
    throw std::invalid_argument("expected " + std::to_string(fsa.atoms.size()) + " atom weights, got " +
                                std::to_string(nu.weights.size()));
  }
  Rational total;
  for (const auto& w : nu.weights) {
    if (w.sign() < 0) throw std::invalid_argument("negative atom weight " + w.str());
    total += w;
  }
  if (total != 1) throw std::invalid_argument("atom weights sum to " + total.str() + ", not 1");
}

Rational atom_measure_of(const FiniteSigmaAlgebra& fsa, const AtomMeasure& nu, const Subset& a) {
  Rational s;
  for (std::size_t i : atoms_inside(fsa, a)) s += nu.weights.at(i);
  return s;
}

DenseWitness dense_family_member(const FiniteSigmaAlgebra& fsa, const AtomMeasure& nu, const Subset& a,
                                 const Rational& epsilon) {
  if (epsilon.sign() <= 0) throw std::invalid_argument("epsilon must be positive");
  validate_atom_measure(fsa, nu);
  const auto inside = atoms_inside(fsa, a);
  const Rational target = atom_measure_of(fsa, nu, a);

  DenseWitness out;
  if (std::all_of(nu.weights.begin(), nu.weights.end(), is_dyadic)) {
    mpz_class d = 1;
    for (const auto& w : nu.weights) d = std::max(d, w.denominator());
    out.rho = nu;
    out.denominator = d.get_si();
    out.level = static_cast<int>(mpz_sizeinbase(d.get_mpz_t(), 2)) - 1;
    out.margin = epsilon;
    out.unchanged = true;
    return out;
  }

  int j = 0;
  // Grid spacing 2^-j below epsilon; half-up rounding is then off by at most 2^-(j+1).
  while (epsilon * Rational(mpq_class(mpz_class(1) << j)) <= 1) ++j;
  const mpz_class units = mpz_class(1) << j;
  const Rational scale{mpq_class(units)};

  mpz_class in_units = static_cast<long>(floor_to_int(target * scale + Rational(1, 2)));
  if (inside.empty()) in_units = 0;
  if (inside.size() == fsa.atoms.size()) in_units = units;

  std::vector<bool> is_in(fsa.atoms.size(), false);
  for (std::size_t i : inside) is_in[i] = true;
  std::vector<Rational> w_in, w_out;
  for (std::size_t i = 0; i < fsa.atoms.size(); ++i) (is_in[i] ? w_in : w_out).push_back(nu.weights[i]);
  const auto q_in = apportion(w_in, in_units);
  const auto q_out = apportion(w_out, units - in_units);

  out.rho.weights.resize(fsa.atoms.size());
  std::size_t ki = 0, ko = 0;
  for (std::size_t i = 0; i < fsa.atoms.size(); ++i) {
    const mpz_class& q = is_in[i] ? q_in[ki++] : q_out[ko++];
    out.rho.weights[i] = Rational(mpq_class(q, units));
  }
  out.denominator = units.get_si();
  out.level = j;
  out.margin = epsilon - abs(Rational(mpq_class(in_units, units)) - target);
  return out;
}

}  // namespace measure_modes
