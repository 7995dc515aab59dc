#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "measure_modes/measure.hpp"
#include "measure_modes/metrics.hpp"

namespace measure_modes {

enum class FamilyKind { DiracAt, UniformOn, SquareWave, Constant, Tabulated };

/// Symbolic sequence n -> Measure (n >= 1).
class SequenceFamily {
 public:
  /// δ_{1/n}
  static SequenceFamily dirac_at() { return SequenceFamily(FamilyKind::DiracAt, {}); }
  /// Uniform on [0, 1/n]
  static SequenceFamily uniform_on() { return SequenceFamily(FamilyKind::UniformOn, {}); }
  /// Density 2 on the left half of every cell [k/n, (k+1)/n)
  static SequenceFamily square_wave() { return SequenceFamily(FamilyKind::SquareWave, {}); }
  static SequenceFamily constant(Measure m) {
    return SequenceFamily(FamilyKind::Constant, {std::move(m)});
  }
  /// Finite prefix; term(n) is defined for 1 <= n <= size.
  static SequenceFamily tabulated(std::vector<Measure> terms);

  FamilyKind kind() const { return kind_; }
  bool is_catalog() const { return kind_ != FamilyKind::Tabulated; }
  /// Constant: the single measure; Tabulated: the prefix; empty otherwise.
  const std::vector<Measure>& payload() const { return payload_; }
  std::size_t prefix_length() const { return payload_.size(); }
  std::string name() const;

 private:
  SequenceFamily(FamilyKind kind, std::vector<Measure> payload)
      : kind_(kind), payload_(std::move(payload)) {}

  FamilyKind kind_;
  std::vector<Measure> payload_;
};

/// Throws std::invalid_argument for n < 1 or n beyond a tabulated prefix.
Measure family_term(const SequenceFamily& fam, int n);

/// Exact description of n -> value(fam_n) for large n.
struct Tail {
  Rational limit;
  /// value(fam_n) == limit for every n >= attained_from (minimal such index).
  std::optional<int> attained_from;
  /// |value(fam_n) - limit| <= envelope / n for every n >= 1.
  Rational envelope;
};

/// nullopt for Tabulated families.
std::optional<Tail> eventual_value(const SequenceFamily& fam, const Region& a);
std::optional<Tail> eventual_integral(const SequenceFamily& fam, const PiecewiseFunc& f);
std::optional<Tail> eventual_tv(const SequenceFamily& fam, const Measure& candidate);

enum class Mode { Vague, Weak, Setwise, TV };
enum class Status { ConvergesExact, ConvergesOnEvidence, DivergesWitness, Inconclusive };

std::string to_string(Mode m);
std::string to_string(Status s);
inline bool converging(Status s) {
  return s == Status::ConvergesExact || s == Status::ConvergesOnEvidence;
}

struct TvWitness {
  friend bool operator==(const TvWitness&, const TvWitness&) = default;
};

struct Witness {
  std::variant<Region, PiecewiseFunc, TvWitness> object;
  /// |lim fam_n(object) - candidate(object)|, exact and positive.
  Rational gap;
  Rational family_limit;
  Rational candidate_value;
};

struct ModeVerdict {
  Mode mode = Mode::Weak;
  Status status = Status::Inconclusive;
  std::optional<Witness> witness;
  std::size_t tested = 0;
  std::string note;
};

struct Budget {
  int k_base = 3;
  int k_funcs = 3;
  /// Longest tabulated prefix consulted.
  int n_max = 64;
};

/// Sets tested for setwise convergence: the open base at k_base, its closures,
/// relative-topology variants and complements (first occurrence order, no repeats).
std::vector<Region> setwise_test_family(int k_base);
/// Tent functions with peaks on the dyadic grid at levels 1..k_funcs.
std::vector<PiecewiseFunc> hat_family(int k_funcs);

/// Verdicts in the order Vague, Weak, Setwise, TV.
std::vector<ModeVerdict> classify_modes(const SequenceFamily& fam, const Measure& candidate,
                                        const Budget& budget);

/// Setwise verdict over an explicit list of sets.
ModeVerdict classify_setwise(const SequenceFamily& fam, const Measure& candidate,
                             const std::vector<Region>& sets, int n_max = 64);

struct PortmanteauReport {
  ModeVerdict open_verdict;
  ModeVerdict closed_verdict;
  bool agree = true;
};

PortmanteauReport portmanteau_crosscheck(const SequenceFamily& fam, const Measure& candidate,
                                         int k_base, int n_max = 64);

struct CompactnessEntry {
  Region u;
  Rational limsup_u;
  /// max over the delta grid of limsup fam_n(shrink(u, delta)); a lower bound for the sup over closed K ⊂ u.
  Rational grid_inner;
  /// limsup_u - grid_inner; an upper bound for the gap.
  Rational grid_gap;
  /// lim_{delta -> 0+} limsup fam_n(shrink(u, delta)), which equals the sup over closed K ⊂ u.
  Rational exact_inner;
  Rational exact_gap;
};

struct CompactnessReport {
  std::vector<CompactnessEntry> entries;
  /// Indices into entries with exact_gap > 0: certified mass escape.
  std::vector<std::size_t> witnesses;
  int k_base = 0;
  std::vector<Rational> deltas;
};

/// Throws std::invalid_argument for tabulated families or a non-positive delta.
CompactnessReport compactness_gap(const SequenceFamily& fam, int k_base,
                                  const std::vector<Rational>& deltas);

struct GalleryRow {
  std::string family;
  std::string candidate;
  std::vector<ModeVerdict> verdicts;
  PortmanteauReport portmanteau;
  CompactnessReport compactness;
};

struct GalleryReport {
  std::vector<GalleryRow> rows;
  Budget budget;
  std::vector<Rational> deltas;
  /// Human-readable descriptions of pinned expectations that did not hold.
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};

/// DiracAt vs δ_0, SquareWave vs Uniform[0,1] and Constant(Uniform) vs Uniform,
/// each checked against pinned expectations.
GalleryReport gallery_run(const Budget& budget = {},
                          const std::vector<Rational>& deltas = {Rational(1, 8), Rational(1, 16),
                                                                 Rational(1, 32)});

}  // namespace measure_modes
