#include "measure_modes/json_io.hpp"

#include <cstdint>
#include <cstdio>

namespace measure_modes {

json ValidationError::to_json() const {
  return json{{"error", "validation"}, {"invariant", invariant_}, {"path", path_}, {"detail", what()}};
}

namespace {

[[noreturn]] void fail(const std::string& invariant, const std::string& path, const std::string& detail) {
  throw ValidationError(invariant, path, detail);
}

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail("schema", path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail("schema", path, std::string("missing field '") + key + "'");
  return *it;
}

const json& array_at(const json& j, const std::string& path) {
  if (!j.is_array()) fail("schema", path, "expected an array");
  return j;
}

std::vector<Rational> rationals_from_json(const json& j, const std::string& path) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < array_at(j, path).size(); ++i) {
    out.push_back(rational_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

json rationals_to_json(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(q.str());
  return out;
}


json subsets_to_json(const std::vector<Subset>& v) {
  json out = json::array();
  for (const auto& s : v) out.push_back(s);
  return out;
}

}  // namespace

json to_json(const Rational& q) { return q.str(); }

Rational rational_from_json(const json& j, const std::string& path) {
  if (!j.is_string()) fail("rational_syntax", path, "rationals are encoded as \"p/q\" strings");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    fail("rational_syntax", path, e.what());
  }
}

json to_json(const Region& r) {
  json out = json::array();
  for (const auto& c : r.components()) out.push_back(json::array({c.lo.str(), c.hi.str(), c.lo_closed, c.hi_closed}));
  return out;
}

Region region_from_json(const json& j, const std::string& path) {
  std::vector<Interval> pieces;
  for (std::size_t i = 0; i < array_at(j, path).size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const json& e = j[i];
    if (!e.is_array() || e.size() != 4 || !e[2].is_boolean() || !e[3].is_boolean()) {
      fail("schema", p, "interval is [lo, hi, lo_closed, hi_closed]");
    }
    Interval iv{rational_from_json(e[0], p + "[0]"), rational_from_json(e[1], p + "[1]"), e[2].get<bool>(),
                e[3].get<bool>()};
    if (iv.lo < 0 || iv.hi > 1) fail("endpoint_in_unit_interval", p, "endpoints must lie in [0,1]");
    if (iv.lo > iv.hi) fail("interval_order", p, "lo must not exceed hi");
    pieces.push_back(std::move(iv));
  }
  return Region::from_intervals(std::move(pieces));
}

json to_json(const PiecewiseFunc& f) {
  return json{{"kind", f.kind() == FuncKind::Simple ? "simple" : "continuous"},
              {"breakpoints", rationals_to_json(f.breakpoints())},
              {"values", rationals_to_json(f.values())}};
}

PiecewiseFunc func_from_json(const json& j, const std::string& path) {
  const json& kind = field(j, "kind", path);
  if (!kind.is_string() || (kind != "simple" && kind != "continuous")) {
    fail("schema", path + ".kind", "kind is \"simple\" or \"continuous\"");
  }
  auto b = rationals_from_json(field(j, "breakpoints", path), path + ".breakpoints");
  auto v = rationals_from_json(field(j, "values", path), path + ".values");
  if (b.size() < 2 || b.front() != 0 || b.back() != 1) {
    fail("breakpoints_span_unit_interval", path + ".breakpoints", "breakpoints must run from 0/1 to 1/1");
  }
  for (std::size_t i = 1; i < b.size(); ++i) {
    if (!(b[i - 1] < b[i])) fail("breakpoints_increasing", path + ".breakpoints", "breakpoints must strictly increase");
  }
  const bool simple = kind == "simple";
  if (v.size() != (simple ? b.size() - 1 : b.size())) {
    fail("value_count", path + ".values",
         simple ? "simple functions carry one value per cell" : "continuous functions carry one value per breakpoint");
  }
  return simple ? PiecewiseFunc::simple(std::move(b), std::move(v))
                : PiecewiseFunc::continuous(std::move(b), std::move(v));
}

json to_json(const Measure& m) {
  json atoms = json::array();
  for (const auto& a : m.atoms()) atoms.push_back(json::array({a.location.str(), a.mass.str()}));
  return json{{"atoms", atoms}, {"density", to_json(m.density())}};
}

Measure measure_from_json(const json& j, const std::string& path) {
  std::vector<Atom> atoms;
  const json& aj = field(j, "atoms", path);
  for (std::size_t i = 0; i < array_at(aj, path + ".atoms").size(); ++i) {
    const std::string p = path + ".atoms[" + std::to_string(i) + "]";
    if (!aj[i].is_array() || aj[i].size() != 2) fail("schema", p, "atom is [location, mass]");
    Atom a{rational_from_json(aj[i][0], p + "[0]"), rational_from_json(aj[i][1], p + "[1]")};
    if (a.location < 0 || a.location > 1) fail("atom_in_unit_interval", p, "atom location outside [0,1]");
    atoms.push_back(std::move(a));
  }
  PiecewiseFunc density = PiecewiseFunc::constant(0);
  if (j.contains("density")) {
    density = func_from_json(j["density"], path + ".density");
    if (density.kind() != FuncKind::Simple) fail("density_simple", path + ".density", "density must be simple");
  }
  return Measure(std::move(atoms), std::move(density));
}

Measure measure_from_json_checked(const json& j, const std::string& path) {
  Measure m = measure_from_json(j, path);
  const auto verdict = measure_validate(m);
  if (!verdict.valid) fail(verdict.violated, path, verdict.detail);
  return m;
}

json to_json(const GaugeSpec& g) {
  json family = json::array();
  if (const auto* funcs = std::get_if<std::vector<PiecewiseFunc>>(&g.family)) {
    for (const auto& f : *funcs) family.push_back(to_json(f));
  } else {
    for (const auto& r : std::get<std::vector<Region>>(g.family)) family.push_back(to_json(r));
  }
  return json{{"kind", g.kind() == GaugeKind::F ? "F" : "S"},
              {"epsilon", g.epsilon.str()},
              {"center", to_json(g.center)},
              {"family", family}};
}

GaugeSpec gauge_from_json(const json& j, const std::string& path) {
  const json& kind = field(j, "kind", path);
  if (kind != "F" && kind != "S") fail("schema", path + ".kind", "gauge kind is \"F\" or \"S\"");
  GaugeSpec g{std::vector<Region>{}, rational_from_json(field(j, "epsilon", path), path + ".epsilon"),
              measure_from_json_checked(field(j, "center", path), path + ".center")};
  if (g.epsilon.sign() <= 0) fail("epsilon_positive", path + ".epsilon", "gauge epsilon must be positive");
  const json& fam = field(j, "family", path);
  if (array_at(fam, path + ".family").empty()) fail("family_nonempty", path + ".family", "gauge family is empty");
  if (kind == "F") {
    std::vector<PiecewiseFunc> funcs;
    for (std::size_t i = 0; i < fam.size(); ++i) {
      funcs.push_back(func_from_json(fam[i], path + ".family[" + std::to_string(i) + "]"));
    }
    g.family = std::move(funcs);
  } else {
    std::vector<Region> sets;
    for (std::size_t i = 0; i < fam.size(); ++i) {
      sets.push_back(region_from_json(fam[i], path + ".family[" + std::to_string(i) + "]"));
    }
    g.family = std::move(sets);
  }
  return g;
}

json to_json(const AtomMeasure& m) { return rationals_to_json(m.weights); }

AtomMeasure atom_measure_from_json(const json& j, const std::string& path) {
  return AtomMeasure{rationals_from_json(j, path)};
}

Measure named_measure(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view tail = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  auto number = [&](std::string_view t) {
    try {
      return Rational::parse(t);
    } catch (const std::invalid_argument& e) {
      fail("rational_syntax", std::string(spec), e.what());
    }
  };
  if (head == "dirac" && !tail.empty()) {
    const Rational p = number(tail);
    if (p < 0 || p > 1) fail("atom_in_unit_interval", std::string(spec), "dirac location outside [0,1]");
    return Measure::dirac(p);
  }
  if (head == "uniform") {
    if (tail.empty()) return Measure::uniform(0, 1);
    const auto comma = tail.find(',');
    if (comma == std::string_view::npos) fail("schema", std::string(spec), "uniform takes a,b");
    const Rational a = number(tail.substr(0, comma));
    const Rational b = number(tail.substr(comma + 1));
    if (a < 0 || b > 1 || !(a < b)) fail("interval_order", std::string(spec), "uniform needs 0 <= a < b <= 1");
    return Measure::uniform(a, b);
  }
  if ((head == "square-wave" || head == "square_wave") && !tail.empty()) {
    const Rational n = number(tail);
    if (!n.is_integer() || n < 1 || n > 100000) {
      fail("schema", std::string(spec), "square-wave index must be an integer in [1, 100000]");
    }
    return Measure::square_wave(static_cast<int>(floor_to_int(n)));
  }
  fail("schema", std::string(spec), "unknown measure name; expected dirac:p, uniform:a,b or square-wave:n");
}

json exact(const Rational& q) { return json{{"exact", q.str()}, {"decimal", q.decimal()}}; }

json report_json(const Tail& t) {
  json out{{"limit", exact(t.limit)}, {"attained_from", nullptr}, {"envelope", exact(t.envelope)}};
  if (t.attained_from) out["attained_from"] = *t.attained_from;
  return out;
}

json report_json(const ModeVerdict& v) {
  json out{{"mode", to_string(v.mode)}, {"status", to_string(v.status)}, {"tested", v.tested}};
  if (v.witness) {
    const Witness& w = *v.witness;
    json obj;
    if (const auto* r = std::get_if<Region>(&w.object)) obj = json{{"set", to_json(*r)}};
    else if (const auto* f = std::get_if<PiecewiseFunc>(&w.object)) obj = json{{"function", to_json(*f)}};
    else obj = json{{"tv", true}};
    out["witness"] = json{{"object", obj},
                          {"gap", exact(w.gap)},
                          {"family_limit", exact(w.family_limit)},
                          {"candidate_value", exact(w.candidate_value)}};
  } else {
    out["witness"] = nullptr;
  }
  out["note"] = v.note;
  return out;
}

json report_json(const PortmanteauReport& p) {
  return json{{"open", report_json(p.open_verdict)}, {"closed", report_json(p.closed_verdict)}, {"agree", p.agree}};
}

json report_json(const CompactnessReport& c) {
  json entries = json::array();
  for (const auto& e : c.entries) {
    entries.push_back(json{{"u", to_json(e.u)},
                           {"limsup_u", exact(e.limsup_u)},
                           {"grid_inner", exact(e.grid_inner)},
                           {"grid_gap", exact(e.grid_gap)},
                           {"exact_inner", exact(e.exact_inner)},
                           {"exact_gap", exact(e.exact_gap)}});
  }
  return json{{"k_base", c.k_base}, {"deltas", rationals_to_json(c.deltas)}, {"entries", entries},
              {"witnesses", c.witnesses}};
}

json report_json(const GalleryReport& g) {
  json rows = json::array();
  for (const auto& r : g.rows) {
    json verdicts = json::array();
    for (const auto& v : r.verdicts) verdicts.push_back(report_json(v));
    json witnesses = json::array();
    for (std::size_t i : r.compactness.witnesses) {
      const auto& e = r.compactness.entries[i];
      witnesses.push_back(json{{"u", to_json(e.u)}, {"exact_gap", exact(e.exact_gap)}, {"grid_gap", exact(e.grid_gap)}});
    }
    rows.push_back(json{{"family", r.family},
                        {"candidate", r.candidate},
                        {"verdicts", verdicts},
                        {"portmanteau", report_json(r.portmanteau)},
                        {"compactness_witnesses", witnesses}});
  }
  return json{{"budget", {{"k_base", g.budget.k_base}, {"k_funcs", g.budget.k_funcs}, {"n_max", g.budget.n_max}}},
              {"deltas", rationals_to_json(g.deltas)},
              {"rows", rows},
              {"mismatches", g.mismatches},
              {"ok", g.ok()}};
}

json report_json(const QuantizationCertificate& c) {
  json cells = json::array();
  for (const auto& r : c.cells) cells.push_back(to_json(r));
  return json{{"f", to_json(c.f)},
              {"n", c.n},
              {"trivial", c.trivial},
              {"target_epsilon", exact(c.target_epsilon)},
              {"cell_tolerance", exact(c.cell_tolerance)},
              {"band_floor", rationals_to_json(c.band_floor)},
              {"cells", cells}};
}

json report_json(const CertificateCheck& c) {
  return json{{"hypothesis", c.hypothesis},
              {"conclusion", c.conclusion},
              {"gap", exact(c.gap)},
              {"worst_cell_deviation", exact(c.worst_cell_deviation)}};
}

json report_json(const VagueApproxResult& r) {
  json cells = json::array();
  for (const auto& c : r.cells) cells.push_back(to_json(c));
  return json{{"n1", r.n1},
              {"atoms", to_json(r.atoms)},
              {"centers_used", rationals_to_json(r.centers_used)},
              {"cells", cells},
              {"error_bound", exact(r.error_bound)}};
}

json report_json(const GaugeResult& r) {
  return json{{"contained", r.contained},
              {"margin", exact(r.margin)},
              {"worst_deviation", exact(r.worst_deviation)},
              {"worst_index", r.worst_index}};
}

json report_json(const FiniteSigmaAlgebra& f) {
  return json{{"ground_size", f.ground_size},
              {"generators", subsets_to_json(f.generators)},
              {"atoms", subsets_to_json(f.atoms)}};
}

json report_json(const ElementaryCountReport& r) {
  return json{{"atom_count", r.atom_count},
              {"separable", r.separable},
              {"metrizable", r.metrizable},
              {"verdict", r.verdict},
              {"dense_family", r.dense_family},
              {"uncountable_branch", r.uncountable_branch}};
}

json report_json(const DenseWitness& w) {
  return json{{"rho", to_json(w.rho)},
              {"denominator", w.denominator},
              {"level", w.level},
              {"margin", exact(w.margin)},
              {"unchanged", w.unchanged}};
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace measure_modes
