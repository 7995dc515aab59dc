// measure-modes: command-line front end for the measure_modes library.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "measure_modes/approx.hpp"
#include "measure_modes/campaign.hpp"
#include "measure_modes/json_io.hpp"
#include "measure_modes/metrics.hpp"
#include "measure_modes/sequences.hpp"
#include "measure_modes/sigma_atoms.hpp"

using namespace measure_modes;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitGalleryMismatch = 3;
constexpr int kExitUsage = 64;

const char* const kSubcommands[] = {"tv",       "prohorov",    "gauge",     "quantize", "vague-approx",
                                    "classify", "compactness", "portmanteau", "gallery", "atoms",
                                    "dense-witness", "campaign"};

struct Context {
  json command = json::array();
  json inputs = json::object();
  json budget = nullptr;
  bool text = false;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("input_readable", path, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load_json(Context& ctx, const std::string& path) {
  const std::string bytes = slurp(path);
  ctx.inputs[path] = fnv1a_hex(bytes);
  try {
    return json::parse(bytes);
  } catch (const json::parse_error& e) {
    throw ValidationError("json_syntax", path, e.what());
  }
}

bool is_file(const std::string& arg) { return std::ifstream(arg).good(); }

// A measure argument is either a JSON file or a name such as dirac:0.
Measure load_measure(Context& ctx, const std::string& arg) {
  if (is_file(arg)) return measure_from_json_checked(load_json(ctx, arg), arg);
  ctx.inputs[arg] = fnv1a_hex(arg);
  if (arg == "uniform") return Measure::uniform(0, 1);
  return named_measure(arg);
}

SequenceFamily load_family(Context& ctx, const std::string& arg) {
  if (arg == "dirac-at") return SequenceFamily::dirac_at();
  if (arg == "uniform-on") return SequenceFamily::uniform_on();
  if (arg == "square-wave") return SequenceFamily::square_wave();
  if (arg.rfind("constant:", 0) == 0) return SequenceFamily::constant(load_measure(ctx, arg.substr(9)));
  if (arg.rfind("tabulated:", 0) == 0) {
    const std::string path = arg.substr(10);
    const json j = load_json(ctx, path);
    if (!j.is_array() || j.empty()) throw ValidationError("schema", path, "tabulated family is a nonempty array of measures");
    std::vector<Measure> terms;
    for (std::size_t i = 0; i < j.size(); ++i) {
      terms.push_back(measure_from_json_checked(j[i], path + "[" + std::to_string(i) + "]"));
    }
    return SequenceFamily::tabulated(std::move(terms));
  }
  throw ValidationError("family_name", arg,
                        "family is dirac-at, uniform-on, square-wave, constant:<measure> or tabulated:<file>");
}

Rational parse_rational(const std::string& text, const std::string& what) {
  try {
    return Rational::parse(text);
  } catch (const std::invalid_argument& e) {
    throw ValidationError("rational_syntax", what, e.what());
  }
}

std::vector<Rational> parse_rational_list(const std::string& text, const std::string& what) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item, what));
  return out;
}

std::vector<Subset> parse_generators(const std::string& text) {
  std::vector<Subset> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string group;
  while (std::getline(ss, group, ';')) {
    Subset s;
    std::stringstream gs(group);
    std::string item;
    while (std::getline(gs, item, ',')) {
      if (item.empty()) continue;
      try {
        s.push_back(std::stoi(item));
      } catch (const std::exception&) {
        throw ValidationError("subset_syntax", "--gens", "not an integer: '" + item + "'");
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

Budget budget_from_env() {
  Budget b;
  if (const char* env = std::getenv("MEASURE_MODES_BUDGET")) {
    std::stringstream ss(env);
    char comma = 0;
    int kb = 0, kf = 0;
    if (!(ss >> kb >> comma >> kf) || comma != ',' || kb < 0 || kf < 0) {
      throw ValidationError("budget_syntax", "MEASURE_MODES_BUDGET", "expected \"k_base,k_funcs\"");
    }
    b.k_base = kb;
    b.k_funcs = kf;
  }
  return b;
}

json budget_json(const Budget& b) { return json{{"k_base", b.k_base}, {"k_funcs", b.k_funcs}, {"n_max", b.n_max}}; }

void emit(const Context& ctx, const json& result, const std::string& text) {
  if (ctx.text) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  json report{{"command", ctx.command}, {"inputs", ctx.inputs}, {"budget", ctx.budget}, {"result", result}};
  std::cout << report.dump(2) << '\n';
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

std::string region_text(const Region& r) {
  if (r.empty()) return "{}";
  std::string out;
  for (const auto& c : r.components()) {
    if (!out.empty()) out += " u ";
    if (c.lo == c.hi) {
      out += "{" + c.lo.str() + "}";
      continue;
    }
    out += (c.lo_closed ? "[" : "(") + c.lo.str() + "," + c.hi.str() + (c.hi_closed ? "]" : ")");
  }
  return out;
}

std::string verdict_text(const ModeVerdict& v) {
  std::string out = to_string(v.status);
  if (v.witness) {
    out += " gap=" + v.witness->gap.str();
    if (const auto* r = std::get_if<Region>(&v.witness->object)) out += " at " + region_text(*r);
  }
  return out;
}

std::string verdict_table(const std::vector<ModeVerdict>& verdicts) {
  std::string out = pad("mode", 9) + pad("status", 21) + pad("witness", 28) + "gap\n";
  for (const auto& v : verdicts) {
    std::string where = "-";
    if (v.witness) {
      if (const auto* r = std::get_if<Region>(&v.witness->object)) where = region_text(*r);
      else if (std::holds_alternative<TvWitness>(v.witness->object)) where = "tv";
      else where = "function";
    }
    out += pad(to_string(v.mode), 9) + pad(to_string(v.status), 21) + pad(where, 28) +
           (v.witness ? v.witness->gap.str() : "-") + "\n";
  }
  return out;
}

std::string compactness_text(const CompactnessReport& c) {
  std::string out = pad("U", 28) + pad("limsup", 10) + pad("grid gap", 10) + "gap\n";
  for (const auto& e : c.entries) {
    out += pad(region_text(e.u), 28) + pad(e.limsup_u.str(), 10) + pad(e.grid_gap.str(), 10) + e.exact_gap.str() + "\n";
  }
  return out;
}

void print_usage(std::ostream& os) {
  os << "usage: measure-modes <subcommand> [options] [--json|--text]\n"
        "subcommands:\n"
        "  tv A B                       total variation distance\n"
        "  prohorov A B                 Prohorov distance (atomic measures)\n"
        "  gauge SPEC CANDIDATE         gauge-neighbourhood membership\n"
        "  quantize --f F --eps Q       level-set quantization certificate\n"
        "  vague-approx --nu NU --n1 K  greedy grid approximation\n"
        "  classify --family F --limit M [--kbase K --kfuncs K]\n"
        "  compactness --family F [--kbase K --deltas 1/8,1/16,1/32]\n"
        "  portmanteau --family F --limit M [--kbase K]\n"
        "  gallery                      pinned counterexample table\n"
        "  atoms --ground M --gens \"1,2;2,3\"\n"
        "  dense-witness --ground M --gens G --nu W --set S --eps Q\n"
        "  campaign --seed S [--trials N]\n"
        "measures are JSON files or names: dirac:p, uniform:a,b, square-wave:n\n";
}

int run(int argc, char** argv) {
  if (argc < 2) {
    print_usage(std::cerr);
    return kExitUsage;
  }
  const std::string sub = argv[1];
  if (sub == "-h" || sub == "--help") {
    print_usage(std::cout);
    return 0;
  }
  if (std::find(std::begin(kSubcommands), std::end(kSubcommands), sub) == std::end(kSubcommands)) {
    std::cerr << "unknown subcommand '" << sub << "'\n";
    print_usage(std::cerr);
    return kExitUsage;
  }

  Context ctx;
  for (int i = 1; i < argc; ++i) ctx.command.push_back(argv[i]);

  CLI::App app{"measure-modes"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "JSON report (default)");
  app.add_flag("--text", ctx.text, "aligned text report");

  std::string a_path, b_path, f_path, nu_path, family, limit = "dirac:0", eps_text, deltas_text = "1/8,1/16,1/32";
  std::string gens_text, set_text, weights_text;
  int n1 = 2, ground = 1;
  std::optional<int> kbase, kfuncs;
  std::uint64_t seed = 1;
  std::size_t trials = 100;

  auto* tv = app.add_subcommand("tv", "total variation distance");
  tv->add_option("a", a_path)->required();
  tv->add_option("b", b_path)->required();
  auto* pr = app.add_subcommand("prohorov", "Prohorov distance");
  pr->add_option("a", a_path)->required();
  pr->add_option("b", b_path)->required();
  auto* gauge = app.add_subcommand("gauge", "gauge membership");
  gauge->add_option("spec", a_path)->required();
  gauge->add_option("candidate", b_path)->required();
  auto* quant = app.add_subcommand("quantize", "quantization certificate");
  quant->add_option("--f", f_path)->required();
  quant->add_option("--eps", eps_text)->required();
  quant->add_option("--nu", a_path, "check against nu and rho");
  quant->add_option("--rho", b_path);
  auto* vague = app.add_subcommand("vague-approx", "greedy grid approximation");
  vague->add_option("--nu", nu_path)->required();
  vague->add_option("--n1", n1)->required();
  vague->add_option("--f", f_path, "also report the integration error for this function");
  auto* classify = app.add_subcommand("classify", "per-mode verdicts");
  auto* compact = app.add_subcommand("compactness", "mass-escape gap");
  auto* port = app.add_subcommand("portmanteau", "open/closed setwise cross-check");
  for (auto* c : {classify, compact, port}) {
    c->add_option("--family", family)->required();
    c->add_option("--kbase", kbase);
  }
  for (auto* c : {classify, port}) c->add_option("--limit", limit);
  classify->add_option("--kfuncs", kfuncs);
  compact->add_option("--deltas", deltas_text);
  auto* gallery = app.add_subcommand("gallery", "pinned counterexample table");
  gallery->add_option("--kbase", kbase);
  gallery->add_option("--kfuncs", kfuncs);
  gallery->add_option("--deltas", deltas_text);
  auto* atoms = app.add_subcommand("atoms", "σ-algebra atoms");
  auto* dense = app.add_subcommand("dense-witness", "dyadic grid member near nu");
  for (auto* c : {atoms, dense}) {
    c->add_option("--ground", ground)->required();
    c->add_option("--gens", gens_text);
  }
  dense->add_option("--nu", weights_text, "comma-separated atom weights")->required();
  dense->add_option("--set", set_text, "comma-separated ground elements")->required();
  dense->add_option("--eps", eps_text)->required();
  auto* camp = app.add_subcommand("campaign", "randomized property campaigns");
  camp->add_option("--seed", seed);
  camp->add_option("--trials", trials);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << json{{"error", "usage"}, {"invariant", "arguments"}, {"detail", e.what()}}.dump(2) << '\n';
    return kExitValidation;
  }
  if (as_json) ctx.text = false;

  Budget budget = budget_from_env();
  if (kbase) budget.k_base = *kbase;
  if (kfuncs) budget.k_funcs = *kfuncs;

  if (tv->parsed() || pr->parsed()) {
    const Measure a = load_measure(ctx, a_path), b = load_measure(ctx, b_path);
    const Rational d = tv->parsed() ? tv_distance(a, b) : prohorov_distance(a, b);
    emit(ctx, json{{tv->parsed() ? "tv" : "prohorov", exact(d)}}, d.str());
  } else if (gauge->parsed()) {
    const GaugeSpec g = gauge_from_json(load_json(ctx, a_path), a_path);
    const Measure c = load_measure(ctx, b_path);
    const auto r = gauge_contains(g, c);
    emit(ctx, report_json(r),
         std::string(r.contained ? "contained" : "outside") + " margin=" + r.margin.str() +
             " worst_index=" + std::to_string(r.worst_index));
  } else if (quant->parsed()) {
    const PiecewiseFunc f = func_from_json(load_json(ctx, f_path), f_path);
    const auto cert = make_certificate(f, parse_rational(eps_text, "--eps"));
    json result{{"certificate", report_json(cert)}};
    std::string text = "n=" + std::to_string(cert.n) + " cell_tolerance=" + cert.cell_tolerance.str();
    if (!a_path.empty() || !b_path.empty()) {
      if (a_path.empty() || b_path.empty()) throw ValidationError("arguments", "--nu/--rho", "give both --nu and --rho");
      const auto check = certificate_check(cert, load_measure(ctx, a_path), load_measure(ctx, b_path));
      result["check"] = report_json(check);
      text += std::string(" hypothesis=") + (check.hypothesis ? "true" : "false") +
              " conclusion=" + (check.conclusion ? "true" : "false") + " gap=" + check.gap.str();
    }
    emit(ctx, result, text);
  } else if (vague->parsed()) {
    const Measure nu = load_measure(ctx, nu_path);
    const auto r = vague_approximate(nu, n1);
    json result = report_json(r);
    std::string text;
    for (const auto& atom : r.atoms.atoms()) text += atom.location.str() + "\t" + atom.mass.str() + "\n";
    if (!f_path.empty()) {
      const PiecewiseFunc f = func_from_json(load_json(ctx, f_path), f_path);
      const Rational err = abs(integrate(nu, f) - integrate(r.atoms, f));
      result["integration_error"] = exact(err);
      text += "error\t" + err.str() + "\n";
    }
    emit(ctx, result, text);
  } else if (classify->parsed()) {
    ctx.budget = budget_json(budget);
    const auto fam = load_family(ctx, family);
    const auto verdicts = classify_modes(fam, load_measure(ctx, limit), budget);
    json result = json::array();
    for (const auto& v : verdicts) result.push_back(report_json(v));
    emit(ctx, json{{"family", fam.name()}, {"limit", limit}, {"verdicts", result}}, verdict_table(verdicts));
  } else if (compact->parsed()) {
    ctx.budget = budget_json(budget);
    const auto fam = load_family(ctx, family);
    const auto report = compactness_gap(fam, budget.k_base, parse_rational_list(deltas_text, "--deltas"));
    emit(ctx, report_json(report), compactness_text(report));
  } else if (port->parsed()) {
    ctx.budget = budget_json(budget);
    const auto fam = load_family(ctx, family);
    const auto report = portmanteau_crosscheck(fam, load_measure(ctx, limit), budget.k_base, budget.n_max);
    emit(ctx, report_json(report),
         "open:   " + verdict_text(report.open_verdict) + "\nclosed: " + verdict_text(report.closed_verdict) +
             "\nagree:  " + (report.agree ? "yes" : "no") + "\n");
  } else if (gallery->parsed()) {
    ctx.budget = budget_json(budget);
    const auto report = gallery_run(budget, parse_rational_list(deltas_text, "--deltas"));
    std::string text = pad("family", 24) + pad("candidate", 14);
    for (const char* m : {"Vague", "Weak", "Setwise", "TV"}) text += pad(m, 34);
    text += pad("portmanteau", 13) + "escape\n";
    for (const auto& row : report.rows) {
      text += pad(row.family, 24) + pad(row.candidate, 14);
      for (const auto& v : row.verdicts) text += pad(verdict_text(v), 34);
      std::string escape = "none";
      if (!row.compactness.witnesses.empty()) {
        // Largest gap, then fewest components, then longest set.
        const auto& entries = row.compactness.entries;
        const auto best = *std::min_element(
            row.compactness.witnesses.begin(), row.compactness.witnesses.end(), [&](std::size_t x, std::size_t y) {
              const auto& a = entries[x];
              const auto& b = entries[y];
              if (a.exact_gap != b.exact_gap) return a.exact_gap > b.exact_gap;
              if (a.u.size() != b.u.size()) return a.u.size() < b.u.size();
              return a.u.length() > b.u.length();
            });
        const auto& e = entries[best];
        escape = region_text(e.u) + " gap=" + e.exact_gap.str();
      }
      text += pad(row.portmanteau.agree ? "agree" : "DISAGREE", 13) + escape + "\n";
    }
    for (const auto& m : report.mismatches) text += "mismatch: " + m + "\n";
    emit(ctx, report_json(report), text);
    return report.ok() ? 0 : kExitGalleryMismatch;
  } else if (atoms->parsed()) {
    const auto fsa = make_sigma_algebra(ground, parse_generators(gens_text));
    const auto verdict = elementary_count_verdict(fsa);
    std::string text;
    for (const auto& atom : fsa.atoms) {
      std::string line;
      for (int x : atom) line += (line.empty() ? "" : ",") + std::to_string(x);
      text += "{" + line + "}\n";
    }
    text += verdict.verdict + "\n";
    emit(ctx, json{{"sigma_algebra", report_json(fsa)}, {"elementary_events", report_json(verdict)}}, text);
  } else if (dense->parsed()) {
    const auto fsa = make_sigma_algebra(ground, parse_generators(gens_text));
    const AtomMeasure nu{parse_rational_list(weights_text, "--nu")};
    try {
      validate_atom_measure(fsa, nu);
    } catch (const std::invalid_argument& e) {
      throw ValidationError("atom_simplex", "--nu", e.what());
    }
    const auto sets = parse_generators(set_text);
    Subset a = sets.empty() ? Subset{} : sets.front();
    std::sort(a.begin(), a.end());
    const auto w = dense_family_member(fsa, nu, a, parse_rational(eps_text, "--eps"));
    std::string text;
    for (const auto& x : w.rho.weights) text += (text.empty() ? "" : ",") + x.str();
    emit(ctx, report_json(w), text + "\ndenominator=" + std::to_string(w.denominator) + " margin=" + w.margin.str());
  } else if (camp->parsed()) {
    ctx.inputs["seed"] = std::to_string(seed);
    json result = json::array();
    std::string text;
    bool clean = true;
    for (const auto& r : run_campaigns(seed, trials)) {
      result.push_back(json{{"property", r.property},
                            {"trials", r.trials},
                            {"violations", r.violations},
                            {"first_violation", r.first_violation}});
      text += pad(r.property, 36) + std::to_string(r.violations) + "/" + std::to_string(r.trials) + "\n";
      clean = clean && r.violations == 0;
    }
    emit(ctx, result, text);
    return clean ? 0 : 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ValidationError& e) {
    std::cout << e.to_json().dump(2) << '\n';
    return kExitValidation;
  } catch (const AtomicOnlyError& e) {
    std::cout << json{{"error", "validation"}, {"invariant", "atomic_only"}, {"detail", e.what()}}.dump(2) << '\n';
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cout << json{{"error", "validation"}, {"invariant", "argument"}, {"detail", e.what()}}.dump(2) << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "measure-modes: " << e.what() << '\n';
    return 1;
  }
}
