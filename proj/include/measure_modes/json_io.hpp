#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "measure_modes/approx.hpp"
#include "measure_modes/measure.hpp"
#include "measure_modes/metrics.hpp"
#include "measure_modes/sequences.hpp"
#include "measure_modes/sigma_atoms.hpp"

namespace measure_modes {

using json = nlohmann::ordered_json;

/// Input rejected while decoding; `invariant` is a stable machine-readable name.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string invariant, std::string path, const std::string& detail)
      : std::runtime_error(detail), invariant_(std::move(invariant)), path_(std::move(path)) {}
  const std::string& invariant() const { return invariant_; }
  const std::string& path() const { return path_; }
  json to_json() const;

 private:
  std::string invariant_;
  std::string path_;
};

// Schemas: each decoder accepts exactly what the matching encoder prints.
json to_json(const Rational& q);
json to_json(const Region& r);
json to_json(const PiecewiseFunc& f);
json to_json(const Measure& m);
json to_json(const GaugeSpec& g);
json to_json(const AtomMeasure& m);

Rational rational_from_json(const json& j, const std::string& path = "$");
Region region_from_json(const json& j, const std::string& path = "$");
PiecewiseFunc func_from_json(const json& j, const std::string& path = "$");
/// Shape only; pair with measure_from_json_checked for probability invariants.
Measure measure_from_json(const json& j, const std::string& path = "$");
/// Also enforces measure_validate; the violated invariant becomes the error name.
Measure measure_from_json_checked(const json& j, const std::string& path = "$");
GaugeSpec gauge_from_json(const json& j, const std::string& path = "$");
AtomMeasure atom_measure_from_json(const json& j, const std::string& path = "$");

/// "dirac:p", "uniform:a,b" or "square-wave:n".
Measure named_measure(std::string_view spec);

// Reports: exact rationals are {"exact": "p/q", "decimal": "..."}.
json exact(const Rational& q);
json report_json(const Tail& t);
json report_json(const ModeVerdict& v);
json report_json(const PortmanteauReport& p);
json report_json(const CompactnessReport& c);
json report_json(const GalleryReport& g);
json report_json(const QuantizationCertificate& c);
json report_json(const CertificateCheck& c);
json report_json(const VagueApproxResult& r);
json report_json(const GaugeResult& r);
json report_json(const FiniteSigmaAlgebra& f);
json report_json(const ElementaryCountReport& r);
json report_json(const DenseWitness& w);

/// 64-bit FNV-1a, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace measure_modes
