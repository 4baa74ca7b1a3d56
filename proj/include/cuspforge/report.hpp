#pragma once

#include "cuspforge/eisenstein.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cf {

using ojson = nlohmann::ordered_json;

struct DessinFormatError : std::runtime_error {
  std::vector<std::string> violations;
  explicit DessinFormatError(std::vector<std::string> v);
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// {"n": int, "piA": [...], "piB": [...]}, validated.
Dessin dessin_from_json(const ojson& j);
ojson dessin_to_json(const Dessin& d);
Dessin load_dessin(const std::string& path);

// Terms "+-coeff*label" with labels a<j>, b<j>, c<j> (when lab is given) or
// kind:min_coset; whitespace is ignored. Degree 0 is enforced.
RatDivisor parse_divisor(const HomologyContext& h, const FermatLabels* lab, const std::string& s);
std::string format_divisor(const HomologyContext& h, const FermatLabels* lab, const RatDivisor& D);

ojson conventions_json();
ojson params_json(const TruncationParams& p);
ojson structure_json(const AbelianStructure& a);

ojson analyze_report(const Dessin& d);

// Geometry checks for from_fermat(N); `ok` is false when any check fails.
ojson fermat_report(int N, bool& ok);

// jacobian in {full, plus, minus}; `pass` compares against the closed form.
ojson cuspidal_report(int N, const std::string& jacobian, bool& pass);

// Throws OracleDisagreement in calibrated mode when the oracle disagrees.
ojson eisenstein_report(const FermatLabels& lab, const RatDivisor& D, CycleMode mode, const OracleOptions& oracle);

ojson manin_report(const HomologyContext& h, bool& pass);
ojson full_cycle_json(const HomologyContext& h, const FullCycle& fc);

ojson verdict_json(const TorsionVerdict& v);

}  // namespace cf
