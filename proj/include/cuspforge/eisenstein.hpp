#pragma once

#include "cuspforge/contour.hpp"
#include "cuspforge/cuspidal.hpp"
#include "cuspforge/kloosterman.hpp"
#include "cuspforge/recognize.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cf {

enum class CycleMode { PaperLiteral, Calibrated };

const char* mode_name(CycleMode m);
CycleMode parse_mode(const std::string& s);

struct OracleOptions {
  bool enabled = true;
  TruncationParams params = TruncationParams::defaults();
  double tolerance = 1e-6;
};

struct OracleReport {
  bool ran = false;
  int cosets = 0;
  double max_diff = 0;   // max |F(g) - coefficient(g)|
  double max_error = 0;  // max reported contour error
  double tolerance = 0;
  bool agree = true;
};

struct OracleDisagreement : std::runtime_error {
  OracleReport report;
  OracleDisagreement(const std::string& what, OracleReport r) : std::runtime_error(what), report(r) {}
};

struct EisensteinCycle {
  Side side = Side::Plus;
  CycleMode mode = CycleMode::Calibrated;
  RatDivisor D;
  RatSymbols real_part;
  // Imaginary part in coordinates on the loops of the opposite cusp set (lambda+
  // for side plus, lambda- for side minus); zero for the exact Fermat cycles.
  std::vector<double> imag_lambda;
  double imag_norm = 0;
  OracleReport oracle;
};

// D = (a_j) - (c_k) and D = (b_j) - (b_k) with the labels of `lab`.
RatDivisor fermat_ac_divisor(const FermatLabels& lab, int j, int k);
RatDivisor fermat_bb_divisor(const FermatLabels& lab, int j, int k);

// Separated solution u(Gamma g0) + v(Gamma g inf) of boundary_plus = -D for
// contexts where cosets correspond bijectively to (zero cusp, infinity cusp)
// pairs and every cusp has the same width w (so n = w^2). Throws otherwise.
RatSymbols calibrated_plus(const HomologyContext& h, const RatDivisor& D);
// Side minus counterpart on the Fermat dessin: coefficient w(a + b) on the coset
// (a, b), with w(s) - w(s - 1) = m(b_{s-1}) / N and w of mean zero.
RatSymbols calibrated_minus(const FermatLabels& lab, const RatDivisor& D);

EisensteinCycle fermat_cycle_ac(const FermatLabels& lab, int j, int k, CycleMode mode,
                                const OracleOptions& oracle = OracleOptions{});
EisensteinCycle fermat_cycle_bb(const FermatLabels& lab, int j, int k, CycleMode mode,
                                const OracleOptions& oracle = OracleOptions{});
// Calibrated cycle for any degree-0 D supported on one side.
EisensteinCycle fermat_cycle(const FermatLabels& lab, const RatDivisor& D, const OracleOptions& oracle = OracleOptions{});

// Atoms of the level-N Fermat units along the base path of a side, cached per
// parameter set.
const ContourAtoms& fermat_atoms(int N, Side side, const TruncationParams& p);
// Contour weights for the unit of divisor N D twisted by the character (p, q).
std::vector<Rat> fermat_unit_weights(const FermatLabels& lab, const ContourAtoms& at, const RatDivisor& D, int p, int q);
// F_D(g) for every coset of the Fermat dessin by the contour oracle.
std::vector<ContourValue> oracle_values(const FermatLabels& lab, const RatDivisor& D, Side side,
                                        const TruncationParams& p);
OracleReport compare_with_oracle(const FermatLabels& lab, const RatSymbols& v, const RatDivisor& D,
                                 const OracleOptions& oracle);

// "-D", "+D" or "FAIL".
std::string boundary_check(const HomologyContext& h, const EisensteinCycle& c);
std::string boundary_check(const HomologyContext& h, const RatSymbols& v, const RatDivisor& D);

struct ImaginaryPart {
  Side side = Side::Plus;
  std::vector<double> symbols;  // per coset
  std::vector<double> errors;   // per coset
  std::vector<double> lambda_coords;
  double residual = 0;  // distance of `symbols` from the lambda span
  double norm = 0;      // max |symbols|
  double error = 0;     // max error
};

// pi sum_j m_j (C_{j, g(-1)} - C_{j, g(1)}) on side plus and
// pi sum_j m_j (C_{j, g inf} - C_{j, g0}) on side minus, projected onto the lambda span.
ImaginaryPart imaginary_part_from_scattering(const HomologyContext& h, const RatDivisor& D, Side side,
                                             const TruncationParams& p,
                                             ScatteringNormalization norm = ScatteringNormalization::Pi);

// Loops of the opposite cusp set as vectors of the given side.
std::vector<RatVec> lambda_span(const HomologyContext& h, Side side);

enum class TorsionStatus { Torsion, NotTorsion, Indeterminate };
const char* torsion_status_name(TorsionStatus s);

struct TorsionVerdict {
  TorsionStatus status = TorsionStatus::Indeterminate;
  bool is_torsion() const { return status == TorsionStatus::Torsion; }
  Int order = 0;           // lcm of denominators modulo Z^n (generalized Jacobian)
  Int jacobian_order = 0;  // order modulo Z^n + lambda span (classical Jacobian)
  std::vector<Rat> certificate;
  std::string diagnostics;
};

TorsionVerdict torsion_order(const HomologyContext& h, const EisensteinCycle& c);

struct RatInterval {
  Rat mid, rad;
};

// Interval coefficients: recognition of each coefficient with denominator at most
// den_bound, and |imaginary part| <= tol.
TorsionVerdict torsion_order(const HomologyContext& h, Side side, const std::vector<RatInterval>& coeffs,
                             double imag_bound, const Int& den_bound, double tol);

struct SplitDivisor {
  RatDivisor E0, Einf;
};

SplitDivisor split_divisor(const HomologyContext& h, const RatDivisor& D, int base);

// Side-plus F values of a conjugate subgroup, per coset, for a divisor on its cusps.
using FProvider = std::function<std::vector<RatInterval>(const HomologyContext& conj, const RatDivisor& Dconj)>;

// calibrated_plus on the conjugate context.
FProvider exact_fermat_provider();
// Contour oracle on the level-N Fermat atoms.
FProvider numeric_fermat_provider(int N, const TruncationParams& p);

struct FullCycle {
  std::vector<RatInterval> v;  // Manin symbol coordinates, index 6x + t
  SplitDivisor split;
  RatDivisor Dminus, Dplus;    // U^{-1} E_inf on U^{-1} Gamma U and U E_0 on U Gamma U^{-1}
};

// Image of a cusp of Gamma under z -> U^{which} z (which = -1 or +1), as a cusp of
// conj = conjugate_dessin(d, which).
int conjugate_cusp(const HomologyContext& h, const HomologyContext& conj, int cusp, int which);

FullCycle assemble_full_cycle(const HomologyContext& h, const RatDivisor& D, const FProvider& provider, int base = -1);

std::vector<RatVec> md_invariant_span(const ManinPresentation& mp);

TorsionVerdict manin_drinfeld_check(const ManinPresentation& mp, const std::vector<RatInterval>& v, const Int& den_bound,
                                    double tol);

}  // namespace cf
