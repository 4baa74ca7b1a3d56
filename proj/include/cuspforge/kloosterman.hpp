#pragma once

#include "cuspforge/contour.hpp"
#include "cuspforge/homology.hpp"

#include <complex>
#include <string>
#include <vector>

namespace cf {

// sigma maps infinity to the cusp; h is its width in SL2(Z) (twice the dessin width).
struct CuspFrame {
  M64 sigma;
  int h = 2;
};

// sigma = g t with g the coset representative of the cusp's minimal coset and
// t = Id, S, U^2 for the kinds infinity, zero, one.
CuspFrame cusp_frame(const Dessin& d, const CuspTable& ct, int cusp);

struct PhiRep {
  std::int64_t a, c, d;
  bool operator==(const PhiRep& o) const { return a == o.a && c == o.c && d == o.d; }
};

// Representatives of sigma_j^{-1} Gamma sigma_k modulo T^{h_j} on the left and
// T^{h_k} on the right: 0 < c <= c_max, 0 <= a < h_j c, 0 <= d < h_k c.
struct PhiScan {
  int j = 0, k = 0, c_max = 0, hj = 2, hk = 2;
  std::vector<PhiRep> reps;         // sorted by (c, d, a)
  std::vector<std::size_t> c_end;  // reps with c <= cc are reps[0, c_end[cc])
};

PhiScan phi_scan(const Dessin& d, const CuspTable& ct, int j, int k, int c_max, bool parallel = true);
// Brute-force reference over all (a, d) in the box; slow, for tests.
PhiScan phi_scan_reference(const Dessin& d, const CuspTable& ct, int j, int k, int c_max);

struct PhiValue {
  std::complex<double> value;
  double tail = 0;  // bound on the omitted c > c_max terms (s > 1), +inf at s = 1
  long terms = 0;
};

// sum over reps with c <= c_max of e^{2 pi i r d / c} / c^{2s}
PhiValue phi_sum(const PhiScan& scan, int r, double s, int c_max);
std::vector<PhiValue> phi_sum_series(const PhiScan& scan, int r_max, double s, int c_max);

PhiValue phi_truncated(const Dessin& d, const CuspTable& ct, int j, int k, int r, double s, int c_max,
                       bool parallel = true);

struct ComplexEstimate {
  std::complex<double> value;
  double error = 0;
};

struct RealEstimate {
  double value = 0;
  double error = 0;
  bool stable = true;
};

// (1 / 2 pi i) sum_j m_j sum_{r=1}^{r_max} phi_{jj,r}(s) e^{2 pi i r (x + i eps)}.
ComplexEstimate sD_estimate(const HomologyContext& h, const RatDivisor& D, const Rat& x, const TruncationParams& p);

// -4 pi^2 r sum_j m_j phi_{j, inf, r}(s), with inf the cusp of the base coset at infinity.
// Complex in general; real for subgroups normalized by z -> -conj(z).
ComplexEstimate scholl_coefficient(const HomologyContext& h, const RatDivisor& D, int r, const TruncationParams& p);

enum class ScatteringNormalization { Pi, PiToS };

// lim_{s -> 1} pi (phi_{j k1, 0}(s) - phi_{j k2, 0}(s)) by Richardson extrapolation on
// s = 1 + delta, 1 + delta/2, 1 + delta/4 with delta = p.s - 1.
RealEstimate scattering_difference(const HomologyContext& h, int j, int k1, int k2, const TruncationParams& p,
                                   ScatteringNormalization norm = ScatteringNormalization::Pi);

}  // namespace cf
