#include "cuspforge/kloosterman.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numeric>

namespace cf {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool in_gamma(const Dessin& d, const M64& sj, const M64& m, const M64& ski) {
  M64 t, x;
  if (mul_checked(sj, m, t) && mul_checked(t, ski, x)) {
    if (!is_gamma2(x)) return false;
    return coset_of(d, x) == 0;
  }
  Mat2 X = to_big(sj) * to_big(m) * to_big(ski);
  if (!is_gamma2(X)) return false;
  return coset_of(d, X) == 0;
}

// inverse of d modulo c (gcd 1), in [0, c)
std::int64_t inv_mod(std::int64_t d, std::int64_t c) {
  std::int64_t r0 = c, r1 = ((d % c) + c) % c, t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  return ((t0 % c) + c) % c;
}

void finish(PhiScan& s) {
  std::sort(s.reps.begin(), s.reps.end(), [](const PhiRep& x, const PhiRep& y) {
    if (x.c != y.c) return x.c < y.c;
    if (x.d != y.d) return x.d < y.d;
    return x.a < y.a;
  });
  s.c_end.assign(s.c_max + 1, 0);
  std::size_t i = 0;
  for (int cc = 0; cc <= s.c_max; ++cc) {
    while (i < s.reps.size() && s.reps[i].c <= cc) ++i;
    s.c_end[cc] = i;
  }
}

PhiScan scan_header(const Dessin& d, const CuspTable& ct, int j, int k, int c_max, CuspFrame& fj, CuspFrame& fk) {
  if (c_max < 0) throw std::invalid_argument("phi: c_max must be non-negative");
  fj = cusp_frame(d, ct, j);
  fk = cusp_frame(d, ct, k);
  PhiScan s;
  s.j = j;
  s.k = k;
  s.c_max = c_max;
  s.hj = fj.h;
  s.hk = fk.h;
  return s;
}

}  // namespace

CuspFrame cusp_frame(const Dessin& d, const CuspTable& ct, int cusp) {
  if (cusp < 0 || cusp >= ct.size()) throw std::out_of_range("cusp_frame: cusp index");
  const Cusp& c = ct.cusps[cusp];
  Mat2 g = coset_reps(d).at(c.min_coset);
  Mat2 t = mats::Id();
  if (c.kind == CuspKind::Zero) t = mats::S();
  if (c.kind == CuspKind::One) t = mats::U() * mats::U();
  CuspFrame f;
  f.sigma = to_small(g * t);
  f.h = 2 * c.width;
  return f;
}

PhiScan phi_scan(const Dessin& d, const CuspTable& ct, int j, int k, int c_max, bool parallel) {
  CuspFrame fj, fk;
  PhiScan s = scan_header(d, ct, j, k, c_max, fj, fk);
  // sigma_j^{-1} Gamma sigma_k contains m iff sigma_j m sigma_k^{-1} lies in Gamma
  const M64 sjf = fj.sigma, skinv = fk.sigma.inv();
  std::vector<std::vector<PhiRep>> per_c(c_max + 1);
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (int c = 1; c <= c_max; ++c) {
    auto& out = per_c[c];
    const std::int64_t dmax = static_cast<std::int64_t>(s.hk) * c;
    for (std::int64_t dd = 0; dd < dmax; ++dd) {
      if (std::gcd(dd, static_cast<std::int64_t>(c)) != 1) continue;
      std::int64_t a0 = c == 1 ? 0 : inv_mod(dd, c);
      std::int64_t b0 = (a0 * dd - 1) / c;
      for (int t = 0; t < s.hj; ++t) {
        M64 m{a0 + t * c, b0 + t * dd, c, dd};
        if (in_gamma(d, sjf, m, skinv)) out.push_back({m.a, c, dd});
      }
    }
  }
  for (int c = 1; c <= c_max; ++c) s.reps.insert(s.reps.end(), per_c[c].begin(), per_c[c].end());
  finish(s);
  return s;
}

PhiScan phi_scan_reference(const Dessin& d, const CuspTable& ct, int j, int k, int c_max) {
  CuspFrame fj, fk;
  PhiScan s = scan_header(d, ct, j, k, c_max, fj, fk);
  const M64 skinv = fk.sigma.inv();
  for (std::int64_t c = 1; c <= c_max; ++c)
    for (std::int64_t a = 0; a < s.hj * c; ++a)
      for (std::int64_t dd = 0; dd < s.hk * c; ++dd) {
        if ((a * dd - 1) % c != 0) continue;
        M64 m{a, (a * dd - 1) / c, c, dd};
        if (in_gamma(d, fj.sigma, m, skinv)) s.reps.push_back({a, c, dd});
      }
  finish(s);
  return s;
}

PhiValue phi_sum(const PhiScan& scan, int r, double s, int c_max) {
  if (!(s >= 1)) throw std::invalid_argument("phi: s must be at least 1");
  c_max = std::min(c_max, scan.c_max);
  PhiValue v;
  if (c_max < 0) c_max = 0;
  const std::size_t end = scan.c_end.empty() ? 0 : scan.c_end[c_max];
  std::complex<double> acc = 0;
  for (std::size_t i = 0; i < end; ++i) {
    const PhiRep& p = scan.reps[i];
    // reduce r d mod c before the exponential
    std::int64_t rd = ((static_cast<std::int64_t>(r) % p.c) * (p.d % p.c)) % p.c;
    if (rd < 0) rd += p.c;
    double ang = 2 * kPi * static_cast<double>(rd) / static_cast<double>(p.c);
    double w = std::pow(static_cast<double>(p.c), -2 * s);
    acc += std::polar(w, ang);
  }
  v.value = acc;
  v.terms = static_cast<long>(end);
  if (s > 1) {
    double C = std::max(c_max, 1);
    v.tail = static_cast<double>(scan.hj) * scan.hk * std::pow(C, 2 - 2 * s) / (2 * s - 2);
  } else {
    v.tail = std::numeric_limits<double>::infinity();
  }
  return v;
}

std::vector<PhiValue> phi_sum_series(const PhiScan& scan, int r_max, double s, int c_max) {
  std::vector<PhiValue> out;
  out.reserve(r_max + 1);
  for (int r = 0; r <= r_max; ++r) out.push_back(phi_sum(scan, r, s, c_max));
  return out;
}

PhiValue phi_truncated(const Dessin& d, const CuspTable& ct, int j, int k, int r, double s, int c_max, bool parallel) {
  PhiScan scan = phi_scan(d, ct, j, k, c_max, parallel);
  return phi_sum(scan, r, s, c_max);
}

namespace {

void check_divisor(const HomologyContext& h, const RatDivisor& D) {
  if (static_cast<int>(D.m.size()) != h.ct.size()) throw std::invalid_argument("divisor size does not match the cusp count");
  if (D.degree() != 0) throw std::invalid_argument("divisor must have degree 0");
}

double zeta_upper(double s) {
  // zeta(s) <= 1 + 1/(s-1) for s > 1
  return 1 + 1 / (s - 1);
}

}  // namespace

ComplexEstimate sD_estimate(const HomologyContext& h, const RatDivisor& D, const Rat& x, const TruncationParams& p) {
  validate(p);
  check_divisor(h, D);
  int cx = cusp_of_rational(h.d, h.ct, num(x), den(x));
  if (D.m[cx] != 0) throw std::invalid_argument("sD_estimate: divisor must vanish at the cusp of x");
  ComplexEstimate out;
  if (D.is_zero()) return out;
  const double frac_x = frac(x).convert_to<double>();
  const double qabs = std::exp(-2 * kPi * p.eps);
  std::complex<double> total = 0, half = 0;
  double err = 0;
  for (int j = 0; j < h.ct.size(); ++j) {
    if (D.m[j] == 0) continue;
    double mj = D.m[j].convert_to<double>();
    PhiScan scan = phi_scan(h.d, h.ct, j, j, p.c_max);
    std::complex<double> sj = 0, sh = 0;
    double tails = 0;
    for (int r = 1; r <= p.r_max; ++r) {
      std::complex<double> q = std::polar(std::pow(qabs, r), 2 * kPi * std::fmod(r * frac_x, 1.0));
      PhiValue a = phi_sum(scan, r, p.s, p.c_max);
      sj += a.value * q;
      sh += phi_sum(scan, r, p.s, p.c_max / 2).value * q;
      tails += a.tail * std::pow(qabs, r);
    }
    total += mj * sj;
    half += mj * sh;
    if (p.s > 1) {
      double hh = static_cast<double>(scan.hj) * scan.hk;
      tails += hh * zeta_upper(2 * p.s - 1) * std::pow(qabs, p.r_max + 1) / (1 - qabs);
      err += std::abs(mj) * tails;
    }
  }
  const std::complex<double> inv2pii(0, -1 / (2 * kPi));
  out.value = total * inv2pii;
  if (p.s > 1)
    out.error = err / (2 * kPi);
  else
    out.error = std::abs((total - half) * inv2pii);
  return out;
}

ComplexEstimate scholl_coefficient(const HomologyContext& h, const RatDivisor& D, int r, const TruncationParams& p) {
  validate(p);
  check_divisor(h, D);
  if (r < 1) throw std::invalid_argument("scholl_coefficient: r must be positive");
  ComplexEstimate out;
  if (D.is_zero()) return out;
  const int inf = h.ct.inf_of[0];
  std::complex<double> acc = 0, half = 0;
  double tail = 0;
  for (int j = 0; j < h.ct.size(); ++j) {
    if (D.m[j] == 0) continue;
    double mj = D.m[j].convert_to<double>();
    PhiScan scan = phi_scan(h.d, h.ct, j, inf, p.c_max);
    PhiValue a = phi_sum(scan, r, p.s, p.c_max);
    acc += mj * a.value;
    half += mj * phi_sum(scan, r, p.s, p.c_max / 2).value;
    tail += std::abs(mj) * a.tail;
  }
  const double f = -4 * kPi * kPi * r;
  out.value = f * acc;
  out.error = p.s > 1 ? std::abs(f) * tail : std::abs(f * (acc - half));
  return out;
}

RealEstimate scattering_difference(const HomologyContext& h, int j, int k1, int k2, const TruncationParams& p,
                                   ScatteringNormalization norm) {
  validate(p);
  if (!(p.s > 1)) throw std::invalid_argument("scattering_difference: s must exceed 1");
  RealEstimate out;
  if (k1 == k2) return out;
  PhiScan s1 = phi_scan(h.d, h.ct, j, k1, p.c_max);
  PhiScan s2 = phi_scan(h.d, h.ct, j, k2, p.c_max);
  const double delta = p.s - 1;
  const double grid[3] = {1 + delta, 1 + delta / 2, 1 + delta / 4};
  double mag = 0;
  auto extrapolate = [&](int cmax, bool count) {
    double f[3];
    for (int i = 0; i < 3; ++i) {
      double a = phi_sum(s1, 0, grid[i], cmax).value.real();
      double b = phi_sum(s2, 0, grid[i], cmax).value.real();
      double pref = norm == ScatteringNormalization::Pi ? kPi : std::pow(kPi, grid[i]);
      f[i] = pref * (a - b);
      if (count) mag += pref * (std::abs(a) + std::abs(b));
    }
    double quad = (8 * f[2] - 6 * f[1] + f[0]) / 3;
    double lin = 2 * f[2] - f[1];
    return std::pair<double, double>(quad, std::abs(quad - lin));
  };
  auto [full, rich] = extrapolate(p.c_max, true);
  double halfv = extrapolate(p.c_max / 2, false).first;
  out.value = full;
  out.error = rich + std::abs(full - halfv) + 64 * DBL_EPSILON * mag;
  out.stable = std::isfinite(out.value) && std::isfinite(out.error);
  return out;
}

}  // namespace cf
