#pragma once

#include "cuspforge/numbers.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace cf {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

// 256 unless CUSPFORGE_BITS is set to a positive integer.
int default_precision_bits();

// Sets the process-wide default precision for new Real values and restores the
// previous setting on destruction. Do not construct inside parallel regions.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(int bits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

int current_precision_bits();

Real real_pi();
// Exact value of a finite Real.
Rat real_to_rat(const Real& r);
Real rat_to_real(const Rat& r);

struct Cx {
  Real re, im;
  Cx() : re(0), im(0) {}
  Cx(Real r, Real i = Real(0)) : re(std::move(r)), im(std::move(i)) {}
};

Cx operator+(const Cx& a, const Cx& b);
Cx operator-(const Cx& a, const Cx& b);
Cx operator-(const Cx& a);
Cx operator*(const Cx& a, const Cx& b);
Cx operator*(const Cx& a, const Real& s);
Cx operator/(const Cx& a, const Cx& b);
Real cabs(const Cx& a);
Real carg(const Cx& a);  // principal value in (-pi, pi]
Cx cexp(const Cx& a);
Cx cexp_i(const Real& theta);  // e^{i theta}
Cx cinv(const Cx& a);
std::string cx_to_string(const Cx& a, int digits = 20);

// Midpoint-radius real interval.
struct RealInterval {
  Real mid, rad;
  // Exact rational enclosure, widened by one unit in the last place.
  std::pair<Rat, Rat> to_rat() const;
};

}  // namespace cf
