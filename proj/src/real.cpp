#include "cuspforge/real.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace cf {

namespace {

unsigned bits_to_digits10(int bits) { return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1; }

}  // namespace

int default_precision_bits() {
  if (const char* e = std::getenv("CUSPFORGE_BITS")) {
    char* end = nullptr;
    long v = std::strtol(e, &end, 10);
    if (end != e && *end == '\0' && v >= 32 && v <= 100000) return static_cast<int>(v);
  }
  return 256;
}

PrecisionGuard::PrecisionGuard(int bits) : saved_(Real::default_precision()) {
  if (bits < 32) throw std::invalid_argument("precision must be at least 32 bits");
  Real::default_precision(bits_to_digits10(bits));
}

PrecisionGuard::~PrecisionGuard() { Real::default_precision(saved_); }

int current_precision_bits() {
  return static_cast<int>(std::ceil(Real::default_precision() / 0.30102999566398120));
}

Real real_pi() {
  Real p;
  mpfr_const_pi(p.backend().data(), MPFR_RNDN);
  return p;
}

Rat real_to_rat(const Real& r) {
  if (!boost::multiprecision::isfinite(r)) throw std::domain_error("real_to_rat: non-finite value");
  if (r == 0) return Rat(0);
  mpz_t m;
  mpz_init(m);
  mpfr_exp_t e = mpfr_get_z_2exp(m, r.backend().data());
  Int mant;
  mpz_set(mant.backend().data(), m);
  mpz_clear(m);
  Rat q(mant);
  if (e >= 0) {
    Int p = 1;
    p <<= static_cast<unsigned>(e);
    q *= p;
  } else {
    Int p = 1;
    p <<= static_cast<unsigned>(-e);
    q /= p;
  }
  return q;
}

Real rat_to_real(const Rat& r) {
  Real n(num(r).str()), d(den(r).str());
  return n / d;
}

Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
Cx operator-(const Cx& a) { return {-a.re, -a.im}; }
Cx operator*(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
Cx operator*(const Cx& a, const Real& s) { return {a.re * s, a.im * s}; }

Cx operator/(const Cx& a, const Cx& b) {
  Real n = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

Real cabs(const Cx& a) { return boost::multiprecision::hypot(a.re, a.im); }
Real carg(const Cx& a) { return boost::multiprecision::atan2(a.im, a.re); }

Cx cexp(const Cx& a) {
  Real m = boost::multiprecision::exp(a.re);
  return {m * boost::multiprecision::cos(a.im), m * boost::multiprecision::sin(a.im)};
}

Cx cexp_i(const Real& theta) { return {boost::multiprecision::cos(theta), boost::multiprecision::sin(theta)}; }

Cx cinv(const Cx& a) { return Cx(Real(1)) / a; }

std::string cx_to_string(const Cx& a, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << a.re << (a.im < 0 ? " - " : " + ") << boost::multiprecision::abs(a.im) << "i";
  return os.str();
}

std::pair<Rat, Rat> RealInterval::to_rat() const {
  Real ulp = boost::multiprecision::abs(mid) * boost::multiprecision::pow(Real(2), -(current_precision_bits() - 4));
  Real r = boost::multiprecision::abs(rad) + ulp;
  return {real_to_rat(mid) - real_to_rat(r), real_to_rat(mid) + real_to_rat(r)};
}

}  // namespace cf
