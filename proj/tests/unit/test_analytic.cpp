#include "doctest.h"
#include "support/generators.hpp"

#include <cmath>

using namespace cf;

namespace {

constexpr double kPi = 3.14159265358979323846;

double d(const Real& x) { return x.convert_to<double>(); }

Real dist(const Cx& a, const Cx& b) { return cabs(a - b); }

Cx point(gen::Rng& g) {
  double x = std::uniform_real_distribution<double>(-1, 1)(g);
  double y = std::uniform_real_distribution<double>(0.3, 2)(g);
  return Cx(Real(x), Real(y));
}

Cx mob(long a, long b, long c, long dd, const Cx& z) {
  return (z * Real(a) + Cx(Real(b))) / (z * Real(c) + Cx(Real(dd)));
}

TruncationParams fast_params() {
  TruncationParams p = TruncationParams::defaults();
  p.precision_bits = 128;
  p.quad_steps = 512;
  return p;
}

}  // namespace

TEST_CASE("lambda special values") {
  PrecisionGuard g(256);
  Real tiny("1e-60");
  // lambda(z) = lambda_classical(z + 1)
  LambdaValue at_i = lambda_pair(Cx(Real(0), Real(1)));
  CHECK(d(dist(at_i.lambda, Cx(Real(-1)))) < d(tiny));
  LambdaValue classical_i = lambda_pair(Cx(Real(-1), Real(1)));
  CHECK(d(dist(classical_i.lambda, Cx(Real(1) / 2))) < d(tiny));

  LambdaValue ten = lambda_pair(Cx(Real(0), Real(10)));
  Real lead = -16 * exp(-10 * real_pi());
  Real bound = 256 * exp(-20 * real_pi());
  CHECK(cabs(ten.lambda - Cx(lead)) < bound);
  CHECK_THROWS_AS(lambda_pair(Cx(Real(0), Real(-1))), std::domain_error);
}

TEST_CASE("property: lambda invariances") {
  PrecisionGuard g(256);
  gen::Rng rng(51);
  Real tol("1e-55");
  for (int it = 0; it < 40; ++it) {
    Cx z = point(rng);
    LambdaValue l = lambda_pair(z);
    Cx scale = Cx(Real(1) + cabs(l.lambda));
    CHECK(cabs(lambda_pair(mob(1, 2, 0, 1, z)).lambda - l.lambda) < tol * cabs(scale));
    CHECK(cabs(lambda_pair(mob(1, 0, 2, 1, z)).lambda - l.lambda) < tol * cabs(scale));
    CHECK(cabs(lambda_pair(mob(0, -1, 1, 0, z)).lambda * l.lambda - Cx(Real(1))) < tol);
    CHECK(cabs(l.lambda + l.one_minus - Cx(Real(1))) < tol * cabs(scale));
  }
}

TEST_CASE("unit_eval examples") {
  PrecisionGuard g(256);
  Cx z(Real("0.2"), Real("0.9"));
  UnitSpec lam;
  CHECK(d(dist(unit_eval(lam, z), lambda_pair(z).lambda)) < 1e-60);
  UnitSpec x{UnitSpec::Family::XMinusZeta, 0, 1};
  CHECK(d(dist(unit_eval(x, z), lambda_pair(z).lambda - Cx(Real(1)))) < 1e-60);
  UnitSpec bad{UnitSpec::Family::XMinusZeta, 5, 3};
  CHECK_THROWS(validate(bad));
  CHECK(parse_family(family_name(UnitSpec::Family::XMinusEpsZetaY)) == UnitSpec::Family::XMinusEpsZetaY);
}

TEST_CASE("contour_F on Gamma(2)") {
  TruncationParams p = fast_params();
  Dessin g2 = from_fermat(1);
  UnitSpec lam;
  // div lambda = (inf) - (0); along 1 -> -1 the winding is -1
  ContourValue v = contour_F(lam, g2, mats::Id(), Side::Plus, p);
  CHECK(std::abs(d(v.value.re) + 1) < 1e-6);
  CHECK(std::abs(d(v.value.im)) < 1e-6);
  CHECK(d(v.error) < 1e-6);
  // x - eps y has trivial divisor at N = 1
  UnitSpec w{UnitSpec::Family::XMinusEpsZetaY, 0, 1};
  ContourValue z = contour_F(w, g2, mats::Id(), Side::Plus, p);
  CHECK(d(cabs(z.value)) < 1e-6);
  CHECK_THROWS(contour_F(lam, g2, mats::S(), Side::Plus, p));
}

TEST_CASE("property: contour_F is additive on products of units") {
  TruncationParams p = fast_params();
  const int N = 3;
  Dessin d3 = from_fermat(N);
  auto reps = coset_reps(d3);
  for (int x = 0; x < d3.n(); ++x) {
    // prod_j (y - zeta^j) = -lambda
    Cx sum;
    Real err = 0;
    for (int j = 0; j < N; ++j) {
      ContourValue v = contour_F({UnitSpec::Family::YMinusZeta, j, N}, d3, reps[x], Side::Plus, p);
      sum = sum + v.value;
      err += v.error;
    }
    ContourValue l = contour_F({UnitSpec::Family::LambdaItself, 0, N}, d3, reps[x], Side::Plus, p);
    CHECK(d(cabs(sum - l.value)) <= d(err + l.error) + 1e-20);
    // prod_m (x - eps zeta^m y) = lambda + (1 - lambda) = 1, on both sides
    for (Side side : {Side::Plus, Side::Minus}) {
      Cx w;
      Real werr = 0;
      for (int m = 0; m < N; ++m) {
        ContourValue v = contour_F({UnitSpec::Family::XMinusEpsZetaY, m, N}, d3, reps[x], side, p);
        w = w + v.value;
        werr += v.error;
      }
      CHECK(d(cabs(w)) <= d(werr) + 1e-20);
    }
  }
}

TEST_CASE("property: contour tables follow the separated ansatz") {
  TruncationParams p = fast_params();
  const int N = 3;
  Dessin d3 = from_fermat(N);
  auto reps = coset_reps(d3);
  for (int j = 0; j < N; ++j) {
    std::vector<double> re(N * N);
    double err = 0;
    for (int x = 0; x < N * N; ++x) {
      ContourValue v = contour_F({UnitSpec::Family::YMinusZeta, j, N}, d3, reps[x], Side::Plus, p);
      re[x] = d(v.value.re);
      err = std::max(err, d(v.error));
    }
    // F(a, b) = u(a) + v(b): every 2x2 mixed difference vanishes
    for (int a = 1; a < N; ++a)
      for (int b = 1; b < N; ++b) {
        double mixed = re[fermat_index(N, a, b)] - re[fermat_index(N, 0, b)] - re[fermat_index(N, a, 0)] + re[0];
        CHECK(std::abs(mixed) <= 4 * err + 1e-12);
      }
  }
}

TEST_CASE("rational_recognize examples") {
  auto r = rational_recognize(parse_rat("0.333333333"), parse_rat("0.333333334"), Int(10));
  CHECK(r.status == Recognition::Recognized);
  CHECK(*r.value == Rat(1, 3));
  Rat c = parse_rat("0.70710678");
  Rat w = parse_rat("0.0000000000005");
  CHECK(rational_recognize(c - w, c + w, Int(1000)).status == Recognition::NoCandidate);
  auto q = rational_recognize(Rat(1, 4), Rat(1, 4), Int(10));
  CHECK(q.status == Recognition::Recognized);
  CHECK(*q.value == Rat(1, 4));
  // pi/4 with width 1e-12: 286602/364913 sits inside, so the verdict cannot be certified
  Rat pi4 = parse_rat("0.78539816339744830962");
  auto p = rational_recognize(pi4 - w, pi4 + w, Int(1000000));
  CHECK(p.status == Recognition::Indeterminate);
  CHECK(*p.value == Rat(286602, 364913));
  CHECK(std::string(recognition_name(Recognition::NoCandidate)) == "no_candidate");
}

TEST_CASE("property: recognition recovers small rationals and simplest_between is minimal") {
  gen::Rng rng(52);
  for (int it = 0; it < 300; ++it) {
    int q = gen::uniform(rng, 1, 200), pnum = gen::uniform(rng, -500, 500);
    Rat x(pnum, q);
    Rat h(1, 4 * 200 * 200 + gen::uniform(rng, 1, 1000));
    auto r = rational_recognize(x - h, x + h, Int(200));
    CHECK(r.status == Recognition::Recognized);
    CHECK(*r.value == x);
  }
  for (int it = 0; it < 200; ++it) {
    Rat lo(gen::uniform(rng, -300, 300), gen::uniform(rng, 1, 40));
    Rat hi = lo + Rat(gen::uniform(rng, 0, 30), gen::uniform(rng, 1, 400));
    Rat s = simplest_between(lo, hi);
    CHECK(s >= lo);
    CHECK(s <= hi);
    // no smaller denominator fits
    for (int dd = 1; dd < den(s); ++dd) {
      Int k = floor_div(num(lo) * dd + den(lo) - 1, den(lo));  // ceil(lo * dd)
      CHECK(Rat(k, dd) > hi);
    }
  }
}

TEST_CASE("phi_truncated on Gamma(2) against the closed-form count") {
  Dessin g2 = from_fermat(1);
  CuspTable ct = cusps(g2);
  int inf = ct.indices(CuspKind::Infinity)[0];
  CHECK(phi_truncated(g2, ct, inf, inf, 0, 2, 0).value == std::complex<double>(0, 0));
  PhiValue v = phi_truncated(g2, ct, inf, inf, 0, 2, 2);
  CHECK(v.value.real() == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(v.terms == 2);
  // for Gamma(2) at infinity: one class per c even and d in [0, 2c) prime to c
  for (int r = 0; r <= 3; ++r)
    for (double s : {1.5, 2.0}) {
      std::complex<double> want = 0;
      for (int c = 2; c <= 30; c += 2)
        for (int dd = 0; dd < 2 * c; ++dd)
          if (std::gcd(dd, c) == 1) want += std::polar(std::pow(c, -2 * s), 2 * kPi * r * dd / c);
      PhiValue got = phi_truncated(g2, ct, inf, inf, r, s, 30);
      CHECK(std::abs(got.value - want) < 1e-12);
    }
}

TEST_CASE("property: parallel, serial and brute-force phi scans agree") {
  gen::Rng rng(53);
  std::vector<Dessin> ds{from_fermat(1), from_fermat(3)};
  for (int i = 0; i < 6; ++i) ds.push_back(gen::dessin_up_to(rng, 8));
  for (const auto& dd : ds) {
    CuspTable ct = cusps(dd);
    for (int j = 0; j < ct.size(); ++j)
      for (int k = 0; k < ct.size(); ++k) {
        PhiScan par = phi_scan(dd, ct, j, k, 10, true);
        PhiScan ser = phi_scan(dd, ct, j, k, 10, false);
        PhiScan ref = phi_scan_reference(dd, ct, j, k, 10);
        CHECK(par.reps == ser.reps);
        CHECK(par.reps == ref.reps);
        CHECK(phi_sum(par, 1, 1.5, 10).value == phi_sum(ser, 1, 1.5, 10).value);
      }
  }
}

TEST_CASE("property: phi partial sums grow and tails shrink with c_max") {
  gen::Rng rng(54);
  for (int it = 0; it < 6; ++it) {
    Dessin dd = gen::dessin_up_to(rng, 8);
    CuspTable ct = cusps(dd);
    int j = gen::uniform(rng, 0, ct.size() - 1), k = gen::uniform(rng, 0, ct.size() - 1);
    PhiScan scan = phi_scan(dd, ct, j, k, 40);
    double prev = -1, prev_tail = INFINITY;
    for (int c = 0; c <= 40; ++c) {
      PhiValue v = phi_sum(scan, 0, 1.5, c);
      CHECK(v.value.real() >= prev);
      CHECK(v.tail <= prev_tail);
      prev = v.value.real();
      prev_tail = v.tail;
    }
    CHECK(std::isinf(phi_sum(scan, 0, 1.0, 10).tail));
  }
}

TEST_CASE("sD_estimate properties") {
  HomologyContext g2(from_fermat(1));
  TruncationParams p = TruncationParams::defaults();
  p.c_max = 32;
  ComplexEstimate zero = sD_estimate(g2, RatDivisor::zero(3), Rat(1), p);
  CHECK(zero.value == std::complex<double>(0, 0));
  CHECK(zero.error == 0);

  FermatLabels lab(3);
  const HomologyContext& h = lab.context();
  auto D = RatDivisor::zero(9);
  D.m[lab.a(0)] = 1;
  D.m[lab.a(1)] = -1;
  // x -> x + 2 is a translation in Gamma(2); x + 1 would move 1/5 onto a zero-kind cusp
  Rat x(1, 5);
  ComplexEstimate s0 = sD_estimate(h, D, x, p);
  ComplexEstimate s1 = sD_estimate(h, D, x + 2, p);
  CHECK_THROWS_AS(sD_estimate(h, D, x + 1, p), std::invalid_argument);
  CHECK(std::abs(s0.value - s1.value) <= 1e-12 * (1 + std::abs(s0.value)));
  double prev = INFINITY;
  for (int c : {8, 16, 32, 64}) {
    p.c_max = c;
    ComplexEstimate e = sD_estimate(h, D, x, p);
    CHECK(std::isfinite(e.error));
    CHECK(e.error <= prev);
    prev = e.error;
  }
  auto bad = RatDivisor::zero(9);
  bad.m[lab.a(0)] = 1;
  bad.m[lab.b(0)] = -1;
  CHECK_THROWS_AS(sD_estimate(h, bad, Rat(0), p), std::invalid_argument);
}

TEST_CASE("scholl_coefficient properties") {
  FermatLabels lab(3);
  const HomologyContext& h = lab.context();
  TruncationParams p = TruncationParams::defaults();
  p.c_max = 32;
  CHECK(scholl_coefficient(h, RatDivisor::zero(9), 1, p).value == std::complex<double>(0, 0));
  auto D = RatDivisor::zero(9);
  D.m[lab.a(0)] = 1;
  D.m[lab.a(1)] = -1;
  // a_r / r is the truncated phi combination
  for (int r = 1; r <= 3; ++r) {
    std::complex<double> combo = phi_truncated(h.d, h.ct, lab.a(0), h.ct.inf_of[0], r, p.s, p.c_max).value -
                                 phi_truncated(h.d, h.ct, lab.a(1), h.ct.inf_of[0], r, p.s, p.c_max).value;
    ComplexEstimate a = scholl_coefficient(h, D, r, p);
    CHECK(std::abs(a.value / (-4 * kPi * kPi * r) - combo) < 1e-12 * (1 + std::abs(combo)));
  }
  ComplexEstimate c32 = scholl_coefficient(h, D, 1, p);
  p.c_max = 64;
  ComplexEstimate c64 = scholl_coefficient(h, D, 1, p);
  CHECK(std::isfinite(std::abs(c64.value)));
  CHECK(std::abs(c64.value - c32.value) <= 0.05 * std::abs(c64.value));
  CHECK(c64.error <= c32.error);
}

TEST_CASE("scattering_difference properties") {
  HomologyContext g2(from_fermat(1));
  TruncationParams p = TruncationParams::defaults();
  p.c_max = 48;
  RealEstimate same = scattering_difference(g2, 0, 1, 1, p);
  CHECK(same.value == 0);
  RealEstimate ab = scattering_difference(g2, 0, 1, 2, p);
  RealEstimate ba = scattering_difference(g2, 0, 2, 1, p);
  CHECK(ab.value == doctest::Approx(-ba.value).epsilon(1e-12));
  CHECK(ab.error == doctest::Approx(ba.error));
  CHECK(ab.stable);
  RealEstimate pis = scattering_difference(g2, 0, 1, 2, p, ScatteringNormalization::PiToS);
  CHECK(std::isfinite(pis.value));
  p.s = 1;
  CHECK_THROWS(scattering_difference(g2, 0, 1, 2, p));
}
