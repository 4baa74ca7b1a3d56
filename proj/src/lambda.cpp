#include "cuspforge/lambda.hpp"

#include <vector>

namespace cf {

namespace mp = boost::multiprecision;

LambdaValue lambda_pair(const Cx& z) {
  if (!(z.im > 0)) throw std::domain_error("modular_lambda: Im z must be positive");
  LambdaValue out;
  out.precision_risky = z.im < Real(0.05);
  Cx tau(z.re + 1, z.im);
  std::vector<char> ops;
  for (int guard = 0; guard < 100000; ++guard) {
    Real k = mp::floor(tau.re + Real(0.5));
    if (k != 0) {
      tau.re -= k;
      if (mp::fmod(mp::abs(k), Real(2)) == 1) ops.push_back('T');
    }
    if (tau.re * tau.re + tau.im * tau.im < 1) {
      tau = -cinv(tau);
      ops.push_back('S');
      ++out.reductions;
      continue;
    }
    break;
  }
  const Real pi = real_pi();
  Cx qh = cexp(Cx(-pi * tau.im, pi * tau.re));
  Cx q = qh * qh;
  Real tol = mp::pow(Real(2), -(current_precision_bits() + 8));
  Cx prod(Real(1)), qn = q, qodd = qh;
  for (int n = 1; n < 100000; ++n) {
    prod = prod * ((Cx(Real(1)) + qn) / (Cx(Real(1)) + qodd));
    if (cabs(qodd) < tol) break;
    qn = qn * q;
    qodd = qodd * q;
  }
  Cx p2 = prod * prod;
  Cx p4 = p2 * p2;
  Cx L = qh * (p4 * p4) * Real(16);
  Cx M = Cx(Real(1)) - L;
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    if (*it == 'S') {
      std::swap(L, M);
    } else {
      Cx nl = -(L / M);
      Cx nm = cinv(M);
      L = nl;
      M = nm;
    }
  }
  out.lambda = L;
  out.one_minus = M;
  return out;
}

LambdaValue modular_lambda(const Cx& z, int bits) {
  PrecisionGuard g(bits);
  Cx zz(Real(z.re), Real(z.im));
  return lambda_pair(zz);
}

const char* family_name(UnitSpec::Family f) {
  switch (f) {
    case UnitSpec::Family::XMinusZeta: return "x_minus_zeta";
    case UnitSpec::Family::YMinusZeta: return "y_minus_zeta";
    case UnitSpec::Family::XMinusEpsZetaY: return "x_minus_eps_zeta_y";
    case UnitSpec::Family::LambdaItself: return "lambda_itself";
  }
  return "?";
}

UnitSpec::Family parse_family(const std::string& s) {
  for (auto f : {UnitSpec::Family::XMinusZeta, UnitSpec::Family::YMinusZeta, UnitSpec::Family::XMinusEpsZetaY,
                 UnitSpec::Family::LambdaItself})
    if (s == family_name(f)) return f;
  throw std::invalid_argument("unknown unit family: " + s);
}

void validate(const UnitSpec& u) {
  if (u.N < 1) throw std::invalid_argument("unit level must be positive");
  if (u.family != UnitSpec::Family::LambdaItself && (u.j < 0 || u.j >= u.N))
    throw std::invalid_argument("unit index out of range");
}

Cx root_of_unity(int k, int N) {
  k = ((k % N) + N) % N;
  return cexp_i(real_pi() * 2 * k / N);
}

Cx eps_root(int N) { return cexp_i(real_pi() / N); }

Cx root_difference(const Cx& x, const Cx& r, const Cx& diffN, int N) {
  Cx direct = x - r;
  if (cabs(direct) * 2 > cabs(r)) return direct;
  // x^N - r^N = (x - r) * sum_i x^i r^{N-1-i}
  Cx s, xp(Real(1)), rp(Real(1));
  std::vector<Cx> rpow(N);
  for (int i = 0; i < N; ++i) {
    rpow[i] = rp;
    rp = rp * r;
  }
  for (int i = 0; i < N; ++i) {
    s = s + xp * rpow[N - 1 - i];
    xp = xp * x;
  }
  return diffN / s;
}

BranchTracker::BranchTracker(int N) : N_(N), z_(Real(0), Real(1)) {
  if (N < 1) throw std::invalid_argument("BranchTracker: N must be positive");
  lv_ = lambda_pair(z_);
  thL_ = real_pi();
  thM_ = Real(0);
}

void BranchTracker::step_to(const Cx& z) {
  // hyperbolic step cap; arg checks at the endpoints alone cannot see a full turn
  Real dz = cabs(z - z_);
  Real cap = z.im < z_.im ? z.im : z_.im;
  if (cap > 1) cap = 1;
  cap /= 4;
  if (dz > cap) throw BranchStepTooLarge("branch step too large");
  LambdaValue nv = lambda_pair(z);
  Real dL = carg(nv.lambda / lv_.lambda);
  Real dM = carg(nv.one_minus / lv_.one_minus);
  Real lim = real_pi() / 4;
  if (mp::abs(dL) > lim || mp::abs(dM) > lim) throw BranchStepTooLarge("branch step too large");
  thL_ += dL;
  thM_ += dM;
  lv_ = nv;
  z_ = z;
  ++steps_;
}

void BranchTracker::move_to(const Cx& z, int max_depth) {
  try {
    step_to(z);
  } catch (const BranchStepTooLarge&) {
    if (max_depth <= 0) throw;
    Cx mid((z_.re + z.re) / 2, (z_.im + z.im) / 2);
    move_to(mid, max_depth - 1);
    move_to(z, max_depth - 1);
  }
}

Cx BranchTracker::x(int p) const {
  Cx v = cexp(Cx(mp::log(cabs(lv_.lambda)) / N_, thL_ / N_));
  return p == 0 ? v : v * root_of_unity(p, N_);
}

Cx BranchTracker::y(int q) const {
  Cx v = cexp(Cx(mp::log(cabs(lv_.one_minus)) / N_, thM_ / N_));
  return q == 0 ? v : v * root_of_unity(q, N_);
}

Cx BranchTracker::unit(const UnitSpec& u, int p, int q) const {
  validate(u);
  if (u.N != N_) throw std::invalid_argument("BranchTracker::unit: level mismatch");
  switch (u.family) {
    case UnitSpec::Family::XMinusZeta: return root_difference(x(p), root_of_unity(u.j, N_), -lv_.one_minus, N_);
    case UnitSpec::Family::YMinusZeta: return root_difference(y(q), root_of_unity(u.j, N_), -lv_.lambda, N_);
    case UnitSpec::Family::XMinusEpsZetaY:
      return root_difference(x(p), eps_root(N_) * root_of_unity(u.j, N_) * y(q), Cx(Real(1)), N_);
    case UnitSpec::Family::LambdaItself: return lv_.lambda;
  }
  return {};
}

Cx unit_eval(const UnitSpec& u, const Cx& z, int p, int q) {
  BranchTracker bt(u.N);
  bt.move_to(z);
  return bt.unit(u, p, q);
}

}  // namespace cf
