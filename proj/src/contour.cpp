#include "cuspforge/contour.hpp"

#include <algorithm>
#include <cmath>

namespace cf {

namespace mp = boost::multiprecision;

TruncationParams TruncationParams::defaults() {
  TruncationParams p;
  p.precision_bits = default_precision_bits();
  return p;
}

void validate(const TruncationParams& p) {
  if (p.c_max < 0) throw std::invalid_argument("c_max must be non-negative");
  if (p.r_max < 1) throw std::invalid_argument("r_max must be positive");
  if (!(p.s >= 1)) throw std::invalid_argument("s must be at least 1");
  if (!(p.eps > 0 && p.eps < 1)) throw std::invalid_argument("eps must lie in (0, 1)");
  if (p.quad_steps < 8) throw std::invalid_argument("quad_steps must be at least 8");
  if (p.precision_bits < 64) throw std::invalid_argument("precision must be at least 64 bits");
}

namespace {

struct Node {
  Real t;
  Cx L, M;
  bool ready = false;
};

Cx path_point(const Real& t, Side side) {
  if (side == Side::Plus) return Cx(mp::tanh(t), 1 / mp::cosh(t));
  return Cx(Real(0), mp::exp(t));
}

constexpr int kMaxNodes = 1 << 20;

}  // namespace

ContourAtoms contour_atoms(int N, Side side, const TruncationParams& p, bool parallel) {
  validate(p);
  if (N < 1) throw std::invalid_argument("contour_atoms: N must be positive");
  PrecisionGuard guard(p.precision_bits);
  const Real pi = real_pi();
  const Real quarter = pi / 4;
  Real eps(p.eps);
  Real T1 = mp::acosh(1 / eps), T2 = mp::acosh(2 / eps);

  std::vector<Node> nodes;
  int half = std::max(p.quad_steps / 2, 4);
  int ext = std::max(1, static_cast<int>(std::ceil(half * static_cast<double>((T2 - T1) / T1))));
  for (int sgn : {1, -1}) {
    for (int i = (sgn > 0 ? 0 : 1); i <= half; ++i) nodes.push_back({T1 * i / half * sgn, {}, {}, false});
    for (int i = 1; i <= ext; ++i) nodes.push_back({(T1 + (T2 - T1) * i / ext) * sgn, {}, {}, false});
  }
  std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) { return a.t < b.t; });

  std::vector<Cx> zeta(N);
  for (int k = 0; k < N; ++k) zeta[k] = cexp_i(pi * 2 * k / N);
  const Cx epsr = cexp_i(pi / N);

  ContourAtoms out;
  out.N = N;
  out.side = side;
  out.eps = p.eps;
  out.bits = p.precision_bits;
  const int na = out.size();
  std::vector<std::vector<Cx>> vals;

  for (;;) {
    const long n = static_cast<long>(nodes.size());
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
    for (long i = 0; i < n; ++i) {
      if (nodes[i].ready) continue;
      LambdaValue lv = lambda_pair(path_point(nodes[i].t, side));
      nodes[i].L = lv.lambda;
      nodes[i].M = lv.one_minus;
      nodes[i].ready = true;
    }
    // continuous arguments of lambda and 1 - lambda, from z = i outward
    long c0 = 0;
    while (nodes[c0].t != 0) ++c0;
    std::vector<Real> thL(n), thM(n);
    thL[c0] = pi;
    thM[c0] = 0;
    for (long i = c0 + 1; i < n; ++i) {
      thL[i] = thL[i - 1] + carg(nodes[i].L / nodes[i - 1].L);
      thM[i] = thM[i - 1] + carg(nodes[i].M / nodes[i - 1].M);
    }
    for (long i = c0 - 1; i >= 0; --i) {
      thL[i] = thL[i + 1] + carg(nodes[i].L / nodes[i + 1].L);
      thM[i] = thM[i + 1] + carg(nodes[i].M / nodes[i + 1].M);
    }
    vals.assign(n, std::vector<Cx>(na));
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
    for (long i = 0; i < n; ++i) {
      Cx x = cexp(Cx(mp::log(cabs(nodes[i].L)) / N, thL[i] / N));
      Cx y = cexp(Cx(mp::log(cabs(nodes[i].M)) / N, thM[i] / N));
      auto& v = vals[i];
      v[0] = nodes[i].L;
      v[1] = nodes[i].M;
      for (int k = 0; k < N; ++k) {
        v[2 + k] = root_difference(x, zeta[k], -nodes[i].M, N);
        v[2 + N + k] = root_difference(y, zeta[k], -nodes[i].L, N);
        v[2 + 2 * N + k] = root_difference(x, epsr * zeta[k] * y, Cx(Real(1)), N);
      }
    }
    std::vector<char> bad(n - 1, 0);
#pragma omp parallel for schedule(dynamic, 16) if (parallel)
    for (long i = 0; i < n - 1; ++i)
      for (int a = 0; a < na; ++a)
        if (mp::abs(carg(vals[i + 1][a] / vals[i][a])) > quarter) {
          bad[i] = 1;
          break;
        }
    std::vector<Node> next;
    next.reserve(n * 2);
    bool any = false;
    for (long i = 0; i < n; ++i) {
      next.push_back(std::move(nodes[i]));
      if (i + 1 < n && bad[i]) {
        any = true;
        next.push_back({(next.back().t + nodes[i + 1].t) / 2, {}, {}, false});
      }
    }
    nodes = std::move(next);
    if (!any) break;
    ++out.refinements;
    if (static_cast<long>(nodes.size()) > kMaxNodes) throw std::runtime_error("contour_atoms: refinement did not settle");
  }

  const long n = static_cast<long>(nodes.size());
  long lo1 = -1, hi1 = -1;
  for (long i = 0; i < n; ++i) {
    if (nodes[i].t == -T1) lo1 = i;
    if (nodes[i].t == T1) hi1 = i;
  }
  out.nodes = static_cast<int>(n);
  out.dlog.assign(na, Cx());
  out.dlog_half.assign(na, Cx());
  const int orient = side == Side::Plus ? -1 : 1;
#pragma omp parallel for schedule(static) if (parallel)
  for (int a = 0; a < na; ++a) {
    Real arg_all(0), arg_inner(0);
    for (long i = 0; i + 1 < n; ++i) {
      Real d = carg(vals[i + 1][a] / vals[i][a]);
      arg_all += d;
      if (i >= lo1 && i < hi1) arg_inner += d;
    }
    Real mod_all = mp::log(cabs(vals[n - 1][a])) - mp::log(cabs(vals[0][a]));
    Real mod_inner = mp::log(cabs(vals[hi1][a])) - mp::log(cabs(vals[lo1][a]));
    out.dlog[a] = Cx(mod_inner * orient, arg_inner * orient);
    out.dlog_half[a] = Cx(mod_all * orient, arg_all * orient);
  }
  return out;
}

ContourValue contour_combination(const ContourAtoms& at, const std::vector<Rat>& weights) {
  if (static_cast<int>(weights.size()) != at.size()) throw std::invalid_argument("contour_combination: weight count");
  PrecisionGuard guard(at.bits);
  Cx s1, s2;
  Real mag(0);
  for (int a = 0; a < at.size(); ++a) {
    if (weights[a] == 0) continue;
    Real w = rat_to_real(weights[a]);
    s1 = s1 + at.dlog[a] * w;
    s2 = s2 + at.dlog_half[a] * w;
    mag += mp::abs(w) * (1 + cabs(at.dlog_half[a]));
  }
  // divide by 2 pi i N
  Real f = 2 * real_pi() * at.N;
  Cx v1(s1.im / f, -s1.re / f), v2(s2.im / f, -s2.re / f);
  ContourValue cv;
  cv.value = v2;
  Real round = mag * at.nodes * mp::pow(Real(2), -(at.bits - 8)) / f;
  cv.error = cabs(v2 - v1) + round;
  cv.converged = cv.error < mp::pow(Real(2), -(at.bits / 8));
  return cv;
}

int atom_for_unit(const ContourAtoms& at, const UnitSpec& u, int p, int q) {
  validate(u);
  if (u.N != at.N) throw std::invalid_argument("atom_for_unit: level mismatch");
  switch (u.family) {
    case UnitSpec::Family::XMinusZeta: return at.atom_x(u.j - p);
    case UnitSpec::Family::YMinusZeta: return at.atom_y(u.j - q);
    case UnitSpec::Family::XMinusEpsZetaY: return at.atom_w(u.j + q - p);
    case UnitSpec::Family::LambdaItself: return ContourAtoms::atom_lambda();
  }
  return 0;
}

std::pair<int, int> unit_character(const Mat2& g, int N) {
  auto [al, be] = abelianization_mod(g, N);
  return {static_cast<int>((al + be) % N), static_cast<int>(be)};
}

ContourValue contour_F(const UnitSpec& u, const Dessin& d, const Mat2& g, Side side, const TruncationParams& p) {
  validate(u);
  coset_of(d, g);  // rejects g outside Gamma(2)
  auto [cp, cq] = unit_character(g, u.N);
  ContourAtoms at = contour_atoms(u.N, side, p);
  std::vector<Rat> w(at.size(), Rat(0));
  w[atom_for_unit(at, u, cp, cq)] = 1;
  return contour_combination(at, w);
}

}  // namespace cf
