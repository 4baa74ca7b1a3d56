#include "cuspforge/eisenstein.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>

namespace cf {

const char* mode_name(CycleMode m) { return m == CycleMode::PaperLiteral ? "paper_literal" : "calibrated"; }

CycleMode parse_mode(const std::string& s) {
  if (s == "paper_literal") return CycleMode::PaperLiteral;
  if (s == "calibrated") return CycleMode::Calibrated;
  throw std::invalid_argument("unknown mode: " + s);
}

const char* torsion_status_name(TorsionStatus s) {
  switch (s) {
    case TorsionStatus::Torsion: return "torsion";
    case TorsionStatus::NotTorsion: return "not_torsion";
    case TorsionStatus::Indeterminate: return "indeterminate";
  }
  return "?";
}

namespace {

void check_index(const FermatLabels& lab, int j, const char* who) {
  if (j < 0 || j >= lab.N()) throw std::out_of_range(std::string(who) + ": index out of range");
}

void check_degree_zero(const HomologyContext& h, const RatDivisor& D) {
  if (static_cast<int>(D.m.size()) != h.ct.size()) throw std::invalid_argument("divisor size does not match the cusp count");
  if (D.degree() != 0) throw std::invalid_argument("divisor must have degree 0");
}

bool supported_on(const HomologyContext& h, const RatDivisor& D, bool plus) {
  for (int i = 0; i < h.ct.size(); ++i)
    if (D.m[i] != 0 && h.ct.is_plus(i) != plus) return false;
  return true;
}

RatDivisor negated(RatDivisor D) {
  for (auto& x : D.m) x = -x;
  return D;
}

double to_d(const Rat& r) { return r.convert_to<double>(); }

}  // namespace

RatDivisor fermat_ac_divisor(const FermatLabels& lab, int j, int k) {
  check_index(lab, j, "fermat_ac_divisor");
  check_index(lab, k, "fermat_ac_divisor");
  auto D = RatDivisor::zero(lab.context().ct.size());
  D.m[lab.a(j)] += 1;
  D.m[lab.c(k)] -= 1;
  return D;
}

RatDivisor fermat_bb_divisor(const FermatLabels& lab, int j, int k) {
  check_index(lab, j, "fermat_bb_divisor");
  check_index(lab, k, "fermat_bb_divisor");
  auto D = RatDivisor::zero(lab.context().ct.size());
  D.m[lab.b(j)] += 1;
  D.m[lab.b(k)] -= 1;
  return D;
}

RatSymbols calibrated_plus(const HomologyContext& h, const RatDivisor& D) {
  check_degree_zero(h, D);
  if (!supported_on(h, D, true)) throw std::invalid_argument("calibrated_plus: divisor must be supported on zero and infinity cusps");
  const int n = h.n();
  const int w = h.ct.cusps[h.ct.zero_of[0]].width;
  for (const auto& c : h.ct.cusps)
    if (c.width != w) throw std::invalid_argument("calibrated_plus: cusp widths differ");
  if (n != w * w) throw std::invalid_argument("calibrated_plus: index is not the square of the width");
  std::vector<char> seen(static_cast<size_t>(h.ct.size()) * h.ct.size(), 0);
  for (int x = 0; x < n; ++x) {
    auto& s = seen[static_cast<size_t>(h.ct.zero_of[x]) * h.ct.size() + h.ct.inf_of[x]];
    if (s) throw std::invalid_argument("calibrated_plus: cosets are not determined by their cusp pair");
    s = 1;
  }
  // boundary at a zero cusp: -(sum of u + v over its w cosets) = -m0; likewise at infinity
  Rat sum0(0);
  for (int i = 0; i < h.ct.size(); ++i)
    if (h.ct.cusps[i].kind == CuspKind::Zero) sum0 += D.m[i];
  auto v = RatSymbols::zero(Side::Plus, n);
  const Rat W(w);
  for (int x = 0; x < n; ++x) v.c[x] = (D.m[h.ct.zero_of[x]] - D.m[h.ct.inf_of[x]]) / W - sum0 / (W * W);
  return v;
}

RatSymbols calibrated_minus(const FermatLabels& lab, const RatDivisor& D) {
  const HomologyContext& h = lab.context();
  check_degree_zero(h, D);
  if (!supported_on(h, D, false)) throw std::invalid_argument("calibrated_minus: divisor must be supported on one-kind cusps");
  const int N = lab.N();
  std::vector<Rat> w(N, Rat(0));
  for (int s = 1; s < N; ++s) w[s] = w[s - 1] + D.m[lab.b(s - 1)] / Rat(N);
  Rat mean(0);
  for (const auto& x : w) mean += x;
  mean /= N;
  auto v = RatSymbols::zero(Side::Minus, h.n());
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) v.c[fermat_index(N, a, b)] = w[(a + b) % N] - mean;
  return v;
}

std::string boundary_check(const HomologyContext& h, const RatSymbols& v, const RatDivisor& D) {
  RatDivisor B = boundary(h, v);
  if (B.m == negated(D).m) return "-D";
  if (B.m == D.m) return "+D";
  return "FAIL";
}

std::string boundary_check(const HomologyContext& h, const EisensteinCycle& c) {
  return boundary_check(h, c.real_part, c.D);
}

const ContourAtoms& fermat_atoms(int N, Side side, const TruncationParams& p) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, double, int, int>, ContourAtoms> cache;
  auto key = std::make_tuple(N, side == Side::Plus ? 0 : 1, p.eps, p.quad_steps, p.precision_bits);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  return cache.emplace(key, contour_atoms(N, side, p)).first->second;
}

std::vector<Rat> fermat_unit_weights(const FermatLabels& lab, const ContourAtoms& at, const RatDivisor& D, int p, int q) {
  const HomologyContext& h = lab.context();
  const int N = lab.N();
  if (at.N != N) throw std::invalid_argument("fermat_unit_weights: level mismatch");
  std::vector<Rat> w(at.size(), Rat(0));
  for (int i = 0; i < h.ct.size(); ++i) {
    if (D.m[i] == 0) continue;
    UnitSpec u;
    u.N = N;
    bool found = false;
    // units located at the cusps by the evaluation of x and y; see fermat_unit_divisors_geometric
    for (int j = 0; j < N && !found; ++j) {
      if (h.ct.zero_of[fermat_index(N, j, 0)] == i) {
        u.family = UnitSpec::Family::XMinusEpsZetaY;
        u.j = j;
        found = true;
      } else if (h.ct.inf_of[fermat_index(N, 0, j)] == i) {
        u.family = UnitSpec::Family::YMinusZeta;
        u.j = j;
        found = true;
      } else if (h.ct.one_of[fermat_index(N, j, 0)] == i) {
        u.family = UnitSpec::Family::XMinusZeta;
        u.j = (j + 1) % N;
        found = true;
      }
    }
    if (!found) throw std::logic_error("fermat_unit_weights: unlabelled cusp");
    w[atom_for_unit(at, u, p, q)] += D.m[i];
  }
  return w;
}

std::vector<ContourValue> oracle_values(const FermatLabels& lab, const RatDivisor& D, Side side,
                                        const TruncationParams& p) {
  const HomologyContext& h = lab.context();
  check_degree_zero(h, D);
  const ContourAtoms& at = fermat_atoms(lab.N(), side, p);
  auto reps = coset_reps(h.d);
  std::vector<ContourValue> out;
  out.reserve(h.n());
  for (int x = 0; x < h.n(); ++x) {
    auto [cp, cq] = unit_character(reps[x], lab.N());
    out.push_back(contour_combination(at, fermat_unit_weights(lab, at, D, cp, cq)));
  }
  return out;
}

OracleReport compare_with_oracle(const FermatLabels& lab, const RatSymbols& v, const RatDivisor& D,
                                 const OracleOptions& oracle) {
  OracleReport r;
  r.tolerance = oracle.tolerance;
  if (!oracle.enabled) return r;
  auto vals = oracle_values(lab, D, v.side, oracle.params);
  PrecisionGuard guard(oracle.params.precision_bits);
  r.ran = true;
  r.cosets = static_cast<int>(vals.size());
  for (size_t x = 0; x < vals.size(); ++x) {
    Cx diff(vals[x].value.re - rat_to_real(v.c[x]), vals[x].value.im);
    r.max_diff = std::max(r.max_diff, static_cast<double>(cabs(diff)));
    r.max_error = std::max(r.max_error, static_cast<double>(vals[x].error));
  }
  r.agree = r.max_diff <= oracle.tolerance;
  return r;
}

namespace {

EisensteinCycle finish_calibrated(const FermatLabels& lab, EisensteinCycle c, const OracleOptions& oracle) {
  const HomologyContext& h = lab.context();
  if (boundary_check(h, c) != "-D") throw std::logic_error("calibrated cycle has the wrong boundary");
  c.imag_lambda.assign(static_cast<size_t>(lambda_span(h, c.side).size()), 0.0);
  c.oracle = compare_with_oracle(lab, c.real_part, c.D, oracle);
  if (!c.oracle.agree) {
    std::ostringstream os;
    os << "oracle disagreement: max |F - coefficient| = " << c.oracle.max_diff << " exceeds " << c.oracle.tolerance;
    throw OracleDisagreement(os.str(), c.oracle);
  }
  return c;
}

}  // namespace

EisensteinCycle fermat_cycle_ac(const FermatLabels& lab, int j, int k, CycleMode mode, const OracleOptions& oracle) {
  EisensteinCycle c;
  c.side = Side::Plus;
  c.mode = mode;
  c.D = fermat_ac_divisor(lab, j, k);
  const HomologyContext& h = lab.context();
  if (mode == CycleMode::Calibrated) {
    c.real_part = calibrated_plus(h, c.D);
    return finish_calibrated(lab, c, oracle);
  }
  c.real_part = RatSymbols::zero(Side::Plus, h.n());
  const Rat inv(Int(1), Int(lab.N()));
  for (int x = 0; x < h.n(); ++x) {
    if (h.ct.zero_of[x] == lab.a(j)) c.real_part.c[x] += inv;
    if (h.ct.inf_of[x] == lab.c(k)) c.real_part.c[x] -= inv;
  }
  c.imag_lambda.assign(lambda_span(h, Side::Plus).size(), 0.0);
  c.oracle = compare_with_oracle(lab, c.real_part, c.D, oracle);
  return c;
}

EisensteinCycle fermat_cycle_bb(const FermatLabels& lab, int j, int k, CycleMode mode, const OracleOptions& oracle) {
  EisensteinCycle c;
  c.side = Side::Minus;
  c.mode = mode;
  c.D = fermat_bb_divisor(lab, j, k);
  const HomologyContext& h = lab.context();
  if (mode == CycleMode::Calibrated) {
    c.real_part = calibrated_minus(lab, c.D);
    return finish_calibrated(lab, c, oracle);
  }
  c.real_part = RatSymbols::zero(Side::Minus, h.n());
  const Rat inv(Int(1), Int(2 * lab.N()));
  for (int x = 0; x < h.n(); ++x) {
    for (auto [cusp, sign] : {std::pair<int, int>{lab.b(j), 1}, std::pair<int, int>{lab.b(k), -1}}) {
      if (h.ct.one_of[x] == cusp) c.real_part.c[x] += inv * sign;
      if (h.ct.minus_one_of[x] == cusp) c.real_part.c[x] -= inv * sign;
    }
  }
  c.imag_lambda.assign(lambda_span(h, Side::Minus).size(), 0.0);
  c.oracle = compare_with_oracle(lab, c.real_part, c.D, oracle);
  return c;
}

EisensteinCycle fermat_cycle(const FermatLabels& lab, const RatDivisor& D, const OracleOptions& oracle) {
  const HomologyContext& h = lab.context();
  check_degree_zero(h, D);
  EisensteinCycle c;
  c.mode = CycleMode::Calibrated;
  c.D = D;
  if (supported_on(h, D, true)) {
    c.side = Side::Plus;
    c.real_part = calibrated_plus(h, D);
  } else if (supported_on(h, D, false)) {
    c.side = Side::Minus;
    c.real_part = calibrated_minus(lab, D);
  } else {
    throw std::invalid_argument("fermat_cycle: divisor must be supported on one side");
  }
  return finish_calibrated(lab, c, oracle);
}

std::vector<RatVec> lambda_span(const HomologyContext& h, Side side) {
  std::vector<RatVec> out;
  for (int i = 0; i < h.ct.size(); ++i) {
    bool plus_cusp = h.ct.is_plus(i);
    if (side == Side::Plus && !plus_cusp) out.push_back(lambda_plus(h, i).c);
    if (side == Side::Minus && plus_cusp) out.push_back(lambda_minus(h, i).c);
  }
  return out;
}

ImaginaryPart imaginary_part_from_scattering(const HomologyContext& h, const RatDivisor& D, Side side,
                                             const TruncationParams& p, ScatteringNormalization norm) {
  check_degree_zero(h, D);
  const int n = h.n();
  ImaginaryPart out;
  out.side = side;
  out.symbols.assign(n, 0.0);
  out.errors.assign(n, 0.0);
  auto span = lambda_span(h, side);
  out.lambda_coords.assign(span.size(), 0.0);
  if (D.is_zero()) return out;
  const double pi = 3.14159265358979323846;
  std::map<std::tuple<int, int, int>, RealEstimate> memo;
  auto diff = [&](int j, int k1, int k2) {
    auto key = std::make_tuple(j, k1, k2);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    return memo.emplace(key, scattering_difference(h, j, k1, k2, p, norm)).first->second;
  };
  for (int x = 0; x < n; ++x) {
    int k1 = side == Side::Plus ? h.ct.minus_one_of[x] : h.ct.inf_of[x];
    int k2 = side == Side::Plus ? h.ct.one_of[x] : h.ct.zero_of[x];
    for (int j = 0; j < h.ct.size(); ++j) {
      if (D.m[j] == 0) continue;
      double mj = to_d(D.m[j]);
      RealEstimate e = diff(j, k1, k2);
      out.symbols[x] += pi * mj * e.value;
      out.errors[x] += pi * std::abs(mj) * e.error;
    }
  }
  for (int x = 0; x < n; ++x) {
    out.norm = std::max(out.norm, std::abs(out.symbols[x]));
    out.error = std::max(out.error, out.errors[x]);
  }
  if (!span.empty()) {
    Eigen::MatrixXd L(n, static_cast<int>(span.size()));
    for (size_t c = 0; c < span.size(); ++c)
      for (int x = 0; x < n; ++x) L(x, static_cast<int>(c)) = to_d(span[c][x]);
    Eigen::VectorXd b(n);
    for (int x = 0; x < n; ++x) b(x) = out.symbols[x];
    Eigen::VectorXd coef = L.completeOrthogonalDecomposition().solve(b);
    for (size_t c = 0; c < span.size(); ++c) out.lambda_coords[c] = coef(static_cast<int>(c));
    out.residual = (L * coef - b).norm();
  } else {
    Eigen::VectorXd b(n);
    for (int x = 0; x < n; ++x) b(x) = out.symbols[x];
    out.residual = b.norm();
  }
  return out;
}

namespace {

Int lcm_of_denominators(const std::vector<Rat>& v) {
  Int l = 1;
  for (const auto& x : v) l = lcm_int(l, den(x));
  return l;
}

}  // namespace

TorsionVerdict torsion_order(const HomologyContext& h, const EisensteinCycle& c) {
  TorsionVerdict t;
  t.certificate = c.real_part.c;
  t.order = lcm_of_denominators(c.real_part.c);
  t.jacobian_order = qz_order_mod(c.real_part.c, lambda_span(h, c.side), h.n());
  if (c.imag_norm != 0) {
    t.status = TorsionStatus::NotTorsion;
    t.diagnostics = "nonzero imaginary part";
    return t;
  }
  t.status = TorsionStatus::Torsion;
  return t;
}

TorsionVerdict torsion_order(const HomologyContext& h, Side side, const std::vector<RatInterval>& coeffs,
                             double imag_bound, const Int& den_bound, double tol) {
  if (static_cast<int>(coeffs.size()) != h.n()) throw std::invalid_argument("torsion_order: coefficient count");
  TorsionVerdict t;
  if (imag_bound > tol) {
    t.status = TorsionStatus::NotTorsion;
    t.diagnostics = "imaginary part exceeds tolerance";
    return t;
  }
  bool indeterminate = false;
  std::ostringstream diag;
  for (int x = 0; x < h.n(); ++x) {
    const auto& iv = coeffs[x];
    if (iv.rad == 0) {
      t.certificate.push_back(iv.mid);
      continue;
    }
    if (to_d(2 * iv.rad) > tol) {
      indeterminate = true;
      diag << "coset " << x << ": interval wider than tolerance; ";
      continue;
    }
    auto r = rational_recognize(iv.mid - iv.rad, iv.mid + iv.rad, den_bound);
    if (r.status == Recognition::NoCandidate) {
      t.status = TorsionStatus::NotTorsion;
      t.diagnostics = "coset " + std::to_string(x) + ": no rational with denominator <= " + den_bound.str();
      t.certificate.clear();
      return t;
    }
    if (r.status == Recognition::Indeterminate) {
      indeterminate = true;
      diag << "coset " << x << ": candidate " << rat_to_string(*r.value) << " not unique at this width; ";
    }
    t.certificate.push_back(r.value ? *r.value : Rat(0));
  }
  if (indeterminate) {
    t.status = TorsionStatus::Indeterminate;
    t.diagnostics = diag.str();
    return t;
  }
  t.status = TorsionStatus::Torsion;
  t.order = lcm_of_denominators(t.certificate);
  t.jacobian_order = qz_order_mod(t.certificate, lambda_span(h, side), h.n());
  return t;
}

SplitDivisor split_divisor(const HomologyContext& h, const RatDivisor& D, int base) {
  check_degree_zero(h, D);
  if (base < 0 || base >= h.ct.size() || h.ct.cusps[base].kind != CuspKind::One)
    throw std::invalid_argument("split_divisor: base must be a one-kind cusp");
  SplitDivisor s{RatDivisor::zero(h.ct.size()), RatDivisor::zero(h.ct.size())};
  Rat deg_inf(0);
  for (int i = 0; i < h.ct.size(); ++i) {
    if (h.ct.cusps[i].kind == CuspKind::Infinity) {
      s.E0.m[i] -= D.m[i];
      deg_inf += D.m[i];
    } else {
      s.Einf.m[i] += D.m[i];
    }
  }
  s.E0.m[base] += deg_inf;
  s.Einf.m[base] += deg_inf;
  return s;
}

namespace {

// A point of P^1(Q) representing the cusp, as (p, q).
std::pair<Int, Int> cusp_point(const HomologyContext& h, int cusp) {
  const Cusp& c = h.ct.cusps.at(cusp);
  Mat2 r = coset_reps(h.d).at(c.min_coset);
  switch (c.kind) {
    case CuspKind::Infinity: return {r.a, r.c};
    case CuspKind::Zero: return {r.b, r.d};
    case CuspKind::One: return {r.a + r.b, r.c + r.d};
  }
  return {0, 0};
}

RatDivisor transport(const HomologyContext& h, const HomologyContext& conj, const RatDivisor& E, int which) {
  auto out = RatDivisor::zero(conj.ct.size());
  for (int i = 0; i < h.ct.size(); ++i)
    if (E.m[i] != 0) out.m[conjugate_cusp(h, conj, i, which)] += E.m[i];
  return out;
}

}  // namespace

int conjugate_cusp(const HomologyContext& h, const HomologyContext& conj, int cusp, int which) {
  if (which != 1 && which != -1) throw std::invalid_argument("conjugate_cusp: which must be -1 or +1");
  auto [p, q] = cusp_point(h, cusp);
  Mat2 u = which == 1 ? mats::U() : mats::U().inv();
  Int np = u.a * p + u.b * q, nq = u.c * p + u.d * q;
  return cusp_of_rational(conj.d, conj.ct, np, nq);
}

FProvider exact_fermat_provider() {
  return [](const HomologyContext& conj, const RatDivisor& Dc) {
    RatSymbols v = calibrated_plus(conj, Dc);
    std::vector<RatInterval> out;
    for (const auto& x : v.c) out.push_back({x, Rat(0)});
    return out;
  };
}

FProvider numeric_fermat_provider(int N, const TruncationParams& p) {
  auto lab = std::make_shared<FermatLabels>(N);
  return [lab, p, N](const HomologyContext& conj, const RatDivisor& Dc) {
    const HomologyContext& h = lab->context();
    if (conj.n() != h.n()) throw std::invalid_argument("numeric_fermat_provider: index mismatch");
    // the conjugate subgroup is the Fermat group itself (it is normal in SL2(Z)),
    // so its cusps are Fermat cusps and its units are the Fermat units
    auto D = RatDivisor::zero(h.ct.size());
    for (int i = 0; i < conj.ct.size(); ++i) {
      if (Dc.m[i] == 0) continue;
      auto [pp, qq] = cusp_point(conj, i);
      D.m[cusp_of_rational(h.d, h.ct, pp, qq)] += Dc.m[i];
    }
    const ContourAtoms& at = fermat_atoms(N, Side::Plus, p);
    auto reps = coset_reps(conj.d);
    std::vector<RatInterval> out;
    for (int x = 0; x < conj.n(); ++x) {
      auto [cp, cq] = unit_character(reps[x], N);
      ContourValue cv = contour_combination(at, fermat_unit_weights(*lab, at, D, cp, cq));
      out.push_back({real_to_rat(cv.value.re), real_to_rat(cv.error)});
    }
    return out;
  };
}

FullCycle assemble_full_cycle(const HomologyContext& h, const RatDivisor& D, const FProvider& provider, int base) {
  check_degree_zero(h, D);
  if (base < 0) base = h.ct.indices(CuspKind::One).at(0);
  FullCycle fc;
  fc.split = split_divisor(h, D, base);
  HomologyContext cm(conjugate_dessin(h.d, -1)), cp(conjugate_dessin(h.d, 1));
  fc.Dminus = transport(h, cm, fc.split.Einf, -1);
  fc.Dplus = transport(h, cp, fc.split.E0, 1);
  fc.v.assign(static_cast<size_t>(6) * h.n(), RatInterval{Rat(0), Rat(0)});
  if (D.is_zero()) return fc;
  std::vector<RatInterval> Fm = fc.Dminus.is_zero() ? std::vector<RatInterval>(h.n(), {Rat(0), Rat(0)})
                                                    : provider(cm, fc.Dminus);
  std::vector<RatInterval> Fp = fc.Dplus.is_zero() ? std::vector<RatInterval>(h.n(), {Rat(0), Rat(0)})
                                                   : provider(cp, fc.Dplus);
  // U^{-1} (r_x U) = U^{-1} r_x U and U (r_x U^2) = -(U r_x U^{-1}); for the other
  // transversal elements both products leave Gamma(2) and F is extended by zero
  for (int x = 0; x < h.n(); ++x) {
    fc.v[ManinPresentation::index(x, 2)] = Fm[x];
    fc.v[ManinPresentation::index(x, 4)] = {-Fp[x].mid, Fp[x].rad};
  }
  return fc;
}

std::vector<RatVec> md_invariant_span(const ManinPresentation& mp) {
  std::vector<RatVec> out;
  for (const std::vector<int>* act : {&mp.actS, &mp.actU}) {
    std::vector<char> seen(mp.size, 0);
    for (int i = 0; i < mp.size; ++i) {
      if (seen[i]) continue;
      RatVec v(mp.size, Rat(0));
      for (int j = i; !seen[j]; j = (*act)[j]) {
        seen[j] = 1;
        v[j] = 1;
      }
      out.push_back(std::move(v));
    }
  }
  return out;
}

TorsionVerdict manin_drinfeld_check(const ManinPresentation& mp, const std::vector<RatInterval>& v, const Int& den_bound,
                                    double tol) {
  if (static_cast<int>(v.size()) != mp.size) throw std::invalid_argument("manin_drinfeld_check: vector size");
  RowSpace W(md_invariant_span(mp), mp.size);
  auto free = W.free_columns();
  RatVec mid(mp.size);
  for (int i = 0; i < mp.size; ++i) mid[i] = v[i].mid;
  W.reduce(mid);
  // radius through the projection: column i of the projection is the reduction of e_i
  RatVec rad(mp.size, Rat(0));
  for (int i = 0; i < mp.size; ++i) {
    if (v[i].rad == 0) continue;
    RatVec e(mp.size, Rat(0));
    e[i] = 1;
    W.reduce(e);
    for (int j : free) rad[j] += abs(e[j]) * v[i].rad;
  }
  TorsionVerdict t;
  bool indeterminate = false;
  std::ostringstream diag;
  for (int j : free) {
    // exact coordinates are rational whatever their denominator
    if (rad[j] == 0) {
      t.certificate.push_back(mid[j]);
      continue;
    }
    if (to_d(2 * rad[j]) > tol) {
      indeterminate = true;
      diag << "coordinate " << j << ": interval wider than tolerance; ";
      continue;
    }
    auto r = rational_recognize(mid[j] - rad[j], mid[j] + rad[j], den_bound);
    if (r.status == Recognition::NoCandidate) {
      t.status = TorsionStatus::NotTorsion;
      t.diagnostics = "coordinate " + std::to_string(j) + ": no rational with denominator <= " + den_bound.str();
      t.certificate.clear();
      return t;
    }
    if (r.status == Recognition::Indeterminate) {
      indeterminate = true;
      diag << "coordinate " << j << ": candidate not unique at this width; ";
    }
    t.certificate.push_back(r.value ? *r.value : Rat(0));
  }
  if (indeterminate) {
    t.status = TorsionStatus::Indeterminate;
    t.diagnostics = diag.str();
    return t;
  }
  t.status = TorsionStatus::Torsion;
  t.order = lcm_of_denominators(t.certificate);
  return t;
}

}  // namespace cf
