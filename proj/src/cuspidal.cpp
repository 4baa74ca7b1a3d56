#include "cuspforge/cuspidal.hpp"

#include <algorithm>
#include <stdexcept>

namespace cf {

FermatLabels::FermatLabels(int N, bool swap_ac) : N_(N), swap_(swap_ac), h_(from_fermat(N)) {
  if (N < 1) throw std::invalid_argument("FermatLabels: N must be >= 1");
  for (int j = 0; j < N; ++j) {
    int zk = h_.ct.zero_of[fermat_index(N, j, 0)];
    int ik = h_.ct.inf_of[fermat_index(N, 0, j)];
    a_.push_back(swap_ ? ik : zk);
    c_.push_back(swap_ ? zk : ik);
    b_.push_back(h_.ct.one_of[fermat_index(N, j, 0)]);
  }
}

std::string FermatLabels::name_of(int cusp) const {
  for (int j = 0; j < N_; ++j) {
    if (a_[j] == cusp) return "a" + std::to_string(j);
    if (b_[j] == cusp) return "b" + std::to_string(j);
    if (c_[j] == cusp) return "c" + std::to_string(j);
  }
  throw std::out_of_range("FermatLabels::name_of: bad cusp index");
}

int FermatLabels::parse_name(const std::string& s) const {
  if (s.size() < 2 || (s[0] != 'a' && s[0] != 'b' && s[0] != 'c')) return -1;
  for (size_t i = 1; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return -1;
  int j = std::stoi(s.substr(1));
  if (j >= N_) return -1;
  return s[0] == 'a' ? a_[j] : s[0] == 'b' ? b_[j] : c_[j];
}

namespace {

RatDivisor blank(const FermatLabels& lab) { return RatDivisor::zero(lab.context().ct.size()); }

void require_odd(int N, const char* who) {
  if (N < 1 || N % 2 == 0) throw std::invalid_argument(std::string(who) + ": N must be odd and positive");
}

}  // namespace

std::vector<RatDivisor> fermat_unit_divisors(const FermatLabels& lab) {
  int N = lab.N();
  std::vector<RatDivisor> out;
  auto minus_sum_c = [&](RatDivisor D) {
    for (int k = 0; k < N; ++k) D.m[lab.c(k)] -= 1;
    return D;
  };
  for (int fam = 0; fam < 3; ++fam)
    for (int j = 0; j < N; ++j) {
      auto D = blank(lab);
      int p = fam == 0 ? lab.b(j) : fam == 1 ? lab.a(j) : lab.c(j);
      D.m[p] += N;
      out.push_back(minus_sum_c(D));
    }
  return out;
}

std::vector<RatDivisor> fermat_unit_divisors(int N) { return fermat_unit_divisors(FermatLabels(N)); }

std::vector<RatDivisor> fermat_unit_divisors_geometric(const FermatLabels& lab) {
  int N = lab.N();
  auto zero_kind = [&](int j) { return lab.swapped() ? lab.c(j) : lab.a(j); };
  auto inf_kind = [&](int j) { return lab.swapped() ? lab.a(j) : lab.c(j); };
  std::vector<RatDivisor> out;
  for (int fam = 0; fam < 3; ++fam)
    for (int j = 0; j < N; ++j) {
      auto D = blank(lab);
      int p = fam == 0 ? lab.b(j - 1) : fam == 1 ? inf_kind(j) : zero_kind(j);
      D.m[p] += N;
      for (int k = 0; k < N; ++k) D.m[zero_kind(k)] -= 1;
      out.push_back(D);
    }
  return out;
}

std::vector<std::string> fermat_unit_names(int N) {
  std::vector<std::string> names;
  for (int j = 0; j < N; ++j) names.push_back("x-zeta^" + std::to_string(j));
  for (int j = 0; j < N; ++j) names.push_back("y-zeta^" + std::to_string(j));
  for (int j = 0; j < N; ++j) names.push_back("x-eps*zeta^" + std::to_string(j) + "*y");
  return names;
}

std::vector<RatDivisor> rohrlich_relation_divisors(const FermatLabels& lab) {
  int N = lab.N();
  require_odd(N, "rohrlich_relation_divisors");
  int P = lab.a(0);
  std::vector<RatDivisor> out(6, blank(lab));
  for (int i = 0; i < N; ++i) {
    out[0].m[lab.a(i)] += 1;
    out[1].m[lab.b(i)] += 1;
    out[2].m[lab.c(i)] += 1;
    out[3].m[lab.a(i)] += i;
    out[3].m[lab.b(i)] -= i;
    out[4].m[lab.a(i)] += i;
    out[4].m[lab.c(i)] -= i;
    out[5].m[lab.a(i)] += i * i;
    out[5].m[lab.b(i)] += i * i;
    out[5].m[lab.c(i)] += i * i;
    out[5].m[P] -= 3 * i * i;
  }
  for (int r = 0; r < 3; ++r) out[r].m[P] -= N;
  return out;
}

std::vector<std::string> rohrlich_relation_names() {
  return {"sum_a", "sum_b", "sum_c", "moment_ab", "moment_ac", "second_moment"};
}

namespace {

// Coordinates of a degree-0 integral divisor on the basis e_i - e_base, i in cols.
std::vector<Int> coordinates(const RatDivisor& D, const std::vector<int>& cols, int base) {
  Rat deg = 0;
  std::vector<char> in(D.m.size(), 0);
  for (int c : cols) in[c] = 1;
  in[base] = 1;
  for (size_t i = 0; i < D.m.size(); ++i) {
    if (D.m[i] == 0) continue;
    if (!in[i]) throw std::invalid_argument("divisor is not supported on the given cusps");
    if (den(D.m[i]) != 1) throw std::invalid_argument("divisor is not integral");
    deg += D.m[i];
  }
  if (deg != 0) throw std::invalid_argument("divisor does not have degree 0");
  std::vector<Int> v;
  for (int c : cols) v.push_back(num(D.m[c]));
  return v;
}

IntMatrix presentation(const FermatLabels& lab, const std::vector<int>& support, int base, const Int& modulus,
                       const std::vector<std::pair<std::string, RatDivisor>>& extra) {
  IntMatrix M;
  std::vector<int> cols;
  for (int c : support)
    if (c != base) cols.push_back(c);
  for (int c : cols) M.col_labels.push_back(lab.name_of(c) + "-" + lab.name_of(base));
  for (size_t i = 0; i < cols.size(); ++i) {
    std::vector<Int> row(cols.size(), Int(0));
    row[i] = modulus;
    M.add_row(modulus.str() + "*(" + M.col_labels[i] + ")", std::move(row));
  }
  for (const auto& [name, D] : extra) M.add_row(name, coordinates(D, cols, base));
  return M;
}

std::vector<int> plus_support(const FermatLabels& lab) {
  std::vector<int> s;
  for (int j = 0; j < lab.N(); ++j) s.push_back(lab.a(j));
  for (int j = 0; j < lab.N(); ++j) s.push_back(lab.c(j));
  return s;
}

std::vector<int> minus_support(const FermatLabels& lab) {
  std::vector<int> s;
  for (int j = 0; j < lab.N(); ++j) s.push_back(lab.b(j));
  return s;
}

}  // namespace

IntMatrix cuspidal_presentation_full(const FermatLabels& lab) {
  int N = lab.N();
  require_odd(N, "cuspidal_group_full");
  auto rel = rohrlich_relation_divisors(lab);
  auto names = rohrlich_relation_names();
  std::vector<std::pair<std::string, RatDivisor>> extra;
  for (size_t i = 0; i < rel.size(); ++i) extra.emplace_back(names[i], rel[i]);
  auto sup = plus_support(lab);
  for (int b : minus_support(lab)) sup.push_back(b);
  return presentation(lab, sup, lab.a(0), Int(N), extra);
}

IntMatrix cuspidal_presentation_minus(const FermatLabels& lab) {
  int N = lab.N();
  require_odd(N, "cuspidal_group_minus");
  auto D = blank(lab);
  for (int j = 0; j < N; ++j) {
    D.m[lab.a(j)] += 1;
    D.m[lab.c(j)] -= 1;
  }
  return presentation(lab, plus_support(lab), lab.a(0), Int(N), {{"sum_a_minus_c", D}});
}

IntMatrix cuspidal_presentation_plus(const FermatLabels& lab) {
  int N = lab.N();
  require_odd(N, "cuspidal_group_plus");
  return presentation(lab, minus_support(lab), lab.b(0), Int(2 * N), {});
}

AbelianStructure cuspidal_group_full(int N) {
  require_odd(N, "cuspidal_group_full");
  auto M = cuspidal_presentation_full(FermatLabels(N));
  return cokernel(M.a, M.cols());
}

AbelianStructure cuspidal_group_minus(int N) {
  require_odd(N, "cuspidal_group_minus");
  auto M = cuspidal_presentation_minus(FermatLabels(N));
  return cokernel(M.a, M.cols());
}

AbelianStructure cuspidal_group_plus(int N) {
  require_odd(N, "cuspidal_group_plus");
  auto M = cuspidal_presentation_plus(FermatLabels(N));
  return cokernel(M.a, M.cols());
}

AbelianStructure quotient_structure(const std::vector<RatDivisor>& relations, int ncusps, std::vector<int> support,
                                    int base) {
  if (support.empty())
    for (int i = 0; i < ncusps; ++i) support.push_back(i);
  if (base < 0) base = support.front();
  std::vector<int> cols;
  for (int c : support)
    if (c != base) cols.push_back(c);
  IntMat rows;
  for (const auto& D : relations) {
    if (static_cast<int>(D.m.size()) != ncusps) throw std::invalid_argument("quotient_structure: divisor size");
    rows.push_back(coordinates(D, cols, base));
  }
  return cokernel(rows, static_cast<int>(cols.size()));
}

namespace {

void check_theta_input(const FermatLabels& lab, const RatDivisor& D, bool plus) {
  const auto& ct = lab.context().ct;
  if (static_cast<int>(D.m.size()) != ct.size()) throw std::invalid_argument("theta: divisor size");
  Rat deg = 0;
  for (int i = 0; i < ct.size(); ++i) {
    if (D.m[i] == 0) continue;
    if (ct.is_plus(i) != plus) throw std::invalid_argument("theta: divisor has wrong support");
    if (den(D.m[i]) != 1) throw std::invalid_argument("theta: divisor is not integral");
    deg += D.m[i];
  }
  if (deg != 0) throw std::invalid_argument("theta: divisor does not have degree 0");
}

Int reduce_mod(const Int& x, const Int& m) {
  Int r = x % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace

std::vector<Int> theta_plus(const FermatLabels& lab, const RatDivisor& D) {
  check_theta_input(lab, D, true);
  const auto& ct = lab.context().ct;
  Int N = lab.N();
  std::vector<Int> v(lab.context().n());
  for (int g = 0; g < lab.context().n(); ++g) v[g] = reduce_mod(num(D.m[ct.zero_of[g]] + D.m[ct.inf_of[g]]), N);
  return v;
}

std::vector<Int> theta_minus(const FermatLabels& lab, const RatDivisor& D) {
  check_theta_input(lab, D, false);
  const auto& ct = lab.context().ct;
  Int M = 2 * lab.N();
  std::vector<Int> v(lab.context().n());
  for (int g = 0; g < lab.context().n(); ++g)
    v[g] = reduce_mod(num(D.m[ct.one_of[g]] - D.m[ct.minus_one_of[g]]), M);
  return v;
}

ThetaAnalysis analyze_theta(const FermatLabels& lab, Side side) {
  bool plus = side == Side::Plus;
  auto sup = plus ? plus_support(lab) : minus_support(lab);
  int base = sup.front();
  ThetaAnalysis ta;
  ta.modulus = plus ? Int(lab.N()) : Int(2 * lab.N());
  int n = lab.context().n();
  IntMat rows;
  for (int c : sup) {
    if (c == base) continue;
    auto D = blank(lab);
    D.m[c] += 1;
    D.m[base] -= 1;
    rows.push_back(plus ? theta_plus(lab, D) : theta_minus(lab, D));
  }
  ta.domain_rank = static_cast<int>(rows.size());
  for (int g = 0; g < n; ++g) {
    std::vector<Int> r(n, Int(0));
    r[g] = ta.modulus;
    rows.push_back(std::move(r));
  }
  // image = (rowspan + m Z^n) / m Z^n, with Z^n / (rowspan + m Z^n) = sum Z/d_i
  auto snf = smith_normal_form(rows, n, false);
  ta.image_order = 1;
  for (const auto& d : snf.diag) {
    Int f = ta.modulus / d;
    ta.image_order *= f;
    if (f > 1) ta.image.invariant_factors.push_back(f);
  }
  std::reverse(ta.image.invariant_factors.begin(), ta.image.invariant_factors.end());
  Int dom = 1;
  for (int i = 0; i < ta.domain_rank; ++i) dom *= ta.modulus;
  ta.kernel_order = dom / ta.image_order;
  return ta;
}

}  // namespace cf
