#include "cuspforge/dessin.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace cf {

const char* kind_name(CuspKind k) {
  switch (k) {
    case CuspKind::Zero: return "zero";
    case CuspKind::One: return "one";
    case CuspKind::Infinity: return "infinity";
  }
  return "?";
}

CuspKind parse_kind(const std::string& s) {
  if (s == "zero" || s == "0") return CuspKind::Zero;
  if (s == "one" || s == "1") return CuspKind::One;
  if (s == "infinity" || s == "inf") return CuspKind::Infinity;
  throw std::invalid_argument("unknown cusp kind: " + s);
}

CycleIndex::CycleIndex(const Perm& p) {
  int n = static_cast<int>(p.size());
  cycle_of_.assign(n, -1);
  pos_.assign(n, 0);
  for (int s = 0; s < n; ++s) {
    if (cycle_of_[s] >= 0) continue;
    std::vector<int> cyc;
    int x = s;
    do {
      cycle_of_[x] = static_cast<int>(cycles_.size());
      pos_[x] = static_cast<int>(cyc.size());
      cyc.push_back(x);
      x = p[x];
    } while (x != s);
    cycles_.push_back(std::move(cyc));
  }
}

int CycleIndex::apply(int x, long e) const {
  const auto& cyc = cycles_[cycle_of_[x]];
  long len = static_cast<long>(cyc.size());
  long k = ((pos_[x] + e) % len + len) % len;
  return cyc[k];
}

namespace {
Perm invert(const Perm& p) {
  Perm q(p.size());
  for (size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
  return q;
}

bool is_permutation(const Perm& p, int n) {
  if (static_cast<int>(p.size()) != n) return false;
  std::vector<char> seen(n, 0);
  for (int v : p) {
    if (v < 0 || v >= n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}
}  // namespace

Dessin::Dessin(int n, Perm piA, Perm piB) : n_(n), piA_(std::move(piA)), piB_(std::move(piB)) {
  if (is_permutation(piA_, n_) && is_permutation(piB_, n_)) {
    piAi_ = invert(piA_);
    piBi_ = invert(piB_);
    ciA_ = CycleIndex(piA_);
    ciB_ = CycleIndex(piB_);
  }
}

int Dessin::act(int x, Gen g, long e) const {
  return g == Gen::A ? ciA_.apply(x, e) : ciB_.apply(x, e);
}

int Dessin::act(int x, const ABWord& w) const {
  for (const auto& l : w.letters) x = act(x, l.gen, l.exp);
  return x;
}

std::vector<std::string> validate(const Dessin& d) {
  std::vector<std::string> v;
  int n = d.n();
  if (n <= 0) {
    v.push_back("n must be positive");
    return v;
  }
  if (!is_permutation(d.piA(), n)) v.push_back("piA is not a permutation of {0..n-1}");
  if (!is_permutation(d.piB(), n)) v.push_back("piB is not a permutation of {0..n-1}");
  if (!v.empty()) return v;
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (int y : {d.piA()[x], d.piB()[x], d.piA_inv()[x], d.piB_inv()[x]}) {
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        q.push(y);
      }
    }
  }
  if (reached != n) {
    std::ostringstream os;
    os << "not transitive: orbit of coset 0 has " << reached << " of " << n << " cosets";
    v.push_back(os.str());
  }
  return v;
}

void require_valid(const Dessin& d) {
  auto v = validate(d);
  if (v.empty()) return;
  std::string msg = "invalid dessin:";
  for (const auto& s : v) msg += " " + s + ";";
  throw std::invalid_argument(msg);
}

Dessin from_fermat(int N) {
  if (N < 1) throw std::invalid_argument("from_fermat: N must be >= 1");
  int n = N * N;
  Perm pa(n), pb(n);
  for (int b = 0; b < N; ++b)
    for (int a = 0; a < N; ++a) {
      pa[fermat_index(N, a, b)] = fermat_index(N, a + 1, b);
      pb[fermat_index(N, a, b)] = fermat_index(N, a, b + 1);
    }
  return Dessin(n, pa, pb);
}

Dessin from_quotient_hom(const Perm& imgA, const Perm& imgB) {
  if (imgA.size() != imgB.size()) throw std::invalid_argument("from_quotient_hom: size mismatch");
  Dessin d(static_cast<int>(imgA.size()), imgA, imgB);
  require_valid(d);
  return d;
}

std::string Cusp::label() const { return std::string(kind_name(kind)) + ":" + std::to_string(min_coset); }

int CuspTable::count(CuspKind k) const {
  int c = 0;
  for (const auto& cu : cusps) c += (cu.kind == k);
  return c;
}

std::vector<int> CuspTable::indices(CuspKind k) const {
  std::vector<int> r;
  for (int i = 0; i < size(); ++i)
    if (cusps[i].kind == k) r.push_back(i);
  return r;
}

int CuspTable::find_label(const std::string& label) const {
  auto colon = label.find(':');
  if (colon == std::string::npos) return -1;
  CuspKind k;
  try {
    k = parse_kind(label.substr(0, colon));
  } catch (...) {
    return -1;
  }
  int coset = -1;
  try {
    coset = std::stoi(label.substr(colon + 1));
  } catch (...) {
    return -1;
  }
  if (coset < 0 || coset >= static_cast<int>(zero_of.size())) return -1;
  return cusp_at(k, coset);
}

int CuspTable::cusp_at(CuspKind k, int coset) const {
  switch (k) {
    case CuspKind::Zero: return zero_of[coset];
    case CuspKind::One: return one_of[coset];
    case CuspKind::Infinity: return inf_of[coset];
  }
  return -1;
}

CuspTable cusps(const Dessin& d) {
  int n = d.n();
  CuspTable ct;
  // right action of B A^{-1}: x -> piAinv[piB[x]]
  Perm one(n);
  for (int x = 0; x < n; ++x) one[x] = d.piA_inv()[d.piB()[x]];
  const Perm* perms[3] = {&d.piB(), &one, &d.piA()};
  const CuspKind kinds[3] = {CuspKind::Zero, CuspKind::One, CuspKind::Infinity};
  std::vector<int>* maps[3] = {&ct.zero_of, &ct.one_of, &ct.inf_of};
  for (int k = 0; k < 3; ++k) {
    maps[k]->assign(n, -1);
    for (int s = 0; s < n; ++s) {
      if ((*maps[k])[s] >= 0) continue;
      Cusp c;
      c.kind = kinds[k];
      int x = s;
      do {
        c.orbit.push_back(x);
        (*maps[k])[x] = static_cast<int>(ct.cusps.size());
        x = (*perms[k])[x];
      } while (x != s);
      std::sort(c.orbit.begin(), c.orbit.end());
      c.width = static_cast<int>(c.orbit.size());
      c.min_coset = c.orbit.front();
      ct.cusps.push_back(std::move(c));
    }
  }
  ct.minus_one_of.assign(n, -1);
  for (int x = 0; x < n; ++x) ct.minus_one_of[x] = ct.one_of[d.piA_inv()[x]];
  return ct;
}

int genus(const Dessin& d) {
  auto ct = cusps(d);
  int twice = 2 + d.n() - ct.size();
  if (twice < 0 || twice % 2 != 0) throw std::logic_error("genus: 2 + n - c is odd or negative");
  return twice / 2;
}

int coset_of(const Dessin& d, const Mat2& m) { return d.act(0, decompose_AB(m)); }
int coset_of(const Dessin& d, const M64& m) { return d.act(0, decompose_AB(m)); }

std::vector<ABWord> coset_words(const Dessin& d) {
  int n = d.n();
  std::vector<ABWord> w(n);
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  q.push(0);
  seen[0] = 1;
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    const std::pair<Gen, long> moves[4] = {{Gen::A, 1}, {Gen::B, 1}, {Gen::A, -1}, {Gen::B, -1}};
    for (auto [g, e] : moves) {
      int y = d.act(x, g, e);
      if (seen[y]) continue;
      seen[y] = 1;
      ABWord wy = w[x];
      wy.letters.push_back({g, e});
      w[y] = free_reduce(wy);
      q.push(y);
    }
  }
  return w;
}

std::vector<Mat2> coset_reps(const Dessin& d) {
  auto words = coset_words(d);
  std::vector<Mat2> r;
  r.reserve(words.size());
  for (const auto& w : words) r.push_back(evaluate_word(w));
  return r;
}

int cusp_of_rational(const Dessin& d, const CuspTable& ct, const Int& p, const Int& q) {
  // g = (p b; q dd) with p dd - b q = 1
  Int P = p, Q = q;
  if (Q < 0 || (Q == 0 && P < 0)) {
    P = -P;
    Q = -Q;
  }
  if (gcd_int(P, Q) != 1) throw std::invalid_argument("cusp_of_rational: p/q not reduced");
  // extended Euclid on (P, Q): find x, y with P x + Q y = 1, then dd = x, b = -y
  Int r0 = P, r1 = Q, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Int qq = floor_div(r0, r1);
    Int r2 = r0 - qq * r1;
    r0 = r1;
    r1 = r2;
    Int s2 = s0 - qq * s1;
    s0 = s1;
    s1 = s2;
    Int t2 = t0 - qq * t1;
    t0 = t1;
    t1 = t2;
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  Mat2 g{P, -t0, Q, s0};
  if (g.det() != 1) throw std::logic_error("cusp_of_rational: bad lift");
  int t = sl2f2_index(g);
  const Mat2& tm = transversal()[t];
  Mat2 h = g * tm.inv();
  // t * infinity for the transversal Id, S, U, US, U^2, U^2 S
  static const CuspKind t_inf[6] = {CuspKind::Infinity, CuspKind::Zero, CuspKind::Zero,
                                    CuspKind::One,      CuspKind::One,  CuspKind::Infinity};
  return ct.cusp_at(t_inf[t], coset_of(d, h));
}

Dessin conjugate_dessin(const Dessin& d, int which) {
  Mat2 U = mats::U();
  Mat2 Ui = U.inv();
  Mat2 ga, gb;
  if (which < 0) {
    ga = U * mats::A() * Ui;
    gb = U * mats::B() * Ui;
  } else {
    ga = Ui * mats::A() * U;
    gb = Ui * mats::B() * U;
  }
  ABWord wa = decompose_AB(ga), wb = decompose_AB(gb);
  Perm pa(d.n()), pb(d.n());
  for (int x = 0; x < d.n(); ++x) {
    pa[x] = d.act(x, wa);
    pb[x] = d.act(x, wb);
  }
  return Dessin(d.n(), pa, pb);
}

}  // namespace cf
