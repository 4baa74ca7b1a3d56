#include "doctest.h"
#include "support/generators.hpp"

#include <set>

using namespace cf;

namespace {

// Isomorphism of pointed dessins: the map fixing 0 and intertwining piA, piB.
bool isomorphic(const Dessin& x, const Dessin& y) {
  if (x.n() != y.n()) return false;
  std::vector<int> f(x.n(), -1);
  std::vector<int> stack{0};
  f[0] = 0;
  while (!stack.empty()) {
    int p = stack.back();
    stack.pop_back();
    for (auto [px, py] : {std::pair{&x.piA(), &y.piA()}, std::pair{&x.piB(), &y.piB()}}) {
      int a = (*px)[p], b = (*py)[f[p]];
      if (f[a] == -1) {
        f[a] = b;
        stack.push_back(a);
      } else if (f[a] != b) {
        return false;
      }
    }
  }
  std::set<int> img(f.begin(), f.end());
  return static_cast<int>(img.size()) == x.n() && !img.count(-1);
}

}  // namespace

TEST_CASE("validate examples") {
  CHECK(validate(Dessin(1, {0}, {0})).empty());
  CHECK_FALSE(validate(Dessin(2, {0, 1}, {0, 1})).empty());
  CHECK(validate(from_fermat(3)).empty());
  CHECK_FALSE(validate(Dessin(2, {0, 0}, {1, 0})).empty());
  CHECK_FALSE(validate(Dessin(3, {0, 1}, {0, 1, 2})).empty());
  CHECK_THROWS_AS(require_valid(Dessin(2, {0, 1}, {0, 1})), std::invalid_argument);
}

TEST_CASE("from_fermat examples") {
  Dessin d1 = from_fermat(1);
  CHECK(d1.n() == 1);
  CHECK(d1.piA() == Perm{0});
  Dessin d = from_fermat(3);
  CHECK(d.n() == 9);
  // piA is three 3-cycles along a with b fixed
  for (int x = 0; x < 9; ++x) {
    CHECK(d.piA()[x] / 3 == x / 3);
    CHECK(d.act(x, Gen::A, 3) == x);
    CHECK(d.act(x, Gen::A, 1) != x);
  }
  CuspTable ct = cusps(d);
  CHECK(ct.count(CuspKind::Zero) == 3);
  CHECK(ct.count(CuspKind::One) == 3);
  CHECK(ct.count(CuspKind::Infinity) == 3);
  for (const auto& c : ct.cusps) CHECK(c.width == 3);
}

TEST_CASE("from_quotient_hom examples") {
  CHECK(from_quotient_hom({0}, {0}) == from_fermat(1));
  for (int N : {2, 3, 5}) {
    Perm ta(N * N), tb(N * N);
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        ta[a + N * b] = (a + 1) % N + N * b;
        tb[a + N * b] = a + N * ((b + 1) % N);
      }
    Dessin q = from_quotient_hom(ta, tb);
    Dessin f = from_fermat(N);
    CHECK(q.n() == f.n());
    CHECK(cusps(q).size() == cusps(f).size());
    CHECK(genus(q) == genus(f));
    CHECK(isomorphic(q, f));
  }
  CHECK_FALSE(isomorphic(from_fermat(3), Dessin(9, {1, 2, 3, 4, 5, 6, 7, 8, 0}, {0, 1, 2, 3, 4, 5, 6, 7, 8})));
  Dessin t = from_quotient_hom({1, 2, 0}, {2, 0, 1});
  CHECK(t.n() == 3);
  CHECK(validate(t).empty());
}

TEST_CASE("cusps examples") {
  CuspTable g2 = cusps(from_fermat(1));
  CHECK(g2.size() == 3);
  for (const auto& c : g2.cusps) CHECK(c.width == 1);

  Dessin d(2, {1, 0}, {0, 1});
  CuspTable ct = cusps(d);
  CHECK(ct.count(CuspKind::Infinity) == 1);
  CHECK(ct.cusps[ct.indices(CuspKind::Infinity)[0]].width == 2);
  CHECK(ct.count(CuspKind::Zero) == 2);
  for (int i : ct.indices(CuspKind::Zero)) CHECK(ct.cusps[i].width == 1);
}

TEST_CASE("genus examples") {
  CHECK(genus(from_fermat(1)) == 0);
  CHECK(genus(from_fermat(3)) == 1);
  CHECK(genus(from_fermat(5)) == 6);
  CHECK_THROWS(genus(Dessin(2, {0, 1}, {0, 1})));
}

TEST_CASE("cusp labels are canonical and round trip") {
  Dessin d = from_fermat(4);
  CuspTable ct = cusps(d);
  for (int i = 0; i < ct.size(); ++i) {
    CHECK(ct.find_label(ct.cusps[i].label()) == i);
    CHECK(ct.cusps[i].min_coset == ct.cusps[i].orbit.front());
  }
  CHECK(ct.find_label("zero:99") == -1);
}

TEST_CASE("coset_of examples") {
  CHECK(coset_of(from_fermat(3), mats::Id()) == 0);
  gen::Rng rng(21);
  Dessin g2 = from_fermat(1);
  for (int N : {3, 4, 5}) {
    Dessin d = from_fermat(N);
    for (int it = 0; it < 50; ++it) {
      Mat2 m = evaluate_word(gen::word(rng, gen::uniform(rng, 0, 8), 4));
      auto [a, b] = abelianization_mod(m, N);
      CHECK(coset_of(d, m) == fermat_index(N, static_cast<int>(a), static_cast<int>(b)));
      CHECK(coset_of(g2, m) == 0);
    }
  }
  CHECK_THROWS(coset_of(from_fermat(3), mats::S()));
}

TEST_CASE("property: Fermat coset to (zero cusp, infinity cusp) is bijective") {
  for (int N = 1; N <= 20; ++N) {
    Dessin d = from_fermat(N);
    CuspTable ct = cusps(d);
    std::set<std::pair<int, int>> pairs;
    for (int x = 0; x < d.n(); ++x) pairs.insert({ct.zero_of[x], ct.inf_of[x]});
    CHECK(static_cast<int>(pairs.size()) == N * N);
    CHECK(genus(d) == (N - 1) * (N - 2) / 2);
  }
}

TEST_CASE("property: widths sum to n within each kind") {
  gen::Rng rng(22);
  for (int it = 0; it < 100; ++it) {
    Dessin d = gen::dessin_up_to(rng, 14);
    CuspTable ct = cusps(d);
    for (CuspKind k : {CuspKind::Zero, CuspKind::One, CuspKind::Infinity}) {
      int s = 0;
      for (int i : ct.indices(k)) s += ct.cusps[i].width;
      CHECK(s == d.n());
    }
    // Riemann-Hurwitz gives an integer genus
    CHECK(genus(d) >= 0);
    CHECK(2 * genus(d) == 2 + d.n() - ct.size());
  }
}

TEST_CASE("property: coset_of is a right action") {
  gen::Rng rng(23);
  for (int it = 0; it < 100; ++it) {
    Dessin d = gen::dessin_up_to(rng, 10);
    Mat2 m1 = evaluate_word(gen::word(rng, gen::uniform(rng, 0, 6), 4));
    ABWord w2 = gen::word(rng, gen::uniform(rng, 0, 6), 4);
    Mat2 m2 = evaluate_word(w2);
    CHECK(coset_of(d, m1 * m2) == d.act(coset_of(d, m1), w2));
  }
}

TEST_CASE("coset representatives map to their cosets") {
  gen::Rng rng(24);
  for (int it = 0; it < 30; ++it) {
    Dessin d = gen::dessin_up_to(rng, 12);
    auto reps = coset_reps(d);
    for (int x = 0; x < d.n(); ++x) CHECK(coset_of(d, reps[x]) == x);
  }
}

TEST_CASE("cusp_of_rational on Gamma(2)") {
  Dessin d = from_fermat(1);
  CuspTable ct = cusps(d);
  CHECK(ct.cusps[cusp_of_rational(d, ct, 1, 0)].kind == CuspKind::Infinity);
  CHECK(ct.cusps[cusp_of_rational(d, ct, 0, 1)].kind == CuspKind::Zero);
  CHECK(ct.cusps[cusp_of_rational(d, ct, 1, 1)].kind == CuspKind::One);
  CHECK(ct.cusps[cusp_of_rational(d, ct, -1, 1)].kind == CuspKind::One);
  CHECK(ct.cusps[cusp_of_rational(d, ct, 1, 2)].kind == CuspKind::Infinity);
  CHECK(ct.cusps[cusp_of_rational(d, ct, 2, 3)].kind == CuspKind::Zero);
  CHECK(ct.cusps[cusp_of_rational(d, ct, 1, 3)].kind == CuspKind::One);
}
