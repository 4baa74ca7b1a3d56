#include "doctest.h"
#include "support/generators.hpp"

#include <set>

using namespace cf;

namespace {

IntMat mat(std::initializer_list<std::initializer_list<long>> rows) {
  IntMat m;
  for (const auto& r : rows) {
    std::vector<Int> row;
    for (long x : r) row.push_back(Int(x));
    m.push_back(row);
  }
  return m;
}

bool is_diagonal_chain(const IntMat& D, const std::vector<Int>& diag) {
  for (size_t i = 0; i < D.size(); ++i)
    for (size_t j = 0; j < D[i].size(); ++j)
      if (i != j && D[i][j] != 0) return false;
  for (size_t i = 0; i + 1 < diag.size(); ++i)
    if (diag[i] <= 0 || diag[i + 1] % diag[i] != 0) return false;
  return true;
}

// gcd of all k x k minors, by brute force over index subsets
Int determinantal_divisor(const IntMat& m, int cols, int k) {
  int rows = static_cast<int>(m.size());
  Int g = 0;
  std::vector<int> ri(k), ci(k);
  std::function<void(int, int)> pick_c;
  std::function<void(int, int)> pick_r = [&](int pos, int start) {
    if (pos == k) {
      pick_c(0, 0);
      return;
    }
    for (int r = start; r < rows; ++r) {
      ri[pos] = r;
      pick_r(pos + 1, r + 1);
    }
  };
  pick_c = [&](int pos, int start) {
    if (pos == k) {
      IntMat sub(k, std::vector<Int>(k));
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) sub[a][b] = m[ri[a]][ci[b]];
      g = gcd_int(g, int_determinant(sub));
      return;
    }
    for (int c = start; c < cols; ++c) {
      ci[pos] = c;
      pick_c(pos + 1, c + 1);
    }
  };
  pick_r(0, 0);
  return abs(g);
}

}  // namespace

TEST_CASE("smith_normal_form examples") {
  auto a = smith_normal_form(mat({{2, 0}, {0, 3}}), 2);
  CHECK(a.diag == std::vector<Int>{1, 6});
  auto z = smith_normal_form(mat({{0, 0}, {0, 0}}), 2);
  CHECK(z.diag.empty());
  auto b = smith_normal_form(mat({{2, 4}, {6, 8}}), 2);
  CHECK(b.diag == std::vector<Int>{2, 4});
  CHECK(int_determinant(mat({{2, 4}, {6, 8}})) == -8);
}

TEST_CASE("property: U M V = D with unimodular U, V") {
  gen::Rng rng(41);
  std::vector<std::pair<int, int>> shapes{{40, 40}, {40, 25}, {25, 40}};
  for (int it = 0; it < 25; ++it) shapes.push_back({gen::uniform(rng, 1, 14), gen::uniform(rng, 1, 14)});
  for (auto [r, c] : shapes) {
    IntMat M = gen::int_matrix(rng, r, c, -9, 9);
    auto s = smith_normal_form(M, c);
    CHECK(int_multiply(int_multiply(s.U, M), s.V) == s.D);
    CHECK(abs(int_determinant(s.U)) == 1);
    CHECK(abs(int_determinant(s.V)) == 1);
    CHECK(is_diagonal_chain(s.D, s.diag));
  }
}

TEST_CASE("property: invariant factors match determinantal divisors") {
  gen::Rng rng(42);
  for (int it = 0; it < 40; ++it) {
    int r = gen::uniform(rng, 1, 5), c = gen::uniform(rng, 1, 5);
    IntMat M = gen::int_matrix(rng, r, c, -6, 6);
    auto s = smith_normal_form(M, c, false);
    Int prod = 1;
    for (int k = 1; k <= std::min(r, c); ++k) {
      Int dk = determinantal_divisor(M, c, k);
      if (k <= static_cast<int>(s.diag.size())) {
        prod *= s.diag[k - 1];
        CHECK(dk == prod);
      } else {
        CHECK(dk == 0);
      }
    }
  }
}

TEST_CASE("cokernel and structures") {
  auto c = cokernel(mat({{2, 0, 0}, {0, 3, 0}}), 3);
  CHECK(c.free_rank == 1);
  CHECK(c.invariant_factors == std::vector<Int>{6});
  CHECK(c.to_string() == "(Z/6) x Z");
  CHECK(c.elementary_divisors() == std::vector<Int>{2, 3});
  CHECK(cyclic_power(Int(5), 3).torsion_order() == 125);
  CHECK(cyclic_power(Int(5), 3).to_string() == "(Z/5)^3");
  CHECK(cyclic_power(Int(1), 3).invariant_factors.empty());
}

TEST_CASE("qz_subgroup examples") {
  RatVec g1{Rat(1, 2), Rat(0)}, g2{Rat(0), Rat(1, 3)};
  CHECK(qz_subgroup({g1, g2}, 2).invariant_factors == std::vector<Int>{6});
  CHECK(qz_order_mod({Rat(1, 2), Rat(1, 2)}, {{Rat(1), Rat(1)}}, 2) == 1);
  CHECK(qz_order_mod({Rat(1, 4), Rat(0)}, {}, 2) == 4);
  CHECK(qz_subgroup({{Rat(3), Rat(-2)}}, 2).torsion_order() == 1);
}

TEST_CASE("property: qz_subgroup order equals brute-force closure") {
  gen::Rng rng(43);
  for (int it = 0; it < 40; ++it) {
    int n = gen::uniform(rng, 1, 3), k = gen::uniform(rng, 1, 3);
    std::vector<RatVec> gens;
    for (int i = 0; i < k; ++i) {
      RatVec v;
      for (int j = 0; j < n; ++j) v.push_back(Rat(gen::uniform(rng, -6, 6), gen::uniform(rng, 1, 6)));
      gens.push_back(v);
    }
    auto mod1 = [](RatVec v) {
      for (auto& x : v) x = frac(x);
      return v;
    };
    std::set<std::vector<std::string>> seen;
    std::vector<RatVec> frontier{RatVec(n, Rat(0))};
    auto key = [](const RatVec& v) {
      std::vector<std::string> s;
      for (const auto& x : v) s.push_back(rat_to_string(x));
      return s;
    };
    seen.insert(key(frontier[0]));
    while (!frontier.empty()) {
      RatVec v = frontier.back();
      frontier.pop_back();
      for (const auto& g : gens) {
        RatVec w = v;
        for (int j = 0; j < n; ++j) w[j] += g[j];
        w = mod1(w);
        if (seen.insert(key(w)).second) frontier.push_back(w);
      }
    }
    CHECK(qz_subgroup(gens, n).torsion_order() == Int(seen.size()));
  }
}

TEST_CASE("presentation CSV export") {
  IntMatrix m;
  m.col_labels = {"x", "y"};
  m.add_row("r0", {Int(1), Int(-2)});
  std::string csv = m.to_csv();
  CHECK(csv.find("x,y") != std::string::npos);
  CHECK(csv.find("r0,1,-2") != std::string::npos);
}
