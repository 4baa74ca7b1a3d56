#pragma once

#include "cuspforge/gamma2.hpp"

#include <string>
#include <vector>

namespace cf {

using Perm = std::vector<int>;

enum class CuspKind : int { Zero = 0, One = 1, Infinity = 2 };

const char* kind_name(CuspKind k);
CuspKind parse_kind(const std::string& s);

// Power of a permutation applied to a single point in O(1) after setup.
class CycleIndex {
 public:
  CycleIndex() = default;
  explicit CycleIndex(const Perm& p);
  int apply(int x, long e) const;

 private:
  std::vector<int> cycle_of_, pos_;
  std::vector<std::vector<int>> cycles_;
};

// Finite-index subgroup of Gamma(2) containing -Id, given by the right action
// of A and B on the cosets; coset 0 is the base coset.
class Dessin {
 public:
  Dessin() = default;
  // Does not validate; call validate() or use load helpers.
  Dessin(int n, Perm piA, Perm piB);

  int n() const { return n_; }
  const Perm& piA() const { return piA_; }
  const Perm& piB() const { return piB_; }
  const Perm& piA_inv() const { return piAi_; }
  const Perm& piB_inv() const { return piBi_; }

  int act(int x, Gen g, long e) const;
  int act(int x, const ABWord& w) const;

  bool operator==(const Dessin& o) const { return piA_ == o.piA_ && piB_ == o.piB_; }

 private:
  int n_ = 0;
  Perm piA_, piB_, piAi_, piBi_;
  CycleIndex ciA_, ciB_;
};

std::vector<std::string> validate(const Dessin& d);
// Throws std::invalid_argument with the joined violation list.
void require_valid(const Dessin& d);

Dessin from_fermat(int N);
Dessin from_quotient_hom(const Perm& imgA, const Perm& imgB);

struct Cusp {
  CuspKind kind;
  std::vector<int> orbit;  // sorted
  int width;
  int min_coset;
  std::string label() const;  // kind:min_coset
};

// Cusps of all kinds, globally indexed: zero-kind first, then one-kind, then
// infinity-kind, each block ordered by minimum coset.
struct CuspTable {
  std::vector<Cusp> cusps;
  std::vector<int> zero_of, one_of, inf_of;  // coset -> global cusp index
  std::vector<int> minus_one_of;             // cusp of g(-1) = one-kind cusp of gA^{-1}
  int count(CuspKind k) const;
  std::vector<int> indices(CuspKind k) const;
  bool is_plus(int cusp) const { return cusps[cusp].kind != CuspKind::One; }
  int find_label(const std::string& label) const;  // -1 if absent
  int size() const { return static_cast<int>(cusps.size()); }
  // Cusp of the point g.p for coset g and p in {0, 1, infinity}.
  int cusp_at(CuspKind k, int coset) const;
};

CuspTable cusps(const Dessin& d);
int genus(const Dessin& d);

int coset_of(const Dessin& d, const Mat2& m);
int coset_of(const Dessin& d, const M64& m);

// Coset representatives in Gamma(2) from a breadth-first spanning tree.
std::vector<ABWord> coset_words(const Dessin& d);
std::vector<Mat2> coset_reps(const Dessin& d);

// Coset index of (a, b) in from_fermat(N).
inline int fermat_index(int N, int a, int b) {
  a = ((a % N) + N) % N;
  b = ((b % N) + N) % N;
  return a + N * b;
}

// Cusp of Gamma p/q (gcd 1, q may be 0 for infinity).
int cusp_of_rational(const Dessin& d, const CuspTable& ct, const Int& p, const Int& q);

// Dessins of the conjugates U^{-1} Gamma U (which = -1) and U Gamma U^{-1}
// (which = +1), on the same index set: coset x of the conjugate corresponds to
// Gamma * g_x where g_x is the representative of x in Gamma.
Dessin conjugate_dessin(const Dessin& d, int which);

}  // namespace cf
