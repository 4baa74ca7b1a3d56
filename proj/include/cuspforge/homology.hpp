#pragma once

#include "cuspforge/dessin.hpp"
#include "cuspforge/linalg.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace cf {

enum class Side { Plus, Minus };

inline const char* side_name(Side s) { return s == Side::Plus ? "plus" : "minus"; }

// Coordinates in the basis xi+(g) = {g0, g inf}+ (plus) or
// xi-(g) = {g1, g(-1)}- (minus), indexed by coset.
template <class T>
struct SymbolVector {
  Side side = Side::Plus;
  std::vector<T> c;

  static SymbolVector zero(Side s, int n) { return {s, std::vector<T>(n, T(0))}; }
  static SymbolVector basis(Side s, int n, int g) {
    auto v = zero(s, n);
    v.c[g] = T(1);
    return v;
  }
};

// Coefficients over all cusps of a CuspTable (global indexing).
template <class T>
struct CuspDivisor {
  std::vector<T> m;

  static CuspDivisor zero(int ncusps) { return {std::vector<T>(ncusps, T(0))}; }
  T degree() const {
    T s(0);
    for (const auto& x : m) s += x;
    return s;
  }
  bool is_zero() const {
    for (const auto& x : m)
      if (x != T(0)) return false;
    return true;
  }
};

using RatSymbols = SymbolVector<Rat>;
using RatDivisor = CuspDivisor<Rat>;

struct HomologyContext {
  Dessin d;
  CuspTable ct;
  explicit HomologyContext(Dessin dd) : d(std::move(dd)), ct(cusps(d)) {}
  int n() const { return d.n(); }
};

// xi+(g) -> (Gamma g inf) - (Gamma g 0)
template <class T>
CuspDivisor<T> boundary_plus(const HomologyContext& h, const SymbolVector<T>& v) {
  if (v.side != Side::Plus) throw std::invalid_argument("boundary_plus: side minus vector");
  auto D = CuspDivisor<T>::zero(h.ct.size());
  for (int x = 0; x < h.n(); ++x) {
    if (v.c[x] == T(0)) continue;
    D.m[h.ct.inf_of[x]] += v.c[x];
    D.m[h.ct.zero_of[x]] -= v.c[x];
  }
  return D;
}

// xi-(g) -> (Gamma g 1) - (Gamma g(-1))
template <class T>
CuspDivisor<T> boundary_minus(const HomologyContext& h, const SymbolVector<T>& v) {
  if (v.side != Side::Minus) throw std::invalid_argument("boundary_minus: side plus vector");
  auto D = CuspDivisor<T>::zero(h.ct.size());
  for (int x = 0; x < h.n(); ++x) {
    if (v.c[x] == T(0)) continue;
    D.m[h.ct.one_of[x]] += v.c[x];
    D.m[h.ct.minus_one_of[x]] -= v.c[x];
  }
  return D;
}

template <class T>
CuspDivisor<T> boundary(const HomologyContext& h, const SymbolVector<T>& v) {
  return v.side == Side::Plus ? boundary_plus(h, v) : boundary_minus(h, v);
}

template <class T>
T intersect(const SymbolVector<T>& vp, const SymbolVector<T>& vm) {
  if (vp.side != Side::Plus || vm.side != Side::Minus)
    throw std::invalid_argument("intersect: expects (plus, minus)");
  if (vp.c.size() != vm.c.size()) throw std::invalid_argument("intersect: size mismatch");
  T s(0);
  for (size_t i = 0; i < vp.c.size(); ++i) s += vp.c[i] * vm.c[i];
  return s;
}

// Loop around a cusp of del+ as a side-minus vector.
RatSymbols lambda_minus(const HomologyContext& h, int cusp);
// Loop around a cusp of del- as a side-plus vector.
RatSymbols lambda_plus(const HomologyContext& h, int cusp);

// Manin symbols for Gamma \ SL2(Z) indexed 6x + t, with t the transversal
// index (Id, S, U, US, U^2, U^2 S).
struct ManinPresentation {
  int n = 0;
  int size = 0;
  std::vector<int> actS, actU;           // right multiplication by S and U
  std::vector<int> bound_inf, bound_zero;  // xi(i) boundary = (bound_inf) - (bound_zero)
  std::vector<RatVec> relations;
  RowSpace relation_space;
  int quotient_rank = 0;
  int ncusps = 0;

  static int index(int coset, int t) { return 6 * coset + t; }
};

ManinPresentation manin_presentation(const HomologyContext& h);

// xi+(g) -> xi(g) followed by reduction modulo the Manin relations.
RatVec project_to_full(const ManinPresentation& mp, const RatSymbols& v);
RatDivisor full_boundary(const ManinPresentation& mp, const RatVec& v);

std::string divisor_to_string(const HomologyContext& h, const RatDivisor& D);

}  // namespace cf
