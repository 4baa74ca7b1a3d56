#include "cuspforge/homology.hpp"

#include <sstream>

namespace cf {

RatSymbols lambda_minus(const HomologyContext& h, int cusp) {
  const Cusp& c = h.ct.cusps.at(cusp);
  if (c.kind == CuspKind::One) throw std::invalid_argument("lambda_minus: cusp is not in del+");
  auto v = RatSymbols::zero(Side::Minus, h.n());
  Rat s = (c.kind == CuspKind::Infinity) ? Rat(-1) : Rat(1);
  for (int x : c.orbit) v.c[x] += s;
  return v;
}

RatSymbols lambda_plus(const HomologyContext& h, int cusp) {
  const Cusp& c = h.ct.cusps.at(cusp);
  if (c.kind != CuspKind::One) throw std::invalid_argument("lambda_plus: cusp is not in del-");
  auto v = RatSymbols::zero(Side::Plus, h.n());
  for (int x : c.orbit) {
    v.c[h.d.piB()[x]] += 1;
    v.c[x] -= 1;
  }
  return v;
}

ManinPresentation manin_presentation(const HomologyContext& h) {
  ManinPresentation mp;
  mp.n = h.n();
  mp.size = 6 * mp.n;
  mp.ncusps = h.ct.size();
  const auto& T = transversal();
  const Mat2 gens[2] = {mats::S(), mats::U()};
  std::vector<int>* acts[2] = {&mp.actS, &mp.actU};
  for (int r = 0; r < 2; ++r) {
    acts[r]->assign(mp.size, -1);
    for (int t = 0; t < 6; ++t) {
      Mat2 tr = T[t] * gens[r];
      int tp = sl2f2_index(tr);
      Mat2 hp = tr * T[tp].inv();
      ABWord w = decompose_AB(hp);
      for (int x = 0; x < mp.n; ++x) (*acts[r])[ManinPresentation::index(x, t)] = ManinPresentation::index(h.d.act(x, w), tp);
    }
  }
  // t * infinity and t * 0 for the transversal
  static const CuspKind t_inf[6] = {CuspKind::Infinity, CuspKind::Zero, CuspKind::Zero,
                                    CuspKind::One,      CuspKind::One,  CuspKind::Infinity};
  static const CuspKind t_zero[6] = {CuspKind::Zero, CuspKind::Infinity, CuspKind::One,
                                     CuspKind::Zero, CuspKind::Infinity, CuspKind::One};
  mp.bound_inf.resize(mp.size);
  mp.bound_zero.resize(mp.size);
  for (int x = 0; x < mp.n; ++x)
    for (int t = 0; t < 6; ++t) {
      int i = ManinPresentation::index(x, t);
      mp.bound_inf[i] = h.ct.cusp_at(t_inf[t], x);
      mp.bound_zero[i] = h.ct.cusp_at(t_zero[t], x);
    }
  for (int i = 0; i < mp.size; ++i) {
    RatVec r2(mp.size, Rat(0));
    r2[i] += 1;
    r2[mp.actS[i]] += 1;
    mp.relations.push_back(std::move(r2));
    RatVec r3(mp.size, Rat(0));
    int u1 = mp.actU[i];
    int u2 = mp.actU[u1];
    r3[i] += 1;
    r3[u1] += 1;
    r3[u2] += 1;
    mp.relations.push_back(std::move(r3));
  }
  mp.relation_space = RowSpace(mp.relations, mp.size);
  mp.quotient_rank = mp.size - mp.relation_space.rank();
  return mp;
}

RatVec project_to_full(const ManinPresentation& mp, const RatSymbols& v) {
  if (v.side != Side::Plus) throw std::invalid_argument("project_to_full: only side plus is supported");
  RatVec w(mp.size, Rat(0));
  for (int x = 0; x < mp.n; ++x) w[ManinPresentation::index(x, 0)] = v.c[x];
  mp.relation_space.reduce(w);
  return w;
}

RatDivisor full_boundary(const ManinPresentation& mp, const RatVec& v) {
  auto D = RatDivisor::zero(mp.ncusps);
  for (int i = 0; i < mp.size; ++i) {
    if (v[i] == 0) continue;
    D.m[mp.bound_inf[i]] += v[i];
    D.m[mp.bound_zero[i]] -= v[i];
  }
  return D;
}

std::string divisor_to_string(const HomologyContext& h, const RatDivisor& D) {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < h.ct.size(); ++i) {
    if (D.m[i] == 0) continue;
    Rat c = D.m[i];
    if (!first) os << (c > 0 ? " + " : " - ");
    else if (c < 0) os << "-";
    Rat a = abs(c);
    if (a != 1) os << rat_to_string(a) << "*";
    os << h.ct.cusps[i].label();
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace cf
