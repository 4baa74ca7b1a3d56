#include "cuspforge/recognize.hpp"

#include <stdexcept>

namespace cf {

const char* recognition_name(Recognition r) {
  switch (r) {
    case Recognition::Recognized: return "recognized";
    case Recognition::NoCandidate: return "no_candidate";
    case Recognition::Indeterminate: return "indeterminate";
  }
  return "?";
}

namespace {

// Simplest rational in [lo, hi] for 0 <= lo <= hi.
Rat simplest_nonneg(const Rat& lo, const Rat& hi) {
  Int fl = floor_div(num(lo), den(lo));
  if (Rat(fl) == lo) return Rat(fl);
  // smallest integer >= lo
  Int ce = fl + 1;
  if (Rat(ce) <= hi) return Rat(ce);
  // lo and hi share the integer part fl; recurse on the reciprocals of the fractional parts
  Rat a = lo - Rat(fl), b = hi - Rat(fl);
  Rat inner = simplest_nonneg(1 / b, 1 / a);
  return Rat(fl) + 1 / inner;
}

}  // namespace

Rat simplest_between(const Rat& lo, const Rat& hi) {
  if (lo > hi) throw std::invalid_argument("simplest_between: empty interval");
  if (lo <= 0 && hi >= 0) return Rat(0);
  if (hi < 0) return -simplest_nonneg(-hi, -lo);
  return simplest_nonneg(lo, hi);
}

RecognizeResult rational_recognize(const Rat& lo, const Rat& hi, const Int& den_bound) {
  if (den_bound < 1) throw std::invalid_argument("rational_recognize: den_bound must be positive");
  if (lo > hi) throw std::invalid_argument("rational_recognize: lo > hi");
  RecognizeResult r;
  Rat cand = simplest_between(lo, hi);
  if (den(cand) > den_bound) {
    r.status = Recognition::NoCandidate;
    return r;
  }
  r.value = cand;
  // two distinct fractions with denominators <= Q differ by at least 1/Q^2
  Rat limit(Int(1), 2 * den_bound * den_bound);
  r.status = (hi - lo) < limit ? Recognition::Recognized : Recognition::Indeterminate;
  return r;
}

}  // namespace cf
