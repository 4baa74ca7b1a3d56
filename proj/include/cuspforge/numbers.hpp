#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace cf {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

inline Rat make_rat(long long p, long long q = 1) { return Rat(Int(p), Int(q)); }

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

// "p/q" or "p" for integers.
std::string rat_to_string(const Rat& r);
// Accepts "p", "-p", "p/q", decimal "0.25".
Rat parse_rat(const std::string& s);

Int lcm_int(const Int& a, const Int& b);
Int gcd_int(const Int& a, const Int& b);

// floor(a/b) for b != 0.
Int floor_div(const Int& a, const Int& b);
// Nearest integer to a/b; callers guarantee there is no tie.
Int round_div(const Int& a, const Int& b);

// Fractional part in [0,1).
Rat frac(const Rat& r);

using RatVec = std::vector<Rat>;

}  // namespace cf
