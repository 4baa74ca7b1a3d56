#include "cuspforge/numbers.hpp"

#include <stdexcept>

namespace cf {

std::string rat_to_string(const Rat& r) {
  if (den(r) == 1) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

Rat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Int p(s.substr(0, slash));
    Int q(s.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("zero denominator: " + s);
    return Rat(p, q);
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string ip = s.substr(0, dot);
    std::string fp = s.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (neg || (!ip.empty() && ip[0] == '+')) ip = ip.substr(1);
    if (ip.empty()) ip = "0";
    Int scale = 1;
    for (size_t i = 0; i < fp.size(); ++i) scale *= 10;
    Rat r = Rat(Int(ip)) + (fp.empty() ? Rat(0) : Rat(Int(fp), scale));
    return neg ? -r : r;
  }
  return Rat(Int(s));
}

Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

Int lcm_int(const Int& a, const Int& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd_int(a, b) * b);
}

Int floor_div(const Int& a, const Int& b) {
  if (b == 0) throw std::domain_error("division by zero");
  Int q = a / b;  // truncates toward zero
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

Int round_div(const Int& a, const Int& b) {
  // floor((2a + b) / 2b) with positive denominator
  Int n = a, d = b;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  return floor_div(2 * n + d, 2 * d);
}

Rat frac(const Rat& r) {
  Int f = floor_div(num(r), den(r));
  return r - Rat(f);
}

}  // namespace cf
