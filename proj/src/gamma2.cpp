#include "cuspforge/gamma2.hpp"

#include <cstdlib>
#include <limits>

namespace cf {

Mat2 to_big(const M64& m) { return {Int(m.a), Int(m.b), Int(m.c), Int(m.d)}; }

namespace {

bool fits64(const Int& x) {
  static const Int lo(std::numeric_limits<std::int64_t>::min());
  static const Int hi(std::numeric_limits<std::int64_t>::max());
  return x >= lo && x <= hi;
}

std::int64_t rdiv64(std::int64_t a, std::int64_t b) {
  // nearest integer to a/b, no ties by parity
  if (b < 0) {
    a = -a;
    b = -b;
  }
  __int128 n = 2 * static_cast<__int128>(a) + b;
  __int128 d = 2 * static_cast<__int128>(b);
  __int128 q = n / d;
  if ((n % d != 0) && (n < 0)) q -= 1;
  return static_cast<std::int64_t>(q);
}

Int rdiv(const Int& a, const Int& b) { return round_div(a, b); }
std::int64_t rdiv(std::int64_t a, std::int64_t b) { return rdiv64(a, b); }

Int absv(const Int& x) { return abs(x); }
std::int64_t absv(std::int64_t x) { return x < 0 ? -x : x; }

long to_long(const Int& x) {
  if (!fits64(x)) throw std::overflow_error("exponent out of range");
  return x.convert_to<long>();
}
long to_long(std::int64_t x) { return static_cast<long>(x); }

template <class T>
ABWord decompose_impl(Mat2T<T> m, DecomposeStats* stats) {
  if (m.det() != 1) throw std::invalid_argument("decompose_AB: determinant is not 1");
  if (!is_gamma2(m)) throw std::invalid_argument("decompose_AB: matrix not in Gamma(2)");
  std::vector<Letter> right;  // m * A^k1 * B^k2 * ...
  int steps = 0;
  while (m.b != 0) {
    if (absv(m.b) > absv(m.a)) {
      // right multiply by A^k: b -> b + 2 k a
      T k = -rdiv(m.b, T(2) * m.a);
      m.b += T(2) * k * m.a;
      m.d += T(2) * k * m.c;
      right.push_back({Gen::A, to_long(k)});
    } else {
      // right multiply by B^k: a -> a + 2 k b
      T k = -rdiv(m.a, T(2) * m.b);
      m.a += T(2) * k * m.b;
      m.c += T(2) * k * m.d;
      right.push_back({Gen::B, to_long(k)});
    }
    ++steps;
  }
  // now m = sign * B^e with sign = a = d = +-1
  ABWord w;
  w.sign = (m.a == 1) ? 1 : -1;
  T c = (w.sign == 1) ? m.c : T(-m.c);
  long e = to_long(T(c / 2));
  if (e != 0) w.letters.push_back({Gen::B, e});
  for (auto it = right.rbegin(); it != right.rend(); ++it) w.letters.push_back({it->gen, -it->exp});
  if (stats) stats->steps = steps;
  return free_reduce(w);
}

}  // namespace

M64 to_small(const Mat2& m) {
  if (!fits64(m.a) || !fits64(m.b) || !fits64(m.c) || !fits64(m.d))
    throw std::overflow_error("matrix entry exceeds 64 bits");
  return {m.a.convert_to<std::int64_t>(), m.b.convert_to<std::int64_t>(),
          m.c.convert_to<std::int64_t>(), m.d.convert_to<std::int64_t>()};
}

bool mul_checked(const M64& x, const M64& y, M64& out) {
  std::int64_t p1, p2, s;
  auto entry = [&](std::int64_t u, std::int64_t v, std::int64_t w, std::int64_t z,
                   std::int64_t& r) {
    if (__builtin_mul_overflow(u, v, &p1)) return false;
    if (__builtin_mul_overflow(w, z, &p2)) return false;
    if (__builtin_add_overflow(p1, p2, &s)) return false;
    r = s;
    return true;
  };
  M64 r;
  if (!entry(x.a, y.a, x.b, y.c, r.a)) return false;
  if (!entry(x.a, y.b, x.b, y.d, r.b)) return false;
  if (!entry(x.c, y.a, x.d, y.c, r.c)) return false;
  if (!entry(x.c, y.b, x.d, y.d, r.d)) return false;
  out = r;
  return true;
}

bool ABWord::is_reduced() const {
  for (size_t i = 0; i < letters.size(); ++i) {
    if (letters[i].exp == 0) return false;
    if (i > 0 && letters[i].gen == letters[i - 1].gen) return false;
  }
  return sign == 1 || sign == -1;
}

ABWord ABWord::inverse() const {
  ABWord w;
  w.sign = sign;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) w.letters.push_back({it->gen, -it->exp});
  return w;
}

long ABWord::length() const {
  long n = 0;
  for (const auto& l : letters) n += std::labs(l.exp);
  return n;
}

ABWord free_reduce(ABWord w) {
  std::vector<Letter> out;
  for (const auto& l : w.letters) {
    if (l.exp == 0) continue;
    if (!out.empty() && out.back().gen == l.gen) {
      out.back().exp += l.exp;
      if (out.back().exp == 0) out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  w.letters = std::move(out);
  return w;
}

ABWord concat(const ABWord& x, const ABWord& y) {
  ABWord w;
  w.sign = x.sign * y.sign;
  w.letters = x.letters;
  w.letters.insert(w.letters.end(), y.letters.begin(), y.letters.end());
  return free_reduce(w);
}

bool is_gamma2(const Mat2& m) {
  auto odd = [](const Int& x) { return bit_test(abs(x), 0); };
  return odd(m.a) && !odd(m.b) && !odd(m.c) && odd(m.d);
}

bool is_gamma2(const M64& m) {
  return (m.a & 1) && !(m.b & 1) && !(m.c & 1) && (m.d & 1);
}

ABWord decompose_AB(const Mat2& m, DecomposeStats* stats) { return decompose_impl<Int>(m, stats); }
ABWord decompose_AB(const M64& m, DecomposeStats* stats) {
  return decompose_impl<std::int64_t>(m, stats);
}

Mat2 evaluate_word(const ABWord& w) {
  Mat2 r = mats::Id();
  for (const auto& l : w.letters) {
    Int k(l.exp);
    Mat2 p = (l.gen == Gen::A) ? Mat2{1, 2 * k, 0, 1} : Mat2{1, 0, 2 * k, 1};
    r = r * p;
  }
  if (w.sign == -1) r = r.neg();
  return r;
}

std::pair<long, long> exponent_sums(const ABWord& w) {
  long sa = 0, sb = 0;
  for (const auto& l : w.letters) (l.gen == Gen::A ? sa : sb) += l.exp;
  return {sa, sb};
}

std::pair<long, long> abelianization_mod(const Mat2& m, long N) {
  if (N <= 0) throw std::invalid_argument("abelianization_mod: N must be positive");
  auto [sa, sb] = exponent_sums(decompose_AB(m));
  auto md = [N](long x) { return ((x % N) + N) % N; };
  return {md(sa), md(sb)};
}

std::string word_to_string(const ABWord& w) {
  std::string s = (w.sign == -1) ? "-" : "";
  for (const auto& l : w.letters) {
    char ch = (l.gen == Gen::A) ? 'A' : 'B';
    if (l.exp < 0) ch = static_cast<char>(ch - 'A' + 'a');
    s.append(static_cast<size_t>(std::labs(l.exp)), ch);
  }
  return s;
}

ABWord parse_word(const std::string& s) {
  ABWord w;
  size_t i = 0;
  if (!s.empty() && s[0] == '-') {
    w.sign = -1;
    i = 1;
  } else if (!s.empty() && s[0] == '+') {
    i = 1;
  }
  for (; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '1' && s.size() - i == 1) break;  // "1" denotes the identity
    switch (ch) {
      case 'A': w.letters.push_back({Gen::A, 1}); break;
      case 'a': w.letters.push_back({Gen::A, -1}); break;
      case 'B': w.letters.push_back({Gen::B, 1}); break;
      case 'b': w.letters.push_back({Gen::B, -1}); break;
      case ' ': break;
      default: throw std::invalid_argument(std::string("bad word letter: ") + ch);
    }
  }
  return free_reduce(w);
}

std::array<std::string, 4> mat_to_strings(const Mat2& m) {
  return {m.a.str(), m.b.str(), m.c.str(), m.d.str()};
}

namespace {
int key_of(bool a, bool b, bool c, bool d) { return (a << 3) | (b << 2) | (c << 1) | int(d); }

struct F2Table {
  std::array<Mat2, 6> reps;
  std::array<int, 16> index{};
  F2Table() {
    using namespace mats;
    reps = {Id(), S(), U(), U() * S(), U() * U(), U() * U() * S()};
    index.fill(-1);
    for (int i = 0; i < 6; ++i) {
      const Mat2& m = reps[i];
      auto odd = [](const Int& x) { return bit_test(abs(x), 0); };
      index[key_of(odd(m.a), odd(m.b), odd(m.c), odd(m.d))] = i;
    }
  }
};

const F2Table& f2() {
  static const F2Table t;
  return t;
}
}  // namespace

const std::array<Mat2, 6>& transversal() { return f2().reps; }

int sl2f2_index(const Mat2& m) {
  auto odd = [](const Int& x) { return bit_test(abs(x), 0); };
  int i = f2().index[key_of(odd(m.a), odd(m.b), odd(m.c), odd(m.d))];
  if (i < 0) throw std::invalid_argument("matrix is not invertible mod 2");
  return i;
}

int sl2f2_index(const M64& m) {
  int i = f2().index[key_of(m.a & 1, m.b & 1, m.c & 1, m.d & 1)];
  if (i < 0) throw std::invalid_argument("matrix is not invertible mod 2");
  return i;
}

}  // namespace cf
