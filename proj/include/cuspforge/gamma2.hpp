#pragma once

#include "cuspforge/numbers.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cf {

template <class T>
struct Mat2T {
  T a{1}, b{0}, c{0}, d{1};

  friend Mat2T operator*(const Mat2T& x, const Mat2T& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const Mat2T& x, const Mat2T& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  T det() const { return a * d - b * c; }
  // Inverse of a determinant-one matrix.
  Mat2T inv() const { return {d, -b, -c, a}; }
  Mat2T neg() const { return {-a, -b, -c, -d}; }
};

using Mat2 = Mat2T<Int>;
using M64 = Mat2T<std::int64_t>;

Mat2 to_big(const M64& m);
// Throws std::overflow_error when an entry does not fit.
M64 to_small(const Mat2& m);
// Checked product; returns false on overflow.
bool mul_checked(const M64& x, const M64& y, M64& out);

namespace mats {
inline Mat2 A() { return {1, 2, 0, 1}; }
inline Mat2 B() { return {1, 0, 2, 1}; }
inline Mat2 S() { return {0, 1, -1, 0}; }
inline Mat2 U() { return {0, 1, -1, 1}; }
inline Mat2 T() { return {1, 1, 0, 1}; }
inline Mat2 Id() { return {1, 0, 0, 1}; }
}  // namespace mats

enum class Gen : std::uint8_t { A, B };

struct Letter {
  Gen gen;
  long exp;
  bool operator==(const Letter& o) const { return gen == o.gen && exp == o.exp; }
};

// Element of PGamma(2) x {+-1}: sign * product of generator powers.
struct ABWord {
  int sign = 1;
  std::vector<Letter> letters;

  bool operator==(const ABWord& o) const { return sign == o.sign && letters == o.letters; }
  bool is_reduced() const;
  ABWord inverse() const;
  long length() const;  // sum of |exp|
};

// Merge adjacent powers of the same generator and drop zero exponents.
ABWord free_reduce(ABWord w);
ABWord concat(const ABWord& x, const ABWord& y);

bool is_gamma2(const Mat2& m);
bool is_gamma2(const M64& m);

struct DecomposeStats {
  int steps = 0;  // Euclidean right-multiplications performed
};

ABWord decompose_AB(const Mat2& m, DecomposeStats* stats = nullptr);
ABWord decompose_AB(const M64& m, DecomposeStats* stats = nullptr);

Mat2 evaluate_word(const ABWord& w);

std::pair<long, long> exponent_sums(const ABWord& w);
std::pair<long, long> abelianization_mod(const Mat2& m, long N);

// Letters A, B, a, b (lowercase = inverse) with optional leading '-'.
std::string word_to_string(const ABWord& w);
ABWord parse_word(const std::string& s);

std::array<std::string, 4> mat_to_strings(const Mat2& m);

// Index 0..5 of m mod 2 in SL2(F2), using the transversal order
// Id, S, U, US, U^2, U^2 S.
int sl2f2_index(const Mat2& m);
int sl2f2_index(const M64& m);
const std::array<Mat2, 6>& transversal();

}  // namespace cf
