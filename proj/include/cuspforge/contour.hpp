#pragma once

#include "cuspforge/dessin.hpp"
#include "cuspforge/homology.hpp"
#include "cuspforge/lambda.hpp"

#include <vector>

namespace cf {

struct TruncationParams {
  int c_max = 64;
  int r_max = 16;
  double s = 1.5;
  double eps = 0.01;
  int quad_steps = 2048;
  int precision_bits = 256;

  static TruncationParams defaults();  // precision from CUSPFORGE_BITS
};

void validate(const TruncationParams& p);

// Logarithmic increments of the level-N atoms along the base path of a side:
//   side plus:  z = tanh t + i sech t, from near 1 to near -1,
//   side minus: z = i e^t, from near 0 to near infinity,
// with |t| <= arcosh(1/eps) (and arcosh(2/eps) for the refined value).
// Atom order: lambda, 1 - lambda, x - zeta^k, y - zeta^k, x - eps zeta^k y.
struct ContourAtoms {
  int N = 1;
  Side side = Side::Plus;
  double eps = 0.01;
  int bits = 256;
  std::vector<Cx> dlog;       // endpoints at eps
  std::vector<Cx> dlog_half;  // endpoints at eps / 2
  int nodes = 0;
  int refinements = 0;

  static int atom_lambda() { return 0; }
  static int atom_one_minus() { return 1; }
  int atom_x(int k) const { return 2 + md(k); }
  int atom_y(int k) const { return 2 + N + md(k); }
  int atom_w(int k) const { return 2 + 2 * N + md(k); }
  int size() const { return 2 + 3 * N; }

 private:
  int md(int k) const { return ((k % N) + N) % N; }
};

// parallel = false runs the same refinement serially; used as the reference.
ContourAtoms contour_atoms(int N, Side side, const TruncationParams& p, bool parallel = true);

struct ContourValue {
  Cx value;      // at eps / 2
  Real error;    // |F(eps) - F(eps/2)| plus a rounding allowance
  bool converged = true;
};

// (1 / (2 pi i N)) * sum_a w_a * Delta log(atom a).
ContourValue contour_combination(const ContourAtoms& at, const std::vector<Rat>& weights);

// Atom carrying Delta log of the unit twisted by x -> zeta^p x, y -> zeta^q y.
int atom_for_unit(const ContourAtoms& at, const UnitSpec& u, int p, int q);

// Twist exponents (p, q) = (alpha + beta, beta) for the exponent sums of g in A, B.
std::pair<int, int> unit_character(const Mat2& g, int N);

// F for a single unit along g(1) -> g(-1) (side plus) or g(0) -> g(inf) (side minus).
ContourValue contour_F(const UnitSpec& u, const Dessin& d, const Mat2& g, Side side, const TruncationParams& p);

}  // namespace cf
