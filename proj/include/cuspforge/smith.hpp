#pragma once

#include "cuspforge/numbers.hpp"

#include <string>
#include <vector>

namespace cf {

using IntMat = std::vector<std::vector<Int>>;

// Integer matrix with row and column labels, used for presentations.
struct IntMatrix {
  IntMat a;
  std::vector<std::string> row_labels, col_labels;

  int rows() const { return static_cast<int>(a.size()); }
  int cols() const { return static_cast<int>(col_labels.size()); }
  void add_row(std::string label, std::vector<Int> row);
  std::string to_csv() const;
};

IntMat int_identity(int n);
IntMat int_multiply(const IntMat& x, const IntMat& y);
// Bareiss fraction-free determinant of a square matrix.
Int int_determinant(IntMat m);

struct SmithResult {
  IntMat D, U, V;          // U * M * V = D
  std::vector<Int> diag;   // nonzero diagonal entries, d1 | d2 | ...
};

// Smallest-absolute-value pivoting with full row and column reduction.
SmithResult smith_normal_form(const IntMat& M, int cols, bool track = true);

struct AbelianStructure {
  int free_rank = 0;
  std::vector<Int> invariant_factors;  // each > 1, d1 | d2 | ...

  Int torsion_order() const;
  std::vector<Int> elementary_divisors() const;  // prime powers, sorted
  std::string to_string() const;
  bool operator==(const AbelianStructure& o) const {
    return free_rank == o.free_rank && invariant_factors == o.invariant_factors;
  }
};

// (Z/d)^k as an AbelianStructure.
AbelianStructure cyclic_power(const Int& d, int k);

// Z^cols modulo the row span of the relations.
AbelianStructure cokernel(const IntMat& relations, int cols);

// Subgroup of (Q/Z)^n generated by the given rational vectors.
AbelianStructure qz_subgroup(const std::vector<RatVec>& gens, int n);

// Image of that subgroup in Q^n / (Z^n + span_Q(span)).
AbelianStructure qz_subgroup_mod(const std::vector<RatVec>& gens, const std::vector<RatVec>& span, int n);

// Order of v in Q^n / (Z^n + span_Q(span)).
Int qz_order_mod(const RatVec& v, const std::vector<RatVec>& span, int n);

}  // namespace cf
