#pragma once

#include "cuspforge/homology.hpp"
#include "cuspforge/smith.hpp"

#include <string>
#include <vector>

namespace cf {

// Cusp labels a_j, b_s, c_k for the Fermat dessin.
// Default: a_j = zero-kind cusp of coset (j,0), c_k = infinity-kind cusp of
// coset (0,k), b_s = one-kind cusp of coset (s,0) (a + b = s).
// With swap_ac the roles of zero-kind and infinity-kind are exchanged.
class FermatLabels {
 public:
  explicit FermatLabels(int N, bool swap_ac = false);

  int N() const { return N_; }
  bool swapped() const { return swap_; }
  const HomologyContext& context() const { return h_; }

  int a(int j) const { return a_[mod(j)]; }
  int b(int s) const { return b_[mod(s)]; }
  int c(int k) const { return c_[mod(k)]; }
  // "a0", "b2", ... for a global cusp index.
  std::string name_of(int cusp) const;
  // Inverse of name_of; -1 if the name is not a Fermat label.
  int parse_name(const std::string& s) const;

 private:
  int mod(int j) const { return ((j % N_) + N_) % N_; }
  int N_;
  bool swap_;
  HomologyContext h_;
  std::vector<int> a_, b_, c_;
};

// Divisors div(x - zeta^j), div(y - zeta^j), div(x - eps zeta^j y), j = 0..N-1,
// in that order, as stated with the label map of `lab`.
std::vector<RatDivisor> fermat_unit_divisors(const FermatLabels& lab);
std::vector<RatDivisor> fermat_unit_divisors(int N);
// Divisors of the same units as located by direct evaluation of x = lambda^{1/N},
// y = (1-lambda)^{1/N} at the cusps (same order).
std::vector<RatDivisor> fermat_unit_divisors_geometric(const FermatLabels& lab);
std::vector<std::string> fermat_unit_names(int N);

// The six relations with base point P = a_0. Rejects even N.
std::vector<RatDivisor> rohrlich_relation_divisors(const FermatLabels& lab);
std::vector<std::string> rohrlich_relation_names();

// Presentations on the basis e_i - e_P (columns indexed by cusps other than P).
IntMatrix cuspidal_presentation_full(const FermatLabels& lab);
IntMatrix cuspidal_presentation_minus(const FermatLabels& lab);
IntMatrix cuspidal_presentation_plus(const FermatLabels& lab);

AbelianStructure cuspidal_group_full(int N);
AbelianStructure cuspidal_group_minus(int N);
AbelianStructure cuspidal_group_plus(int N);

// Z[cusps]^0 modulo the given degree-0 integral divisors, on the basis
// e_i - e_base for the cusps in `support` (all cusps if empty).
AbelianStructure quotient_structure(const std::vector<RatDivisor>& relations, int ncusps,
                                    std::vector<int> support = {}, int base = -1);

// theta+ : Z[del+]^0 -> (Z/N)^{cosets}, g -> m(g0) + m(g inf).
std::vector<Int> theta_plus(const FermatLabels& lab, const RatDivisor& D);
// theta- : Z[del-]^0 -> (Z/2N)^{cosets}, g -> m(g1) - m(g(-1)).
std::vector<Int> theta_minus(const FermatLabels& lab, const RatDivisor& D);

struct ThetaAnalysis {
  Int modulus;
  int domain_rank = 0;        // rank of the degree-0 lattice
  AbelianStructure image;     // image in (Z/modulus)^{cosets}
  Int image_order;
  Int kernel_order;           // modulus^domain_rank / image_order
};

ThetaAnalysis analyze_theta(const FermatLabels& lab, Side side);

}  // namespace cf
