#pragma once

#include "cuspforge/real.hpp"

#include <stdexcept>
#include <string>

namespace cf {

// lambda(z) with lambda(inf) = 0, lambda(0) = inf, lambda(+-1) = 1, invariant
// under Gamma(2); equal to the classical lambda function at z + 1.
struct LambdaValue {
  Cx lambda;     // lambda(z)
  Cx one_minus;  // 1 - lambda(z), computed without cancellation
  bool precision_risky = false;  // Im z < 0.05
  int reductions = 0;            // SL2(Z) steps used before the q-product
};

// Uses the current default precision. Throws std::domain_error if Im z <= 0.
LambdaValue lambda_pair(const Cx& z);
// Sets the working precision to `bits` for the evaluation.
LambdaValue modular_lambda(const Cx& z, int bits);

struct UnitSpec {
  enum class Family { XMinusZeta, YMinusZeta, XMinusEpsZetaY, LambdaItself };
  Family family = Family::LambdaItself;
  int j = 0;
  int N = 1;
};

const char* family_name(UnitSpec::Family f);
UnitSpec::Family parse_family(const std::string& s);
void validate(const UnitSpec& u);

struct BranchStepTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Continuous determination of x = lambda^{1/N} and y = (1-lambda)^{1/N}
// starting from z = i with arg lambda(i) = pi and arg(1 - lambda(i)) = 0.
class BranchTracker {
 public:
  explicit BranchTracker(int N);

  // Single step; throws BranchStepTooLarge if lambda or 1 - lambda turns by more
  // than pi/4 (or a unit value by more than pi/2).
  void step_to(const Cx& z);
  // Straight segment with adaptive subdivision.
  void move_to(const Cx& z, int max_depth = 40);

  const Cx& z() const { return z_; }
  int N() const { return N_; }
  int steps() const { return steps_; }
  const Real& theta_lambda() const { return thL_; }
  const Real& theta_one_minus() const { return thM_; }

  // x and y twisted by zeta^p and zeta^q.
  Cx x(int p = 0) const;
  Cx y(int q = 0) const;
  Cx unit(const UnitSpec& u, int p = 0, int q = 0) const;

 private:
  int N_;
  Cx z_;
  LambdaValue lv_;
  Real thL_, thM_;
  int steps_ = 0;
};

// Unit value at z along the straight path from i.
Cx unit_eval(const UnitSpec& u, const Cx& z, int p = 0, int q = 0);

// x - r for x^N - r^N = diffN known exactly; avoids cancellation near x = r.
Cx root_difference(const Cx& x, const Cx& r, const Cx& diffN, int N);

// zeta^k = e^{2 pi i k / N}, eps = e^{i pi / N}
Cx root_of_unity(int k, int N);
Cx eps_root(int N);

}  // namespace cf
