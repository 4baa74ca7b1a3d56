#pragma once

#include "cuspforge/numbers.hpp"

#include <optional>
#include <string>

namespace cf {

enum class Recognition { Recognized, NoCandidate, Indeterminate };

const char* recognition_name(Recognition r);

struct RecognizeResult {
  Recognition status = Recognition::NoCandidate;
  std::optional<Rat> value;  // set when a candidate exists (recognized or not)
};

// Simplest rational (smallest denominator) in [lo, hi] with denominator <= den_bound.
// Recognized when such a candidate exists and hi - lo < 1 / (2 den_bound^2), which
// makes it the only one; Indeterminate when a candidate exists but the interval is
// too wide to exclude others; NoCandidate otherwise.
RecognizeResult rational_recognize(const Rat& lo, const Rat& hi, const Int& den_bound);

// Smallest-denominator rational in the closed interval [lo, hi] (lo <= hi), by
// continued fractions.
Rat simplest_between(const Rat& lo, const Rat& hi);

}  // namespace cf
