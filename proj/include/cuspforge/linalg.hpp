#pragma once

#include "cuspforge/numbers.hpp"

#include <vector>

namespace cf {

// Reduced row echelon form of a row space over Q.
class RowSpace {
 public:
  RowSpace() = default;
  RowSpace(std::vector<RatVec> rows, int cols);

  int rank() const { return static_cast<int>(pivots_.size()); }
  int cols() const { return cols_; }
  const std::vector<int>& pivots() const { return pivots_; }
  const std::vector<RatVec>& basis() const { return rows_; }
  // Columns that carry no pivot; the unit vectors on them span a complement.
  std::vector<int> free_columns() const;

  // Canonical representative modulo the row space (zero on pivot columns).
  void reduce(RatVec& v) const;
  bool contains(const RatVec& v) const;

  // Same reduction for any scalar type with T - Rat * T.
  template <class T, class MulFn>
  void reduce_with(std::vector<T>& v, MulFn mul_sub) const {
    for (size_t i = 0; i < rows_.size(); ++i) {
      int p = pivots_[i];
      T coef = v[p];
      for (int j = 0; j < cols_; ++j)
        if (rows_[i][j] != 0) mul_sub(v[j], rows_[i][j], coef);
    }
  }

 private:
  std::vector<RatVec> rows_;
  std::vector<int> pivots_;
  int cols_ = 0;
};

int rank_of(const std::vector<RatVec>& rows, int cols);
// Basis of {x : M x = 0} where M has the given rows.
std::vector<RatVec> kernel_of(const std::vector<RatVec>& rows, int cols);
// Transpose helper.
std::vector<RatVec> transpose(const std::vector<RatVec>& rows, int cols);
bool same_span(const std::vector<RatVec>& a, const std::vector<RatVec>& b, int cols);

}  // namespace cf
